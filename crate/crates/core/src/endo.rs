//! The right endomorphism ring `S = End_A(Sigma)` of a bimodule, the ring
//! extension `lambda: B -> S`, and the `S`-bimodule isomorphism
//! `xi: Sigma (x)_A Sigma* -> S` with inverse `s -> sum_i e_i (x) e_i* s`.

use crate::algebra::{Algebra, AlgebraMorphism, RingExtension};
use crate::bimodule::{right_dual, Bimodule, DualBasis, DualModule};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::subspace::{kernel, Subspace};
use crate::tensor::TensorProduct;

/// `S = End_A(Sigma)` realized as the commutant of the right action, with
/// structure constants taken from composition of representing matrices.
#[derive(Clone, Debug)]
pub struct EndoRing {
    pub sigma: Bimodule,
    /// S as an abstract algebra; the product is composition of endomorphisms.
    pub algebra: Algebra,
    /// Representing matrix of each S-basis element on Sigma.
    pub rep: Vec<Matrix>,
    /// Flattened commutant subspace, for expressing endomorphisms in S-coordinates.
    pub space: Subspace,
    /// The canonical ring extension `lambda: B -> S`.
    pub extension: RingExtension,
}

impl EndoRing {
    pub fn new(sigma: &Bimodule) -> Result<EndoRing> {
        let field = sigma.field();
        let m = sigma.dim;
        // Commutant of {R_a}: T R_a = R_a T for every basis element of A.
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let id = Matrix::identity(field, m);
        for ra in &sigma.right_action {
            let cond = id.kronecker(&ra.transpose()).sub(&ra.kronecker(&id));
            for r in 0..cond.rows() {
                rows.push(cond.row(r));
            }
        }
        let space = if rows.is_empty() {
            Subspace::full(field, m * m)
        } else {
            kernel(&Matrix::from_rows(field, &rows))
        };
        let rep: Vec<Matrix> = space
            .basis_vectors()
            .iter()
            .map(|flat| Matrix::new(field, m, m, flat.clone()))
            .collect();
        let dim = rep.len();
        let coords_of = |t: &Matrix| -> Result<Vec<Scalar>> {
            space
                .coords_of(t.entries())
                .ok_or_else(|| Error::Invalid("matrix is not in the commutant".into()))
        };
        let mut constants = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                constants[i][j] = coords_of(&rep[i].mul(&rep[j]))?;
            }
        }
        let unit = coords_of(&id)?;
        let algebra = Algebra::new(field, Vec::new(), constants, unit)?;
        // lambda sends b to the left action of b, which commutes with the
        // right action by the bimodule law.
        let b = &sigma.left;
        let mut lambda = Matrix::zeros(field, dim, b.dim);
        for j in 0..b.dim {
            let col = coords_of(&sigma.left_action[j])?;
            for i in 0..dim {
                lambda.set(i, j, col[i].clone());
            }
        }
        let morphism = AlgebraMorphism::new(b.clone(), algebra.clone(), lambda)?;
        let extension = RingExtension::new(morphism);
        Ok(EndoRing {
            sigma: sigma.clone(),
            algebra,
            rep,
            space,
            extension,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    /// Representing matrix of an arbitrary element of S.
    pub fn to_matrix(&self, s: &[Scalar]) -> Matrix {
        let field = self.sigma.field();
        let mut out = Matrix::zeros(field, self.sigma.dim, self.sigma.dim);
        for (c, t) in s.iter().zip(&self.rep) {
            if !c.is_zero() {
                out = out.add(&t.scale(c));
            }
        }
        out
    }

    /// Coordinates of an endomorphism matrix in the S-basis.
    pub fn from_matrix(&self, t: &Matrix) -> Result<Vec<Scalar>> {
        self.space
            .coords_of(t.entries())
            .ok_or_else(|| Error::Invalid("matrix does not commute with the right action".into()))
    }

    /// The image `lambda(B)` as a canonical subspace of S.
    pub fn lambda_image(&self) -> Subspace {
        self.extension.morphism.image()
    }

    /// Sigma as an `(S, A)`-bimodule, with S acting through its representation.
    pub fn sigma_as_s_module(&self) -> Result<Bimodule> {
        Bimodule::new(
            self.algebra.clone(),
            self.sigma.right.clone(),
            self.sigma.dim,
            self.rep.clone(),
            self.sigma.right_action.clone(),
        )
    }

    /// S as a `(B, B)`-bimodule along `lambda`, for Sweedler-style tensors.
    pub fn s_as_b_bimodule(&self) -> Result<Bimodule> {
        let reg = Bimodule::regular(&self.algebra);
        reg.restrict_left(&self.extension.morphism)?
            .restrict_right(&self.extension.morphism)
    }

    /// S as a `(B, S)`-bimodule (left through lambda, right regular).
    pub fn s_as_b_s_bimodule(&self) -> Result<Bimodule> {
        Bimodule::regular(&self.algebra).restrict_left(&self.extension.morphism)
    }

    /// S as an `(S, B)`-bimodule (left regular, right through lambda).
    pub fn s_as_s_b_bimodule(&self) -> Result<Bimodule> {
        Bimodule::regular(&self.algebra).restrict_right(&self.extension.morphism)
    }
}

/// The mutually inverse pair `xi: Sigma (x)_A Sigma* <-> S`.
#[derive(Clone, Debug)]
pub struct XiIso {
    /// `Sigma (x)_A Sigma*` as an explicit quotient.
    pub product: TensorProduct,
    /// Quotient coordinates -> S coordinates.
    pub forward: Matrix,
    /// S coordinates -> quotient coordinates.
    pub inverse: Matrix,
}

impl XiIso {
    pub fn new(endo: &EndoRing, dual: &DualModule, db: &DualBasis) -> Result<XiIso> {
        let sigma = &endo.sigma;
        let field = sigma.field();
        // Sigma as (B, A), Sigma* as (A, B): tensor over A.
        let product = TensorProduct::over_ring(sigma, &dual.module)?;
        // xi(u (x) v*) is the endomorphism x -> u . v*(x).
        let m = sigma.dim;
        let dstar = dual.module.dim;
        let mut fwd_ambient = Matrix::zeros(field, endo.dim(), m * dstar);
        for i in 0..m {
            let u = sigma.basis_element(i);
            for t in 0..dstar {
                let func = &dual.functionals[t];
                let mut endo_mat = Matrix::zeros(field, m, m);
                for x in 0..m {
                    let val = func.apply(&sigma.basis_element(x));
                    let col = sigma.act_right(&u, &val);
                    for r in 0..m {
                        endo_mat.set(r, x, col[r].clone());
                    }
                }
                let coords = endo.from_matrix(&endo_mat)?;
                for r in 0..endo.dim() {
                    fwd_ambient.set(r, i * dstar + t, coords[r].clone());
                }
            }
        }
        let forward = product.space.induce(&fwd_ambient, "xi forward")?;
        // xi^{-1}(s) = sum_i e_i (x) e_i* . s, where (e_i* . s)(x) = e_i*(s x).
        let mut inverse = Matrix::zeros(field, product.dim(), endo.dim());
        for j in 0..endo.dim() {
            let s_mat = &endo.rep[j];
            let mut acc = vec![field.zero(); product.dim()];
            for (e, f) in &db.pairs {
                let shifted = f.mul(s_mat);
                let coords = dual.coords_of(&shifted)?;
                let term = product.pure(e, &coords);
                for (a, t) in acc.iter_mut().zip(term) {
                    *a = a.add(&t);
                }
            }
            for r in 0..product.dim() {
                inverse.set(r, j, acc[r].clone());
            }
        }
        let id_s = Matrix::identity(field, endo.dim());
        let id_q = Matrix::identity(field, product.dim());
        if forward.mul(&inverse) != id_s || inverse.mul(&forward) != id_q {
            return Err(Error::IllDefined(
                "xi and its inverse are not mutually inverse".into(),
            ));
        }
        Ok(XiIso {
            product,
            forward,
            inverse,
        })
    }

    /// xi of a pure tensor given by a vector and dual coordinates.
    pub fn apply_pure(&self, u: &[Scalar], vstar: &[Scalar]) -> Vec<Scalar> {
        self.forward.apply(&self.product.pure(u, vstar))
    }
}

/// Bundles the data attached to a bimodule with a chosen dual basis.
#[derive(Clone, Debug)]
pub struct MoritaContext {
    pub sigma: Bimodule,
    pub dual: DualModule,
    pub dual_basis: DualBasis,
    pub endo: EndoRing,
    pub xi: XiIso,
}

impl MoritaContext {
    pub fn new(sigma: &Bimodule) -> Result<MoritaContext> {
        let db = crate::bimodule::compute_dual_basis(sigma, None)?;
        MoritaContext::with_dual_basis(sigma, db)
    }

    pub fn with_dual_basis(sigma: &Bimodule, dual_basis: DualBasis) -> Result<MoritaContext> {
        let dual = right_dual(sigma)?;
        let endo = EndoRing::new(sigma)?;
        let xi = XiIso::new(&endo, &dual, &dual_basis)?;
        Ok(MoritaContext {
            sigma: sigma.clone(),
            dual,
            dual_basis,
            endo,
            xi,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::compute_dual_basis;
    use crate::field::Field;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn endomorphisms_of_plain_vector_space_form_full_matrix_ring() {
        // Sigma = F_2^2 over A = F_2: the commutant of scalars is everything.
        let k = Algebra::ground(f2());
        let sigma = Bimodule::free(&k, 2);
        let endo = EndoRing::new(&sigma).unwrap();
        assert_eq!(endo.dim(), 4);
        assert!(endo.algebra.validate().ok());
        assert!(endo.extension.injective);
    }

    #[test]
    fn endomorphisms_of_regular_module_recover_the_algebra() {
        // Sigma = A over A: S acts by left multiplication, so S ~ A.
        let a = Algebra::matrix_algebra(f2(), 2);
        let sigma = Bimodule::regular(&a);
        let endo = EndoRing::new(&sigma).unwrap();
        assert_eq!(endo.dim(), a.dim);
        // lambda is an isomorphism here.
        assert!(endo.extension.injective);
        assert_eq!(endo.lambda_image().dim(), a.dim);
    }

    #[test]
    fn xi_sends_the_dual_basis_element_to_the_identity() {
        let k = Algebra::ground(f2());
        let sigma = Bimodule::free(&k, 2);
        let ctx = MoritaContext::new(&sigma).unwrap();
        // sum_i e_i (x) e_i* maps to 1_S.
        let field = f2();
        let mut acc = vec![field.zero(); ctx.xi.product.dim()];
        for (e, f) in &ctx.dual_basis.pairs {
            let coords = ctx.dual.coords_of(f).unwrap();
            let term = ctx.xi.product.pure(e, &coords);
            for (a, t) in acc.iter_mut().zip(term) {
                *a = a.add(&t);
            }
        }
        let s = ctx.xi.forward.apply(&acc);
        assert_eq!(s, ctx.endo.algebra.unit);
        // xi(0) = 0.
        let zero = vec![field.zero(); ctx.xi.product.dim()];
        assert!(ctx.xi.forward.apply(&zero).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn xi_transports_composition_over_f3() {
        // Product rule: xi((u (x) u*)(v (x) v*)) = xi(u (x) u*) o xi(v (x) v*)
        // with (u (x) u*)(v (x) v*) = u . u*(v) (x) v*, checked on every pure
        // basis tensor of a F_3 fixture.
        let f3 = Field::prime(3).unwrap();
        let k = Algebra::ground(f3);
        let sigma = Bimodule::free(&k, 2);
        let ctx = MoritaContext::new(&sigma).unwrap();
        let dual = &ctx.dual;
        for i in 0..sigma.dim {
            for t in 0..dual.module.dim {
                for j in 0..sigma.dim {
                    for w in 0..dual.module.dim {
                        let u = sigma.basis_element(i);
                        let ustar = &dual.functionals[t];
                        let v = sigma.basis_element(j);
                        let wcoords = crate::matrix::basis_vec(f3, dual.module.dim, w);
                        // Left side: u . u*(v) (x) w*.
                        let scaled = sigma.act_right(&u, &ustar.apply(&v));
                        let lhs = ctx.xi.forward.apply(&ctx.xi.product.pure(&scaled, &wcoords));
                        // Right side: composition in S.
                        let tcoords = crate::matrix::basis_vec(f3, dual.module.dim, t);
                        let su = ctx.xi.apply_pure(&u, &tcoords);
                        let sv = ctx.xi.apply_pure(&v, &wcoords);
                        let rhs = ctx.endo.algebra.mul(&su, &sv);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn xi_is_s_bilinear() {
        // s (u (x) u*) = s(u) (x) u* and (u (x) u*) s = u (x) u* s.
        let a = Algebra::matrix_algebra(f2(), 2);
        let sigma = Bimodule::regular(&a);
        let db = compute_dual_basis(&sigma, None).unwrap();
        let ctx = MoritaContext::with_dual_basis(&sigma, db).unwrap();
        for sj in 0..ctx.endo.dim() {
            let s_mat = &ctx.endo.rep[sj];
            let s_coords = crate::matrix::basis_vec(f2(), ctx.endo.dim(), sj);
            for i in 0..sigma.dim {
                for t in 0..ctx.dual.module.dim {
                    let u = sigma.basis_element(i);
                    let tcoords = crate::matrix::basis_vec(f2(), ctx.dual.module.dim, t);
                    // Left multiplication transported through xi.
                    let lhs = ctx
                        .endo
                        .algebra
                        .mul(&s_coords, &ctx.xi.apply_pure(&u, &tcoords));
                    let rhs = ctx.xi.apply_pure(&s_mat.apply(&u), &tcoords);
                    assert_eq!(lhs, rhs);
                    // Right multiplication: u (x) u* s.
                    let lhs2 = ctx
                        .endo
                        .algebra
                        .mul(&ctx.xi.apply_pure(&u, &tcoords), &s_coords);
                    let shifted = ctx.dual.functionals[t].mul(s_mat);
                    let shifted_coords = ctx.dual.coords_of(&shifted).unwrap();
                    let rhs2 = ctx.xi.apply_pure(&u, &shifted_coords);
                    assert_eq!(lhs2, rhs2);
                }
            }
        }
    }

    #[test]
    fn sweedler_case_has_rank_one_dual_basis() {
        // Sigma = S_S for the diagonal inside M_2: End_S(S) ~ S and the dual
        // basis is {(1, id)}.
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = crate::subspace::Subspace::from_span(
            f2(),
            4,
            &[a.basis_element(0), a.basis_element(3)],
        );
        let (_, incl) = a.subalgebra(&span).unwrap();
        let sigma = Bimodule::regular(&a).restrict_left(&incl).unwrap();
        let db = compute_dual_basis(&sigma, None).unwrap();
        assert_eq!(db.len(), 1);
        assert_eq!(db.pairs[0].0, a.unit);
        assert_eq!(db.pairs[0].1, Matrix::identity(f2(), 4));
        let endo = EndoRing::new(&sigma).unwrap();
        assert_eq!(endo.dim(), 4);
        assert!(endo.extension.injective);
        assert_eq!(endo.extension.morphism.source.dim, 2);
    }
}

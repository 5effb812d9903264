//! The adjunction between comodules over the Sweedler coring of `B -> S` and
//! comodules over `Sigma* (x)_B Sigma`.
//!
//! `- (x)_S Sigma` sends a right `S (x)_B S`-comodule `Y` to `Y (x)_S Sigma`
//! with `rho(y (x) u) = sum y_(0) (x) e_i (x) e_i* (x) y_(1) u`;
//! `- (x)_A Sigma*` goes back. `psi` and `psi_inv` realize the natural
//! bijection between the two hom-spaces.

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::bimodule::Bimodule;
use crate::comodule::{hom_comodules, ComatrixComodules, Comodule, Side};
use crate::coring::{ComatrixCoring, SweedlerCoring};
use crate::endo::MoritaContext;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{basis_vec, Matrix};
use crate::tensor::TensorProduct;

/// Everything the adjunction needs: the comatrix side, the Sweedler side and
/// the evaluation counit `eps': Sigma* (x)_S Sigma -> A`.
pub struct AdjunctionContext {
    pub bundle: ComatrixComodules,
    pub sweedler: SweedlerCoring,
    /// Sigma as an (S, A)-bimodule.
    pub sigma_s: Bimodule,
    /// Sigma* as an (A, S)-bimodule.
    pub dual_s: Bimodule,
    /// `Sigma* (x)_S Sigma`.
    pub eval_tensor: TensorProduct,
    /// `eps': Sigma* (x)_S Sigma -> A`, the evaluation map; it coincides with
    /// the counit of the comatrix coring built on Sigma as an (S, A)-bimodule.
    pub eval: Matrix,
}

impl AdjunctionContext {
    pub fn new(bundle: ComatrixComodules) -> Result<AdjunctionContext> {
        let ctx = &bundle.cm.ctx;
        let endo = &ctx.endo;
        let field = ctx.sigma.field();
        let sweedler = SweedlerCoring::of_endo_ring(endo)?;
        let sigma_s = endo.sigma_as_s_module()?;
        // Sigma* as (A, S): the right S-action is composition with the
        // representing matrix.
        let mut right_action = Vec::with_capacity(endo.dim());
        let id_a = Matrix::identity(field, ctx.sigma.right.dim);
        for rep in &endo.rep {
            let op = id_a.kronecker(&rep.transpose());
            right_action.push(ctx.dual.space.restrict_endo(&op, "dual right S-action")?);
        }
        let dual_s = Bimodule::new(
            ctx.dual.module.left.clone(),
            endo.algebra.clone(),
            ctx.dual.module.dim,
            ctx.dual.module.left_action.clone(),
            right_action,
        )?;
        let eval_tensor = TensorProduct::over_ring(&dual_s, &sigma_s)?;
        let mut ev_ambient = Matrix::zeros(
            field,
            ctx.sigma.right.dim,
            eval_tensor.ambient_dim(),
        );
        for t in 0..dual_s.dim {
            for b in 0..ctx.sigma.dim {
                let val = ctx.dual.functionals[t].apply(&ctx.sigma.basis_element(b));
                for r in 0..ctx.sigma.right.dim {
                    ev_ambient.set(r, t * ctx.sigma.dim + b, val[r].clone());
                }
            }
        }
        let eval = eval_tensor.space.induce(&ev_ambient, "evaluation counit")?;
        // The evaluation is the counit of the comatrix coring of the
        // (S, A)-bimodule Sigma.
        let cs = ComatrixCoring::new(MoritaContext::with_dual_basis(
            &sigma_s,
            ctx.dual_basis.clone(),
        )?)?;
        if cs.coring.counit != eval {
            return Err(Error::IllDefined(
                "evaluation differs from the comatrix counit over S".into(),
            ));
        }
        Ok(AdjunctionContext {
            bundle,
            sweedler,
            sigma_s,
            dual_s,
            eval_tensor,
            eval,
        })
    }

    pub fn from_bimodule(sigma: &Bimodule) -> Result<AdjunctionContext> {
        AdjunctionContext::new(ComatrixComodules::from_bimodule(sigma)?)
    }

    /// The grouplike comodule: `S` with `rho(s) = 1 (x)_S 1 (x)_B s`.
    pub fn grouplike(&self) -> Result<Comodule> {
        let s = &self.sweedler.extension.morphism.target;
        let field = s.field;
        let ground = Algebra::ground(field);
        let unit_map = AlgebraMorphism::new(
            ground,
            s.clone(),
            Matrix::from_col(field, &s.unit),
        )?;
        let carrier = Bimodule::regular(s).restrict_left(&unit_map)?;
        let tensor = TensorProduct::over_ring(&carrier, &self.sweedler.coring.module)?;
        let mut rho = Matrix::zeros(field, tensor.dim(), s.dim);
        for a in 0..s.dim {
            let inner = self.sweedler.pure(&s.unit, &s.basis_element(a));
            let col = tensor.pure(&s.unit, &inner);
            for r in 0..tensor.dim() {
                rho.set(r, a, col[r].clone());
            }
        }
        Comodule::right(&self.sweedler.coring, &carrier, rho)
    }

    /// `Y (x)_S Sigma` with the induced comatrix coaction.
    pub fn tensor_sigma(&self, y: &Comodule) -> Result<(Comodule, TensorProduct)> {
        if y.side != Side::Right || y.coring.module != self.sweedler.coring.module {
            return Err(Error::Invalid(
                "tensor_sigma expects a right comodule over the Sweedler coring".into(),
            ));
        }
        let ctx = &self.bundle.cm.ctx;
        let field = ctx.sigma.field();
        let ts = TensorProduct::over_ring(&y.carrier, &self.sigma_s)?;
        let target = TensorProduct::over_ring(&ts.module, &self.bundle.cm.coring.module)?;
        let m = ctx.sigma.dim;
        let mut db_coords = Vec::with_capacity(ctx.dual_basis.len());
        for (e, f) in &ctx.dual_basis.pairs {
            db_coords.push((e.clone(), ctx.dual.coords_of(f)?));
        }
        let mut ambient = Matrix::zeros(field, target.dim(), ts.ambient_dim());
        for yj in 0..y.carrier.dim {
            // rho_Y(y_j) normalized to sum y_(0) (x) 1 (x) y_(1).
            let v = y.coaction.apply(&y.carrier.basis_element(yj));
            let outer = y.tensor.lift(&v);
            let mut legs: Vec<(Vec<Scalar>, usize, Scalar)> = Vec::new();
            for (yk, w, c) in y.tensor.ambient_terms(&outer) {
                let inner = self.sweedler.tensor.lift(&basis_vec(
                    field,
                    self.sweedler.coring.dim(),
                    w,
                ));
                for (sa, sb, d) in self.sweedler.tensor.ambient_terms(&inner) {
                    // y_(0) = y_k . s_a, y_(1) = s_b.
                    let y0 = y
                        .carrier
                        .act_right(&y.carrier.basis_element(yk), &y.coring.algebra.basis_element(sa));
                    legs.push((y0, sb, c.mul(&d)));
                }
            }
            for b in 0..m {
                let u = ctx.sigma.basis_element(b);
                let mut acc = vec![field.zero(); target.dim()];
                for (y0, sb, coeff) in &legs {
                    let moved = ctx.endo.rep[*sb].apply(&u);
                    for (e, estar) in &db_coords {
                        let first = ts.pure(y0, e);
                        let second = self.bundle.cm.tensor.pure(estar, &moved);
                        let term = target.pure(&first, &second);
                        for (a, v) in acc.iter_mut().zip(term) {
                            *a = a.add(&coeff.mul(&v));
                        }
                    }
                }
                for r in 0..target.dim() {
                    let cur = ambient.at(r, yj * m + b).add(&acc[r]);
                    ambient.set(r, yj * m + b, cur);
                }
            }
        }
        let coaction = ts.space.induce(&ambient, "coaction on Y (x)_S Sigma")?;
        let comod = Comodule::right(&self.bundle.cm.coring, &ts.module, coaction)?;
        Ok((comod, ts))
    }

    /// `X (x)_A Sigma*` with the induced Sweedler coaction.
    pub fn tensor_sigmastar(&self, x: &Comodule) -> Result<(Comodule, TensorProduct)> {
        if x.side != Side::Right || x.coring.module != self.bundle.cm.coring.module {
            return Err(Error::Invalid(
                "tensor_sigmastar expects a right comodule over the comatrix coring".into(),
            ));
        }
        let ctx = &self.bundle.cm.ctx;
        let field = ctx.sigma.field();
        let s = &ctx.endo.algebra;
        let tx = TensorProduct::over_ring(&x.carrier, &self.dual_s)?;
        let target = TensorProduct::over_ring(&tx.module, &self.sweedler.coring.module)?;
        let dstar = self.dual_s.dim;
        let mut ambient = Matrix::zeros(field, target.dim(), tx.ambient_dim());
        for xj in 0..x.carrier.dim {
            let v = x.coaction.apply(&x.carrier.basis_element(xj));
            let outer = x.tensor.lift(&v);
            // x_(0) (x) f_alpha (x) sigma_beta legs.
            let mut legs: Vec<(usize, usize, usize, Scalar)> = Vec::new();
            for (xk, w, c) in x.tensor.ambient_terms(&outer) {
                let inner = self
                    .bundle
                    .cm
                    .tensor
                    .lift(&basis_vec(field, self.bundle.cm.coring.dim(), w));
                for (falpha, sbeta, d) in self.bundle.cm.tensor.ambient_terms(&inner) {
                    legs.push((xk, falpha, sbeta, c.mul(&d)));
                }
            }
            for t in 0..dstar {
                let mut acc = vec![field.zero(); target.dim()];
                for (xk, falpha, sbeta, coeff) in &legs {
                    // xi(sigma_beta (x) f_t) lands in S.
                    let s_val = ctx.xi.apply_pure(
                        &ctx.sigma.basis_element(*sbeta),
                        &basis_vec(field, dstar, t),
                    );
                    let first = tx.pure(
                        &x.carrier.basis_element(*xk),
                        &basis_vec(field, dstar, *falpha),
                    );
                    let second = self.sweedler.pure(&s.unit, &s_val);
                    let term = target.pure(&first, &second);
                    for (a, v) in acc.iter_mut().zip(term) {
                        *a = a.add(&coeff.mul(&v));
                    }
                }
                for r in 0..target.dim() {
                    let cur = ambient.at(r, xj * dstar + t).add(&acc[r]);
                    ambient.set(r, xj * dstar + t, cur);
                }
            }
        }
        let coaction = tx.space.induce(&ambient, "coaction on X (x)_A Sigma*")?;
        let comod = Comodule::right(&self.sweedler.coring, &tx.module, coaction)?;
        Ok((comod, tx))
    }

    /// `Psi(f)(y) = sum_i f(y (x) e_i) (x) e_i*`, turning a comatrix-colinear
    /// map `Y (x) Sigma -> X` into a Sweedler-colinear map `Y -> X (x) Sigma*`.
    pub fn psi(
        &self,
        y: &Comodule,
        ts: &TensorProduct,
        tx: &TensorProduct,
        f: &Matrix,
    ) -> Result<Matrix> {
        let ctx = &self.bundle.cm.ctx;
        let field = ctx.sigma.field();
        let mut out = Matrix::zeros(field, tx.dim(), y.carrier.dim);
        for yj in 0..y.carrier.dim {
            let yv = y.carrier.basis_element(yj);
            let mut acc = vec![field.zero(); tx.dim()];
            for (e, fstar) in &ctx.dual_basis.pairs {
                let img = f.apply(&ts.pure(&yv, e));
                let coords = ctx.dual.coords_of(fstar)?;
                let term = tx.pure(&img, &coords);
                for (a, v) in acc.iter_mut().zip(term) {
                    *a = a.add(&v);
                }
            }
            for r in 0..tx.dim() {
                out.set(r, yj, acc[r].clone());
            }
        }
        Ok(out)
    }

    /// `psi_inv(g) = (X (x) eps') o (g (x) Sigma)`.
    pub fn psi_inv(
        &self,
        y: &Comodule,
        ts: &TensorProduct,
        x_carrier: &Bimodule,
        tx: &TensorProduct,
        g: &Matrix,
    ) -> Result<Matrix> {
        let ctx = &self.bundle.cm.ctx;
        let field = ctx.sigma.field();
        let m = ctx.sigma.dim;
        let mut ambient = Matrix::zeros(field, x_carrier.dim, ts.ambient_dim());
        for yj in 0..y.carrier.dim {
            let gv = g.apply(&y.carrier.basis_element(yj));
            let lifted = tx.lift(&gv);
            for b in 0..m {
                let u = ctx.sigma.basis_element(b);
                let mut acc = vec![field.zero(); x_carrier.dim];
                for (xk, ft, c) in tx.ambient_terms(&lifted) {
                    let val = ctx.dual.functionals[ft].apply(&u);
                    let moved = x_carrier.act_right(&x_carrier.basis_element(xk), &val);
                    for (a, v) in acc.iter_mut().zip(moved) {
                        *a = a.add(&c.mul(&v));
                    }
                }
                for r in 0..x_carrier.dim {
                    ambient.set(r, yj * m + b, acc[r].clone());
                }
            }
        }
        ts.space.induce(&ambient, "psi_inv")
    }
}

/// Outcome of checking the adjunction bijection for one comodule pair.
#[derive(Clone, Debug)]
pub struct PsiCheck {
    pub hom_comatrix_dim: usize,
    pub hom_sweedler_dim: usize,
    pub mutually_inverse: bool,
}

/// Solves both hom-spaces for the pair `(Y, X)`, applies `psi` and `psi_inv`
/// basis by basis and certifies the mutual-inverse property.
pub fn check_psi_bijection(
    adj: &AdjunctionContext,
    y: &Comodule,
    x: &Comodule,
) -> Result<PsiCheck> {
    let field = y.carrier.field();
    let (ys, ts) = adj.tensor_sigma(y)?;
    let (xs, tx) = adj.tensor_sigmastar(x)?;
    let hom1 = hom_comodules(&ys, x)?;
    let hom2 = hom_comodules(y, &xs)?;
    let d1 = hom1.dim();
    let d2 = hom2.dim();
    if d1 != d2 {
        return Ok(PsiCheck {
            hom_comatrix_dim: d1,
            hom_sweedler_dim: d2,
            mutually_inverse: false,
        });
    }
    // Matrix of psi in the hom bases.
    let mut psi_cols = Vec::with_capacity(d1);
    for row in hom1.basis_vectors() {
        let f = Matrix::new(field, x.carrier.dim, ys.carrier.dim, row);
        let g = adj.psi(y, &ts, &tx, &f)?;
        let Some(coords) = hom2.coords_of(g.entries()) else {
            return Err(Error::NotColinear("psi image escapes the hom-space".into()));
        };
        psi_cols.push(coords);
    }
    let mut inv_cols = Vec::with_capacity(d2);
    for row in hom2.basis_vectors() {
        let g = Matrix::new(field, xs.carrier.dim, y.carrier.dim, row);
        let f = adj.psi_inv(y, &ts, &x.carrier, &tx, &g)?;
        let Some(coords) = hom1.coords_of(f.entries()) else {
            return Err(Error::NotColinear("psi_inv image escapes the hom-space".into()));
        };
        inv_cols.push(coords);
    }
    let psi_m = if d1 == 0 {
        Matrix::zeros(field, 0, 0)
    } else {
        Matrix::from_rows(field, &psi_cols).transpose()
    };
    let inv_m = if d2 == 0 {
        Matrix::zeros(field, 0, 0)
    } else {
        Matrix::from_rows(field, &inv_cols).transpose()
    };
    let id = Matrix::identity(field, d1);
    let mutually_inverse = psi_m.mul(&inv_m) == id && inv_m.mul(&psi_m) == id;
    Ok(PsiCheck {
        hom_comatrix_dim: d1,
        hom_sweedler_dim: d2,
        mutually_inverse,
    })
}

/// Naturality of psi in both arguments: `Psi(beta o f o (alpha (x) Sigma)) =
/// (beta (x) Sigma*) o Psi(f) o alpha` for colinear `alpha: Y -> Y'`,
/// `beta: X -> X'` and every basis element `f` of `Hom(Y' (x) Sigma, X)`.
pub fn check_psi_naturality(
    adj: &AdjunctionContext,
    y: &Comodule,
    yprime: &Comodule,
    x: &Comodule,
    xprime: &Comodule,
) -> Result<bool> {
    let field = y.carrier.field();
    let (ys, ts_y) = adj.tensor_sigma(y)?;
    let (ysp, ts_yp) = adj.tensor_sigma(yprime)?;
    let (_, tx_x) = adj.tensor_sigmastar(x)?;
    let (_, tx_xp) = adj.tensor_sigmastar(xprime)?;
    let alphas = hom_comodules(y, yprime)?;
    let betas = hom_comodules(x, xprime)?;
    let fs = hom_comodules(&ysp, x)?;
    let id_sigma = Matrix::identity(field, adj.sigma_s.dim);
    let id_dual = Matrix::identity(field, adj.dual_s.dim);
    for alpha_row in alphas.basis_vectors() {
        let alpha = Matrix::new(field, yprime.carrier.dim, y.carrier.dim, alpha_row);
        let alpha_sigma = ts_y.map_factors(&alpha, &id_sigma, &ts_yp, "alpha (x) Sigma")?;
        for beta_row in betas.basis_vectors() {
            let beta = Matrix::new(field, xprime.carrier.dim, x.carrier.dim, beta_row);
            let beta_dual = tx_x.map_factors(&beta, &id_dual, &tx_xp, "beta (x) Sigma*")?;
            for f_row in fs.basis_vectors() {
                let f = Matrix::new(field, x.carrier.dim, ysp.carrier.dim, f_row);
                let composed = beta.mul(&f).mul(&alpha_sigma);
                let lhs = adj.psi(y, &ts_y, &tx_xp, &composed)?;
                let psi_f = adj.psi(yprime, &ts_yp, &tx_x, &f)?;
                let rhs = beta_dual.mul(&psi_f).mul(&alpha);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    let _ = (&ys, &ysp);
    Ok(true)
}

/// The canonical identification `S (x)_S Sigma ~ Sigma` intertwines the
/// induced coaction with `rho_Sigma`; mirrored for `Sigma (x)_A Sigma* ~ S`.
pub fn check_unit_identifications(adj: &AdjunctionContext) -> Result<bool> {
    let grouplike = adj.grouplike()?;
    let (ys, ts) = adj.tensor_sigma(&grouplike)?;
    let (fwd, _) = crate::tensor::collapse_left(&ts)?;
    let rho = &adj.bundle.rho_sigma;
    if !crate::comodule::is_colinear(&ys, rho, &fwd)? || fwd.rank() != rho.carrier.dim {
        return Ok(false);
    }
    // Sigma (x)_A Sigma* ~ S through xi as Sweedler comodules.
    let (xs, _) = adj.tensor_sigmastar(&adj.bundle.rho_sigma)?;
    let xi = &adj.bundle.cm.ctx.xi;
    if !crate::comodule::is_colinear(&xs, &grouplike, &xi.forward)? {
        return Ok(false);
    }
    Ok(xi.forward.rank() == adj.bundle.cm.ctx.endo.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::check_comodule;
    use crate::subspace::Subspace;

    fn f2() -> crate::field::Field {
        crate::field::Field::prime(2).unwrap()
    }

    fn sweedler_adjunction() -> AdjunctionContext {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        let (_, incl) = a.subalgebra(&span).unwrap();
        let sigma = Bimodule::regular(&a).restrict_left(&incl).unwrap();
        AdjunctionContext::from_bimodule(&sigma).unwrap()
    }

    fn free_adjunction() -> AdjunctionContext {
        let sigma = Bimodule::free(&Algebra::ground(f2()), 2);
        AdjunctionContext::from_bimodule(&sigma).unwrap()
    }

    #[test]
    fn grouplike_comodule_is_valid() {
        let adj = sweedler_adjunction();
        let y = adj.grouplike().unwrap();
        assert!(check_comodule(&y).unwrap().ok());
    }

    #[test]
    fn tensor_sigma_of_grouplike_is_sigma() {
        let adj = sweedler_adjunction();
        let y = adj.grouplike().unwrap();
        let (ys, ts) = adj.tensor_sigma(&y).unwrap();
        assert!(check_comodule(&ys).unwrap().ok());
        let (fwd, _) = crate::tensor::collapse_left(&ts).unwrap();
        assert!(crate::comodule::is_colinear(&ys, &adj.bundle.rho_sigma, &fwd).unwrap());
    }

    #[test]
    fn tensor_sigma_of_zero_is_zero() {
        let adj = sweedler_adjunction();
        let zero = Comodule::zero(&adj.sweedler.coring, Side::Right).unwrap();
        let (ys, _) = adj.tensor_sigma(&zero).unwrap();
        assert_eq!(ys.dim(), 0);
    }

    #[test]
    fn tensor_sigmastar_of_sigma_is_the_grouplike() {
        let adj = sweedler_adjunction();
        let (xs, _) = adj.tensor_sigmastar(&adj.bundle.rho_sigma).unwrap();
        assert!(check_comodule(&xs).unwrap().ok());
        let grouplike = adj.grouplike().unwrap();
        let xi = &adj.bundle.cm.ctx.xi;
        assert!(crate::comodule::is_colinear(&xs, &grouplike, &xi.forward).unwrap());
        assert_eq!(xi.forward.rank(), adj.bundle.cm.ctx.endo.dim());
    }

    #[test]
    fn unit_identifications_hold_on_both_fixtures() {
        for adj in [sweedler_adjunction(), free_adjunction()] {
            assert!(check_unit_identifications(&adj).unwrap());
        }
    }

    #[test]
    fn psi_of_zero_map_is_zero() {
        let adj = sweedler_adjunction();
        let y = adj.grouplike().unwrap();
        let (ys, ts) = adj.tensor_sigma(&y).unwrap();
        let (_, tx) = adj.tensor_sigmastar(&adj.bundle.rho_sigma).unwrap();
        let zero = Matrix::zeros(f2(), adj.bundle.rho_sigma.carrier.dim, ys.carrier.dim);
        let img = adj.psi(&y, &ts, &tx, &zero).unwrap();
        assert!(img.is_zero());
    }

    #[test]
    fn psi_is_a_bijection_for_the_canonical_pair() {
        let adj = sweedler_adjunction();
        let y = adj.grouplike().unwrap();
        let check = check_psi_bijection(&adj, &y, &adj.bundle.rho_sigma).unwrap();
        assert_eq!(check.hom_comatrix_dim, check.hom_sweedler_dim);
        assert!(check.mutually_inverse);
    }

    #[test]
    fn induced_pair_identifications() {
        // S_ghat (x)_S Sigma ~ Sigma_g and Sigma_g (x)_A Sigma* ~ S_ghat.
        let adj = sweedler_adjunction();
        let bundle = &adj.bundle;
        let table =
            crate::correspondence::coring_endomorphisms(&bundle.cm.coring, 1_000_000).unwrap();
        let morphs =
            crate::correspondence::table_morphisms(&bundle.cm.coring, &table).unwrap();
        let grouplike = adj.grouplike().unwrap();
        for g in &morphs {
            let ghat = crate::correspondence::hat_map(bundle, &adj.sweedler, g).unwrap();
            let s_ghat = grouplike.induce(&ghat).unwrap();
            let sigma_g = bundle.rho_sigma.induce(g).unwrap();
            let (ys, ts) = adj.tensor_sigma(&s_ghat).unwrap();
            let (fwd, _) = crate::tensor::collapse_left(&ts).unwrap();
            assert!(crate::comodule::is_colinear(&ys, &sigma_g, &fwd).unwrap());
            let (xs, _) = adj.tensor_sigmastar(&sigma_g).unwrap();
            let xi = &bundle.cm.ctx.xi;
            assert!(crate::comodule::is_colinear(&xs, &s_ghat, &xi.forward).unwrap());
        }
    }
}

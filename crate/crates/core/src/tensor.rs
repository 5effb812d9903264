//! Tensor products over a ring, realized as explicit quotient spaces.
//!
//! `M (x)_R N` is the quotient of the plain tensor space by the span of all
//! `(x.r (x) y) - (x (x) r.y)`. Every map out of a tensor product is defined
//! on ambient representatives; inducing it onto the quotient checks that the
//! relation span is annihilated, so ill-defined maps fail loudly at
//! construction time.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::subspace::{QuotientSpace, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorProduct {
    /// Left factor (a right module over the ring).
    pub left: Bimodule,
    /// Right factor (a left module over the ring).
    pub right: Bimodule,
    /// The ring the product balances over.
    pub ring: Algebra,
    pub space: QuotientSpace,
    /// The induced outer bimodule structure on the quotient.
    pub module: Bimodule,
}

impl TensorProduct {
    /// Builds `left (x)_ring right`; the left factor's right algebra must
    /// equal the right factor's left algebra.
    pub fn over_ring(left: &Bimodule, right: &Bimodule) -> Result<TensorProduct> {
        if left.right != right.left {
            return Err(Error::Invalid(
                "tensor factors do not share the balancing ring".into(),
            ));
        }
        if left.field() != right.field() {
            return Err(Error::FieldMismatch("tensor factors".into()));
        }
        let ring = left.right.clone();
        let field = left.field();
        let ambient = left.dim * right.dim;
        let mut relations: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..ring.dim {
            for i in 0..left.dim {
                let xr = left.right_action[r].apply(&left.basis_element(i));
                for j in 0..right.dim {
                    let ry = right.left_action[r].apply(&right.basis_element(j));
                    let mut rel = vec![field.zero(); ambient];
                    for (k, c) in xr.iter().enumerate() {
                        if !c.is_zero() {
                            rel[k * right.dim + j] = rel[k * right.dim + j].add(c);
                        }
                    }
                    for (l, c) in ry.iter().enumerate() {
                        if !c.is_zero() {
                            rel[i * right.dim + l] = rel[i * right.dim + l].sub(c);
                        }
                    }
                    if rel.iter().any(|x| !x.is_zero()) {
                        relations.push(rel);
                    }
                }
            }
        }
        let kernel = Subspace::from_span(field, ambient, &relations);
        let space = QuotientSpace::new(ambient, kernel);
        // Outer actions descend because they commute with the ring actions.
        let id_right = Matrix::identity(field, right.dim);
        let id_left = Matrix::identity(field, left.dim);
        let mut left_action = Vec::with_capacity(left.left.dim);
        for idx in 0..left.left.dim {
            let ambient = space.projection.mul_kron(&left.left_action[idx], &id_right);
            left_action.push(space.induce(&ambient, "tensor outer left action")?);
        }
        let mut right_action = Vec::with_capacity(right.right.dim);
        for idx in 0..right.right.dim {
            let ambient = space.projection.mul_kron(&id_left, &right.right_action[idx]);
            right_action.push(space.induce(&ambient, "tensor outer right action")?);
        }
        let module = Bimodule::new(
            left.left.clone(),
            right.right.clone(),
            space.dim,
            left_action,
            right_action,
        )?;
        Ok(TensorProduct {
            left: left.clone(),
            right: right.clone(),
            ring,
            space,
            module,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim
    }

    /// Flat coordinates of a pure tensor in the ambient space.
    pub fn pure_ambient(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.left.dim);
        assert_eq!(y.len(), self.right.dim);
        let field = self.left.field();
        let mut out = vec![field.zero(); x.len() * y.len()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    out[i * y.len() + j] = a.mul(b);
                }
            }
        }
        out
    }

    /// Image of a pure tensor in the quotient.
    pub fn pure(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.space.project(&self.pure_ambient(x, y))
    }

    pub fn project(&self, ambient: &[Scalar]) -> Vec<Scalar> {
        self.space.project(ambient)
    }

    /// A representative of a quotient element in the ambient tensor space.
    pub fn lift(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.space.lift(v)
    }

    /// Decomposes an ambient vector into `(left index, right index, coeff)`
    /// triples, skipping zeros.
    pub fn ambient_terms(&self, ambient: &[Scalar]) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (pos, c) in ambient.iter().enumerate() {
            if !c.is_zero() {
                out.push((pos / self.right.dim, pos % self.right.dim, c.clone()));
            }
        }
        out
    }

    /// Induces `target.proj o (f (x) g)` as a map between quotients, checking
    /// well-definedness on this quotient's relation span.
    pub fn map_factors(
        &self,
        f: &Matrix,
        g: &Matrix,
        target: &TensorProduct,
        context: &str,
    ) -> Result<Matrix> {
        if f.cols() != self.left.dim || g.cols() != self.right.dim {
            return Err(Error::DimensionMismatch(format!(
                "map_factors({context}): factor shapes"
            )));
        }
        if f.rows() != target.left.dim || g.rows() != target.right.dim {
            return Err(Error::DimensionMismatch(format!(
                "map_factors({context}): target shapes"
            )));
        }
        let ambient = target.space.projection.mul_kron(f, g);
        self.space.induce(&ambient, context)
    }
}

/// Induces an ambient endomorphism on the quotient: `proj o op o sect`,
/// verified to preserve the relation span.
pub fn induce_endo(space: &QuotientSpace, op: &Matrix, context: &str) -> Result<Matrix> {
    space.induce(&space.projection.mul(op), context)
}

/// The two mutually inverse canonical maps `R (x)_R M ~ M` for the regular
/// left factor: forward collapses `r (x) y` to `r.y`, backward sends `y` to
/// `proj(1 (x) y)`.
pub fn collapse_left(t: &TensorProduct) -> Result<(Matrix, Matrix)> {
    let field = t.left.field();
    if t.left.dim != t.ring.dim {
        return Err(Error::Invalid(
            "collapse_left requires the regular left factor".into(),
        ));
    }
    let n = t.right.dim;
    let mut fwd_ambient = Matrix::zeros(field, n, t.ambient_dim());
    for i in 0..t.left.dim {
        let act = &t.right.left_action_of(&t.left.basis_element(i));
        for j in 0..n {
            let img = act.apply(&t.right.basis_element(j));
            for k in 0..n {
                fwd_ambient.set(k, i * n + j, img[k].clone());
            }
        }
    }
    let forward = t.space.induce(&fwd_ambient, "collapse_left forward")?;
    let mut backward = Matrix::zeros(field, t.dim(), n);
    for j in 0..n {
        let col = t.pure(&t.ring.unit, &t.right.basis_element(j));
        for i in 0..t.dim() {
            backward.set(i, j, col[i].clone());
        }
    }
    check_mutually_inverse(&forward, &backward, "collapse_left")?;
    Ok((forward, backward))
}

/// The canonical maps `M (x)_R R ~ M` for the regular right factor.
pub fn collapse_right(t: &TensorProduct) -> Result<(Matrix, Matrix)> {
    let field = t.left.field();
    if t.right.dim != t.ring.dim {
        return Err(Error::Invalid(
            "collapse_right requires the regular right factor".into(),
        ));
    }
    let m = t.left.dim;
    let n = t.right.dim;
    let mut fwd_ambient = Matrix::zeros(field, m, t.ambient_dim());
    for i in 0..m {
        for j in 0..n {
            let img = t
                .left
                .right_action_of(&t.right.basis_element(j))
                .apply(&t.left.basis_element(i));
            for k in 0..m {
                fwd_ambient.set(k, i * n + j, img[k].clone());
            }
        }
    }
    let forward = t.space.induce(&fwd_ambient, "collapse_right forward")?;
    let mut backward = Matrix::zeros(field, t.dim(), m);
    for i in 0..m {
        let col = t.pure(&t.left.basis_element(i), &t.ring.unit);
        for r in 0..t.dim() {
            backward.set(r, i, col[r].clone());
        }
    }
    check_mutually_inverse(&forward, &backward, "collapse_right")?;
    Ok((forward, backward))
}

fn check_mutually_inverse(f: &Matrix, g: &Matrix, context: &str) -> Result<()> {
    let fg = f.mul(g);
    let gf = g.mul(f);
    if fg != Matrix::identity(f.field(), f.rows()) || gf != Matrix::identity(f.field(), g.rows()) {
        return Err(Error::IllDefined(format!(
            "{context}: canonical maps are not mutually inverse"
        )));
    }
    Ok(())
}

/// Canonical re-association `(M (x) N) (x) P ~ M (x) (N (x) P)`.
///
/// `ln` is `(M (x) N) (x) P` built on `mn = M (x) N`; `rn` is
/// `M (x) (N (x) P)` built on `np = N (x) P`. Returns the forward map
/// (left-nested to right-nested) and its inverse, verified against each
/// other.
pub fn reassociate(
    ln: &TensorProduct,
    mn: &TensorProduct,
    rn: &TensorProduct,
    np: &TensorProduct,
) -> Result<(Matrix, Matrix)> {
    let field = mn.left.field();
    let m = mn.left.dim;
    let p = np.right.dim;
    if ln.left.dim != mn.dim() || rn.right.dim != np.dim() || rn.left.dim != m || ln.right.dim != p
    {
        return Err(Error::DimensionMismatch("reassociate factors".into()));
    }
    let id_m = Matrix::identity(field, m);
    let id_p = Matrix::identity(field, p);
    // QL -> Q1 (x) P -> M (x) N (x) P -> M (x) Q2 -> QR
    let forward = rn
        .space
        .projection
        .mul_kron(&id_m, &np.space.projection)
        .mul_kron(&mn.space.section, &id_p)
        .mul(&ln.space.section);
    let backward = ln
        .space
        .projection
        .mul_kron(&mn.space.projection, &id_p)
        .mul_kron(&id_m, &np.space.section)
        .mul(&rn.space.section);
    check_mutually_inverse(&forward, &backward, "reassociate")?;
    Ok((forward, backward))
}

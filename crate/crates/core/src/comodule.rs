//! Comodules over a coring: canonical coactions, induced comodules, duals
//! and hom-spaces.
//!
//! A right comodule carries `rho: M -> M (x)_A C`, a left comodule
//! `lambda: M -> C (x)_A M`; both live on quotient coordinates. Hom-spaces
//! between comodules are computed by a single linear solve.

use crate::bimodule::{right_dual, Bimodule, DualBasis};
use crate::coring::{Coring, CoringMorphism};
use crate::endo::MoritaContext;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{basis_vec, Matrix};
use crate::subspace::{kernel as null_space, Subspace};
use crate::tensor::{collapse_left, collapse_right, reassociate, TensorProduct};
use crate::algebra::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug)]
pub struct Comodule {
    pub side: Side,
    pub coring: Coring,
    /// The carrier: for a right comodule the right algebra is A and the left
    /// algebra is an optional outer action (the ground field when absent);
    /// mirrored for left comodules.
    pub carrier: Bimodule,
    /// `M (x)_A C` (right) or `C (x)_A M` (left).
    pub tensor: TensorProduct,
    /// `tensor.dim x carrier.dim`.
    pub coaction: Matrix,
}

impl Comodule {
    pub fn right_unchecked(coring: &Coring, carrier: &Bimodule, coaction: Matrix) -> Result<Comodule> {
        let tensor = TensorProduct::over_ring(carrier, &coring.module)?;
        if coaction.rows() != tensor.dim() || coaction.cols() != carrier.dim {
            return Err(Error::DimensionMismatch("right coaction shape".into()));
        }
        Ok(Comodule {
            side: Side::Right,
            coring: coring.clone(),
            carrier: carrier.clone(),
            tensor,
            coaction,
        })
    }

    pub fn left_unchecked(coring: &Coring, carrier: &Bimodule, coaction: Matrix) -> Result<Comodule> {
        let tensor = TensorProduct::over_ring(&coring.module, carrier)?;
        if coaction.rows() != tensor.dim() || coaction.cols() != carrier.dim {
            return Err(Error::DimensionMismatch("left coaction shape".into()));
        }
        Ok(Comodule {
            side: Side::Left,
            coring: coring.clone(),
            carrier: carrier.clone(),
            tensor,
            coaction,
        })
    }

    pub fn right(coring: &Coring, carrier: &Bimodule, coaction: Matrix) -> Result<Comodule> {
        let m = Comodule::right_unchecked(coring, carrier, coaction)?;
        m.ensure_valid()?;
        Ok(m)
    }

    pub fn left(coring: &Coring, carrier: &Bimodule, coaction: Matrix) -> Result<Comodule> {
        let m = Comodule::left_unchecked(coring, carrier, coaction)?;
        m.ensure_valid()?;
        Ok(m)
    }

    fn ensure_valid(&self) -> Result<()> {
        let report = check_comodule(self)?;
        if !report.ok() {
            let v = &report.violations[0];
            return Err(Error::Invalid(format!(
                "comodule axioms fail: {} at {}",
                v.law, v.witness
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    /// The zero comodule over the same coring.
    pub fn zero(coring: &Coring, side: Side) -> Result<Comodule> {
        let field = coring.module.field();
        let ground = crate::algebra::Algebra::ground(field);
        let (left, right) = match side {
            Side::Right => (ground, coring.algebra.clone()),
            Side::Left => (coring.algebra.clone(), ground),
        };
        let carrier = Bimodule::new_unchecked(
            left.clone(),
            right.clone(),
            0,
            vec![Matrix::zeros(field, 0, 0); left.dim],
            vec![Matrix::zeros(field, 0, 0); right.dim],
        );
        let coaction = Matrix::zeros(field, 0, 0);
        match side {
            Side::Right => {
                let tensor = TensorProduct::over_ring(&carrier, &coring.module)?;
                Ok(Comodule {
                    side,
                    coring: coring.clone(),
                    carrier,
                    tensor,
                    coaction,
                })
            }
            Side::Left => {
                let tensor = TensorProduct::over_ring(&coring.module, &carrier)?;
                Ok(Comodule {
                    side,
                    coring: coring.clone(),
                    carrier,
                    tensor,
                    coaction,
                })
            }
        }
    }

    /// Twists the coaction by a coring endomorphism: `rho_{X_g} = (X (x) g) o
    /// rho_X` for right comodules, `(g (x) X) o lambda_X` for left ones.
    pub fn induce(&self, g: &CoringMorphism) -> Result<Comodule> {
        if g.source.module != self.coring.module || g.target.module != self.coring.module {
            return Err(Error::Invalid("induce: endomorphism of a different coring".into()));
        }
        let id_m = Matrix::identity(self.carrier.field(), self.carrier.dim);
        let twist = match self.side {
            Side::Right => self
                .tensor
                .map_factors(&id_m, &g.matrix, &self.tensor, "X (x) g")?,
            Side::Left => self
                .tensor
                .map_factors(&g.matrix, &id_m, &self.tensor, "g (x) X")?,
        };
        let mut out = self.clone();
        out.coaction = twist.mul(&self.coaction);
        Ok(out)
    }
}

/// Axiom checker: A-linearity (plus outer-action linearity), coassociativity
/// and counitality, with the first violation per family named.
pub fn check_comodule(x: &Comodule) -> Result<CheckReport> {
    let mut report = CheckReport::new("comodule");
    let c = &x.coring;
    let field = x.carrier.field();
    match x.side {
        Side::Right => {
            for idx in 0..c.algebra.dim {
                let lhs = x.coaction.mul(&x.carrier.right_action[idx]);
                let rhs = x.tensor.module.right_action[idx].mul(&x.coaction);
                if lhs != rhs {
                    report.push("right A-linearity", format!("a{idx}"));
                }
            }
            for idx in 0..x.carrier.left.dim {
                let lhs = x.coaction.mul(&x.carrier.left_action[idx]);
                let rhs = x.tensor.module.left_action[idx].mul(&x.coaction);
                if lhs != rhs {
                    report.push("outer left linearity", format!("b{idx}"));
                }
            }
            // (rho (x) C) o rho = (M (x) Delta) o rho after re-association.
            let ln = TensorProduct::over_ring(&x.tensor.module, &c.module)?;
            let rn = TensorProduct::over_ring(&x.carrier, &c.square.module)?;
            let id_c = Matrix::identity(field, c.module.dim);
            let id_m = Matrix::identity(field, x.carrier.dim);
            let rho_c = x
                .tensor
                .map_factors(&x.coaction, &id_c, &ln, "rho (x) C")?;
            let m_delta = x
                .tensor
                .map_factors(&id_m, &c.comult, &rn, "M (x) Delta")?;
            let (fwd, _) = reassociate(&ln, &x.tensor, &rn, &c.square)?;
            let lhs = fwd.mul(&rho_c).mul(&x.coaction);
            let rhs = m_delta.mul(&x.coaction);
            for j in 0..x.carrier.dim {
                if lhs.col(j) != rhs.col(j) {
                    report.push("coassociativity", format!("basis element {j}"));
                    break;
                }
            }
            // (M (x) eps) o rho = id.
            let a_reg = Bimodule::regular(&c.algebra);
            let ma = TensorProduct::over_ring(&x.carrier, &a_reg)?;
            let m_eps = x.tensor.map_factors(&id_m, &c.counit, &ma, "M (x) eps")?;
            let (col, _) = collapse_right(&ma)?;
            let law = col.mul(&m_eps).mul(&x.coaction);
            for j in 0..x.carrier.dim {
                if law.col(j) != id_m.col(j) {
                    report.push("counitality", format!("basis element {j}"));
                    break;
                }
            }
        }
        Side::Left => {
            for idx in 0..c.algebra.dim {
                let lhs = x.coaction.mul(&x.carrier.left_action[idx]);
                let rhs = x.tensor.module.left_action[idx].mul(&x.coaction);
                if lhs != rhs {
                    report.push("left A-linearity", format!("a{idx}"));
                }
            }
            for idx in 0..x.carrier.right.dim {
                let lhs = x.coaction.mul(&x.carrier.right_action[idx]);
                let rhs = x.tensor.module.right_action[idx].mul(&x.coaction);
                if lhs != rhs {
                    report.push("outer right linearity", format!("b{idx}"));
                }
            }
            // (Delta (x) M) o lambda = (C (x) lambda) o lambda.
            let ln = TensorProduct::over_ring(&c.square.module, &x.carrier)?;
            let rn = TensorProduct::over_ring(&c.module, &x.tensor.module)?;
            let id_c = Matrix::identity(field, c.module.dim);
            let id_m = Matrix::identity(field, x.carrier.dim);
            let delta_m = x
                .tensor
                .map_factors(&c.comult, &id_m, &ln, "Delta (x) M")?;
            let c_lambda = x
                .tensor
                .map_factors(&id_c, &x.coaction, &rn, "C (x) lambda")?;
            let (fwd, _) = reassociate(&ln, &c.square, &rn, &x.tensor)?;
            let lhs = fwd.mul(&delta_m).mul(&x.coaction);
            let rhs = c_lambda.mul(&x.coaction);
            for j in 0..x.carrier.dim {
                if lhs.col(j) != rhs.col(j) {
                    report.push("coassociativity", format!("basis element {j}"));
                    break;
                }
            }
            // (eps (x) M) o lambda = id.
            let a_reg = Bimodule::regular(&c.algebra);
            let am = TensorProduct::over_ring(&a_reg, &x.carrier)?;
            let eps_m = x.tensor.map_factors(&c.counit, &id_m, &am, "eps (x) M")?;
            let (col, _) = collapse_left(&am)?;
            let law = col.mul(&eps_m).mul(&x.coaction);
            for j in 0..x.carrier.dim {
                if law.col(j) != id_m.col(j) {
                    report.push("counitality", format!("basis element {j}"));
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// The canonical coactions of a comatrix coring: `rho_Sigma(u) = sum_i e_i
/// (x) e_i* (x) u` and `lambda_{Sigma*}(u*) = sum_i u* (x) e_i (x) e_i*`.
pub fn canonical_coactions(cm: &crate::coring::ComatrixCoring) -> Result<(Comodule, Comodule)> {
    let ctx = &cm.ctx;
    let sigma = &ctx.sigma;
    let dual = &ctx.dual;
    let field = sigma.field();
    let mut db_coords = Vec::with_capacity(ctx.dual_basis.len());
    for (e, f) in &ctx.dual_basis.pairs {
        db_coords.push((e.clone(), dual.coords_of(f)?));
    }
    // rho_Sigma: Sigma -> Sigma (x)_A C.
    let t_sc = TensorProduct::over_ring(sigma, &cm.coring.module)?;
    let mut rho = Matrix::zeros(field, t_sc.dim(), sigma.dim);
    for b in 0..sigma.dim {
        let u = sigma.basis_element(b);
        let mut acc = vec![field.zero(); t_sc.dim()];
        for (e, estar) in &db_coords {
            let inner = cm.tensor.pure(estar, &u);
            let term = t_sc.pure(e, &inner);
            for (a, v) in acc.iter_mut().zip(term) {
                *a = a.add(&v);
            }
        }
        for r in 0..t_sc.dim() {
            rho.set(r, b, acc[r].clone());
        }
    }
    let rho_sigma = Comodule::right(&cm.coring, sigma, rho)?;
    // lambda_{Sigma*}: Sigma* -> C (x)_A Sigma*.
    let t_cs = TensorProduct::over_ring(&cm.coring.module, &dual.module)?;
    let dstar = dual.module.dim;
    let mut lam = Matrix::zeros(field, t_cs.dim(), dstar);
    for t in 0..dstar {
        let ustar = basis_vec(field, dstar, t);
        let mut acc = vec![field.zero(); t_cs.dim()];
        for (e, estar) in &db_coords {
            let inner = cm.tensor.pure(&ustar, e);
            let term = t_cs.pure(&inner, estar);
            for (a, v) in acc.iter_mut().zip(term) {
                *a = a.add(&v);
            }
        }
        for r in 0..t_cs.dim() {
            lam.set(r, t, acc[r].clone());
        }
    }
    let lambda_dual = Comodule::left(&cm.coring, &dual.module, lam)?;
    Ok((rho_sigma, lambda_dual))
}

/// The dual of a right comodule that is finitely generated projective over
/// A: `lambda_{X*}(x*) = sum_j ((x* (x) C) o rho_X(x_j)) (x) x_j*`.
pub fn dual_comodule(x: &Comodule, db: &DualBasis) -> Result<Comodule> {
    if x.side != Side::Right {
        return Err(Error::Invalid("dual_comodule expects a right comodule".into()));
    }
    let c = &x.coring;
    let field = x.carrier.field();
    let dual = right_dual(&x.carrier)?;
    let t_cd = TensorProduct::over_ring(&c.module, &dual.module)?;
    let dstar = dual.module.dim;
    let mut lam = Matrix::zeros(field, t_cd.dim(), dstar);
    for t in 0..dstar {
        let phi = &dual.functionals[t];
        let mut acc = vec![field.zero(); t_cd.dim()];
        for (xj, xjstar) in &db.pairs {
            // (phi (x) C) o rho(x_j): lift the coaction value and contract
            // the first factor with phi.
            let val = x.coaction.apply(xj);
            let ambient = x.tensor.lift(&val);
            let mut cval = vec![field.zero(); c.module.dim];
            for (k, w, coeff) in x.tensor.ambient_terms(&ambient) {
                let a_val = phi.apply(&x.carrier.basis_element(k));
                let moved = c
                    .module
                    .act_left(&a_val, &c.module.basis_element(w));
                for (cv, m) in cval.iter_mut().zip(moved) {
                    *cv = cv.add(&coeff.mul(&m));
                }
            }
            let star_coords = dual.coords_of(xjstar)?;
            let term = t_cd.pure(&cval, &star_coords);
            for (a, v) in acc.iter_mut().zip(term) {
                *a = a.add(&v);
            }
        }
        for r in 0..t_cd.dim() {
            lam.set(r, t, acc[r].clone());
        }
    }
    Comodule::left(c, &dual.module, lam)
}

/// The dual of a left comodule that is finitely generated projective as a
/// left A-module, giving a right comodule: `rho_{*X}(phi) = sum_j *x_j (x)
/// ((C (x) phi) o lambda_X(x_j))`.
pub fn left_dual_comodule(
    x: &Comodule,
    left_db: &[(Vec<Scalar>, Matrix)],
) -> Result<Comodule> {
    if x.side != Side::Left {
        return Err(Error::Invalid("left_dual_comodule expects a left comodule".into()));
    }
    let c = &x.coring;
    let field = x.carrier.field();
    let dual = crate::bimodule::left_dual(&x.carrier)?;
    let t_dc = TensorProduct::over_ring(&dual.module, &c.module)?;
    let dstar = dual.module.dim;
    let mut rho = Matrix::zeros(field, t_dc.dim(), dstar);
    for t in 0..dstar {
        let phi = &dual.functionals[t];
        let mut acc = vec![field.zero(); t_dc.dim()];
        for (xj, xjstar) in left_db {
            let val = x.coaction.apply(xj);
            let ambient = x.tensor.lift(&val);
            let mut cval = vec![field.zero(); c.module.dim];
            for (w, k, coeff) in x.tensor.ambient_terms(&ambient) {
                // lambda_X(x_j) = sum c (x) m; contract m with phi on the right.
                let a_val = phi.apply(&x.carrier.basis_element(k));
                let moved = c
                    .module
                    .act_right(&c.module.basis_element(w), &a_val);
                for (cv, m) in cval.iter_mut().zip(moved) {
                    *cv = cv.add(&coeff.mul(&m));
                }
            }
            let star_coords = dual.coords_of(xjstar)?;
            let term = t_dc.pure(&star_coords, &cval);
            for (a, v) in acc.iter_mut().zip(term) {
                *a = a.add(&v);
            }
        }
        for r in 0..t_dc.dim() {
            rho.set(r, t, acc[r].clone());
        }
    }
    Comodule::right(c, &dual.module, rho)
}

/// Hom-space of comodule maps, as a canonical subspace of flattened
/// `target.dim x source.dim` matrices. Maps are A-linear and colinear; no
/// outer-action linearity is imposed.
pub fn hom_comodules(x: &Comodule, y: &Comodule) -> Result<Subspace> {
    if x.side != y.side {
        return Err(Error::Invalid("hom between different sides".into()));
    }
    if x.coring.module != y.coring.module {
        return Err(Error::Invalid("hom between comodules over different corings".into()));
    }
    let field = x.carrier.field();
    let mx = x.carrier.dim;
    let my = y.carrier.dim;
    let c_dim = x.coring.module.dim;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    // A-linearity.
    for idx in 0..x.coring.algebra.dim {
        let (ax, ay) = match x.side {
            Side::Right => (&x.carrier.right_action[idx], &y.carrier.right_action[idx]),
            Side::Left => (&x.carrier.left_action[idx], &y.carrier.left_action[idx]),
        };
        // f o ax - ay o f = 0 on flattened f (row-major my x mx).
        let lhs = Matrix::identity(field, my).kronecker(&ax.transpose());
        let rhs = ay.kronecker(&Matrix::identity(field, mx));
        let cond = lhs.sub(&rhs);
        for r in 0..cond.rows() {
            rows.push(cond.row(r));
        }
    }
    // Colinearity: rho_Y o f = (f (x) C) o rho_X (right side) or
    // lambda_Y o f = (C (x) f) o lambda_X (left side).
    let w = match x.side {
        Side::Right => x.tensor.space.section.mul(&x.coaction), // (mx*c) x mx
        Side::Left => x.tensor.space.section.mul(&x.coaction),
    };
    let p = &y.tensor.space.projection;
    let qy = y.tensor.dim();
    for r in 0..qy {
        for col in 0..mx {
            let mut row = vec![field.zero(); my * mx];
            // LHS: (rho_Y o f)[r, col] = sum_i rho_Y[r, i] f[i, col].
            for i in 0..my {
                let cf = y.coaction.at(r, i);
                if !cf.is_zero() {
                    row[i * mx + col] = row[i * mx + col].add(cf);
                }
            }
            // RHS: sum over f entries through the lifted coaction.
            match x.side {
                Side::Right => {
                    // target ambient index (i, j) over (M_Y, C); source lift
                    // index (k, j) over (M_X, C).
                    for i in 0..my {
                        for k in 0..mx {
                            let mut coeff = field.zero();
                            for j in 0..c_dim {
                                let pv = p.at(r, i * c_dim + j);
                                if pv.is_zero() {
                                    continue;
                                }
                                let wv = w.at(k * c_dim + j, col);
                                if !wv.is_zero() {
                                    coeff = coeff.add(&pv.mul(wv));
                                }
                            }
                            if !coeff.is_zero() {
                                row[i * mx + k] = row[i * mx + k].sub(&coeff);
                            }
                        }
                    }
                }
                Side::Left => {
                    // target ambient index (j, i) over (C, M_Y); source lift
                    // index (j, k) over (C, M_X).
                    for i in 0..my {
                        for k in 0..mx {
                            let mut coeff = field.zero();
                            for j in 0..c_dim {
                                let pv = p.at(r, j * my + i);
                                if pv.is_zero() {
                                    continue;
                                }
                                let wv = w.at(j * mx + k, col);
                                if !wv.is_zero() {
                                    coeff = coeff.add(&pv.mul(wv));
                                }
                            }
                            if !coeff.is_zero() {
                                row[i * mx + k] = row[i * mx + k].sub(&coeff);
                            }
                        }
                    }
                }
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(field, my * mx));
    }
    Ok(null_space(&Matrix::from_rows(field, &rows)))
}

/// Checks that a given matrix is a colinear comodule map.
pub fn is_colinear(x: &Comodule, y: &Comodule, f: &Matrix) -> Result<bool> {
    let hom = hom_comodules(x, y)?;
    Ok(hom.contains(f.entries()))
}

/// The canonical right-colinear map `Sigma -> *(Sigma*)`: `u -> [u* ->
/// u*(u)]`, verified to be an isomorphism of right comodules.
pub fn sigma_to_double_dual(
    cm: &crate::coring::ComatrixCoring,
    rho_sigma: &Comodule,
    lambda_dual: &Comodule,
) -> Result<Matrix> {
    let sigma = &cm.ctx.sigma;
    let dual = &cm.ctx.dual;
    let field = sigma.field();
    // Left dual basis data of Sigma* as a left A-module comes from the left
    // dual-basis solver on the dual module.
    let left_db = crate::bimodule::compute_left_dual_basis(&dual.module)?;
    let double = left_dual_comodule(lambda_dual, &left_db)?;
    // nat(u): the left-A-linear functional on Sigma* evaluating at u.
    let ddual = crate::bimodule::left_dual(&dual.module)?;
    let mut nat = Matrix::zeros(field, double.carrier.dim, sigma.dim);
    for b in 0..sigma.dim {
        let u = sigma.basis_element(b);
        let mut ev = Matrix::zeros(field, sigma.right.dim, dual.module.dim);
        for t in 0..dual.module.dim {
            let val = dual.functionals[t].apply(&u);
            for r in 0..sigma.right.dim {
                ev.set(r, t, val[r].clone());
            }
        }
        let coords = ddual.coords_of(&ev)?;
        for r in 0..double.carrier.dim {
            nat.set(r, b, coords[r].clone());
        }
    }
    if nat.rank() != sigma.dim || double.carrier.dim != sigma.dim {
        return Err(Error::IllDefined("double dual map is not bijective".into()));
    }
    if !is_colinear(rho_sigma, &double, &nat)? {
        return Err(Error::NotColinear("Sigma -> *(Sigma*)".into()));
    }
    Ok(nat)
}

/// Bundles a comatrix coring with its canonical comodules; this is what the
/// correspondence layer consumes.
#[derive(Clone, Debug)]
pub struct ComatrixComodules {
    pub cm: crate::coring::ComatrixCoring,
    pub rho_sigma: Comodule,
    pub lambda_dual: Comodule,
}

impl ComatrixComodules {
    pub fn new(cm: crate::coring::ComatrixCoring) -> Result<ComatrixComodules> {
        let (rho_sigma, lambda_dual) = canonical_coactions(&cm)?;
        Ok(ComatrixComodules {
            cm,
            rho_sigma,
            lambda_dual,
        })
    }

    pub fn from_bimodule(sigma: &Bimodule) -> Result<ComatrixComodules> {
        ComatrixComodules::new(crate::coring::ComatrixCoring::new(MoritaContext::new(sigma)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Field;
    use crate::subspace::Subspace;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn free_fixture() -> ComatrixComodules {
        let sigma = Bimodule::free(&Algebra::ground(f2()), 2);
        ComatrixComodules::from_bimodule(&sigma).unwrap()
    }

    fn sweedler_fixture() -> ComatrixComodules {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        let (_, incl) = a.subalgebra(&span).unwrap();
        let sigma = Bimodule::regular(&a).restrict_left(&incl).unwrap();
        ComatrixComodules::from_bimodule(&sigma).unwrap()
    }

    #[test]
    fn canonical_coactions_pass_all_axioms() {
        for fixture in [free_fixture(), sweedler_fixture()] {
            assert!(check_comodule(&fixture.rho_sigma).unwrap().ok());
            assert!(check_comodule(&fixture.lambda_dual).unwrap().ok());
        }
    }

    #[test]
    fn trivial_coaction_is_the_canonical_isomorphism() {
        // Sigma = A over B = A: rho is the canonical iso Sigma ~ Sigma (x) A.
        let a = Algebra::matrix_algebra(f2(), 2);
        let sigma = Bimodule::regular(&a);
        let bundle = ComatrixComodules::from_bimodule(&sigma).unwrap();
        assert_eq!(bundle.rho_sigma.coaction.rank(), sigma.dim);
    }

    #[test]
    fn free_fixture_coaction_matches_the_formula() {
        // rho(e_1) = sum_i e_i (x) (e_i* (x) e_1).
        let fixture = free_fixture();
        let sigma = &fixture.cm.ctx.sigma;
        let e1 = sigma.basis_element(0);
        let lhs = fixture.rho_sigma.coaction.apply(&e1);
        let mut rhs = vec![f2().zero(); fixture.rho_sigma.tensor.dim()];
        for (e, f) in &fixture.cm.ctx.dual_basis.pairs {
            let coords = fixture.cm.ctx.dual.coords_of(f).unwrap();
            let inner = fixture.cm.tensor.pure(&coords, &e1);
            let term = fixture.rho_sigma.tensor.pure(e, &inner);
            for (a, v) in rhs.iter_mut().zip(term) {
                *a = a.add(&v);
            }
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn counitality_holds_on_sweedler_basis_vectors() {
        let fixture = sweedler_fixture();
        let report = check_comodule(&fixture.rho_sigma).unwrap();
        assert!(report.ok());
    }

    #[test]
    fn identity_induction_changes_nothing() {
        let fixture = free_fixture();
        let id = CoringMorphism::new(
            fixture.cm.coring.clone(),
            fixture.cm.coring.clone(),
            Matrix::identity(f2(), fixture.cm.coring.dim()),
        )
        .unwrap();
        let induced = fixture.rho_sigma.induce(&id).unwrap();
        assert_eq!(induced.coaction, fixture.rho_sigma.coaction);
    }

    #[test]
    fn hom_contains_identity_and_end_of_sigma_is_lambda_b() {
        // End_C(Sigma) = lambda(B) on the Sweedler fixture.
        let fixture = sweedler_fixture();
        let hom = hom_comodules(&fixture.rho_sigma, &fixture.rho_sigma).unwrap();
        let id = Matrix::identity(f2(), fixture.rho_sigma.dim());
        assert!(hom.contains(id.entries()));
        let endo = &fixture.cm.ctx.endo;
        // Transport into S-coordinates and compare with lambda(B).
        let mut vecs = Vec::new();
        for row in hom.basis_vectors() {
            let mat = Matrix::new(f2(), fixture.rho_sigma.dim(), fixture.rho_sigma.dim(), row);
            vecs.push(endo.from_matrix(&mat).unwrap());
        }
        let in_s = Subspace::from_span(f2(), endo.dim(), &vecs);
        assert_eq!(in_s, endo.lambda_image());
    }

    #[test]
    fn dual_of_canonical_comodule_is_the_dual_coaction() {
        // X = Sigma with rho_Sigma: X* carries lambda_{Sigma*} bit-exactly.
        for fixture in [free_fixture(), sweedler_fixture()] {
            let dualized =
                dual_comodule(&fixture.rho_sigma, &fixture.cm.ctx.dual_basis).unwrap();
            assert_eq!(dualized.coaction, fixture.lambda_dual.coaction);
        }
    }

    #[test]
    fn dual_comodule_is_independent_of_the_dual_basis() {
        // Two distinct dual bases for the free fixture produce the same dual
        // coaction.
        let fixture = free_fixture();
        let sigma = &fixture.cm.ctx.sigma;
        let d1 = &fixture.cm.ctx.dual_basis;
        let d2 = crate::bimodule::compute_dual_basis(sigma, Some(3)).unwrap();
        assert_ne!(d1.len(), d2.len());
        let a = dual_comodule(&fixture.rho_sigma, d1).unwrap();
        let b = dual_comodule(&fixture.rho_sigma, &d2).unwrap();
        assert_eq!(a.coaction, b.coaction);
    }

    #[test]
    fn double_dual_map_is_a_colinear_isomorphism() {
        for fixture in [free_fixture(), sweedler_fixture()] {
            let nat =
                sigma_to_double_dual(&fixture.cm, &fixture.rho_sigma, &fixture.lambda_dual)
                    .unwrap();
            assert_eq!(nat.rank(), fixture.rho_sigma.dim());
        }
    }

    #[test]
    fn zero_comodule_is_well_formed() {
        let fixture = free_fixture();
        let z = Comodule::zero(&fixture.cm.coring, Side::Right).unwrap();
        assert_eq!(z.dim(), 0);
        assert!(check_comodule(&z).unwrap().ok());
    }
}

//! Corings over an algebra: the generic axioms plus the comatrix, Sweedler
//! and left-comatrix constructions.
//!
//! The comultiplication is stored on quotient coordinates of `C (x)_A C`;
//! every constructor goes through an ambient formula and an explicit
//! well-definedness check.

use crate::algebra::{Algebra, CheckReport, RingExtension};
use crate::bimodule::{compute_left_dual_basis, left_dual, Bimodule, DualBasis, DualModule};
use crate::endo::{EndoRing, MoritaContext};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{basis_vec, Matrix};
use crate::tensor::{collapse_left, collapse_right, reassociate, TensorProduct};

#[derive(Clone, Debug, PartialEq)]
pub struct Coring {
    /// The base algebra A.
    pub algebra: Algebra,
    /// C as an (A, A)-bimodule.
    pub module: Bimodule,
    /// `C (x)_A C`.
    pub square: TensorProduct,
    /// `C -> C (x)_A C` on quotient coordinates.
    pub comult: Matrix,
    /// `C -> A`.
    pub counit: Matrix,
}

impl Coring {
    /// Assembles a coring without checking the axioms; used by constructors
    /// (which check afterwards) and by negative-control tests.
    pub fn new_unchecked(module: Bimodule, comult: Matrix, counit: Matrix) -> Result<Coring> {
        let algebra = module.left.clone();
        if module.right != algebra {
            return Err(Error::Invalid("coring module must be an (A, A)-bimodule".into()));
        }
        let square = TensorProduct::over_ring(&module, &module)?;
        if comult.rows() != square.dim() || comult.cols() != module.dim {
            return Err(Error::DimensionMismatch("comultiplication shape".into()));
        }
        if counit.rows() != algebra.dim || counit.cols() != module.dim {
            return Err(Error::DimensionMismatch("counit shape".into()));
        }
        Ok(Coring {
            algebra,
            module,
            square,
            comult,
            counit,
        })
    }

    pub fn new(module: Bimodule, comult: Matrix, counit: Matrix) -> Result<Coring> {
        let c = Coring::new_unchecked(module, comult, counit)?;
        let report = check_coring_axioms(&c)?;
        if !report.ok() {
            let v = &report.violations[0];
            return Err(Error::Invalid(format!(
                "coring axioms fail: {} at {}",
                v.law, v.witness
            )));
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    /// The opposite coring over `A^o`: same underlying space, actions
    /// swapped, comultiplication composed with the flip of tensor factors.
    pub fn opposite(&self) -> Result<Coring> {
        let module_o = self.module.opposite();
        let square_o = TensorProduct::over_ring(&module_o, &module_o)?;
        let field = self.module.field();
        let c = self.module.dim;
        // Flip u (x) v -> v (x) u on the ambient square.
        let mut flip = Matrix::zeros(field, c * c, c * c);
        for i in 0..c {
            for j in 0..c {
                flip.set(j * c + i, i * c + j, field.one());
            }
        }
        let flip_q = self
            .square
            .space
            .induce(&square_o.space.projection.mul(&flip), "opposite coring flip")?;
        let comult = flip_q.mul(&self.comult);
        let counit = self.counit.clone();
        let out = Coring {
            algebra: module_o.left.clone(),
            module: module_o,
            square: square_o,
            comult,
            counit,
        };
        let report = check_coring_axioms(&out)?;
        if !report.ok() {
            return Err(Error::IllDefined("opposite coring axioms fail".into()));
        }
        Ok(out)
    }
}

/// Checks A-bilinearity of the structure maps, coassociativity and both
/// counit laws exactly; reports the first violated identity per family with
/// the witnessing basis element.
pub fn check_coring_axioms(c: &Coring) -> Result<CheckReport> {
    let mut report = CheckReport::new("coring");
    let a = &c.algebra;
    // Bilinearity of comultiplication and counit.
    for idx in 0..a.dim {
        let lc = &c.module.left_action[idx];
        let rc = &c.module.right_action[idx];
        let lsq = &c.square.module.left_action[idx];
        let rsq = &c.square.module.right_action[idx];
        if c.comult.mul(lc) != lsq.mul(&c.comult) {
            report.push("comultiplication left A-linearity", format!("a{idx}"));
        }
        if c.comult.mul(rc) != rsq.mul(&c.comult) {
            report.push("comultiplication right A-linearity", format!("a{idx}"));
        }
        let la = a.left_mult(&a.basis_element(idx));
        let ra = a.right_mult(&a.basis_element(idx));
        if c.counit.mul(lc) != la.mul(&c.counit) {
            report.push("counit left A-linearity", format!("a{idx}"));
        }
        if c.counit.mul(rc) != ra.mul(&c.counit) {
            report.push("counit right A-linearity", format!("a{idx}"));
        }
    }
    // Coassociativity: (Delta (x) C) o Delta = (C (x) Delta) o Delta after
    // the canonical re-association.
    let ln = TensorProduct::over_ring(&c.square.module, &c.module)?;
    let rn = TensorProduct::over_ring(&c.module, &c.square.module)?;
    let id_c = Matrix::identity(c.module.field(), c.module.dim);
    let delta_left = c
        .square
        .map_factors(&c.comult, &id_c, &ln, "Delta (x) C")?
        .mul(&c.comult);
    let delta_right = c
        .square
        .map_factors(&id_c, &c.comult, &rn, "C (x) Delta")?
        .mul(&c.comult);
    let (fwd, _) = reassociate(&ln, &c.square, &rn, &c.square)?;
    let lhs = fwd.mul(&delta_left);
    for j in 0..c.module.dim {
        if lhs.col(j) != delta_right.col(j) {
            report.push("coassociativity", format!("basis element {j}"));
            break;
        }
    }
    // Counit laws: (eps (x) C) o Delta = id = (C (x) eps) o Delta.
    let a_reg = Bimodule::regular(a);
    let ac = TensorProduct::over_ring(&a_reg, &c.module)?;
    let ca = TensorProduct::over_ring(&c.module, &a_reg)?;
    let eps_left = c.square.map_factors(&c.counit, &id_c, &ac, "eps (x) C")?;
    let eps_right = c.square.map_factors(&id_c, &c.counit, &ca, "C (x) eps")?;
    let (col_l, _) = collapse_left(&ac)?;
    let (col_r, _) = collapse_right(&ca)?;
    let left_law = col_l.mul(&eps_left).mul(&c.comult);
    let right_law = col_r.mul(&eps_right).mul(&c.comult);
    for j in 0..c.module.dim {
        if left_law.col(j) != id_c.col(j) {
            report.push("left counit law", format!("basis element {j}"));
            break;
        }
    }
    for j in 0..c.module.dim {
        if right_law.col(j) != id_c.col(j) {
            report.push("right counit law", format!("basis element {j}"));
            break;
        }
    }
    Ok(report)
}

/// An A-bilinear map of corings compatible with the structure maps.
#[derive(Clone, Debug, PartialEq)]
pub struct CoringMorphism {
    pub source: Coring,
    pub target: Coring,
    pub matrix: Matrix,
}

impl CoringMorphism {
    pub fn new(source: Coring, target: Coring, matrix: Matrix) -> Result<CoringMorphism> {
        let m = CoringMorphism {
            source,
            target,
            matrix,
        };
        let report = m.validate()?;
        if !report.ok() {
            let v = &report.violations[0];
            return Err(Error::Invalid(format!(
                "coring morphism fails: {} at {}",
                v.law, v.witness
            )));
        }
        Ok(m)
    }

    pub fn validate(&self) -> Result<CheckReport> {
        check_coring_morphism(&self.source, &self.target, &self.matrix)
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.rank() == self.matrix.rows()
    }
}

/// Checks that `matrix` is A-bilinear, counit-preserving and compatible with
/// the comultiplications.
pub fn check_coring_morphism(
    source: &Coring,
    target: &Coring,
    matrix: &Matrix,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("coring morphism");
    if source.algebra != target.algebra {
        report.push("base algebra", "source and target differ");
        return Ok(report);
    }
    if matrix.rows() != target.module.dim || matrix.cols() != source.module.dim {
        report.push("shape", "matrix shape mismatch");
        return Ok(report);
    }
    for idx in 0..source.algebra.dim {
        if matrix.mul(&source.module.left_action[idx])
            != target.module.left_action[idx].mul(matrix)
        {
            report.push("left A-linearity", format!("a{idx}"));
        }
        if matrix.mul(&source.module.right_action[idx])
            != target.module.right_action[idx].mul(matrix)
        {
            report.push("right A-linearity", format!("a{idx}"));
        }
    }
    if target.counit.mul(matrix) != source.counit {
        report.push("counit preservation", "eps_D o phi != eps_C");
    }
    let phi_phi = source
        .square
        .map_factors(matrix, matrix, &target.square, "phi (x) phi")?;
    let lhs = target.comult.mul(matrix);
    let rhs = phi_phi.mul(&source.comult);
    for j in 0..source.module.dim {
        if lhs.col(j) != rhs.col(j) {
            report.push(
                "comultiplication compatibility",
                format!("basis element {j}"),
            );
            break;
        }
    }
    Ok(report)
}

/// The comatrix coring `Sigma* (x)_B Sigma` of a bimodule with a dual basis.
#[derive(Clone, Debug)]
pub struct ComatrixCoring {
    pub ctx: MoritaContext,
    /// `Sigma* (x)_B Sigma` as an explicit tensor product.
    pub tensor: TensorProduct,
    pub coring: Coring,
}

impl ComatrixCoring {
    pub fn new(ctx: MoritaContext) -> Result<ComatrixCoring> {
        let sigma = &ctx.sigma;
        let dual = &ctx.dual;
        let field = sigma.field();
        let tensor = TensorProduct::over_ring(&dual.module, sigma)?;
        let module = tensor.module.clone();
        let square = TensorProduct::over_ring(&module, &module)?;
        let dstar = dual.module.dim;
        let m = sigma.dim;
        // Dual-basis elements expressed in the canonical functional basis.
        let mut db_coords = Vec::with_capacity(ctx.dual_basis.len());
        for (e, f) in &ctx.dual_basis.pairs {
            db_coords.push((e.clone(), dual.coords_of(f)?));
        }
        // Delta(u* (x) u) = sum_i (u* (x) e_i) (x)_A (e_i* (x) u).
        let mut comult_ambient = Matrix::zeros(field, square.dim(), dstar * m);
        for t in 0..dstar {
            let ustar = basis_vec(field, dstar, t);
            for b in 0..m {
                let u = basis_vec(field, m, b);
                let mut acc = vec![field.zero(); square.dim()];
                for (e, estar) in &db_coords {
                    let first = tensor.pure(&ustar, e);
                    let second = tensor.pure(estar, &u);
                    let term = square.pure(&first, &second);
                    for (a, v) in acc.iter_mut().zip(term) {
                        *a = a.add(&v);
                    }
                }
                for r in 0..square.dim() {
                    comult_ambient.set(r, t * m + b, acc[r].clone());
                }
            }
        }
        let comult = tensor.space.induce(&comult_ambient, "comatrix comultiplication")?;
        // eps(u* (x) u) = u*(u).
        let a_dim = sigma.right.dim;
        let mut counit_ambient = Matrix::zeros(field, a_dim, dstar * m);
        for t in 0..dstar {
            for b in 0..m {
                let val = dual.functionals[t].apply(&sigma.basis_element(b));
                for r in 0..a_dim {
                    counit_ambient.set(r, t * m + b, val[r].clone());
                }
            }
        }
        let counit = tensor.space.induce(&counit_ambient, "comatrix counit")?;
        let coring = Coring::new(module, comult, counit)?;
        Ok(ComatrixCoring {
            ctx,
            tensor,
            coring,
        })
    }

    /// Builds from a bare bimodule, computing the canonical dual basis.
    pub fn from_bimodule(sigma: &Bimodule) -> Result<ComatrixCoring> {
        ComatrixCoring::new(MoritaContext::new(sigma)?)
    }

    /// Image of a pure tensor `u* (x) u` in the coring.
    pub fn pure(&self, ustar: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        self.tensor.pure(ustar, u)
    }
}

/// The Sweedler coring `S (x)_B S` of a ring extension, with
/// `Delta(s (x) s') = s (x) 1 (x) 1 (x) s'` and multiplication as counit.
#[derive(Clone, Debug)]
pub struct SweedlerCoring {
    pub extension: RingExtension,
    pub tensor: TensorProduct,
    pub coring: Coring,
}

impl SweedlerCoring {
    pub fn new(extension: &RingExtension) -> Result<SweedlerCoring> {
        let s = &extension.morphism.target;
        let field = s.field;
        let s_left = Bimodule::regular(s).restrict_right(&extension.morphism)?;
        let s_right = Bimodule::regular(s).restrict_left(&extension.morphism)?;
        let tensor = TensorProduct::over_ring(&s_left, &s_right)?;
        let module = tensor.module.clone();
        let square = TensorProduct::over_ring(&module, &module)?;
        let n = s.dim;
        let mut comult_ambient = Matrix::zeros(field, square.dim(), n * n);
        for i in 0..n {
            for j in 0..n {
                let first = tensor.pure(&s.basis_element(i), &s.unit);
                let second = tensor.pure(&s.unit, &s.basis_element(j));
                let term = square.pure(&first, &second);
                for r in 0..square.dim() {
                    comult_ambient.set(r, i * n + j, term[r].clone());
                }
            }
        }
        let comult = tensor.space.induce(&comult_ambient, "sweedler comultiplication")?;
        let mut counit_ambient = Matrix::zeros(field, n, n * n);
        for i in 0..n {
            for j in 0..n {
                let prod = s.mul(&s.basis_element(i), &s.basis_element(j));
                for r in 0..n {
                    counit_ambient.set(r, i * n + j, prod[r].clone());
                }
            }
        }
        let counit = tensor.space.induce(&counit_ambient, "sweedler counit")?;
        let coring = Coring::new(module, comult, counit)?;
        Ok(SweedlerCoring {
            extension: extension.clone(),
            tensor,
            coring,
        })
    }

    /// The Sweedler coring of the extension `lambda: B -> End_A(Sigma)`.
    pub fn of_endo_ring(endo: &EndoRing) -> Result<SweedlerCoring> {
        SweedlerCoring::new(&endo.extension)
    }

    pub fn pure(&self, s: &[Scalar], t: &[Scalar]) -> Vec<Scalar> {
        self.tensor.pure(s, t)
    }
}

/// The left comatrix coring `Lambda (x)_B *Lambda` of an `(A, B)`-bimodule
/// that is finitely generated projective on the left, together with the
/// canonical isomorphism from the right comatrix coring of `Sigma = *Lambda`.
pub struct LeftComatrix {
    pub lambda_module: Bimodule,
    pub star: DualModule,
    /// Left dual basis pairs `(f_j, *f_j)`.
    pub left_db: Vec<(Vec<Scalar>, Matrix)>,
    pub tensor: TensorProduct,
    pub coring: Coring,
    /// The right comatrix coring built on `Sigma = *Lambda`.
    pub comatrix: ComatrixCoring,
    /// Isomorphism `Sigma* (x)_B Sigma -> Lambda (x)_B *Lambda`.
    pub iso: CoringMorphism,
}

/// Builds the left comatrix coring and verifies the canonical isomorphism
/// `u* (x) *v -> (sum_j u*(*f_j) f_j) (x) *v`.
pub fn left_comatrix_coring(lambda: &Bimodule) -> Result<LeftComatrix> {
    let field = lambda.field();
    let star = left_dual(lambda)?;
    let left_db = compute_left_dual_basis(lambda)?;
    // D = Lambda (x)_B *Lambda with Delta(l (x) phi) = sum_j (l (x) *f_j) (x)_A (f_j (x) phi)
    // and eps(l (x) phi) = phi(l).
    let tensor = TensorProduct::over_ring(lambda, &star.module)?;
    let module = tensor.module.clone();
    let square = TensorProduct::over_ring(&module, &module)?;
    let l_dim = lambda.dim;
    let s_dim = star.module.dim;
    let mut db_coords = Vec::with_capacity(left_db.len());
    for (fj, fjstar) in &left_db {
        db_coords.push((fj.clone(), star.coords_of(fjstar)?));
    }
    let mut comult_ambient = Matrix::zeros(field, square.dim(), l_dim * s_dim);
    for i in 0..l_dim {
        let l = basis_vec(field, l_dim, i);
        for t in 0..s_dim {
            let phi = basis_vec(field, s_dim, t);
            let mut acc = vec![field.zero(); square.dim()];
            for (fj, fjstar) in &db_coords {
                let first = tensor.pure(&l, fjstar);
                let second = tensor.pure(fj, &phi);
                let term = square.pure(&first, &second);
                for (a, v) in acc.iter_mut().zip(term) {
                    *a = a.add(&v);
                }
            }
            for r in 0..square.dim() {
                comult_ambient.set(r, i * s_dim + t, acc[r].clone());
            }
        }
    }
    let comult = tensor.space.induce(&comult_ambient, "left comatrix comultiplication")?;
    let a_dim = lambda.left.dim;
    let mut counit_ambient = Matrix::zeros(field, a_dim, l_dim * s_dim);
    for i in 0..l_dim {
        for t in 0..s_dim {
            let val = star.functionals[t].apply(&lambda.basis_element(i));
            for r in 0..a_dim {
                counit_ambient.set(r, i * s_dim + t, val[r].clone());
            }
        }
    }
    let counit = tensor.space.induce(&counit_ambient, "left comatrix counit")?;
    let coring = Coring::new(module, comult, counit)?;
    // Right comatrix coring of Sigma = *Lambda, whose right dual basis is
    // {(*f_j, f_j*)} with f_j*(u) = u(f_j).
    let sigma = star.module.clone();
    let sigma_dual = crate::bimodule::right_dual(&sigma)?;
    let mut pairs = Vec::with_capacity(db_coords.len());
    for (fj, fjstar_coords) in &db_coords {
        // f_j*(u) = u(f_j): as a matrix it evaluates functional coordinates
        // at the fixed element f_j.
        let mut fstar = Matrix::zeros(field, lambda.left.dim, s_dim);
        for t in 0..s_dim {
            let val = star.functionals[t].apply(fj);
            for r in 0..lambda.left.dim {
                fstar.set(r, t, val[r].clone());
            }
        }
        pairs.push((fjstar_coords.clone(), fstar));
    }
    let db = DualBasis::new(&sigma, pairs)?;
    let comatrix = ComatrixCoring::new(MoritaContext::with_dual_basis(&sigma, db)?)?;
    // Isomorphism u* (x) *v -> (sum_j u*(*f_j) f_j) (x) *v on ambient pairs.
    let sd_dim = sigma_dual.module.dim;
    let mut iso_ambient = Matrix::zeros(field, coring.module.dim, sd_dim * s_dim);
    for t in 0..sd_dim {
        for v in 0..s_dim {
            let mut elem = vec![field.zero(); l_dim];
            for (fj, fjstar_coords) in &db_coords {
                // u*(*f_j) is an element of A acting on f_j from the left.
                let val = sigma_dual.functionals[t].apply(fjstar_coords);
                let term = lambda.act_left(&val, fj);
                for (a, x) in elem.iter_mut().zip(term) {
                    *a = a.add(&x);
                }
            }
            let img = tensor.pure(&elem, &basis_vec(field, s_dim, v));
            for r in 0..coring.module.dim {
                iso_ambient.set(r, t * s_dim + v, img[r].clone());
            }
        }
    }
    let iso_matrix = comatrix
        .tensor
        .space
        .induce(&iso_ambient, "left comatrix isomorphism")?;
    let iso = CoringMorphism::new(comatrix.coring.clone(), coring.clone(), iso_matrix)?;
    if !iso.is_bijective() {
        return Err(Error::IllDefined("left comatrix isomorphism is not bijective".into()));
    }
    Ok(LeftComatrix {
        lambda_module: lambda.clone(),
        star,
        left_db,
        tensor,
        coring,
        comatrix,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraMorphism;
    use crate::field::Field;
    use crate::subspace::Subspace;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn free_k2() -> Bimodule {
        Bimodule::free(&Algebra::ground(f2()), 2)
    }

    fn sweedler_sigma() -> Bimodule {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        let (_, incl) = a.subalgebra(&span).unwrap();
        Bimodule::regular(&a).restrict_left(&incl).unwrap()
    }

    #[test]
    fn trivial_comatrix_coring_is_the_algebra() {
        // Sigma = A free of rank 1 with B = A: C ~ A as the trivial coring.
        let a = Algebra::matrix_algebra(f2(), 2);
        let sigma = Bimodule::regular(&a);
        let cm = ComatrixCoring::from_bimodule(&sigma).unwrap();
        assert_eq!(cm.coring.dim(), a.dim);
        // eps is then an isomorphism C -> A.
        assert_eq!(cm.coring.counit.rank(), a.dim);
    }

    #[test]
    fn free_fixture_counit_is_the_trace_pairing() {
        // EX-FREE: Sigma = F_2^2 over A = B = F_2: dim C = 4 and
        // eps(e_i* (x) e_j) = delta_ij.
        let cm = ComatrixCoring::from_bimodule(&free_k2()).unwrap();
        assert_eq!(cm.coring.dim(), 4);
        assert_eq!(
            cm.coring.counit,
            Matrix::from_ints(f2(), 1, 4, &[1, 0, 0, 1])
        );
    }

    #[test]
    fn comatrix_coring_axioms_hold_on_the_sweedler_fixture() {
        let cm = ComatrixCoring::from_bimodule(&sweedler_sigma()).unwrap();
        assert_eq!(cm.coring.dim(), 8);
        assert!(check_coring_axioms(&cm.coring).unwrap().ok());
    }

    #[test]
    fn sweedler_coring_of_trivial_extension_is_the_algebra() {
        let a = Algebra::matrix_algebra(f2(), 2);
        let id = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::identity(f2(), 4)).unwrap();
        let sw = SweedlerCoring::new(&RingExtension::new(id)).unwrap();
        assert_eq!(sw.coring.dim(), a.dim);
    }

    #[test]
    fn sweedler_coring_of_diagonal_extension_has_dimension_eight_and_unit_counit() {
        // dim(S (x)_B S) = 8: the relation span has rank 8 inside the
        // 16-dimensional plain tensor square.
        let sigma = sweedler_sigma();
        let endo = EndoRing::new(&sigma).unwrap();
        let sw = SweedlerCoring::of_endo_ring(&endo).unwrap();
        assert_eq!(sw.tensor.space.kernel.dim(), 8);
        assert_eq!(sw.coring.dim(), 8);
        // eps(1 (x) 1) = 1.
        let s = &endo.algebra;
        let one = sw.pure(&s.unit, &s.unit);
        assert_eq!(sw.coring.counit.apply(&one), s.unit);
    }

    #[test]
    fn corrupted_comultiplication_is_located() {
        let cm = ComatrixCoring::from_bimodule(&free_k2()).unwrap();
        let mut bad = cm.coring.clone();
        let flipped = bad.comult.at(0, 0).add(&f2().one());
        bad.comult.set(0, 0, flipped);
        let report = check_coring_axioms(&bad).unwrap();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law.contains("coassociativity") || v.law.contains("counit")));
        // The witness names a basis element.
        assert!(report.violations.iter().any(|v| v.witness.contains("basis")));
    }

    #[test]
    fn zero_counit_breaks_the_counit_laws() {
        let cm = ComatrixCoring::from_bimodule(&free_k2()).unwrap();
        let mut bad = cm.coring.clone();
        bad.counit = Matrix::zeros(f2(), 1, 4);
        let report = check_coring_axioms(&bad).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "left counit law" || v.law == "right counit law"));
    }

    #[test]
    fn left_comatrix_iso_on_trivial_rank_one() {
        // Lambda = A free of rank 1: the isomorphism is the canonical
        // identification.
        let a = Algebra::matrix_algebra(f2(), 2);
        let lam = Bimodule::regular(&a);
        let lc = left_comatrix_coring(&lam).unwrap();
        assert!(lc.iso.is_bijective());
        assert_eq!(lc.coring.dim(), lc.comatrix.coring.dim());
    }

    #[test]
    fn left_comatrix_iso_on_free_rank_two() {
        // Lambda = A^2 over F_2: 4-dimensional corings, explicit isomorphism
        // verified invertible by rank.
        let lam = free_k2();
        let lc = left_comatrix_coring(&lam).unwrap();
        assert_eq!(lc.coring.dim(), 4);
        assert_eq!(lc.comatrix.coring.dim(), 4);
        assert_eq!(lc.iso.matrix.rank(), 4);
    }

    #[test]
    fn left_comatrix_rejects_non_projective_modules() {
        // F_2[x]/(x^2) acting on k from the left; not projective.
        let field = f2();
        let one = field.one();
        let zero = field.zero();
        let constants = vec![
            vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]],
            vec![vec![zero.clone(), one.clone()], vec![zero.clone(), zero.clone()]],
        ];
        let dual_numbers = Algebra::new(
            field,
            vec!["1".into(), "x".into()],
            constants,
            vec![one, zero],
        )
        .unwrap();
        let k = Algebra::ground(field);
        let lam = Bimodule::new(
            dual_numbers,
            k,
            1,
            vec![Matrix::identity(field, 1), Matrix::zeros(field, 1, 1)],
            vec![Matrix::identity(field, 1)],
        )
        .unwrap();
        assert!(matches!(
            left_comatrix_coring(&lam),
            Err(Error::NotProjective(_))
        ));
    }

    #[test]
    fn opposite_coring_axioms_hold() {
        let cm = ComatrixCoring::from_bimodule(&sweedler_sigma()).unwrap();
        let opp = cm.coring.opposite().unwrap();
        assert_eq!(opp.dim(), cm.coring.dim());
        assert!(check_coring_axioms(&opp).unwrap().ok());
    }
}

//! Finite-dimensional associative unital algebras given by structure
//! constants, their morphisms, opposites and ring extensions.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{basis_vec, Matrix};
use crate::subspace::{kernel, Subspace};

/// A structure-constant report entry naming a violated law and its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

/// Outcome of an axiom check; `ok` iff no violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub subject: String,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> CheckReport {
        CheckReport {
            subject: subject.into(),
            violations: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.into(),
        });
    }
}

/// A finite-dimensional associative unital algebra over an exact field.
///
/// Multiplication is recorded as structure constants: `b_i b_j = sum_k
/// c[i][j][k] b_k`. Basis labels are carried for reporting only and do not
/// participate in equality.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `constants[i][j]` is the coordinate vector of `b_i * b_j`.
    pub constants: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.constants == other.constants
            && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Validated constructor.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        constants: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Algebra> {
        let a = Algebra::new_unchecked(field, labels, constants, unit);
        let report = a.validate();
        if !report.ok() {
            let v = &report.violations[0];
            return Err(Error::Invalid(format!(
                "algebra axioms fail: {} at {}",
                v.law, v.witness
            )));
        }
        Ok(a)
    }

    pub fn new_unchecked(
        field: Field,
        labels: Vec<String>,
        constants: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Algebra {
        let dim = unit.len();
        assert_eq!(constants.len(), dim);
        for row in &constants {
            assert_eq!(row.len(), dim);
            for c in row {
                assert_eq!(c.len(), dim);
            }
        }
        let labels = if labels.len() == dim {
            labels
        } else {
            (0..dim).map(|i| format!("b{i}")).collect()
        };
        Algebra {
            field,
            dim,
            labels,
            constants,
            unit,
        }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        Algebra {
            field,
            dim: 1,
            labels: vec!["1".into()],
            constants: vec![vec![vec![field.one()]]],
            unit: vec![field.one()],
        }
    }

    /// The full matrix algebra `M_n` with matrix-unit basis `E_ij` at index
    /// `i * n + j`, so `E_ij E_kl = delta_jk E_il`.
    pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
        let dim = n * n;
        let mut constants = vec![vec![vec![field.zero(); dim]; dim]; dim];
        let mut labels = vec![String::new(); dim];
        for i in 0..n {
            for j in 0..n {
                labels[i * n + j] = format!("E{}{}", i + 1, j + 1);
                for k in 0..n {
                    for l in 0..n {
                        if j == k {
                            constants[i * n + j][k * n + l][i * n + l] = field.one();
                        }
                    }
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        Algebra {
            field,
            dim,
            labels,
            constants,
            unit,
        }
    }

    /// Direct product with componentwise multiplication.
    pub fn product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
        if a.field != b.field {
            return Err(Error::FieldMismatch("product of algebras".into()));
        }
        let field = a.field;
        let dim = a.dim + b.dim;
        let mut constants = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    constants[i][j][k] = a.constants[i][j][k].clone();
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    constants[a.dim + i][a.dim + j][a.dim + k] = b.constants[i][j][k].clone();
                }
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        let mut labels: Vec<String> = a.labels.iter().map(|l| format!("l.{l}")).collect();
        labels.extend(b.labels.iter().map(|l| format!("r.{l}")));
        Algebra::new(field, labels, constants, unit)
    }

    /// Multiplies two elements given by coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![self.field.zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].mul(&y[j]);
                for k in 0..self.dim {
                    let s = &self.constants[i][j][k];
                    if !s.is_zero() {
                        out[k] = out[k].add(&c.mul(s));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(x, &basis_vec(self.field, self.dim, j));
            for k in 0..self.dim {
                m.set(k, j, col[k].clone());
            }
        }
        m
    }

    /// Matrix of right multiplication by `y`.
    pub fn right_mult(&self, y: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let col = self.mul(&basis_vec(self.field, self.dim, i), y);
            for k in 0..self.dim {
                m.set(k, i, col[k].clone());
            }
        }
        m
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        basis_vec(self.field, self.dim, i)
    }

    /// Checks associativity on all basis triples and both unit laws.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("algebra");
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let left = self.mul(&self.constants[i][j], &self.basis_element(k));
                    let right = self.mul(&self.basis_element(i), &self.constants[j][k]);
                    if left != right {
                        report.push(
                            "associativity",
                            format!(
                                "({} {}) {} != {} ({} {})",
                                self.labels[i],
                                self.labels[j],
                                self.labels[k],
                                self.labels[i],
                                self.labels[j],
                                self.labels[k]
                            ),
                        );
                    }
                }
            }
        }
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.mul(&self.unit, &e) != e {
                report.push("left unit law", format!("1 * {}", self.labels[i]));
            }
            if self.mul(&e, &self.unit) != e {
                report.push("right unit law", format!("{} * 1", self.labels[i]));
            }
        }
        report
    }

    /// Opposite algebra: structure constants transposed in the first two
    /// indices, same unit.
    pub fn opposite(&self) -> Algebra {
        let mut constants = vec![vec![vec![self.field.zero(); self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                constants[i][j] = self.constants[j][i].clone();
            }
        }
        Algebra {
            field: self.field,
            dim: self.dim,
            labels: self.labels.clone(),
            constants,
            unit: self.unit.clone(),
        }
    }

    /// Subalgebra on a subspace that contains the unit and is closed under
    /// multiplication. Returns the algebra on the canonical (RREF) basis and
    /// the inclusion morphism.
    pub fn subalgebra(&self, space: &Subspace) -> Result<(Algebra, AlgebraMorphism)> {
        if space.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("subalgebra ambient".into()));
        }
        let Some(unit) = space.coords_of(&self.unit) else {
            return Err(Error::MissingUnit);
        };
        let basis = space.basis_vectors();
        let d = basis.len();
        let mut constants = vec![vec![vec![self.field.zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&basis[i], &basis[j]);
                let Some(coords) = space.coords_of(&prod) else {
                    return Err(Error::NotClosed);
                };
                constants[i][j] = coords;
            }
        }
        let sub = Algebra::new(self.field, Vec::new(), constants, unit)?;
        // Inclusion: columns are the basis vectors of the subspace.
        let mut incl = Matrix::zeros(self.field, self.dim, d);
        for (j, v) in basis.iter().enumerate() {
            for i in 0..self.dim {
                incl.set(i, j, v[i].clone());
            }
        }
        let morphism = AlgebraMorphism::new(sub.clone(), self.clone(), incl)?;
        Ok((sub, morphism))
    }

    /// Subalgebra generated by the given elements (closure under products).
    pub fn subalgebra_generated(&self, generators: &[Vec<Scalar>]) -> Result<(Algebra, AlgebraMorphism)> {
        let mut vecs = vec![self.unit.clone()];
        vecs.extend(generators.iter().cloned());
        let mut space = Subspace::from_span(self.field, self.dim, &vecs);
        loop {
            let basis = space.basis_vectors();
            let mut next = basis.clone();
            for x in &basis {
                for y in &basis {
                    next.push(self.mul(x, y));
                }
            }
            let grown = Subspace::from_span(self.field, self.dim, &next);
            if grown == space {
                break;
            }
            space = grown;
        }
        self.subalgebra(&space)
    }
}

/// A linear map between algebras, stored as a `target.dim x source.dim`
/// matrix; validated to be unital and multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub source: Algebra,
    pub target: Algebra,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Algebra, target: Algebra, matrix: Matrix) -> Result<AlgebraMorphism> {
        let m = AlgebraMorphism {
            source,
            target,
            matrix,
        };
        let report = m.validate();
        if !report.ok() {
            let v = &report.violations[0];
            return Err(Error::Invalid(format!(
                "algebra morphism fails: {} at {}",
                v.law, v.witness
            )));
        }
        Ok(m)
    }

    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("algebra morphism");
        if self.matrix.rows() != self.target.dim || self.matrix.cols() != self.source.dim {
            report.push("shape", "matrix shape mismatch");
            return report;
        }
        if self.matrix.apply(&self.source.unit) != self.target.unit {
            report.push("unitality", "f(1) != 1");
        }
        for i in 0..self.source.dim {
            for j in 0..self.source.dim {
                let lhs = self.matrix.apply(&self.source.constants[i][j]);
                let rhs = self.target.mul(
                    &self.matrix.apply(&self.source.basis_element(i)),
                    &self.matrix.apply(&self.source.basis_element(j)),
                );
                if lhs != rhs {
                    report.push(
                        "multiplicativity",
                        format!("f(b{i} b{j}) != f(b{i}) f(b{j})"),
                    );
                }
            }
        }
        report
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x)
    }

    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if inner.target != self.source {
            return Err(Error::Invalid("morphism composition mismatch".into()));
        }
        AlgebraMorphism::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }

    /// Image of the morphism as a canonical subspace of the target.
    pub fn image(&self) -> Subspace {
        crate::subspace::image(&self.matrix)
    }
}

/// A ring extension `B -> S`, with injectivity computed from the kernel.
#[derive(Clone, Debug)]
pub struct RingExtension {
    pub morphism: AlgebraMorphism,
    pub injective: bool,
}

impl RingExtension {
    pub fn new(morphism: AlgebraMorphism) -> RingExtension {
        let injective = kernel(&morphism.matrix).dim() == 0;
        RingExtension {
            morphism,
            injective,
        }
    }
}

/// Report-valued algebra validation.
pub fn validate_algebra(a: &Algebra) -> CheckReport {
    a.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn ground_field_is_a_valid_algebra() {
        let a = Algebra::ground(f2());
        assert!(a.validate().ok());
        assert_eq!(a.dim, 1);
    }

    #[test]
    fn matrix_algebra_satisfies_all_axioms() {
        // Direct check of all 4^3 structure-constant triples for M_2(F_2).
        let a = Algebra::matrix_algebra(f2(), 2);
        assert!(a.validate().ok());
        // E_12 E_21 = E_11, E_12 E_12 = 0.
        let e12 = a.basis_element(1);
        let e21 = a.basis_element(2);
        assert_eq!(a.mul(&e12, &e21), a.basis_element(0));
        assert!(a.mul(&e12, &e12).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn corrupted_constants_report_the_violated_triple() {
        let mut a = Algebra::matrix_algebra(f2(), 2);
        // Flip c[0][0][0]: E_11 E_11 becomes 0 instead of E_11.
        a.constants[0][0][0] = f2().zero();
        let report = a.validate();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "associativity" || v.law.contains("unit")));
        // Re-check a specific broken triple: (E11 E11) E12 = 0 but
        // E11 (E11 E12) = E12 under the corrupted constants.
        let left = a.mul(&a.constants[0][0], &a.basis_element(1));
        let right = a.mul(&a.basis_element(0), &a.constants[0][1]);
        assert_ne!(left, right);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "associativity" && v.witness.contains("E11 E11) E12")));
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = Algebra::matrix_algebra(f2(), 2);
        let opp = a.opposite();
        assert!(opp.validate().ok());
        assert_eq!(opp.opposite(), a);
        // Commutative algebra: opposite is identical.
        let c = Algebra::product(&Algebra::ground(f2()), &Algebra::ground(f2())).unwrap();
        assert_eq!(c.opposite(), c);
    }

    #[test]
    fn opposite_reverses_triangular_products() {
        // In upper-triangular 2x2 over F_3 (basis E11, E12, E22):
        // E11 E12 = E12 but E12 E11 = 0; the opposite swaps them.
        let f3 = Field::prime(3).unwrap();
        let m = Algebra::matrix_algebra(f3, 2);
        let span = Subspace::from_span(
            f3,
            4,
            &[m.basis_element(0), m.basis_element(1), m.basis_element(3)],
        );
        let (t, _) = m.subalgebra(&span).unwrap();
        assert!(t.validate().ok());
        let opp = t.opposite();
        // Find the E11 and E12 representatives in the canonical basis.
        let e11 = span.coords_of(&m.basis_element(0)).unwrap();
        let e12 = span.coords_of(&m.basis_element(1)).unwrap();
        assert_eq!(t.mul(&e11, &e12), e12);
        assert!(t.mul(&e12, &e11).iter().all(|x| x.is_zero()));
        assert_eq!(opp.mul(&e12, &e11), e12);
        assert!(opp.mul(&e11, &e12).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn diagonal_subalgebra_is_the_square_of_the_ground_field() {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        let (d, incl) = a.subalgebra(&span).unwrap();
        assert!(d.validate().ok());
        assert_eq!(d.dim, 2);
        // The two idempotents multiply to zero and square to themselves.
        let e1 = d.basis_element(0);
        let e2 = d.basis_element(1);
        assert_eq!(d.mul(&e1, &e1), e1);
        assert_eq!(d.mul(&e2, &e2), e2);
        assert!(d.mul(&e1, &e2).iter().all(|x| x.is_zero()));
        let square = Algebra::product(&Algebra::ground(f2()), &Algebra::ground(f2())).unwrap();
        assert_eq!(d.constants, square.constants);
        assert!(incl.validate().ok());
    }

    #[test]
    fn span_without_unit_is_rejected() {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(1)]);
        assert!(matches!(a.subalgebra(&span), Err(Error::MissingUnit)));
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let a = Algebra::matrix_algebra(f2(), 2);
        // span{1, E_12 + E_21} is not closed: (E12+E21)^2 = E11+E22 = 1, ok;
        // use span{1, E_11} closed... pick span{1, E_12, E_21} instead:
        // E_12 E_21 = E_11 which is outside.
        let mut one = vec![f2().zero(); 4];
        one[0] = f2().one();
        one[3] = f2().one();
        let span = Subspace::from_span(f2(), 4, &[one, a.basis_element(1), a.basis_element(2)]);
        assert!(matches!(a.subalgebra(&span), Err(Error::NotClosed)));
    }

    #[test]
    fn morphism_composition_preserves_validity() {
        let k = Algebra::ground(f2());
        let a = Algebra::matrix_algebra(f2(), 2);
        let unit_map = AlgebraMorphism::new(
            k.clone(),
            a.clone(),
            Matrix::from_col(f2(), &a.unit),
        )
        .unwrap();
        let id = AlgebraMorphism::new(k.clone(), k.clone(), Matrix::identity(f2(), 1)).unwrap();
        let composed = unit_map.compose(&id).unwrap();
        assert_eq!(composed.matrix, unit_map.matrix);
        let ext = RingExtension::new(unit_map);
        assert!(ext.injective);
    }
}

//! Bimodules over finite-dimensional algebras, their duals and dual bases.
//!
//! A `(B, A)`-bimodule is a vector space with one matrix per basis element of
//! each acting algebra. Functionals (elements of a dual) are stored as
//! matrices into the value algebra's coordinate space, so every hom-space
//! computation is plain linear algebra.

use crate::algebra::{Algebra, AlgebraMorphism, CheckReport};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{basis_vec, Matrix};
use crate::subspace::{kernel, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub left: Algebra,
    pub right: Algebra,
    pub dim: usize,
    /// One `dim x dim` matrix per basis element of the left algebra.
    pub left_action: Vec<Matrix>,
    /// One `dim x dim` matrix per basis element of the right algebra.
    pub right_action: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        left: Algebra,
        right: Algebra,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Bimodule> {
        let m = Bimodule::new_unchecked(left, right, dim, left_action, right_action);
        let report = m.validate();
        if !report.ok() {
            let v = &report.violations[0];
            return Err(Error::Invalid(format!(
                "bimodule axioms fail: {} at {}",
                v.law, v.witness
            )));
        }
        Ok(m)
    }

    pub fn new_unchecked(
        left: Algebra,
        right: Algebra,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Bimodule {
        assert_eq!(left_action.len(), left.dim);
        assert_eq!(right_action.len(), right.dim);
        Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        }
    }

    pub fn field(&self) -> Field {
        self.left.field
    }

    /// The regular `(A, A)`-bimodule on `A` itself.
    pub fn regular(a: &Algebra) -> Bimodule {
        let left_action = (0..a.dim).map(|i| a.left_mult(&a.basis_element(i))).collect();
        let right_action = (0..a.dim).map(|i| a.right_mult(&a.basis_element(i))).collect();
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            dim: a.dim,
            left_action,
            right_action,
        }
    }

    /// The free `(A, A)`-bimodule `A^rank` with diagonal actions.
    pub fn free(a: &Algebra, rank: usize) -> Bimodule {
        let field = a.field;
        let dim = a.dim * rank;
        let block = |m: &Matrix| {
            let mut out = Matrix::zeros(field, dim, dim);
            for r in 0..rank {
                for i in 0..a.dim {
                    for j in 0..a.dim {
                        out.set(r * a.dim + i, r * a.dim + j, m.at(i, j).clone());
                    }
                }
            }
            out
        };
        let left_action = (0..a.dim)
            .map(|i| block(&a.left_mult(&a.basis_element(i))))
            .collect();
        let right_action = (0..a.dim)
            .map(|i| block(&a.right_mult(&a.basis_element(i))))
            .collect();
        Bimodule {
            left: a.clone(),
            right: a.clone(),
            dim,
            left_action,
            right_action,
        }
    }

    /// Replaces the left algebra along a morphism `f: B -> left`.
    pub fn restrict_left(&self, f: &AlgebraMorphism) -> Result<Bimodule> {
        if f.target != self.left {
            return Err(Error::Invalid(
                "restrict_left: morphism target is not the left algebra".into(),
            ));
        }
        let left_action = (0..f.source.dim)
            .map(|i| self.left_action_of(&f.apply(&f.source.basis_element(i))))
            .collect();
        Bimodule::new(
            f.source.clone(),
            self.right.clone(),
            self.dim,
            left_action,
            self.right_action.clone(),
        )
    }

    /// Replaces the right algebra along a morphism `f: A -> right`.
    pub fn restrict_right(&self, f: &AlgebraMorphism) -> Result<Bimodule> {
        if f.target != self.right {
            return Err(Error::Invalid(
                "restrict_right: morphism target is not the right algebra".into(),
            ));
        }
        let right_action = (0..f.source.dim)
            .map(|i| self.right_action_of(&f.apply(&f.source.basis_element(i))))
            .collect();
        Bimodule::new(
            self.left.clone(),
            f.source.clone(),
            self.dim,
            self.left_action.clone(),
            right_action,
        )
    }

    /// Matrix of the left action of an arbitrary element `b`.
    pub fn left_action_of(&self, b: &[Scalar]) -> Matrix {
        let field = self.field();
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (i, c) in b.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.left_action[i].scale(c));
            }
        }
        out
    }

    /// Matrix of the right action of an arbitrary element `a`.
    pub fn right_action_of(&self, a: &[Scalar]) -> Matrix {
        let field = self.field();
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (j, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.right_action[j].scale(c));
            }
        }
        out
    }

    pub fn act_left(&self, b: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.left_action_of(b).apply(x)
    }

    pub fn act_right(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.right_action_of(a).apply(x)
    }

    /// Checks the action laws: the left action is a unital algebra morphism,
    /// the right action a unital anti-morphism, and the two commute.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("bimodule");
        let field = self.field();
        let id = Matrix::identity(field, self.dim);
        if self.left_action_of(&self.left.unit) != id {
            report.push("left unit action", "L_1 != id");
        }
        if self.right_action_of(&self.right.unit) != id {
            report.push("right unit action", "R_1 != id");
        }
        for i in 0..self.left.dim {
            for j in 0..self.left.dim {
                let composite = self.left_action[i].mul(&self.left_action[j]);
                if self.left_action_of(&self.left.constants[i][j]) != composite {
                    report.push("left action multiplicativity", format!("b{i}, b{j}"));
                }
            }
        }
        for i in 0..self.right.dim {
            for j in 0..self.right.dim {
                // x.(a_i a_j) = (x.a_i).a_j
                let composite = self.right_action[j].mul(&self.right_action[i]);
                if self.right_action_of(&self.right.constants[i][j]) != composite {
                    report.push("right action anti-multiplicativity", format!("a{i}, a{j}"));
                }
            }
        }
        for i in 0..self.left.dim {
            for j in 0..self.right.dim {
                let lr = self.left_action[i].mul(&self.right_action[j]);
                let rl = self.right_action[j].mul(&self.left_action[i]);
                if lr != rl {
                    report.push("bimodule commutation", format!("b{i}, a{j}"));
                }
            }
        }
        report
    }

    /// The opposite bimodule: a `(B, A)`-bimodule becomes an `(A^o, B^o)`-
    /// bimodule on the same space with the actions swapped.
    pub fn opposite(&self) -> Bimodule {
        Bimodule {
            left: self.right.opposite(),
            right: self.left.opposite(),
            dim: self.dim,
            left_action: self.right_action.clone(),
            right_action: self.left_action.clone(),
        }
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        basis_vec(self.field(), self.dim, i)
    }
}

/// A dual module realized concretely: the abstract bimodule structure on the
/// solution space plus one value-algebra-valued matrix per basis functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualModule {
    /// The bimodule structure carried by the dual.
    pub module: Bimodule,
    /// `functionals[i]` maps source coordinates to value-algebra coordinates.
    pub functionals: Vec<Matrix>,
    /// Flattened functional space, for expressing arbitrary functionals.
    pub space: Subspace,
}

impl DualModule {
    /// The matrix of the functional with the given coordinates.
    pub fn functional_matrix(&self, coords: &[Scalar]) -> Matrix {
        let rows = self.functionals.first().map_or(0, |f| f.rows());
        let cols = self.functionals.first().map_or(0, |f| f.cols());
        let mut out = Matrix::zeros(self.module.field(), rows, cols);
        for (c, f) in coords.iter().zip(&self.functionals) {
            if !c.is_zero() {
                out = out.add(&f.scale(c));
            }
        }
        out
    }

    /// Coordinates of a concrete functional matrix in the canonical basis.
    pub fn coords_of(&self, functional: &Matrix) -> Result<Vec<Scalar>> {
        let flat = functional.entries().to_vec();
        self.space.coords_of(&flat).ok_or_else(|| {
            Error::Invalid("functional is not in the dual space".into())
        })
    }

    /// Evaluates the functional with coordinates `f` on the vector `x`.
    pub fn eval(&self, f: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.functional_matrix(f).apply(x)
    }
}

/// The right dual `Hom(M_A, A_A)` of a `(B, A)`-bimodule, as an `(A, B)`-
/// bimodule: `(a.f)(x) = a.f(x)` and `(f.b)(x) = f(b.x)`.
pub fn right_dual(m: &Bimodule) -> Result<DualModule> {
    let a = &m.right;
    let field = m.field();
    let da = a.dim;
    let dm = m.dim;
    // Right A-linearity: F R_a = (right mult by a on A) F for every basis a.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for idx in 0..da {
        let ra_m = &m.right_action[idx];
        let ra_a = a.right_mult(&a.basis_element(idx));
        let lhs = Matrix::identity(field, da).kronecker(&ra_m.transpose());
        let rhs = ra_a.kronecker(&Matrix::identity(field, dm));
        let cond = lhs.sub(&rhs);
        for r in 0..cond.rows() {
            rows.push(cond.row(r));
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(field, da * dm)
    } else {
        kernel(&Matrix::from_rows(field, &rows))
    };
    let functionals: Vec<Matrix> = space
        .basis_vectors()
        .iter()
        .map(|flat| Matrix::new(field, da, dm, flat.clone()))
        .collect();
    let d = functionals.len();
    // Left A-action: a.f = L_a^A o F; right B-action: f.b = F o L_b^M.
    let mut left_action = Vec::with_capacity(da);
    for idx in 0..da {
        let op = a
            .left_mult(&a.basis_element(idx))
            .kronecker(&Matrix::identity(field, dm));
        left_action.push(space.restrict_endo(&op, "right dual left action")?);
    }
    let mut right_action = Vec::with_capacity(m.left.dim);
    for idx in 0..m.left.dim {
        let op = Matrix::identity(field, da).kronecker(&m.left_action[idx].transpose());
        right_action.push(space.restrict_endo(&op, "right dual right action")?);
    }
    let module = Bimodule::new(a.clone(), m.left.clone(), d, left_action, right_action)?;
    Ok(DualModule {
        module,
        functionals,
        space,
    })
}

/// The left dual `Hom(_B M, _B B)` of a `(B, A)`-bimodule, as an `(A, B)`-
/// bimodule: `(a.f)(x) = f(x.a)` and `(f.b)(x) = f(x).b`.
pub fn left_dual(m: &Bimodule) -> Result<DualModule> {
    let b = &m.left;
    let field = m.field();
    let db = b.dim;
    let dm = m.dim;
    // Left B-linearity: F L_b = (left mult by b on B) F.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for idx in 0..db {
        let lb_m = &m.left_action[idx];
        let lb_b = b.left_mult(&b.basis_element(idx));
        let lhs = Matrix::identity(field, db).kronecker(&lb_m.transpose());
        let rhs = lb_b.kronecker(&Matrix::identity(field, dm));
        let cond = lhs.sub(&rhs);
        for r in 0..cond.rows() {
            rows.push(cond.row(r));
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(field, db * dm)
    } else {
        kernel(&Matrix::from_rows(field, &rows))
    };
    let functionals: Vec<Matrix> = space
        .basis_vectors()
        .iter()
        .map(|flat| Matrix::new(field, db, dm, flat.clone()))
        .collect();
    let d = functionals.len();
    // Left A-action: a.f = F o R_a^M; right B-action: f.b = R_b^B o F.
    let mut left_action = Vec::with_capacity(m.right.dim);
    for idx in 0..m.right.dim {
        let op = Matrix::identity(field, db).kronecker(&m.right_action[idx].transpose());
        left_action.push(space.restrict_endo(&op, "left dual left action")?);
    }
    let mut right_action = Vec::with_capacity(db);
    for idx in 0..db {
        let op = b
            .right_mult(&b.basis_element(idx))
            .kronecker(&Matrix::identity(field, dm));
        right_action.push(space.restrict_endo(&op, "left dual right action")?);
    }
    let module = Bimodule::new(m.right.clone(), b.clone(), d, left_action, right_action)?;
    Ok(DualModule {
        module,
        functionals,
        space,
    })
}

/// A finite dual basis `{(e_i, e_i*)}` witnessing that the module is finitely
/// generated projective on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    /// Pairs of a module element and a functional matrix into the right
    /// algebra's coordinates.
    pub pairs: Vec<(Vec<Scalar>, Matrix)>,
}

impl DualBasis {
    /// Validates right A-linearity of each functional and the dual-basis
    /// identity on every basis vector, then wraps the pairs.
    pub fn new(sigma: &Bimodule, pairs: Vec<(Vec<Scalar>, Matrix)>) -> Result<DualBasis> {
        let db = DualBasis { pairs };
        let report = db.validate(sigma);
        if !report.ok() {
            let v = &report.violations[0];
            return Err(Error::Invalid(format!(
                "dual basis invalid: {} at {}",
                v.law, v.witness
            )));
        }
        Ok(db)
    }

    pub fn validate(&self, sigma: &Bimodule) -> CheckReport {
        let mut report = CheckReport::new("dual basis");
        let a = &sigma.right;
        for (i, (_, f)) in self.pairs.iter().enumerate() {
            for idx in 0..a.dim {
                let lhs = f.mul(&sigma.right_action[idx]);
                let rhs = a.right_mult(&a.basis_element(idx)).mul(f);
                if lhs != rhs {
                    report.push("right A-linearity", format!("e{i}*, a{idx}"));
                }
            }
        }
        for b in 0..sigma.dim {
            let x = sigma.basis_element(b);
            let mut acc = vec![sigma.field().zero(); sigma.dim];
            for (e, f) in &self.pairs {
                let val = f.apply(&x);
                let term = sigma.act_right(e, &val);
                for (t, v) in acc.iter_mut().zip(term) {
                    *t = t.add(&v);
                }
            }
            if acc != x {
                report.push("dual basis identity", format!("basis vector {b}"));
            }
        }
        report
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Finds generators of the module as a right A-module by a greedy sweep over
/// the standard basis, then solves the linear system for the functionals of a
/// dual basis. Errors with `NotProjective` when no solution exists.
///
/// `n_hint` pads the generating set with further standard basis vectors, so
/// redundant dual bases can be produced deterministically.
pub fn compute_dual_basis(sigma: &Bimodule, n_hint: Option<usize>) -> Result<DualBasis> {
    let dual = right_dual(sigma)?;
    let mut gens = greedy_right_generators(sigma);
    if let Some(n) = n_hint {
        let mut idx = 0;
        while gens.len() < n && idx < sigma.dim {
            gens.push(sigma.basis_element(idx));
            idx += 1;
        }
    }
    match solve_dual_basis(sigma, &dual, &gens) {
        Some(db) => Ok(db),
        None => {
            // One generating set suffices to decide projectivity over a
            // field, but fall back to the full basis before giving up.
            let full: Vec<Vec<Scalar>> = (0..sigma.dim).map(|i| sigma.basis_element(i)).collect();
            solve_dual_basis(sigma, &dual, &full).ok_or_else(|| {
                Error::NotProjective(
                    "no dual basis exists for any generating set".into(),
                )
            })
        }
    }
}

/// Deterministic candidate pool for generator sweeps: standard basis vectors,
/// sums of two of them, and the all-ones vector. Sums are needed to find
/// cyclic generators like the unit of a regular module.
fn generator_pool(field: Field, dim: usize) -> Vec<Vec<Scalar>> {
    let mut pool: Vec<Vec<Scalar>> = (0..dim).map(|i| basis_vec(field, dim, i)).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut v = basis_vec(field, dim, i);
            v[j] = field.one();
            pool.push(v);
        }
    }
    if dim > 2 {
        pool.push(vec![field.one(); dim]);
    }
    pool
}

/// Greedy sweep: repeatedly pick the pool vector whose cyclic submodule adds
/// the most new dimensions (earliest pool entry on ties).
fn greedy_right_generators(sigma: &Bimodule) -> Vec<Vec<Scalar>> {
    let field = sigma.field();
    let pool = generator_pool(field, sigma.dim);
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    let mut span = Subspace::zero(field, sigma.dim);
    while span.dim() < sigma.dim {
        let mut best: Option<(usize, Subspace, &Vec<Scalar>)> = None;
        for v in &pool {
            if span.contains(v) {
                continue;
            }
            let mut vecs = span.basis_vectors();
            for a in 0..sigma.right.dim {
                vecs.push(sigma.act_right(v, &sigma.right.basis_element(a)));
            }
            let grown = Subspace::from_span(field, sigma.dim, &vecs);
            let gain = grown.dim() - span.dim();
            if best.as_ref().is_none_or(|(g, _, _)| gain > *g) {
                best = Some((gain, grown, v));
            }
        }
        let Some((_, grown, v)) = best else { break };
        gens.push(v.clone());
        span = grown;
    }
    gens
}

fn solve_dual_basis(
    sigma: &Bimodule,
    dual: &DualModule,
    gens: &[Vec<Scalar>],
) -> Option<DualBasis> {
    let field = sigma.field();
    let n = gens.len();
    let d = dual.functionals.len();
    if n == 0 {
        return if sigma.dim == 0 {
            Some(DualBasis { pairs: Vec::new() })
        } else {
            None
        };
    }
    // Unknowns: c[i][t] with e_i* = sum_t c[i][t] F_t. For each basis vector
    // x_b of the module: sum_{i,t} c[i][t] (e_i . F_t(x_b)) = x_b.
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n * d);
    for e in gens {
        for f in &dual.functionals {
            let mut col = Vec::with_capacity(sigma.dim * sigma.dim);
            for b in 0..sigma.dim {
                let val = f.apply(&sigma.basis_element(b));
                col.extend(sigma.act_right(e, &val));
            }
            cols.push(col);
        }
    }
    let mut rhs = Vec::with_capacity(sigma.dim * sigma.dim);
    for b in 0..sigma.dim {
        rhs.extend(sigma.basis_element(b));
    }
    let system = Matrix::from_rows(field, &cols).transpose();
    let sol = system.solve_vec(&rhs).ok()??;
    let mut pairs = Vec::with_capacity(n);
    for (i, e) in gens.iter().enumerate() {
        let coords: Vec<Scalar> = (0..d).map(|t| sol[i * d + t].clone()).collect();
        pairs.push((e.clone(), dual.functional_matrix(&coords)));
    }
    DualBasis::new(sigma, pairs).ok()
}

/// Left-handed analogue: pairs `{(f_j, *f_j)}` with `x = sum_j *f_j(x) f_j`,
/// witnessing finite generation and projectivity as a left module.
pub fn compute_left_dual_basis(lambda: &Bimodule) -> Result<Vec<(Vec<Scalar>, Matrix)>> {
    let dual = left_dual(lambda)?;
    let field = lambda.field();
    let pool = generator_pool(field, lambda.dim);
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    let mut span = Subspace::zero(field, lambda.dim);
    while span.dim() < lambda.dim {
        let mut best: Option<(usize, Subspace, &Vec<Scalar>)> = None;
        for v in &pool {
            if span.contains(v) {
                continue;
            }
            let mut vecs = span.basis_vectors();
            for b in 0..lambda.left.dim {
                vecs.push(lambda.act_left(&lambda.left.basis_element(b), v));
            }
            let grown = Subspace::from_span(field, lambda.dim, &vecs);
            let gain = grown.dim() - span.dim();
            if best.as_ref().is_none_or(|(g, _, _)| gain > *g) {
                best = Some((gain, grown, v));
            }
        }
        let Some((_, grown, v)) = best else { break };
        gens.push(v.clone());
        span = grown;
    }
    let attempt = |gens: &[Vec<Scalar>]| -> Option<Vec<(Vec<Scalar>, Matrix)>> {
        let n = gens.len();
        let d = dual.functionals.len();
        if n == 0 {
            return if lambda.dim == 0 { Some(Vec::new()) } else { None };
        }
        // x = sum_j (*f_j(x)) . f_j with the value acting on the left.
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n * d);
        for g in gens {
            for f in &dual.functionals {
                let mut col = Vec::with_capacity(lambda.dim * lambda.dim);
                for bv in 0..lambda.dim {
                    let val = f.apply(&lambda.basis_element(bv));
                    col.extend(lambda.act_left(&val, g));
                }
                cols.push(col);
            }
        }
        let mut rhs = Vec::with_capacity(lambda.dim * lambda.dim);
        for bv in 0..lambda.dim {
            rhs.extend(lambda.basis_element(bv));
        }
        let system = Matrix::from_rows(field, &cols).transpose();
        let sol = system.solve_vec(&rhs).ok()??;
        let mut pairs = Vec::with_capacity(n);
        for (i, g) in gens.iter().enumerate() {
            let coords: Vec<Scalar> = (0..d).map(|t| sol[i * d + t].clone()).collect();
            pairs.push((g.clone(), dual.functional_matrix(&coords)));
        }
        // Verify the left dual-basis identity before returning.
        for bv in 0..lambda.dim {
            let x = lambda.basis_element(bv);
            let mut acc = vec![field.zero(); lambda.dim];
            for (g, f) in &pairs {
                let val = f.apply(&x);
                let term = lambda.act_left(&val, g);
                for (t, v) in acc.iter_mut().zip(term) {
                    *t = t.add(&v);
                }
            }
            if acc != x {
                return None;
            }
        }
        Some(pairs)
    };
    if let Some(pairs) = attempt(&gens) {
        return Ok(pairs);
    }
    let full: Vec<Vec<Scalar>> = (0..lambda.dim).map(|i| lambda.basis_element(i)).collect();
    attempt(&full).ok_or_else(|| {
        Error::NotProjective("no left dual basis exists for any generating set".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn m2() -> Algebra {
        Algebra::matrix_algebra(f2(), 2)
    }

    fn diagonal_in_m2() -> (Algebra, AlgebraMorphism) {
        let a = m2();
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        a.subalgebra(&span).unwrap()
    }

    #[test]
    fn regular_bimodule_is_valid() {
        let a = m2();
        let m = Bimodule::regular(&a);
        assert!(m.validate().ok());
    }

    #[test]
    fn free_bimodule_is_valid() {
        let a = m2();
        let m = Bimodule::free(&a, 2);
        assert!(m.validate().ok());
        assert_eq!(m.dim, 8);
    }

    #[test]
    fn opposite_is_involutive_and_valid() {
        let a = m2();
        let m = Bimodule::regular(&a);
        let o = m.opposite();
        assert!(o.validate().ok());
        assert_eq!(o.opposite(), m);
    }

    #[test]
    fn restricted_left_action_stays_valid() {
        let (_, incl) = diagonal_in_m2();
        let m = Bimodule::regular(&m2()).restrict_left(&incl).unwrap();
        assert!(m.validate().ok());
        assert_eq!(m.left.dim, 2);
    }

    #[test]
    fn right_dual_of_regular_module_has_algebra_dimension() {
        // (A as (A,A)-bimodule)* has the same dimension as A: right A-linear
        // endofunctionals of A are the left multiplications.
        let a = m2();
        let m = Bimodule::regular(&a);
        let d = right_dual(&m).unwrap();
        assert_eq!(d.module.dim, 4);
        assert!(d.module.validate().ok());
    }

    #[test]
    fn right_dual_of_free_rank_two_doubles() {
        let a = m2();
        let m = Bimodule::free(&a, 2);
        let d = right_dual(&m).unwrap();
        assert_eq!(d.module.dim, 2 * a.dim);
    }

    #[test]
    fn left_dual_of_regular_module() {
        let a = m2();
        let m = Bimodule::regular(&a);
        let d = left_dual(&m).unwrap();
        assert_eq!(d.module.dim, 4);
        assert!(d.module.validate().ok());
    }

    #[test]
    fn left_dual_of_free_left_module_has_double_dimension() {
        let k = Algebra::ground(f2());
        let a = m2();
        // Lambda = A^2 as an (A, A)-bimodule restricted to (A, k) on the right.
        let unit_map =
            AlgebraMorphism::new(k.clone(), a.clone(), Matrix::from_col(f2(), &a.unit)).unwrap();
        let lam = Bimodule::free(&a, 2).restrict_right(&unit_map).unwrap();
        let d = left_dual(&lam).unwrap();
        assert_eq!(d.module.dim, 2 * a.dim);
    }

    #[test]
    fn dual_basis_of_regular_module_is_one_times_identity() {
        // Sigma = A free of rank 1: the dual basis is {(1, id)}.
        let a = m2();
        let m = Bimodule::regular(&a);
        let db = compute_dual_basis(&m, None).unwrap();
        assert_eq!(db.len(), 1);
        assert_eq!(db.pairs[0].0, a.unit);
        assert_eq!(db.pairs[0].1, Matrix::identity(f2(), 4));
    }

    #[test]
    fn dual_basis_of_free_rank_two_is_standard() {
        let k = Algebra::ground(f2());
        let m = Bimodule::free(&k, 2);
        let db = compute_dual_basis(&m, None).unwrap();
        assert_eq!(db.len(), 2);
        assert!(db.validate(&m).ok());
    }

    #[test]
    fn dual_basis_for_idempotent_image_over_diagonal() {
        // Sigma = E_11 M_2(F_2) = span{E11, E12} as a right module over the
        // diagonal subalgebra: the dual-basis identity is verified by the
        // validator on all basis vectors (hence on all 4 vectors over F_2).
        let a = m2();
        let (d, incl) = diagonal_in_m2();
        let row = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(1)]);
        // Build the right-D action on the row space.
        let mut right_action = Vec::new();
        for i in 0..d.dim {
            let elt = incl.apply(&d.basis_element(i));
            let op = a.right_mult(&elt);
            right_action.push(row.restrict_endo(&op, "row right action").unwrap());
        }
        let k = Algebra::ground(f2());
        let m = Bimodule::new(
            k.clone(),
            d.clone(),
            2,
            vec![Matrix::identity(f2(), 2)],
            right_action,
        )
        .unwrap();
        let db = compute_dual_basis(&m, None).unwrap();
        assert!(db.validate(&m).ok());
    }

    #[test]
    fn non_projective_module_is_rejected() {
        // F_2[x]/(x^2) acting on the one-dimensional module with x = 0 is not
        // projective: the splitting system is inconsistent.
        let field = f2();
        let zero = field.zero();
        let one = field.one();
        // Basis {1, x}: 1*1=1, 1*x=x*1=x, x*x=0.
        let constants = vec![
            vec![
                vec![one.clone(), zero.clone()],
                vec![zero.clone(), one.clone()],
            ],
            vec![
                vec![zero.clone(), one.clone()],
                vec![zero.clone(), zero.clone()],
            ],
        ];
        let dual_numbers =
            Algebra::new(field, vec!["1".into(), "x".into()], constants, vec![one, zero])
                .unwrap();
        let k = Algebra::ground(field);
        let trivial = Bimodule::new(
            k,
            dual_numbers.clone(),
            1,
            vec![Matrix::identity(field, 1)],
            vec![
                Matrix::identity(field, 1),
                Matrix::zeros(field, 1, 1),
            ],
        )
        .unwrap();
        assert!(matches!(
            compute_dual_basis(&trivial, None),
            Err(Error::NotProjective(_))
        ));
    }

    #[test]
    fn redundant_dual_basis_from_hint() {
        let k = Algebra::ground(f2());
        let m = Bimodule::free(&k, 2);
        let db = compute_dual_basis(&m, Some(3)).unwrap();
        assert_eq!(db.len(), 3);
        assert!(db.validate(&m).ok());
    }
}

//! Canonical subspaces, quotient spaces and exhaustive subspace enumeration.
//!
//! A subspace is stored as its RREF basis (one row per basis vector), so two
//! subspaces are equal iff their representations are identical. Quotient
//! spaces carry an explicit projection/section pair; every tensor-product
//! construction in the crate is realized through them.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{lincomb, Matrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Matrix, // RREF, no zero rows
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// Canonical subspace spanned by the given vectors.
    pub fn from_span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient_dim);
        }
        // Deduplicate rows; large relation spans repeat vectors heavily.
        let mut rows: Vec<&Vec<Scalar>> = vectors.iter().collect();
        rows.sort();
        rows.dedup();
        let vectors: Vec<Vec<Scalar>> = rows
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        if vectors.is_empty() {
            return Subspace::zero(field, ambient_dim);
        }
        let m = Matrix::from_rows(field, &vectors);
        assert_eq!(m.cols(), ambient_dim, "span vector length mismatch");
        let (r, rank, _) = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..rank).map(|i| r.row(i)).collect();
        let basis = if rows.is_empty() {
            Matrix::zeros(field, 0, ambient_dim)
        } else {
            Matrix::from_rows(field, &rows)
        };
        Subspace {
            field,
            ambient_dim,
            basis,
        }
    }

    /// Wraps a matrix that is already a canonical RREF basis.
    pub fn from_rref(basis: Matrix) -> Subspace {
        let ambient_dim = basis.cols();
        Subspace {
            field: basis.field(),
            ambient_dim,
            basis,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let (_, _, pivots) = self.basis.rref();
        pivots
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is outside.
    ///
    /// With an RREF basis the candidate coordinates are just the entries of
    /// `v` at the pivot columns; membership is then verified exactly.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let pivots = self.pivot_cols();
        let coords: Vec<Scalar> = pivots.iter().map(|&c| v[c].clone()).collect();
        let rebuilt = lincomb(self.field, &coords, &self.basis_vectors());
        if rebuilt == v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Ok(Subspace::from_span(self.field, self.ambient_dim, &vecs))
    }

    /// Intersection, computed from the kernel of the stacked basis pairing.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        // Solve u^T a = v^T b: columns of [u^T | -v^T] kernel give pairs.
        let ut = self.basis.transpose();
        let vt = other.basis.transpose();
        let neg = vt.scale(&self.field.one().neg());
        let stacked = ut.hstack(&neg);
        let ker = kernel(&stacked);
        let mut vecs = Vec::new();
        for row in ker.basis_vectors() {
            let a = &row[..self.dim()];
            vecs.push(lincomb(self.field, a, &self.basis_vectors()));
        }
        Ok(Subspace::from_span(self.field, self.ambient_dim, &vecs))
    }

    /// Expresses an ambient operator that preserves this subspace as a matrix
    /// in the basis of the subspace. Errors if the image of some basis vector
    /// leaves the subspace.
    pub fn restrict_endo(&self, op: &Matrix, context: &str) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.field, self.dim(), self.dim());
        for (j, v) in self.basis_vectors().iter().enumerate() {
            let img = op.apply(v);
            let Some(coords) = self.coords_of(&img) else {
                return Err(Error::IllDefined(format!(
                    "{context}: operator leaves the subspace at basis vector {j}"
                )));
            };
            for i in 0..self.dim() {
                out.set(i, j, coords[i].clone());
            }
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("subspace fields differ".into()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace ambient dims differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

/// Right null space of `m`, as a canonical subspace of `F^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (red, rank, pivots) = m.rref();
    let field = m.field();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut vecs = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![field.zero(); n];
        v[fc] = field.one();
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            v[pc] = red.at(r, fc).neg();
        }
        vecs.push(v);
    }
    Subspace::from_span(field, n, &vecs)
}

/// Column space of `m`, as a canonical subspace of `F^rows`.
pub fn image(m: &Matrix) -> Subspace {
    let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.col(j)).collect();
    Subspace::from_span(m.field(), m.rows(), &cols)
}

/// An explicit realization of `F^ambient / kernel`.
///
/// The section picks the non-pivot coordinates of the kernel's RREF, so the
/// construction is deterministic and `projection * section = identity`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientSpace {
    pub ambient_dim: usize,
    pub kernel: Subspace,
    pub dim: usize,
    pub projection: Matrix, // dim x ambient
    pub section: Matrix,    // ambient x dim
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, kernel: Subspace) -> QuotientSpace {
        assert_eq!(kernel.ambient_dim(), ambient_dim, "kernel ambient mismatch");
        let field = kernel.field();
        let pivots = kernel.pivot_cols();
        let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
        let dim = free.len();
        let mut projection = Matrix::zeros(field, dim, ambient_dim);
        for (row, &fc) in free.iter().enumerate() {
            projection.set(row, fc, field.one());
            for (kr, &pc) in pivots.iter().enumerate() {
                projection.set(row, pc, kernel.basis().at(kr, fc).neg());
            }
        }
        let mut section = Matrix::zeros(field, ambient_dim, dim);
        for (col, &fc) in free.iter().enumerate() {
            section.set(fc, col, field.one());
        }
        QuotientSpace {
            ambient_dim,
            kernel,
            dim,
            projection,
            section,
        }
    }

    pub fn field(&self) -> Field {
        self.kernel.field()
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(v)
    }

    pub fn lift(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.section.apply(v)
    }

    /// Induces a map on the quotient from a map on the ambient space,
    /// verifying that the ambient map annihilates the kernel.
    ///
    /// `ambient` has shape `target_dim x ambient_dim`; the result has shape
    /// `target_dim x dim`.
    pub fn induce(&self, ambient: &Matrix, context: &str) -> Result<Matrix> {
        if ambient.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "induce({context}): map expects {} columns, quotient ambient is {}",
                ambient.cols(),
                self.ambient_dim
            )));
        }
        // One batched product against all kernel basis vectors.
        if self.kernel.dim() > 0 && !ambient.mul(&self.kernel.basis().transpose()).is_zero() {
            return Err(Error::IllDefined(context.to_string()));
        }
        Ok(ambient.mul(&self.section))
    }
}

/// Gaussian binomial `[n choose k]_p` as a u128.
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    // Product formula ((p^n - p^i) / (p^k - p^i)) computed exactly via
    // iterated integer arithmetic on the q-binomial recurrence.
    let mut table = vec![vec![0u128; k + 1]; n + 1];
    for i in 0..=n {
        table[i][0] = 1;
        for j in 1..=i.min(k) {
            let pk = (p as u128).pow(j as u32);
            table[i][j] = table[i - 1][j - 1] + pk * table[i - 1].get(j).copied().unwrap_or(0);
        }
    }
    table[n][k]
}

/// Total number of subspaces of `F_p^n` (optionally of one fixed dimension).
pub fn subspace_count(p: u64, n: usize, dim_filter: Option<usize>) -> u128 {
    match dim_filter {
        Some(k) => gaussian_binomial(p, n, k),
        None => (0..=n).map(|k| gaussian_binomial(p, n, k)).sum(),
    }
}

/// Enumerates every subspace of `F_p^n` exactly once, in a deterministic
/// order (ascending dimension, then lexicographic on the RREF basis entries).
pub fn enumerate_subspaces(
    field: Field,
    ambient_dim: usize,
    dim_filter: Option<usize>,
    budget: u64,
) -> Result<Vec<Subspace>> {
    let Field::Fp(p) = field else {
        return Err(Error::InfiniteField);
    };
    let count = subspace_count(p, ambient_dim, dim_filter);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: count,
            budget,
        });
    }
    let dims: Vec<usize> = match dim_filter {
        Some(k) if k <= ambient_dim => vec![k],
        Some(_) => vec![],
        None => (0..=ambient_dim).collect(),
    };
    let mut out = Vec::with_capacity(count as usize);
    for k in dims {
        let mut chunk = Vec::new();
        for pivots in combinations(ambient_dim, k) {
            enumerate_rref_with_pivots(field, p, ambient_dim, &pivots, &mut chunk);
        }
        chunk.sort_by(|a, b| a.basis().entries().cmp(b.basis().entries()));
        out.extend(chunk);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn enumerate_rref_with_pivots(
    field: Field,
    p: u64,
    n: usize,
    pivots: &[usize],
    out: &mut Vec<Subspace>,
) {
    let k = pivots.len();
    if k == 0 {
        out.push(Subspace::zero(field, n));
        return;
    }
    // Free positions: (row, col) with col > pivot(row) and col not a pivot.
    let mut free_pos = Vec::new();
    for (row, &pc) in pivots.iter().enumerate() {
        for col in pc + 1..n {
            if !pivots.contains(&col) {
                free_pos.push((row, col));
            }
        }
    }
    let total = (p as u128).pow(free_pos.len() as u32);
    let mut counter = 0u128;
    while counter < total {
        let mut m = Matrix::zeros(field, k, n);
        for (row, &pc) in pivots.iter().enumerate() {
            m.set(row, pc, field.one());
        }
        let mut rem = counter;
        for &(row, col) in &free_pos {
            let digit = (rem % p as u128) as i64;
            rem /= p as u128;
            m.set(row, col, field.from_int(digit));
        }
        out.push(Subspace::from_rref(m));
        counter += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel(&Matrix::identity(f(3), 4));
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn image_of_zero_is_zero() {
        let im = image(&Matrix::zeros(f(2), 3, 3));
        assert_eq!(im, Subspace::zero(f(2), 3));
    }

    #[test]
    fn intersection_of_distinct_lines_is_zero() {
        // span{e1+e2} and span{e1} in F_2^2 meet trivially; the four vectors
        // of the plane confirm the only common element is zero.
        let field = f(2);
        let u = Subspace::from_span(field, 2, &[vec![field.one(), field.one()]]);
        let v = Subspace::from_span(field, 2, &[vec![field.one(), field.zero()]]);
        let w = u.intersect(&v).unwrap();
        assert_eq!(w.dim(), 0);
        for a in 0..2i64 {
            for b in 0..2i64 {
                let vec = vec![field.from_int(a), field.from_int(b)];
                let both = u.contains(&vec) && v.contains(&vec);
                assert_eq!(both, vec.iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn sum_and_intersect_dimensions() {
        let field = f(3);
        let u = Subspace::from_span(field, 3, &[vec![field.one(), field.zero(), field.zero()]]);
        let v = Subspace::from_span(
            field,
            3,
            &[
                vec![field.one(), field.one(), field.zero()],
                vec![field.zero(), field.zero(), field.one()],
            ],
        );
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let q = QuotientSpace::new(2, Subspace::zero(f(2), 2));
        assert_eq!(q.projection, Matrix::identity(f(2), 2));
        assert_eq!(q.section, Matrix::identity(f(2), 2));
    }

    #[test]
    fn quotient_kills_kernel_line() {
        let field = f(2);
        let k = Subspace::from_span(field, 2, &[vec![field.one(), field.zero()]]);
        let q = QuotientSpace::new(2, k);
        assert_eq!(q.dim, 1);
        assert!(q
            .project(&[field.one(), field.zero()])
            .iter()
            .all(|x| x.is_zero()));
    }

    #[test]
    fn projection_section_is_identity_for_plane_kernel() {
        let field = f(3);
        let k = Subspace::from_span(
            field,
            4,
            &[
                vec![field.one(), field.from_int(2), field.zero(), field.one()],
                vec![field.zero(), field.zero(), field.one(), field.from_int(2)],
            ],
        );
        let q = QuotientSpace::new(4, k.clone());
        assert_eq!(q.dim, 2);
        assert_eq!(q.projection.mul(&q.section), Matrix::identity(field, 2));
        for v in k.basis_vectors() {
            assert!(q.project(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn enumerate_f2_dim2_finds_five_subspaces() {
        // Gaussian binomials 1 + 3 + 1.
        let subs = enumerate_subspaces(f(2), 2, None, 1000).unwrap();
        assert_eq!(subs.len(), 5);
        let dims: Vec<usize> = subs.iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 2]);
    }

    #[test]
    fn enumerate_f3_lines() {
        // (3^2 - 1) / (3 - 1) = 4 lines.
        let subs = enumerate_subspaces(f(3), 2, Some(1), 1000).unwrap();
        assert_eq!(subs.len(), 4);
    }

    #[test]
    fn enumerate_rejects_infinite_field() {
        assert!(matches!(
            enumerate_subspaces(Field::Rationals, 2, None, 1000),
            Err(Error::InfiniteField)
        ));
    }

    #[test]
    fn enumerate_respects_budget() {
        assert!(matches!(
            enumerate_subspaces(f(2), 4, None, 10),
            Err(Error::BudgetExceeded { required: 67, .. })
        ));
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        // Brute-force oracle: count distinct canonical spans of all vector
        // subsets is infeasible; instead cross-check enumeration counts
        // against the Gaussian-binomial formula for p in {2,3}, n <= 4.
        for p in [2u64, 3] {
            for n in 0..=4usize {
                let subs = enumerate_subspaces(f(p), n, None, 2_000_000).unwrap();
                assert_eq!(subs.len() as u128, subspace_count(p, n, None));
                // Uniqueness of representation.
                for i in 0..subs.len() {
                    for j in i + 1..subs.len() {
                        assert_ne!(subs[i], subs[j]);
                    }
                }
            }
        }
        assert_eq!(subspace_count(2, 4, None), 67);
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
    }
}

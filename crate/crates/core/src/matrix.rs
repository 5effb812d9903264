//! Dense exact matrices and Gaussian elimination.
//!
//! Vectors are columns; a linear map is a matrix acting on the left, so
//! composition of maps is matrix multiplication. All elimination routines are
//! deterministic and produce the unique reduced row echelon form.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(
            entries.iter().all(|e| e.field() == field),
            "entry field mismatch"
        );
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from signed integer literals, canonicalized into the field.
    pub fn from_ints(field: Field, rows: usize, cols: usize, data: &[i64]) -> Matrix {
        let entries = data.iter().map(|n| field.from_int(*n)).collect();
        Matrix::new(field, rows, cols, entries)
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().cloned());
        }
        Matrix::new(field, rows.len(), cols, entries)
    }

    /// Column matrix from a vector.
    pub fn from_col(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::new(field, v.len(), 1, v.to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix::new(self.field, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix::new(self.field, self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Matrix::new(self.field, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        if self.field == Field::Fp(2) && self.rows * other.cols > 4096 {
            return self.mul_f2(other);
        }
        // Row-sparsity pays off: the quotient projections, sections and
        // Kronecker products this crate multiplies are mostly zeros.
        let sparse_rows: Vec<Vec<(usize, &Scalar)>> = (0..other.rows)
            .map(|k| {
                (0..other.cols)
                    .filter_map(|j| {
                        let b = other.at(k, j);
                        if b.is_zero() {
                            None
                        } else {
                            Some((j, b))
                        }
                    })
                    .collect()
            })
            .collect();
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &sparse_rows[k] {
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    fn mul_f2(&self, other: &Matrix) -> Matrix {
        let words = other.cols.div_ceil(64);
        let packed: Vec<Vec<u64>> = (0..other.rows)
            .map(|k| {
                let mut row = vec![0u64; words];
                for j in 0..other.cols {
                    if !other.at(k, j).is_zero() {
                        row[j / 64] |= 1u64 << (j % 64);
                    }
                }
                row
            })
            .collect();
        let one = self.field.one();
        let zero = self.field.zero();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        let mut acc = vec![0u64; words];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|w| *w = 0);
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() {
                    for (a, b) in acc.iter_mut().zip(&packed[k]) {
                        *a ^= b;
                    }
                }
            }
            for j in 0..other.cols {
                entries.push(if acc[j / 64] & (1u64 << (j % 64)) != 0 {
                    one.clone()
                } else {
                    zero.clone()
                });
            }
        }
        Matrix::new(self.field, self.rows, other.cols, entries)
    }

    /// Computes `self * (a (x) b)` without materializing the Kronecker
    /// product; the column index convention matches [`Matrix::kronecker`].
    pub fn mul_kron(&self, a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, a.rows * b.rows, "mul_kron shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, a.cols * b.cols);
        let a_sparse: Vec<Vec<(usize, &Scalar)>> = (0..a.rows)
            .map(|i| {
                (0..a.cols)
                    .filter(|&k| !a.at(i, k).is_zero())
                    .map(|k| (k, a.at(i, k)))
                    .collect()
            })
            .collect();
        let b_sparse: Vec<Vec<(usize, &Scalar)>> = (0..b.rows)
            .map(|j| {
                (0..b.cols)
                    .filter(|&l| !b.at(j, l).is_zero())
                    .map(|l| (l, b.at(j, l)))
                    .collect()
            })
            .collect();
        for r in 0..self.rows {
            for i in 0..a.rows {
                for j in 0..b.rows {
                    let p = self.at(r, i * b.rows + j);
                    if p.is_zero() {
                        continue;
                    }
                    for &(k, av) in &a_sparse[i] {
                        let pa = p.mul(av);
                        for &(l, bv) in &b_sparse[j] {
                            let col = k * b.cols + l;
                            let cur = out.at(r, col).add(&pa.mul(bv));
                            out.set(r, col, cur);
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    acc = acc.add(&a.mul(&v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Kronecker product; index convention `(i, j) -> i * other.rows + j` on
    /// both sides, matching the pure-tensor basis order used throughout.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + k, j * other.cols + l, a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix::new(self.field, self.rows + other.rows, self.cols, entries)
    }

    /// Reduced row echelon form together with the rank and pivot columns.
    ///
    /// Over F_2 a bit-packed elimination path is used; it picks pivots in the
    /// same order as the generic path, so the output is identical.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        if self.field == Field::Fp(2) && self.rows * self.cols > 1024 {
            return self.rref_f2();
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Find a pivot in column c at or below row r.
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).inv().expect("pivot nonzero");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    m.sub_scaled_row(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    fn rref_f2(&self) -> (Matrix, usize, Vec<usize>) {
        let words = self.cols.div_ceil(64);
        let mut bits: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() {
                        row[j / 64] |= 1u64 << (j % 64);
                    }
                }
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(pr) = (r..self.rows).find(|&i| bits[i][w] & b != 0) else {
                continue;
            };
            bits.swap(r, pr);
            let pivot_row = bits[r].clone();
            for (i, row) in bits.iter_mut().enumerate() {
                if i != r && row[w] & b != 0 {
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x ^= p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let field = self.field;
        let one = field.one();
        let zero = field.zero();
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for row in &bits {
            for j in 0..self.cols {
                entries.push(if row[j / 64] & (1u64 << (j % 64)) != 0 {
                    one.clone()
                } else {
                    zero.clone()
                });
            }
        }
        (
            Matrix::new(field, self.rows, self.cols, entries),
            r,
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.at(r, j).mul(c);
            self.set(r, j, v);
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let v = self.at(target, j).sub(&self.at(source, j).mul(factor));
            self.set(target, j, v);
        }
    }

    /// Solves `self * x = rhs` for a matrix `x`; `None` iff inconsistent.
    ///
    /// Free variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, rhs.rows
            )));
        }
        let aug = self.hstack(rhs);
        let (red, _, pivots) = aug.rref();
        // Inconsistent iff a pivot lands in the rhs block.
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, red.at(r, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Solves for a single right-hand-side column vector.
    pub fn solve_vec(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let sol = self.solve(&Matrix::from_col(self.field, rhs))?;
        Ok(sol.map(|m| m.col(0)))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Linear-combination helper: `sum coeffs[i] * vecs[i]`.
pub fn lincomb(field: Field, coeffs: &[Scalar], vecs: &[Vec<Scalar>]) -> Vec<Scalar> {
    assert_eq!(coeffs.len(), vecs.len());
    let dim = vecs.first().map_or(0, |v| v.len());
    let mut out = vec![field.zero(); dim];
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.add(&c.mul(x));
        }
    }
    out
}

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn rref_identity_over_f2() {
        let m = Matrix::identity(f(2), 2);
        let (r, rank, pivots) = m.rref();
        assert_eq!(r, m);
        assert_eq!(rank, 2);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_zero_over_f3() {
        let m = Matrix::zeros(f(3), 3, 3);
        let (r, rank, _) = m.rref();
        assert_eq!(r, m);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_rank_one_over_q() {
        // Hand Gaussian elimination: [[2,4],[1,2]] -> [[1,2],[0,0]].
        let m = Matrix::from_ints(Field::Rationals, 2, 2, &[2, 4, 1, 2]);
        let (r, rank, pivots) = m.rref();
        assert_eq!(r, Matrix::from_ints(Field::Rationals, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let a = Matrix::identity(f(5), 2);
        let b = Matrix::from_ints(f(5), 2, 1, &[3, 4]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_zeroes_free_variables() {
        // x0 + x1 = 1 over F_2 has solutions (1,0) and (0,1); the convention
        // picks the one with the free variable x1 = 0. Cross-check by
        // enumerating both.
        let a = Matrix::from_ints(f(2), 1, 2, &[1, 1]);
        let b = Matrix::from_ints(f(2), 1, 1, &[1]);
        let x = a.solve(&b).unwrap().unwrap();
        let solutions = [
            Matrix::from_ints(f(2), 2, 1, &[1, 0]),
            Matrix::from_ints(f(2), 2, 1, &[0, 1]),
        ];
        for s in &solutions {
            assert_eq!(a.mul(s), b);
        }
        assert_eq!(x, solutions[0]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Matrix::from_ints(f(2), 1, 1, &[0]);
        let b = Matrix::from_ints(f(2), 1, 1, &[1]);
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_rejects_shape_mismatch() {
        let a = Matrix::identity(f(2), 2);
        let b = Matrix::zeros(f(2), 3, 1);
        assert!(a.solve(&b).is_err());
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(seed in proptest::collection::vec(0i64..3, 1..=12)) {
            let rows = 1 + seed.len() % 3;
            let cols = seed.len() / rows;
            prop_assume!(cols > 0);
            let m = Matrix::from_ints(f(3), rows, cols, &seed[..rows * cols]);
            let (r, _, _) = m.rref();
            let (rr, _, _) = r.rref();
            prop_assert_eq!(r, rr);
        }

        #[test]
        fn rank_equals_transpose_rank(seed in proptest::collection::vec(0i64..5, 12)) {
            let m = Matrix::from_ints(f(5), 3, 4, &seed);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_produces_exact_solutions(seed in proptest::collection::vec(0i64..3, 12 + 3)) {
            let a = Matrix::from_ints(f(3), 3, 4, &seed[..12]);
            let b = Matrix::from_ints(f(3), 3, 1, &seed[12..]);
            if let Some(x) = a.solve(&b).unwrap() {
                prop_assert_eq!(a.mul(&x), b);
            }
        }
    }
}

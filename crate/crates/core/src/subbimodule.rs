//! B-sub-bimodules of the endomorphism ring S, their monoid structure,
//! one-sided membership certificates, invertibility and exhaustive
//! enumeration over finite fields.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::endo::EndoRing;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::subspace::{enumerate_subspaces, QuotientSpace, Subspace};
use crate::tensor::TensorProduct;
use rayon::prelude::*;

/// A B-sub-bimodule of S, stored as a canonical subspace of S-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBimodule {
    pub space: Subspace,
}

impl SubBimodule {
    /// Wraps a subspace after checking closure under both lambda(B)-actions.
    pub fn new(endo: &EndoRing, space: Subspace) -> Result<SubBimodule> {
        if !is_sub_bimodule(endo, &space) {
            return Err(Error::NotClosed);
        }
        Ok(SubBimodule { space })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Closure test: `lambda(b) x` and `x lambda(b)` stay inside for every basis
/// pair.
pub fn is_sub_bimodule(endo: &EndoRing, space: &Subspace) -> bool {
    let s = &endo.algebra;
    let b = &endo.extension.morphism.source;
    for x in space.basis_vectors() {
        for i in 0..b.dim {
            let lb = endo.extension.morphism.apply(&b.basis_element(i));
            if !space.contains(&s.mul(&lb, &x)) || !space.contains(&s.mul(&x, &lb)) {
                return false;
            }
        }
    }
    true
}

/// Smallest B-sub-bimodule containing the generators: alternating left/right
/// multiplication by lambda(B) to a fixed point.
pub fn sub_bimodule(endo: &EndoRing, generators: &[Vec<Scalar>]) -> SubBimodule {
    let s = &endo.algebra;
    let b = &endo.extension.morphism.source;
    let field = s.field;
    let mut space = Subspace::from_span(field, s.dim, generators);
    loop {
        let mut vecs = space.basis_vectors();
        for x in space.basis_vectors() {
            for i in 0..b.dim {
                let lb = endo.extension.morphism.apply(&b.basis_element(i));
                vecs.push(s.mul(&lb, &x));
                vecs.push(s.mul(&x, &lb));
            }
        }
        let grown = Subspace::from_span(field, s.dim, &vecs);
        if grown == space {
            return SubBimodule { space };
        }
        space = grown;
    }
}

/// `lambda(B)` as the unit of the sub-bimodule monoid.
pub fn unit_sub_bimodule(endo: &EndoRing) -> SubBimodule {
    SubBimodule {
        space: endo.lambda_image(),
    }
}

/// Product `IJ`: the span of all pairwise products.
pub fn product_ij(endo: &EndoRing, i: &SubBimodule, j: &SubBimodule) -> Result<SubBimodule> {
    let s = &endo.algebra;
    if i.space.ambient_dim() != s.dim || j.space.ambient_dim() != s.dim {
        return Err(Error::DimensionMismatch("sub-bimodule product ambient".into()));
    }
    let mut vecs = Vec::new();
    for x in i.space.basis_vectors() {
        for y in j.space.basis_vectors() {
            vecs.push(s.mul(&x, &y));
        }
    }
    Ok(SubBimodule {
        space: Subspace::from_span(s.field, s.dim, &vecs),
    })
}

/// A membership certificate: the preimage of 1 under the bijective
/// multiplication map, as explicit pairs summing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaDirection {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct GammaCertificate {
    pub direction: GammaDirection,
    pub sub: SubBimodule,
    /// For the left direction: pairs `(s_k, x_k)` with `m^{-1}(1) = sum s_k
    /// (x) x_k in S (x)_B I`. For the right direction: pairs `(t_k, s_k)`
    /// with `m^{-1}(1) = sum t_k (x) s_k in I (x)_B S`.
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

impl GammaCertificate {
    /// The defining property: the pairwise products sum to 1.
    pub fn products_sum_to_unit(&self, s: &Algebra) -> bool {
        let mut acc = vec![s.field.zero(); s.dim];
        for (a, b) in &self.pairs {
            let prod = s.mul(a, b);
            for (x, y) in acc.iter_mut().zip(prod) {
                *x = x.add(&y);
            }
        }
        acc == s.unit
    }
}

/// The sub-bimodule carrier `I` as a `(B, B)`-bimodule on its own basis.
fn sub_as_bimodule(endo: &EndoRing, i: &SubBimodule) -> Result<Bimodule> {
    let s = &endo.algebra;
    let b = &endo.extension.morphism.source;
    let mut left_action = Vec::with_capacity(b.dim);
    let mut right_action = Vec::with_capacity(b.dim);
    for idx in 0..b.dim {
        let lb = endo.extension.morphism.apply(&b.basis_element(idx));
        left_action.push(i.space.restrict_endo(&s.left_mult(&lb), "sub left action")?);
        right_action.push(i.space.restrict_endo(&s.right_mult(&lb), "sub right action")?);
    }
    Bimodule::new(b.clone(), b.clone(), i.space.dim(), left_action, right_action)
}

/// Builds the multiplication map on `S (x)_B I` and, when it is bijective,
/// returns the certificate `m^{-1}(1)` under the deterministic solve
/// convention.
pub fn membership_left(endo: &EndoRing, i: &SubBimodule) -> Result<Option<GammaCertificate>> {
    let s = &endo.algebra;
    let field = s.field;
    let s_b = endo.s_as_s_b_bimodule()?;
    let i_mod = sub_as_bimodule(endo, i)?;
    let t = TensorProduct::over_ring(&s_b, &i_mod)?;
    // m(s (x) x) = s x on ambient coordinates.
    let basis = i.space.basis_vectors();
    let mut ambient = Matrix::zeros(field, s.dim, t.ambient_dim());
    for a in 0..s.dim {
        for (bidx, x) in basis.iter().enumerate() {
            let prod = s.mul(&s.basis_element(a), x);
            for r in 0..s.dim {
                ambient.set(r, a * basis.len() + bidx, prod[r].clone());
            }
        }
    }
    let m = t.space.induce(&ambient, "multiplication S (x)_B I -> S")?;
    if t.dim() != s.dim || m.rank() != s.dim {
        return Ok(None);
    }
    let sol = m
        .solve_vec(&s.unit)?
        .ok_or_else(|| Error::Invalid("bijective map with no preimage of 1".into()))?;
    let lifted = t.lift(&sol);
    let pairs = left_pairs_from_ambient(endo, i, &lifted);
    Ok(Some(GammaCertificate {
        direction: GammaDirection::Left,
        sub: i.clone(),
        pairs,
    }))
}

/// Converts an ambient representative in `S (x) I` into `(s_k, x_k)` pairs,
/// one per basis vector of `I`.
fn left_pairs_from_ambient(
    endo: &EndoRing,
    i: &SubBimodule,
    ambient: &[Scalar],
) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let s = &endo.algebra;
    let field = s.field;
    let basis = i.space.basis_vectors();
    let mut pairs = Vec::with_capacity(basis.len());
    for (bidx, x) in basis.iter().enumerate() {
        let mut sk = vec![field.zero(); s.dim];
        for a in 0..s.dim {
            let c = &ambient[a * basis.len() + bidx];
            if !c.is_zero() {
                sk[a] = sk[a].add(c);
            }
        }
        pairs.push((sk, x.clone()));
    }
    pairs
}

/// Mirror of [`membership_left`] for `I (x)_B S -> S`.
pub fn membership_right(endo: &EndoRing, i: &SubBimodule) -> Result<Option<GammaCertificate>> {
    let s = &endo.algebra;
    let field = s.field;
    let b_s = endo.s_as_b_s_bimodule()?;
    let i_mod = sub_as_bimodule(endo, i)?;
    let t = TensorProduct::over_ring(&i_mod, &b_s)?;
    let basis = i.space.basis_vectors();
    let mut ambient = Matrix::zeros(field, s.dim, t.ambient_dim());
    for (bidx, x) in basis.iter().enumerate() {
        for a in 0..s.dim {
            let prod = s.mul(x, &s.basis_element(a));
            for r in 0..s.dim {
                ambient.set(r, bidx * s.dim + a, prod[r].clone());
            }
        }
    }
    let m = t.space.induce(&ambient, "multiplication I (x)_B S -> S")?;
    if t.dim() != s.dim || m.rank() != s.dim {
        return Ok(None);
    }
    let sol = m
        .solve_vec(&s.unit)?
        .ok_or_else(|| Error::Invalid("bijective map with no preimage of 1".into()))?;
    let lifted = t.lift(&sol);
    let basisv = i.space.basis_vectors();
    let mut pairs = Vec::with_capacity(basisv.len());
    for (bidx, x) in basisv.iter().enumerate() {
        let mut sk = vec![field.zero(); s.dim];
        for a in 0..s.dim {
            let c = &lifted[bidx * s.dim + a];
            if !c.is_zero() {
                sk[a] = sk[a].add(c);
            }
        }
        pairs.push((x.clone(), sk));
    }
    Ok(Some(GammaCertificate {
        direction: GammaDirection::Right,
        sub: i.clone(),
        pairs,
    }))
}

/// The inverse candidate `J = {s : sI in lambda(B) and Is in lambda(B)}`.
pub fn inverse_candidate(endo: &EndoRing, i: &SubBimodule) -> Result<SubBimodule> {
    let s = &endo.algebra;
    let field = s.field;
    let lb = endo.lambda_image();
    let q = QuotientSpace::new(s.dim, lb);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for x in i.space.basis_vectors() {
        // Conditions q(s x) = 0 and q(x s) = 0, linear in s.
        let rx = s.right_mult(&x);
        let lx = s.left_mult(&x);
        let c1 = q.projection.mul(&rx);
        let c2 = q.projection.mul(&lx);
        for r in 0..c1.rows() {
            rows.push(c1.row(r));
        }
        for r in 0..c2.rows() {
            rows.push(c2.row(r));
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(field, s.dim)
    } else {
        crate::subspace::kernel(&Matrix::from_rows(field, &rows))
    };
    SubBimodule::new(endo, space)
}

/// Two-sided invertibility: `IJ = JI = lambda(B)` for the computed candidate.
pub fn is_invertible(endo: &EndoRing, i: &SubBimodule) -> Result<bool> {
    let j = inverse_candidate(endo, i)?;
    let unit = unit_sub_bimodule(endo);
    Ok(product_ij(endo, i, &j)? == unit && product_ij(endo, &j, i)? == unit)
}

/// A finite monoid presented by its elements, a product table and a unit index.
#[derive(Clone, Debug)]
pub struct MonoidTable<T> {
    pub elements: Vec<T>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

impl<T: PartialEq> MonoidTable<T> {
    /// Builds the table; errors with a counterexample when a product escapes
    /// the element list.
    pub fn build(
        elements: Vec<T>,
        unit: usize,
        mut mul: impl FnMut(&T, &T) -> Result<T>,
    ) -> Result<MonoidTable<T>> {
        let n = elements.len();
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod = mul(&elements[a], &elements[b])?;
                let Some(idx) = elements.iter().position(|e| *e == prod) else {
                    return Err(Error::Counterexample(format!(
                        "product of elements {a} and {b} is not in the enumerated set"
                    )));
                };
                table[a][b] = idx;
            }
        }
        let t = MonoidTable {
            elements,
            table,
            unit,
        };
        t.check_axioms()?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if self.table[self.unit][a] != a || self.table[a][self.unit] != a {
                return Err(Error::Counterexample(format!(
                    "unit law fails at element {a}"
                )));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::Counterexample(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Index of the two-sided inverse, when it exists.
    pub fn inverse_of(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.table[a][b] == self.unit && self.table[b][a] == self.unit)
    }

    /// Indices of the invertible elements.
    pub fn units(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.inverse_of(a).is_some()).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }
}

/// Every B-sub-bimodule of S (finite fields only, budget-guarded).
pub fn enumerate_sub_bimodules(endo: &EndoRing, budget: u64) -> Result<Vec<SubBimodule>> {
    let s = &endo.algebra;
    let subs = enumerate_subspaces(s.field, s.dim, None, budget)?;
    Ok(subs
        .into_par_iter()
        .filter(|sp| is_sub_bimodule(endo, sp))
        .map(|space| SubBimodule { space })
        .collect())
}

/// Outcome of the exhaustive enumeration of the invertible sub-bimodules.
pub struct InvEnumeration {
    pub all: Vec<SubBimodule>,
    pub left: Vec<SubBimodule>,
    pub right: Vec<SubBimodule>,
    pub invertible: MonoidTable<SubBimodule>,
}

/// Enumerates `I_B(S)`, the one-sided members and the group of invertibles,
/// asserting the inclusion of the invertibles in both one-sided monoids.
pub fn enumerate_inv(endo: &EndoRing, budget: u64) -> Result<InvEnumeration> {
    let all = enumerate_sub_bimodules(endo, budget)?;
    let left: Vec<SubBimodule> = all
        .par_iter()
        .filter_map(|i| match membership_left(endo, i) {
            Ok(Some(_)) => Some(Ok(i.clone())),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    let right: Vec<SubBimodule> = all
        .par_iter()
        .filter_map(|i| match membership_right(endo, i) {
            Ok(Some(_)) => Some(Ok(i.clone())),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    let inv: Vec<SubBimodule> = all
        .par_iter()
        .filter_map(|i| match is_invertible(endo, i) {
            Ok(true) => Some(Ok(i.clone())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    // Inclusion Inv in I^l and I^r.
    for i in &inv {
        if !left.contains(i) || !right.contains(i) {
            return Err(Error::Counterexample(
                "an invertible sub-bimodule fails one-sided membership".into(),
            ));
        }
    }
    let unit = unit_sub_bimodule(endo);
    let unit_idx = inv
        .iter()
        .position(|i| *i == unit)
        .ok_or_else(|| Error::Counterexample("lambda(B) is not invertible".into()))?;
    let invertible = MonoidTable::build(inv, unit_idx, |a, b| product_ij(endo, a, b))?;
    Ok(InvEnumeration {
        all,
        left,
        right,
        invertible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Field;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn sweedler_endo() -> EndoRing {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        let (_, incl) = a.subalgebra(&span).unwrap();
        let sigma = Bimodule::regular(&a).restrict_left(&incl).unwrap();
        EndoRing::new(&sigma).unwrap()
    }

    fn free_endo() -> EndoRing {
        let sigma = Bimodule::free(&Algebra::ground(f2()), 2);
        EndoRing::new(&sigma).unwrap()
    }

    /// Coordinates of a matrix unit of S in the Sweedler fixture, where S is
    /// the commutant of right multiplications acting on M_2 by left
    /// multiplication.
    fn s_elem(endo: &EndoRing, mat: Matrix) -> Vec<Scalar> {
        endo.from_matrix(&mat).unwrap()
    }

    fn left_mult_unit(endo: &EndoRing, i: usize) -> Vec<Scalar> {
        let a = Algebra::matrix_algebra(f2(), 2);
        s_elem(endo, a.left_mult(&a.basis_element(i)))
    }

    #[test]
    fn generators_of_unit_give_lambda_b() {
        let endo = sweedler_endo();
        let gen = sub_bimodule(&endo, &[endo.algebra.unit.clone()]);
        assert_eq!(gen, unit_sub_bimodule(&endo));
    }

    #[test]
    fn single_matrix_unit_generates_its_own_line() {
        // In the Sweedler fixture the diagonal actions fix each E_ij line.
        let endo = sweedler_endo();
        let e12 = left_mult_unit(&endo, 1);
        let gen = sub_bimodule(&endo, &[e12.clone()]);
        assert_eq!(gen.dim(), 1);
        assert!(gen.space.contains(&e12));
    }

    #[test]
    fn full_basis_generates_everything() {
        let endo = sweedler_endo();
        let gens: Vec<_> = (0..4).map(|i| endo.algebra.basis_element(i)).collect();
        let gen = sub_bimodule(&endo, &gens);
        assert_eq!(gen.dim(), 4);
    }

    #[test]
    fn unit_law_and_matrix_unit_products() {
        let endo = sweedler_endo();
        let unit = unit_sub_bimodule(&endo);
        let e12 = sub_bimodule(&endo, &[left_mult_unit(&endo, 1)]);
        let e21 = sub_bimodule(&endo, &[left_mult_unit(&endo, 2)]);
        let e11 = sub_bimodule(&endo, &[left_mult_unit(&endo, 0)]);
        assert_eq!(product_ij(&endo, &unit, &e12).unwrap(), e12);
        assert_eq!(product_ij(&endo, &e12, &e21).unwrap(), e11);
        let zero = SubBimodule {
            space: Subspace::zero(f2(), 4),
        };
        assert_eq!(product_ij(&endo, &e12, &zero).unwrap(), zero);
    }

    #[test]
    fn membership_certificate_for_the_unit() {
        let endo = sweedler_endo();
        let unit = unit_sub_bimodule(&endo);
        let cert = membership_left(&endo, &unit).unwrap().unwrap();
        assert!(cert.products_sum_to_unit(&endo.algebra));
        // m^{-1}(1) = 1 (x) 1 up to the quotient identification: products of
        // the stored pairs already sum to 1, and each x_k lies in lambda(B).
        for (_, x) in &cert.pairs {
            assert!(unit.space.contains(x));
        }
    }

    #[test]
    fn membership_certificate_for_the_swap_bimodule() {
        // I = span{E12, E21}: m^{-1}(1) = E12 (x) E21 + E21 (x) E12.
        let endo = sweedler_endo();
        let e12 = left_mult_unit(&endo, 1);
        let e21 = left_mult_unit(&endo, 2);
        let i = sub_bimodule(&endo, &[e12.clone(), e21.clone()]);
        assert_eq!(i.dim(), 2);
        let cert = membership_left(&endo, &i).unwrap().unwrap();
        assert!(cert.products_sum_to_unit(&endo.algebra));
        // The expected preimage: both (E12, E21) and (E21, E12) appear.
        let s = &endo.algebra;
        let mut seen = 0;
        for (sk, xk) in &cert.pairs {
            let p = s.mul(sk, xk);
            if p == s.mul(&e12, &e21) || p == s.mul(&e21, &e12) {
                seen += 1;
            }
        }
        assert_eq!(seen, 2);
        assert!(membership_right(&endo, &i).unwrap().is_some());
    }

    #[test]
    fn one_sided_multiplication_fails_for_a_corner() {
        let endo = sweedler_endo();
        let e11 = sub_bimodule(&endo, &[left_mult_unit(&endo, 0)]);
        assert!(membership_left(&endo, &e11).unwrap().is_none());
        assert!(membership_right(&endo, &e11).unwrap().is_none());
    }

    #[test]
    fn inverse_candidate_of_unit_is_unit() {
        let endo = sweedler_endo();
        let unit = unit_sub_bimodule(&endo);
        let j = inverse_candidate(&endo, &unit).unwrap();
        assert_eq!(j, unit);
        assert!(is_invertible(&endo, &unit).unwrap());
    }

    #[test]
    fn swap_bimodule_is_an_order_two_element() {
        let endo = sweedler_endo();
        let i = sub_bimodule(
            &endo,
            &[left_mult_unit(&endo, 1), left_mult_unit(&endo, 2)],
        );
        let j = inverse_candidate(&endo, &i).unwrap();
        assert_eq!(j, i);
        assert!(is_invertible(&endo, &i).unwrap());
        assert_eq!(product_ij(&endo, &i, &i).unwrap(), unit_sub_bimodule(&endo));
    }

    #[test]
    fn full_ring_is_not_invertible_over_a_proper_subring() {
        let endo = sweedler_endo();
        let full = SubBimodule {
            space: Subspace::full(f2(), 4),
        };
        assert!(!is_invertible(&endo, &full).unwrap());
    }

    #[test]
    fn sweedler_inv_is_the_order_two_group() {
        let endo = sweedler_endo();
        let inv = enumerate_inv(&endo, 1_000_000).unwrap();
        // Sub-bimodules are exactly the spans of subsets of the four matrix
        // units: 2^4 = 16 of them.
        assert_eq!(inv.all.len(), 16);
        assert_eq!(inv.invertible.len(), 2);
        assert!(inv.invertible.is_commutative());
    }

    #[test]
    fn free_inv_is_nonabelian_of_order_six() {
        let endo = free_endo();
        let inv = enumerate_inv(&endo, 1_000_000).unwrap();
        // B = F_2: every subspace of the 4-dimensional S is a sub-bimodule.
        assert_eq!(inv.all.len(), 67);
        assert_eq!(inv.left.len(), 6);
        assert_eq!(inv.right.len(), 6);
        assert_eq!(inv.invertible.len(), 6);
        assert!(!inv.invertible.is_commutative());
        // Every element has order dividing 6; the group is S_3 by order and
        // non-commutativity.
        for a in 0..6 {
            assert!(inv.invertible.inverse_of(a).is_some());
        }
    }

    #[test]
    fn trivial_extension_has_trivial_group() {
        // B = S: the only invertible sub-bimodule is B itself.
        let a = Algebra::matrix_algebra(f2(), 2);
        let sigma = Bimodule::regular(&a);
        let endo = EndoRing::new(&sigma).unwrap();
        let inv = enumerate_inv(&endo, 1_000_000).unwrap();
        assert_eq!(inv.invertible.len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let endo = free_endo();
        assert!(matches!(
            enumerate_inv(&endo, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}

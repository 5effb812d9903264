//! Separability of a bimodule, splitness of the ring extension, and
//! best-effort verification of the freeness/faithfulness hypotheses.

use crate::bimodule::{left_dual, Bimodule};
use crate::endo::EndoRing;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use crate::tensor::TensorProduct;

/// A witness that the evaluation map splits: a (B, B)-bilinear section.
#[derive(Clone, Debug)]
pub struct SeparabilityWitness {
    /// Section `B -> Sigma (x)_A *Sigma` on quotient coordinates.
    pub section: Matrix,
    /// The tensor product the section lands in.
    pub evaluation: Matrix,
}

/// Decides whether `Sigma` is a separable bimodule: the evaluation map
/// `Sigma (x)_A *Sigma -> B` must split as a map of (B, B)-bimodules.
pub fn is_separable_bimodule(sigma: &Bimodule) -> Result<Option<SeparabilityWitness>> {
    let b = &sigma.left;
    let field = sigma.field();
    let star = left_dual(sigma)?;
    let t = TensorProduct::over_ring(sigma, &star.module)?;
    // Evaluation on ambient pairs: m (x) phi -> phi(m).
    let mut ev_ambient = Matrix::zeros(field, b.dim, t.ambient_dim());
    for i in 0..sigma.dim {
        for j in 0..star.module.dim {
            let val = star.functionals[j].apply(&sigma.basis_element(i));
            for r in 0..b.dim {
                ev_ambient.set(r, i * star.module.dim + j, val[r].clone());
            }
        }
    }
    let ev = t.space.induce(&ev_ambient, "evaluation map")?;
    // Solve for sigma: B -> Q with ev o sigma = id and B-bilinearity.
    let q = t.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // ev o sigma = id_B.
    for r in 0..b.dim {
        for c in 0..b.dim {
            let mut row = vec![field.zero(); q * b.dim];
            for k in 0..q {
                let e = ev.at(r, k);
                if !e.is_zero() {
                    row[k * b.dim + c] = row[k * b.dim + c].add(e);
                }
            }
            rows.push(row);
            rhs.push(if r == c { field.one() } else { field.zero() });
        }
    }
    // Bilinearity: sigma o L_b = L_b^Q o sigma and sigma o R_b = R_b^Q o sigma.
    let id_q = Matrix::identity(field, q);
    let id_b = Matrix::identity(field, b.dim);
    for idx in 0..b.dim {
        let lb = b.left_mult(&b.basis_element(idx));
        let rb = b.right_mult(&b.basis_element(idx));
        for (outer, inner) in [
            (&t.module.left_action[idx], &lb),
            (&t.module.right_action[idx], &rb),
        ] {
            let cond = id_q
                .kronecker(&inner.transpose())
                .sub(&outer.kronecker(&id_b));
            for r in 0..cond.rows() {
                rows.push(cond.row(r));
                rhs.push(field.zero());
            }
        }
    }
    let system = Matrix::from_rows(field, &rows);
    let sol = system.solve(&Matrix::from_col(field, &rhs))?;
    Ok(sol.map(|flat| SeparabilityWitness {
        section: Matrix::new(field, q, b.dim, flat.col(0)),
        evaluation: ev,
    }))
}

/// Decides whether `lambda: B -> S` splits: a (B, B)-bilinear `alpha: S -> B`
/// with `alpha(1) = 1`.
pub fn is_split_extension(endo: &EndoRing) -> Result<Option<Matrix>> {
    let s = &endo.algebra;
    let b = &endo.extension.morphism.source;
    let field = s.field;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // alpha(1_S) = 1_B.
    for r in 0..b.dim {
        let mut row = vec![field.zero(); b.dim * s.dim];
        for k in 0..s.dim {
            let u = &s.unit[k];
            if !u.is_zero() {
                row[r * s.dim + k] = row[r * s.dim + k].add(u);
            }
        }
        rows.push(row);
        rhs.push(b.unit[r].clone());
    }
    // Bilinearity through lambda: alpha(lambda(b) s) = b alpha(s) and
    // alpha(s lambda(b)) = alpha(s) b.
    let id_b = Matrix::identity(field, b.dim);
    let id_s = Matrix::identity(field, s.dim);
    for idx in 0..b.dim {
        let lam_b = endo.extension.morphism.apply(&b.basis_element(idx));
        for (s_side, b_side) in [
            (s.left_mult(&lam_b), b.left_mult(&b.basis_element(idx))),
            (s.right_mult(&lam_b), b.right_mult(&b.basis_element(idx))),
        ] {
            let cond = id_b
                .kronecker(&s_side.transpose())
                .sub(&b_side.kronecker(&id_s));
            for r in 0..cond.rows() {
                rows.push(cond.row(r));
                rhs.push(field.zero());
            }
        }
    }
    let system = Matrix::from_rows(field, &rows);
    let sol = system.solve(&Matrix::from_col(field, &rhs))?;
    Ok(sol.map(|flat| Matrix::new(field, b.dim, s.dim, flat.col(0))))
}

/// Outcome of the explicit free-basis search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free { basis: Vec<Vec<Scalar>> },
    NotFree { reason: String },
    Unverified { reason: String },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionSide {
    Left,
    Right,
}

/// Searches for an explicit basis making the module free over the acting
/// algebra. Exhaustive (with backtracking) over finite fields within the
/// budget; decidable special cases otherwise.
pub fn find_free_basis(m: &Bimodule, side: ActionSide, budget: u64) -> Freeness {
    let algebra = match side {
        ActionSide::Left => &m.left,
        ActionSide::Right => &m.right,
    };
    let field = m.field();
    if algebra.dim == 0 || m.dim == 0 {
        return Freeness::Free { basis: Vec::new() };
    }
    if m.dim % algebra.dim != 0 {
        return Freeness::NotFree {
            reason: format!(
                "dimension obstruction: module dim {} is not a multiple of the algebra dim {}",
                m.dim, algebra.dim
            ),
        };
    }
    let rank = m.dim / algebra.dim;
    if algebra.dim == 1 {
        // Vector spaces are free.
        let basis = (0..m.dim).map(|i| m.basis_element(i)).collect();
        return Freeness::Free { basis };
    }
    let Field::Fp(p) = field else {
        return Freeness::Unverified {
            reason: "free-basis search is exhaustive only over finite fields".into(),
        };
    };
    let total = (p as u128).saturating_pow(m.dim as u32);
    if total > budget as u128 {
        return Freeness::Unverified {
            reason: format!("vector search space {total} exceeds the budget {budget}"),
        };
    }
    // Enumerate all vectors once.
    let mut vectors = Vec::with_capacity(total as usize - 1);
    for counter in 1..total {
        let mut v = Vec::with_capacity(m.dim);
        let mut rem = counter;
        for _ in 0..m.dim {
            v.push(field.from_int((rem % p as u128) as i64));
            rem /= p as u128;
        }
        vectors.push(v);
    }
    let cyclic = |v: &Vec<Scalar>| -> Subspace {
        let vecs: Vec<Vec<Scalar>> = (0..algebra.dim)
            .map(|i| match side {
                ActionSide::Left => m.act_left(&algebra.basis_element(i), v),
                ActionSide::Right => m.act_right(v, &algebra.basis_element(i)),
            })
            .collect();
        Subspace::from_span(field, m.dim, &vecs)
    };
    fn search(
        vectors: &[Vec<Scalar>],
        cyclic: &dyn Fn(&Vec<Scalar>) -> Subspace,
        algebra_dim: usize,
        span: &Subspace,
        start: usize,
        depth: usize,
        chosen: &mut Vec<Vec<Scalar>>,
    ) -> bool {
        if depth == 0 {
            return true;
        }
        for idx in start..vectors.len() {
            let v = &vectors[idx];
            if span.contains(v) {
                continue;
            }
            let cy = cyclic(v);
            if cy.dim() != algebra_dim {
                continue;
            }
            if span.intersect(&cy).map(|s| s.dim()).unwrap_or(1) != 0 {
                continue;
            }
            let grown = span.sum(&cy).expect("compatible subspaces");
            chosen.push(v.clone());
            if search(vectors, cyclic, algebra_dim, &grown, idx + 1, depth - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let found = search(
        &vectors,
        &cyclic,
        algebra.dim,
        &Subspace::zero(field, m.dim),
        0,
        rank,
        &mut chosen,
    );
    if found {
        Freeness::Free { basis: chosen }
    } else {
        Freeness::NotFree {
            reason: "exhaustive search found no free basis".into(),
        }
    }
}

/// Status of the theorem hypotheses for a bimodule.
#[derive(Clone, Debug)]
pub struct HypothesisReport {
    /// `lambda: B -> S` injective.
    pub faithful: bool,
    pub separable: Option<SeparabilityWitness>,
    pub split: Option<Matrix>,
    /// `_B Sigma` freeness (freeness of positive rank certifies faithful
    /// flatness).
    pub sigma_left_free: Freeness,
    /// `Sigma*_B` freeness.
    pub dual_right_free: Freeness,
    /// Whether one of the alternative hypotheses was positively verified.
    pub hypothesis_verified: bool,
    /// Human-readable explanation.
    pub summary: String,
}

/// Best-effort hypothesis check: separability is decided exactly; flatness
/// facts are reported only in the decidable sub-cases (explicit free-basis
/// search), otherwise marked unverified.
pub fn check_hypotheses(sigma: &Bimodule, budget: u64) -> Result<HypothesisReport> {
    let endo = EndoRing::new(sigma)?;
    let dual = crate::bimodule::right_dual(sigma)?;
    let faithful = endo.extension.injective;
    let separable = is_separable_bimodule(sigma)?;
    let split = is_split_extension(&endo)?;
    if separable.is_some() && split.is_none() {
        return Err(Error::Counterexample(
            "separable bimodule with non-split extension".into(),
        ));
    }
    let sigma_left_free = find_free_basis(sigma, ActionSide::Left, budget);
    let dual_right_free = find_free_basis(&dual.module, ActionSide::Right, budget);
    let flat_ok = (sigma_left_free.is_free() || dual_right_free.is_free()) && sigma.dim > 0;
    let hypothesis_verified = separable.is_some() || flat_ok;
    let summary = if separable.is_some() {
        "separable bimodule: hypothesis (b) verified".to_string()
    } else if flat_ok {
        let side = if sigma_left_free.is_free() {
            "the module is free of positive rank over B on the left"
        } else {
            "the right dual is free of positive rank over B"
        };
        format!("faithful flatness certified: {side}")
    } else {
        let mut reasons = Vec::new();
        if let Freeness::Unverified { reason } | Freeness::NotFree { reason } = &sigma_left_free {
            reasons.push(format!("left freeness: {reason}"));
        }
        if let Freeness::Unverified { reason } | Freeness::NotFree { reason } = &dual_right_free {
            reasons.push(format!("dual right freeness: {reason}"));
        }
        format!("unverified: {}", reasons.join("; "))
    };
    Ok(HypothesisReport {
        faithful,
        separable,
        split,
        sigma_left_free,
        dual_right_free,
        hypothesis_verified,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, AlgebraMorphism};

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn ex_sep_sigma() -> Bimodule {
        // A = S = F_2 x F_2, B = F_2 embedded diagonally, Sigma = A.
        let k = Algebra::ground(f2());
        let a = Algebra::product(&k, &k).unwrap();
        let unit_map =
            AlgebraMorphism::new(k.clone(), a.clone(), Matrix::from_col(f2(), &a.unit)).unwrap();
        Bimodule::regular(&a).restrict_left(&unit_map).unwrap()
    }

    fn ex_sweedler_sigma() -> Bimodule {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        let (_, incl) = a.subalgebra(&span).unwrap();
        Bimodule::regular(&a).restrict_left(&incl).unwrap()
    }

    #[test]
    fn trivial_bimodule_is_separable() {
        let k = Algebra::ground(f2());
        let sigma = Bimodule::regular(&k);
        let w = is_separable_bimodule(&sigma).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn ex_sep_is_separable_with_an_explicit_section() {
        let sigma = ex_sep_sigma();
        let w = is_separable_bimodule(&sigma).unwrap().expect("separable");
        // The section really splits the evaluation.
        let composite = w.evaluation.mul(&w.section);
        assert_eq!(composite, Matrix::identity(f2(), 1));
    }

    #[test]
    fn first_coordinate_projection_splits_ex_sep() {
        // alpha(x, y) = x is a unital B-linear splitting of B -> S = F_2^2.
        let sigma = ex_sep_sigma();
        let endo = EndoRing::new(&sigma).unwrap();
        let alpha = is_split_extension(&endo).unwrap().expect("split");
        assert_eq!(alpha.apply(&endo.algebra.unit), vec![f2().one()]);
        // Cross-check the named splitting: both coordinate projections work;
        // the solver returns one of them.
        let e0 = endo.algebra.basis_element(0);
        let e1 = endo.algebra.basis_element(1);
        let v0 = alpha.apply(&e0);
        let v1 = alpha.apply(&e1);
        assert_eq!(v0[0].clone().add(&v1[0]), f2().one());
    }

    #[test]
    fn identity_extension_splits() {
        let a = Algebra::matrix_algebra(f2(), 2);
        let sigma = Bimodule::regular(&a);
        let endo = EndoRing::new(&sigma).unwrap();
        let alpha = is_split_extension(&endo).unwrap();
        assert!(alpha.is_some());
    }

    #[test]
    fn separable_implies_split_on_fixtures() {
        for sigma in [ex_sep_sigma(), ex_sweedler_sigma()] {
            let endo = EndoRing::new(&sigma).unwrap();
            let sep = is_separable_bimodule(&sigma).unwrap();
            let split = is_split_extension(&endo).unwrap();
            if sep.is_some() {
                assert!(split.is_some());
            }
        }
    }

    #[test]
    fn sweedler_module_is_free_with_the_expected_basis() {
        // _B S is free of rank 2; {1, E12 + E21} is one valid basis, and the
        // search finds some basis.
        let sigma = ex_sweedler_sigma();
        let out = find_free_basis(&sigma, ActionSide::Left, 1_000_000);
        let Freeness::Free { basis } = &out else {
            panic!("expected freeness, got {out:?}");
        };
        assert_eq!(basis.len(), 2);
        // Verify the documented basis directly: B^2 -> Sigma is bijective.
        let a = Algebra::matrix_algebra(f2(), 2);
        let one = a.unit.clone();
        let mut swap = vec![f2().zero(); 4];
        swap[1] = f2().one();
        swap[2] = f2().one();
        let mut cols = Vec::new();
        for v in [&one, &swap] {
            for bidx in 0..sigma.left.dim {
                cols.push(sigma.act_left(&sigma.left.basis_element(bidx), v));
            }
        }
        let map = Matrix::from_rows(f2(), &cols).transpose();
        assert_eq!(map.rank(), 4);
    }

    #[test]
    fn freeness_search_distinguishes_dimension_obstructions() {
        // One-dimensional module over the two-dimensional dual numbers:
        // not free for dimension reasons.
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
        let m = Bimodule::new(
            dual_numbers,
            k,
            1,
            vec![Matrix::identity(field, 1), Matrix::zeros(field, 1, 1)],
            vec![Matrix::identity(field, 1)],
        )
        .unwrap();
        assert!(matches!(
            find_free_basis(&m, ActionSide::Left, 1_000_000),
            Freeness::NotFree { .. }
        ));
    }

    #[test]
    fn rational_fixture_reports_unverified() {
        // Over QQ with a 2-dimensional acting algebra the search is skipped.
        let q = Field::Rationals;
        let one = q.one();
        let zero = q.zero();
        let constants = vec![
            vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]],
            vec![vec![zero.clone(), one.clone()], vec![zero.clone(), zero.clone()]],
        ];
        let dual_numbers = Algebra::new(
            q,
            vec!["1".into(), "x".into()],
            constants,
            vec![one, zero],
        )
        .unwrap();
        let m = Bimodule::regular(&dual_numbers);
        // The regular module is free, but a 4-dimensional fake with no easy
        // structure is what we test: use the regular module restricted to a
        // non-free-looking search by budget 0 first.
        assert!(matches!(
            find_free_basis(&m, ActionSide::Left, 0),
            Freeness::Unverified { .. } | Freeness::Free { .. }
        ));
        let out = find_free_basis(&m, ActionSide::Left, 1_000_000);
        assert!(matches!(out, Freeness::Unverified { .. }));
    }

    #[test]
    fn hypotheses_reports_on_fixtures() {
        // EX-FREE: a vector space over B = F_2 is trivially free.
        let sigma = Bimodule::free(&Algebra::ground(f2()), 2);
        let rep = check_hypotheses(&sigma, 1_000_000).unwrap();
        assert!(rep.faithful);
        assert!(rep.sigma_left_free.is_free());
        assert!(rep.hypothesis_verified);
        // EX-SWEEDLER: freeness of rank 2 over the diagonal.
        let rep = check_hypotheses(&ex_sweedler_sigma(), 1_000_000).unwrap();
        assert!(rep.faithful);
        assert!(rep.sigma_left_free.is_free());
        assert!(rep.hypothesis_verified);
        // EX-SEP: separable.
        let rep = check_hypotheses(&ex_sep_sigma(), 1_000_000).unwrap();
        assert!(rep.separable.is_some());
        assert!(rep.hypothesis_verified);
    }
}

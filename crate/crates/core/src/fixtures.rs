//! Canonical example instances with independently derived expected values.
//!
//! Every frozen expectation carries the oracle that produced it, and
//! [`Fixture::rederive`] re-runs each oracle so the stored values can be
//! cross-checked at any time.

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::bimodule::Bimodule;
use crate::coring::ComatrixCoring;
use crate::correspondence::coring_endomorphisms;
use crate::endo::EndoRing;
use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::separability::{find_free_basis, is_separable_bimodule, ActionSide};
use crate::subbimodule::enumerate_inv;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedValue {
    Count(u64),
    Flag(bool),
    Dim(usize),
}

impl std::fmt::Display for ExpectedValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpectedValue::Count(n) => write!(f, "{n}"),
            ExpectedValue::Flag(b) => write!(f, "{b}"),
            ExpectedValue::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// The brute-force procedure behind a frozen expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// Exhaustive subspace enumeration filtered by closure and the product
    /// test; reports the group order.
    InvOrder,
    /// Commutativity read off the exhaustive group table.
    InvNonabelian,
    /// Exhaustive endomorphism enumeration; reports the unit-group order.
    AutOrder,
    /// Rank of the tensor relation span.
    CoringDim,
    /// Linear solve for a bilinear section of the evaluation map.
    Separable,
    /// Backtracking free-basis search over the left algebra.
    LeftFree,
}

impl Oracle {
    pub fn run(&self, fixture: &Fixture, budget: u64) -> Result<ExpectedValue> {
        match self {
            Oracle::InvOrder => {
                let endo = EndoRing::new(&fixture.sigma)?;
                let inv = enumerate_inv(&endo, budget)?;
                Ok(ExpectedValue::Count(inv.invertible.len() as u64))
            }
            Oracle::InvNonabelian => {
                let endo = EndoRing::new(&fixture.sigma)?;
                let inv = enumerate_inv(&endo, budget)?;
                Ok(ExpectedValue::Flag(!inv.invertible.is_commutative()))
            }
            Oracle::AutOrder => {
                let cm = ComatrixCoring::from_bimodule(&fixture.sigma)?;
                let table = coring_endomorphisms(&cm.coring, budget)?;
                Ok(ExpectedValue::Count(table.units().len() as u64))
            }
            Oracle::CoringDim => {
                let cm = ComatrixCoring::from_bimodule(&fixture.sigma)?;
                Ok(ExpectedValue::Dim(cm.coring.dim()))
            }
            Oracle::Separable => Ok(ExpectedValue::Flag(
                is_separable_bimodule(&fixture.sigma)?.is_some(),
            )),
            Oracle::LeftFree => Ok(ExpectedValue::Flag(
                find_free_basis(&fixture.sigma, ActionSide::Left, budget).is_free(),
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub name: &'static str,
    pub value: ExpectedValue,
    pub oracle: Oracle,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub sigma: Bimodule,
    pub expectations: Vec<Expectation>,
}

#[derive(Clone, Debug)]
pub struct Rederivation {
    pub name: &'static str,
    pub frozen: ExpectedValue,
    pub recomputed: ExpectedValue,
}

impl Rederivation {
    pub fn ok(&self) -> bool {
        self.frozen == self.recomputed
    }
}

impl Fixture {
    /// Re-runs every oracle and pairs the result with the frozen value.
    pub fn rederive(&self, budget: u64) -> Result<Vec<Rederivation>> {
        let mut out = Vec::with_capacity(self.expectations.len());
        for e in &self.expectations {
            let recomputed = e.oracle.run(self, budget)?;
            out.push(Rederivation {
                name: e.name,
                frozen: e.value.clone(),
                recomputed,
            });
        }
        Ok(out)
    }
}

fn f2() -> Field {
    Field::prime(2).expect("2 is prime")
}

/// `A = B = F_2`, `Sigma = F_2^2`, `S = M_2(F_2)`.
pub fn ex_free() -> Fixture {
    let sigma = Bimodule::free(&Algebra::ground(f2()), 2);
    Fixture {
        name: "EX-FREE",
        sigma,
        expectations: vec![
            Expectation {
                name: "coring dimension",
                value: ExpectedValue::Dim(4),
                oracle: Oracle::CoringDim,
            },
            Expectation {
                name: "invertible sub-bimodule group order",
                value: ExpectedValue::Count(6),
                oracle: Oracle::InvOrder,
            },
            Expectation {
                name: "invertible group is nonabelian",
                value: ExpectedValue::Flag(true),
                oracle: Oracle::InvNonabelian,
            },
            Expectation {
                name: "coring automorphism group order",
                value: ExpectedValue::Count(6),
                oracle: Oracle::AutOrder,
            },
            Expectation {
                name: "module free over B on the left",
                value: ExpectedValue::Flag(true),
                oracle: Oracle::LeftFree,
            },
        ],
    }
}

/// `B = diagonal in S = M_2(F_2)`, `Sigma = S` as a `(B, S)`-bimodule.
pub fn ex_sweedler() -> Fixture {
    let a = Algebra::matrix_algebra(f2(), 2);
    let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
    let (_, incl) = a.subalgebra(&span).expect("diagonal subalgebra");
    let sigma = Bimodule::regular(&a)
        .restrict_left(&incl)
        .expect("restriction along the inclusion");
    Fixture {
        name: "EX-SWEEDLER",
        sigma,
        expectations: vec![
            Expectation {
                name: "coring dimension",
                value: ExpectedValue::Dim(8),
                oracle: Oracle::CoringDim,
            },
            Expectation {
                name: "invertible sub-bimodule group order",
                value: ExpectedValue::Count(2),
                oracle: Oracle::InvOrder,
            },
            Expectation {
                name: "coring automorphism group order",
                value: ExpectedValue::Count(2),
                oracle: Oracle::AutOrder,
            },
            Expectation {
                name: "module free over B on the left",
                value: ExpectedValue::Flag(true),
                oracle: Oracle::LeftFree,
            },
        ],
    }
}

/// `A = S = F_2 x F_2`, `B = F_2` embedded diagonally, `Sigma = A`.
pub fn ex_sep() -> Fixture {
    let k = Algebra::ground(f2());
    let a = Algebra::product(&k, &k).expect("product algebra");
    let unit_map = AlgebraMorphism::new(k.clone(), a.clone(), Matrix::from_col(f2(), &a.unit))
        .expect("unit embedding");
    let sigma = Bimodule::regular(&a)
        .restrict_left(&unit_map)
        .expect("restriction along the unit");
    Fixture {
        name: "EX-SEP",
        sigma,
        expectations: vec![
            Expectation {
                name: "coring dimension",
                value: ExpectedValue::Dim(4),
                oracle: Oracle::CoringDim,
            },
            Expectation {
                name: "separable bimodule",
                value: ExpectedValue::Flag(true),
                oracle: Oracle::Separable,
            },
            Expectation {
                name: "invertible sub-bimodule group order",
                value: ExpectedValue::Count(1),
                oracle: Oracle::InvOrder,
            },
            Expectation {
                name: "coring automorphism group order",
                value: ExpectedValue::Count(1),
                oracle: Oracle::AutOrder,
            },
        ],
    }
}

pub fn all_fixtures() -> Vec<Fixture> {
    vec![ex_free(), ex_sweedler(), ex_sep()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_oracle_reproduces_its_frozen_value() {
        for fixture in all_fixtures() {
            for r in fixture.rederive(1_000_000).unwrap() {
                assert!(
                    r.ok(),
                    "{}: {} frozen {} but recomputed {}",
                    fixture.name,
                    r.name,
                    r.frozen,
                    r.recomputed
                );
            }
        }
    }

    #[test]
    fn fixtures_pass_construction_invariants() {
        for fixture in all_fixtures() {
            assert!(fixture.sigma.validate().ok(), "{}", fixture.name);
            assert!(fixture.sigma.left.validate().ok());
            assert!(fixture.sigma.right.validate().ok());
            let endo = EndoRing::new(&fixture.sigma).unwrap();
            assert!(endo.extension.injective, "{} must be faithful", fixture.name);
        }
    }

    #[test]
    fn ex_sweedler_sub_bimodules_are_matrix_unit_spans() {
        // The 16 sub-bimodules are exactly the spans of subsets of the four
        // matrix units.
        let fixture = ex_sweedler();
        let endo = EndoRing::new(&fixture.sigma).unwrap();
        let inv = enumerate_inv(&endo, 1_000_000).unwrap();
        assert_eq!(inv.all.len(), 16);
        // The nontrivial invertible: span{E12, E21} with square lambda(B).
        let a = Algebra::matrix_algebra(f2(), 2);
        let e12 = endo.from_matrix(&a.left_mult(&a.basis_element(1))).unwrap();
        let e21 = endo.from_matrix(&a.left_mult(&a.basis_element(2))).unwrap();
        let swap = crate::subbimodule::sub_bimodule(&endo, &[e12, e21]);
        let unit = crate::subbimodule::unit_sub_bimodule(&endo);
        assert!(inv.invertible.elements.contains(&swap));
        assert_eq!(
            crate::subbimodule::product_ij(&endo, &swap, &swap).unwrap(),
            unit
        );
    }

    #[test]
    fn ex_sep_has_only_the_diagonal_invertible() {
        let fixture = ex_sep();
        let endo = EndoRing::new(&fixture.sigma).unwrap();
        let inv = enumerate_inv(&endo, 1_000_000).unwrap();
        assert_eq!(inv.invertible.len(), 1);
        assert_eq!(inv.invertible.elements[0], crate::subbimodule::unit_sub_bimodule(&endo));
    }
}

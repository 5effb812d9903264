//! The correspondences between coring endomorphisms of `Sigma* (x)_B Sigma`
//! and one-sided unital B-sub-bimodules of `S = End_A(Sigma)`.
//!
//! `F_l(g) = Hom_C(Sigma_g, Sigma)` and `F_r(g) = Hom_C(Sigma, Sigma_g)`;
//! `Gamma_l` and `Gamma_r` rebuild coring endomorphisms from membership
//! certificates. The hat map transports endomorphisms to the Sweedler coring
//! of `B -> S` through `xi (x) xi`.

use crate::comodule::{hom_comodules, ComatrixComodules};
use crate::coring::{check_coring_morphism, CoringMorphism, SweedlerCoring};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{basis_vec, Matrix};
use crate::subbimodule::{GammaCertificate, GammaDirection, MonoidTable, SubBimodule};
use crate::subspace::{kernel as null_space, Subspace};
use rayon::prelude::*;

/// `F_l(g) = Hom_C(Sigma_g, Sigma)`, transported into S-coordinates.
pub fn f_left(bundle: &ComatrixComodules, g: &CoringMorphism) -> Result<SubBimodule> {
    let induced = bundle.rho_sigma.induce(g)?;
    hom_into_s(bundle, &induced, &bundle.rho_sigma)
}

/// `F_r(g) = Hom_C(Sigma, Sigma_g)`.
pub fn f_right(bundle: &ComatrixComodules, g: &CoringMorphism) -> Result<SubBimodule> {
    let induced = bundle.rho_sigma.induce(g)?;
    hom_into_s(bundle, &bundle.rho_sigma, &induced)
}

fn hom_into_s(
    bundle: &ComatrixComodules,
    x: &crate::comodule::Comodule,
    y: &crate::comodule::Comodule,
) -> Result<SubBimodule> {
    let endo = &bundle.cm.ctx.endo;
    let field = endo.algebra.field;
    let hom = hom_comodules(x, y)?;
    let m = bundle.cm.ctx.sigma.dim;
    let mut vecs = Vec::with_capacity(hom.dim());
    for row in hom.basis_vectors() {
        let mat = Matrix::new(field, m, m, row);
        vecs.push(endo.from_matrix(&mat)?);
    }
    let space = Subspace::from_span(field, endo.dim(), &vecs);
    SubBimodule::new(endo, space)
}

/// `Gamma_l(I)(u* (x) u) = sum_k u* s_k (x) x_k u` from a left membership
/// certificate.
pub fn gamma_left(
    bundle: &ComatrixComodules,
    cert: &GammaCertificate,
) -> Result<CoringMorphism> {
    if cert.direction != GammaDirection::Left {
        return Err(Error::NoCertificate("gamma_left needs a left certificate".into()));
    }
    gamma_from_pairs(bundle, &cert.pairs)
}

/// `Gamma_r(I)(u* (x) u) = sum_k u* t_k (x) s_k u` from a right membership
/// certificate.
pub fn gamma_right(
    bundle: &ComatrixComodules,
    cert: &GammaCertificate,
) -> Result<CoringMorphism> {
    if cert.direction != GammaDirection::Right {
        return Err(Error::NoCertificate("gamma_right needs a right certificate".into()));
    }
    gamma_from_pairs(bundle, &cert.pairs)
}

/// Shared construction: pairs `(p_k, q_k)` yield the ambient formula
/// `u* (x) u -> sum_k u* p_k (x) q_k u`.
fn gamma_from_pairs(
    bundle: &ComatrixComodules,
    pairs: &[(Vec<Scalar>, Vec<Scalar>)],
) -> Result<CoringMorphism> {
    let cm = &bundle.cm;
    let ctx = &cm.ctx;
    let endo = &ctx.endo;
    let dual = &ctx.dual;
    let sigma = &ctx.sigma;
    let field = sigma.field();
    let dstar = dual.module.dim;
    let m = sigma.dim;
    let mats: Vec<(Matrix, Matrix)> = pairs
        .iter()
        .map(|(p, q)| (endo.to_matrix(p), endo.to_matrix(q)))
        .collect();
    let mut ambient = Matrix::zeros(field, cm.coring.dim(), dstar * m);
    for t in 0..dstar {
        let func = &dual.functionals[t];
        for b in 0..m {
            let u = sigma.basis_element(b);
            let mut acc = vec![field.zero(); cm.coring.dim()];
            for (pm, qm) in &mats {
                // u* p_k is composition of the functional with p_k.
                let shifted = func.mul(pm);
                let coords = dual.coords_of(&shifted)?;
                let moved = qm.apply(&u);
                let term = cm.tensor.pure(&coords, &moved);
                for (a, v) in acc.iter_mut().zip(term) {
                    *a = a.add(&v);
                }
            }
            for r in 0..cm.coring.dim() {
                ambient.set(r, t * m + b, acc[r].clone());
            }
        }
    }
    let matrix = cm.tensor.space.induce(&ambient, "gamma endomorphism")?;
    CoringMorphism::new(cm.coring.clone(), cm.coring.clone(), matrix)
}

/// Exhaustively enumerates the monoid of coring endomorphisms: the affine
/// space of counit-preserving A-bilinear maps is enumerated and filtered by
/// the comultiplication condition.
pub fn coring_endomorphisms(
    coring: &crate::coring::Coring,
    budget: u64,
) -> Result<MonoidTable<Matrix>> {
    let field = coring.module.field();
    let c = coring.module.dim;
    let a = &coring.algebra;
    // Linear constraints on flat(phi), row-major c x c.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let id_c = Matrix::identity(field, c);
    for idx in 0..a.dim {
        for (act_src, act_tgt) in [
            (&coring.module.left_action[idx], &coring.module.left_action[idx]),
            (&coring.module.right_action[idx], &coring.module.right_action[idx]),
        ] {
            let cond = id_c
                .kronecker(&act_src.transpose())
                .sub(&act_tgt.kronecker(&id_c));
            for r in 0..cond.rows() {
                rows.push(cond.row(r));
                rhs.push(field.zero());
            }
        }
    }
    // eps o phi = eps: one row per (A coordinate, source basis element).
    for ar in 0..a.dim {
        for j in 0..c {
            let mut row = vec![field.zero(); c * c];
            for k in 0..c {
                let e = coring.counit.at(ar, k);
                if !e.is_zero() {
                    row[k * c + j] = row[k * c + j].add(e);
                }
            }
            rows.push(row);
            rhs.push(coring.counit.at(ar, j).clone());
        }
    }
    let system = Matrix::from_rows(field, &rows);
    let rhs_m = Matrix::from_col(field, &rhs);
    let Some(particular) = system.solve(&rhs_m)? else {
        return Err(Error::Invalid(
            "counit-preserving affine space is empty".into(),
        ));
    };
    let homogeneous = null_space(&system);
    let free_dim = homogeneous.dim();
    let count: u128 = match field {
        Field::Fp(p) => {
            let mut acc: u128 = 1;
            for _ in 0..free_dim {
                acc = acc.saturating_mul(p as u128);
                if acc > budget as u128 {
                    return Err(Error::BudgetExceeded {
                        required: acc,
                        budget,
                    });
                }
            }
            acc
        }
        Field::Rationals => {
            if free_dim > 0 {
                return Err(Error::InfiniteField);
            }
            1
        }
    };
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: count,
            budget,
        });
    }
    let hom_basis = homogeneous.basis_vectors();
    let candidates: Vec<Matrix> = (0..count as u64)
        .into_par_iter()
        .filter_map(|counter| {
            let mut flat = particular.col(0);
            if let Field::Fp(p) = field {
                let mut rem = counter;
                for basis_row in &hom_basis {
                    let digit = field.from_int((rem % p) as i64);
                    rem /= p;
                    if !digit.is_zero() {
                        for (f, b) in flat.iter_mut().zip(basis_row) {
                            *f = f.add(&digit.mul(b));
                        }
                    }
                }
            }
            let phi = Matrix::new(field, c, c, flat);
            // Comultiplication condition.
            let phi_phi = coring
                .square
                .map_factors(&phi, &phi, &coring.square, "phi (x) phi")
                .ok()?;
            if coring.comult.mul(&phi) == phi_phi.mul(&coring.comult) {
                Some(phi)
            } else {
                None
            }
        })
        .collect();
    let unit = candidates
        .iter()
        .position(|m| *m == id_c)
        .ok_or_else(|| Error::Counterexample("identity not found among endomorphisms".into()))?;
    MonoidTable::build(candidates, unit, |f, g| Ok(f.mul(g)))
}

/// Wraps the table entries as validated coring morphisms.
pub fn table_morphisms(
    coring: &crate::coring::Coring,
    table: &MonoidTable<Matrix>,
) -> Result<Vec<CoringMorphism>> {
    table
        .elements
        .iter()
        .map(|m| CoringMorphism::new(coring.clone(), coring.clone(), m.clone()))
        .collect()
}

/// The transport `g -> (xi (x) xi) o (Sigma (x) g (x) Sigma*) o
/// (xi^{-1} (x) xi^{-1})` into the endomorphisms of the Sweedler coring.
pub fn hat_map(
    bundle: &ComatrixComodules,
    sweedler: &SweedlerCoring,
    g: &CoringMorphism,
) -> Result<CoringMorphism> {
    let ctx = &bundle.cm.ctx;
    let xi = &ctx.xi;
    let endo = &ctx.endo;
    let field = endo.algebra.field;
    let n = endo.dim();
    let mut ambient = Matrix::zeros(field, sweedler.coring.dim(), n * n);
    for i in 0..n {
        let left_lift = xi.product.lift(&xi.inverse.apply(&basis_vec(field, n, i)));
        let left_terms = xi.product.ambient_terms(&left_lift);
        for j in 0..n {
            let right_lift = xi.product.lift(&xi.inverse.apply(&basis_vec(field, n, j)));
            let right_terms = xi.product.ambient_terms(&right_lift);
            let mut acc = vec![field.zero(); sweedler.coring.dim()];
            for (u_idx, vstar_idx, c1) in &left_terms {
                for (uprime_idx, wstar_idx, c2) in &right_terms {
                    // Middle: g(v* (x) u').
                    let middle = bundle.cm.tensor.pure(
                        &basis_vec(field, ctx.dual.module.dim, *vstar_idx),
                        &ctx.sigma.basis_element(*uprime_idx),
                    );
                    let moved = g.matrix.apply(&middle);
                    let mid_lift = bundle.cm.tensor.lift(&moved);
                    for (pstar_idx, x_idx, c3) in bundle.cm.tensor.ambient_terms(&mid_lift) {
                        let coeff = c1.mul(c2).mul(&c3);
                        let s1 = xi.apply_pure(
                            &ctx.sigma.basis_element(*u_idx),
                            &basis_vec(field, ctx.dual.module.dim, pstar_idx),
                        );
                        let s2 = xi.apply_pure(
                            &ctx.sigma.basis_element(x_idx),
                            &basis_vec(field, ctx.dual.module.dim, *wstar_idx),
                        );
                        let term = sweedler.pure(&s1, &s2);
                        for (a, v) in acc.iter_mut().zip(term) {
                            *a = a.add(&coeff.mul(&v));
                        }
                    }
                }
            }
            for r in 0..sweedler.coring.dim() {
                ambient.set(r, i * n + j, acc[r].clone());
            }
        }
    }
    let matrix = sweedler.tensor.space.induce(&ambient, "hat map")?;
    CoringMorphism::new(sweedler.coring.clone(), sweedler.coring.clone(), matrix)
}

/// The Gamma map of the extension itself (`Sigma = S` over `B`):
/// `s (x) s' -> sum_k s s_k (x) x_k s'`, landing in the Sweedler coring.
pub fn gamma_bar_left(
    sweedler: &SweedlerCoring,
    cert: &GammaCertificate,
) -> Result<CoringMorphism> {
    if cert.direction != GammaDirection::Left {
        return Err(Error::NoCertificate("gamma_bar_left needs a left certificate".into()));
    }
    let s = &sweedler.extension.morphism.target;
    let field = s.field;
    let n = s.dim;
    let mut ambient = Matrix::zeros(field, sweedler.coring.dim(), n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = vec![field.zero(); sweedler.coring.dim()];
            for (sk, xk) in &cert.pairs {
                let first = s.mul(&s.basis_element(i), sk);
                let second = s.mul(xk, &s.basis_element(j));
                let term = sweedler.pure(&first, &second);
                for (a, v) in acc.iter_mut().zip(term) {
                    *a = a.add(&v);
                }
            }
            for r in 0..sweedler.coring.dim() {
                ambient.set(r, i * n + j, acc[r].clone());
            }
        }
    }
    let matrix = sweedler.tensor.space.induce(&ambient, "gamma on the extension")?;
    CoringMorphism::new(sweedler.coring.clone(), sweedler.coring.clone(), matrix)
}

/// Fixed elements `{s in S : ghat(s (x) 1) = 1 (x) s}` as a sub-bimodule.
pub fn fixed_elements(
    bundle: &ComatrixComodules,
    sweedler: &SweedlerCoring,
    ghat: &CoringMorphism,
) -> Result<SubBimodule> {
    let endo = &bundle.cm.ctx.endo;
    let s = &endo.algebra;
    let field = s.field;
    let n = s.dim;
    let mut left_emb = Matrix::zeros(field, sweedler.coring.dim(), n);
    let mut right_emb = Matrix::zeros(field, sweedler.coring.dim(), n);
    for aidx in 0..n {
        let e = s.basis_element(aidx);
        let l = sweedler.pure(&e, &s.unit);
        let r = sweedler.pure(&s.unit, &e);
        for row in 0..sweedler.coring.dim() {
            left_emb.set(row, aidx, l[row].clone());
            right_emb.set(row, aidx, r[row].clone());
        }
    }
    let cond = ghat.matrix.mul(&left_emb).sub(&right_emb);
    let space = null_space(&cond);
    SubBimodule::new(endo, space)
}

/// Checks that a membership certificate produces a representative-independent
/// Gamma endomorphism: recomputes the preimage of 1 with a second solve
/// convention (a direct ambient solve, which generally picks a different
/// representative) and compares the resulting morphisms.
pub fn gamma_left_alternate(
    bundle: &ComatrixComodules,
    i: &SubBimodule,
) -> Result<Option<(CoringMorphism, CoringMorphism)>> {
    let endo = &bundle.cm.ctx.endo;
    let s = &endo.algebra;
    let field = s.field;
    let Some(cert) = crate::subbimodule::membership_left(endo, i)? else {
        return Ok(None);
    };
    let g1 = gamma_left(bundle, &cert)?;
    // Ambient solve: find any representative of m^{-1}(1) directly in the
    // plain tensor coordinates of S (x) I.
    let basis = i.space.basis_vectors();
    let mut ambient = Matrix::zeros(field, s.dim, s.dim * basis.len());
    for a in 0..s.dim {
        for (bidx, x) in basis.iter().enumerate() {
            let prod = s.mul(&s.basis_element(a), x);
            for r in 0..s.dim {
                ambient.set(r, a * basis.len() + bidx, prod[r].clone());
            }
        }
    }
    let Some(sol) = ambient.solve_vec(&s.unit)? else {
        return Ok(None);
    };
    let mut pairs = Vec::with_capacity(basis.len());
    for (bidx, x) in basis.iter().enumerate() {
        let mut sk = vec![field.zero(); s.dim];
        for a in 0..s.dim {
            let c = &sol[a * basis.len() + bidx];
            if !c.is_zero() {
                sk[a] = sk[a].add(c);
            }
        }
        pairs.push((sk, x.clone()));
    }
    let alt = GammaCertificate {
        direction: GammaDirection::Left,
        sub: i.clone(),
        pairs,
    };
    let g2 = gamma_left(bundle, &alt)?;
    Ok(Some((g1, g2)))
}

/// Validates that a matrix is a coring endomorphism of the given coring.
pub fn is_coring_endomorphism(coring: &crate::coring::Coring, m: &Matrix) -> Result<bool> {
    Ok(check_coring_morphism(coring, coring, m)?.ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::Bimodule;
    use crate::coring::Coring;
    use crate::subbimodule::{
        enumerate_inv, membership_left, sub_bimodule, unit_sub_bimodule,
    };

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn free_bundle() -> ComatrixComodules {
        let sigma = Bimodule::free(&Algebra::ground(f2()), 2);
        ComatrixComodules::from_bimodule(&sigma).unwrap()
    }

    fn sweedler_bundle() -> ComatrixComodules {
        let a = Algebra::matrix_algebra(f2(), 2);
        let span = Subspace::from_span(f2(), 4, &[a.basis_element(0), a.basis_element(3)]);
        let (_, incl) = a.subalgebra(&span).unwrap();
        let sigma = Bimodule::regular(&a).restrict_left(&incl).unwrap();
        ComatrixComodules::from_bimodule(&sigma).unwrap()
    }

    fn identity_endo(c: &Coring) -> CoringMorphism {
        CoringMorphism::new(c.clone(), c.clone(), Matrix::identity(c.module.field(), c.dim()))
            .unwrap()
    }

    #[test]
    fn f_left_of_identity_is_lambda_b() {
        for bundle in [free_bundle(), sweedler_bundle()] {
            let id = identity_endo(&bundle.cm.coring);
            let fl = f_left(&bundle, &id).unwrap();
            assert_eq!(fl, unit_sub_bimodule(&bundle.cm.ctx.endo));
        }
    }

    #[test]
    fn gamma_of_the_unit_is_the_identity() {
        for bundle in [free_bundle(), sweedler_bundle()] {
            let endo = &bundle.cm.ctx.endo;
            let unit = unit_sub_bimodule(endo);
            let cert = membership_left(endo, &unit).unwrap().unwrap();
            let g = gamma_left(&bundle, &cert).unwrap();
            assert_eq!(
                g.matrix,
                Matrix::identity(f2(), bundle.cm.coring.dim())
            );
        }
    }

    #[test]
    fn endomorphism_monoid_sizes() {
        let free = free_bundle();
        let table = coring_endomorphisms(&free.cm.coring, 1_000_000).unwrap();
        assert_eq!(table.len(), 6);
        assert_eq!(table.units().len(), 6);
        assert!(!table.is_commutative());
        let sw = sweedler_bundle();
        let table = coring_endomorphisms(&sw.cm.coring, 1_000_000).unwrap();
        assert_eq!(table.units().len(), 2);
    }

    #[test]
    fn trivial_coring_has_identity_endomorphism_only() {
        // C = A for Sigma = A over B = A: the affine space is a point.
        let a = Algebra::matrix_algebra(f2(), 2);
        let sigma = Bimodule::regular(&a);
        let bundle = ComatrixComodules::from_bimodule(&sigma).unwrap();
        let table = coring_endomorphisms(&bundle.cm.coring, 1_000_000).unwrap();
        assert_eq!(table.len(), 1);
    }

    #[test]
    fn sweedler_nontrivial_automorphism_swaps_the_corner_lines() {
        let bundle = sweedler_bundle();
        let endo = &bundle.cm.ctx.endo;
        let a = Algebra::matrix_algebra(f2(), 2);
        let e12 = endo.from_matrix(&a.left_mult(&a.basis_element(1))).unwrap();
        let e21 = endo.from_matrix(&a.left_mult(&a.basis_element(2))).unwrap();
        let i = sub_bimodule(endo, &[e12, e21]);
        let cert = membership_left(endo, &i).unwrap().unwrap();
        let g = gamma_left(&bundle, &cert).unwrap();
        // Order two, not the identity.
        let id = Matrix::identity(f2(), bundle.cm.coring.dim());
        assert_ne!(g.matrix, id);
        assert_eq!(g.matrix.mul(&g.matrix), id);
        // F_l recovers I.
        let back = f_left(&bundle, &g).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn round_trips_on_all_enumerated_elements() {
        for bundle in [free_bundle(), sweedler_bundle()] {
            let endo = &bundle.cm.ctx.endo;
            let table = coring_endomorphisms(&bundle.cm.coring, 1_000_000).unwrap();
            let morphs = table_morphisms(&bundle.cm.coring, &table).unwrap();
            for g in &morphs {
                let i = f_left(&bundle, g).unwrap();
                let cert = membership_left(endo, &i).unwrap().expect("F_l lands in I^l");
                let back = gamma_left(&bundle, &cert).unwrap();
                assert_eq!(back.matrix, g.matrix);
            }
            let inv = enumerate_inv(endo, 1_000_000).unwrap();
            for i in &inv.left {
                let cert = membership_left(endo, i).unwrap().unwrap();
                let g = gamma_left(&bundle, &cert).unwrap();
                let back = f_left(&bundle, &g).unwrap();
                assert_eq!(&back, i);
            }
        }
    }

    #[test]
    fn gamma_is_representative_independent() {
        for bundle in [free_bundle(), sweedler_bundle()] {
            let endo = &bundle.cm.ctx.endo;
            let inv = enumerate_inv(endo, 1_000_000).unwrap();
            for i in &inv.left {
                let (g1, g2) = gamma_left_alternate(&bundle, i).unwrap().unwrap();
                assert_eq!(g1.matrix, g2.matrix);
            }
        }
    }

    #[test]
    fn hat_of_identity_is_identity() {
        let bundle = sweedler_bundle();
        let sweedler = SweedlerCoring::of_endo_ring(&bundle.cm.ctx.endo).unwrap();
        let id = identity_endo(&bundle.cm.coring);
        let hat = hat_map(&bundle, &sweedler, &id).unwrap();
        assert_eq!(
            hat.matrix,
            Matrix::identity(f2(), sweedler.coring.dim())
        );
    }

    #[test]
    fn hat_commutes_with_gamma_bar() {
        // For the swap sub-bimodule I: hat(Gamma_l(I)) = Gamma_bar_l(I).
        let bundle = sweedler_bundle();
        let endo = &bundle.cm.ctx.endo;
        let sweedler = SweedlerCoring::of_endo_ring(endo).unwrap();
        let a = Algebra::matrix_algebra(f2(), 2);
        let e12 = endo.from_matrix(&a.left_mult(&a.basis_element(1))).unwrap();
        let e21 = endo.from_matrix(&a.left_mult(&a.basis_element(2))).unwrap();
        let i = sub_bimodule(endo, &[e12, e21]);
        let cert = membership_left(endo, &i).unwrap().unwrap();
        let g = gamma_left(&bundle, &cert).unwrap();
        let hat = hat_map(&bundle, &sweedler, &g).unwrap();
        let bar = gamma_bar_left(&sweedler, &cert).unwrap();
        assert_eq!(hat.matrix, bar.matrix);
        // The hat of the order-two automorphism is itself of order two.
        let id = Matrix::identity(f2(), sweedler.coring.dim());
        assert_ne!(hat.matrix, id);
        assert_eq!(hat.matrix.mul(&hat.matrix), id);
    }

    #[test]
    fn fixed_elements_of_identity_hat_is_lambda_b() {
        let bundle = sweedler_bundle();
        let endo = &bundle.cm.ctx.endo;
        let sweedler = SweedlerCoring::of_endo_ring(endo).unwrap();
        let id = identity_endo(&bundle.cm.coring);
        let hat = hat_map(&bundle, &sweedler, &id).unwrap();
        let fixed = fixed_elements(&bundle, &sweedler, &hat).unwrap();
        assert_eq!(fixed, unit_sub_bimodule(endo));
    }

    #[test]
    fn fixed_elements_recover_f_left() {
        let bundle = sweedler_bundle();
        let endo = &bundle.cm.ctx.endo;
        let sweedler = SweedlerCoring::of_endo_ring(endo).unwrap();
        let table = coring_endomorphisms(&bundle.cm.coring, 1_000_000).unwrap();
        for g in table_morphisms(&bundle.cm.coring, &table).unwrap() {
            let hat = hat_map(&bundle, &sweedler, &g).unwrap();
            let fixed = fixed_elements(&bundle, &sweedler, &hat).unwrap();
            let fl = f_left(&bundle, &g).unwrap();
            assert_eq!(fixed, fl);
        }
    }

    use crate::subspace::Subspace;
}

use epw_core::chow::{chern_f, chern_f_expansion, chern_quotient, chern_wedge3_character, chern_wedge3_expansion, porteous_ya2, ChowClass};
use epw_core::lagrangian::{random_symmetric, rng};
use epw_core::quadform::{corank, initial_term, initial_term_check, kernel_of, restricted_det, restriction_rank, stratum_codim, stratum_tangent, sym_pairs, QuadForm};
use epw_core::verify::random_quadform;
use epw_core::{Field, Mat, MultiPoly, Rationals};
use proptest::prelude::*;

#[test]
fn chern_classes() {
    assert_eq!(chern_f(), ChowClass([1, -6, 18, -34, 42, -42]));
    assert_eq!(chern_f(), chern_f_expansion());
    assert_eq!(chern_wedge3_character(), chern_wedge3_expansion());
    assert_eq!(chern_wedge3_character().coeff(1), 6);
    // 0 → O(-1) → V ⊗ O → Q → 0 gives c(Q) = 1/(1 - h)
    assert_eq!(chern_quotient(), ChowClass([1, 1, 1, 1, 1, 1]));
    assert_eq!(chern_quotient().mul(&ChowClass([1, -1, 0, 0, 0, 0])), ChowClass::one());
    assert_eq!(chern_f().mul(&chern_wedge3_character()), ChowClass::one());
    assert_eq!(chern_wedge3_character().inverse().unwrap(), chern_f());
    assert_eq!(porteous_ya2(), ChowClass::monomial(40, 3));
}

#[test]
fn chow_ring_arithmetic() {
    let h = ChowClass::monomial(1, 1);
    let one_plus_h = ChowClass::one().add(&h);
    let mut p = ChowClass::one();
    for _ in 0..6 {
        p = p.mul(&one_plus_h);
    }
    // h^6 = 0 on P^5
    assert_eq!(p, ChowClass([1, 6, 15, 20, 15, 6]));
    assert_eq!(p.part(2), ChowClass::monomial(15, 2));
    assert_eq!(h.scale(3).sub(&h), h.scale(2));
    assert!(h.inverse().is_none());
}

#[test]
fn codimension_of_corank_strata() {
    assert_eq!(stratum_codim(10, 10).unwrap(), 0);
    assert_eq!(stratum_codim(10, 9).unwrap(), 1);
    assert_eq!(stratum_codim(10, 8).unwrap(), 3);
    assert_eq!(stratum_codim(5, 2).unwrap(), 6);
    assert!(stratum_codim(3, 4).is_err());
}

#[test]
fn initial_term_of_a_small_pencil() {
    // q* = diag(1, 0), q = [[a, b], [b, c]]: det = (1 + ta) tc - t²b², initial term c·t
    let f = Rationals;
    let qstar = QuadForm::new(Mat::from_i64_rows(&f, &[vec![1, 0], vec![0, 0]]).unwrap()).unwrap();
    let dir = QuadForm::new(Mat::from_i64_rows(&f, &[vec![2, 5], vec![5, 3]]).unwrap()).unwrap();
    let (k, phi) = initial_term(&qstar, std::slice::from_ref(&dir)).unwrap().unwrap();
    assert_eq!(k, 1);
    assert_eq!(phi, MultiPoly::var(&f, 1, 0).scale(&f.from_i64(3)));
    assert!(restricted_det(&qstar, std::slice::from_ref(&dir)).unwrap().equal_up_to_scalar(&phi));
    let c = initial_term_check(&qstar, &[dir]).unwrap();
    assert!(c.matches && c.restricted_nonzero && c.corank == 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn kernel_and_tangent_dimensions(seed in 0u64..10_000, d in 2usize..6, drop in 0usize..3) {
        let mut g = rng(seed);
        let rank = d.saturating_sub(drop).max(1);
        let q = random_quadform(d, rank, &mut g).unwrap();
        let k = d - rank;
        prop_assert_eq!(corank(&q), k);
        prop_assert_eq!(kernel_of(&q).dim(), k);
        let t = stratum_tangent(&q).unwrap();
        prop_assert_eq!(t.dim(), sym_pairs(d).len() - k * (k + 1) / 2);
        prop_assert_eq!(restriction_rank(&q).unwrap(), k * (k + 1) / 2);
        // tangent vectors g1ᵀ q + q g1 of congruence curves
        let f = Rationals;
        let g1 = Mat::from_fn(&f, d, d, |i, j| f.from_i64(((i * 7 + j * 3 + seed as usize) % 5) as i64 - 2));
        let deriv = g1.transpose().mul(q.matrix()).unwrap().add(&q.matrix().mul(&g1).unwrap()).unwrap();
        prop_assert!(t.contains(&QuadForm::new(deriv).unwrap().coords()).unwrap());
    }

    #[test]
    fn initial_term_matches_the_restricted_determinant(seed in 0u64..10_000, d in 2usize..5, k in 0usize..3, m in 1usize..3) {
        let f = Rationals;
        let mut g = rng(seed);
        let k = k.min(d);
        let q = random_quadform(d, d - k, &mut g).unwrap();
        let dirs: Vec<_> = (0..m).map(|_| QuadForm::new(random_symmetric(&f, d, &mut g)).unwrap()).collect();
        let c = initial_term_check(&q, &dirs).unwrap();
        if c.restricted_nonzero {
            prop_assert!(c.matches);
            prop_assert_eq!(c.order, Some(k as u32));
        } else {
            // the initial term then has degree above the corank, or Φ ≡ 0
            prop_assert!(c.order.is_none_or(|o| o as usize > k));
        }
    }
}

#[test]
fn quadratic_form_coordinates_round_trip() {
    let f = Rationals;
    let mut g = rng(4);
    let m = random_symmetric(&f, 4, &mut g);
    let q = QuadForm::new(m.clone()).unwrap();
    assert_eq!(QuadForm::from_coords(&f, 4, &q.coords()).unwrap().matrix(), &m);
    assert!(QuadForm::new(Mat::from_i64_rows(&f, &[vec![0, 1], vec![2, 0]]).unwrap()).is_err());
}

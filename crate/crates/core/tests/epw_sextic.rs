use epw_core::epw::{
    build_sextic, build_sextic_auto, chart_list, cone_rank_at, corank_at, corank_stacked, kernel_at, local_expansion, projective_points, reduce_mod_p, restrict_to_chart,
    stratum_census, stratum_census_fp, tangent_space_rank1, taylor_check, Chart,
};
use epw_core::exterior::{KVector, N};
use epw_core::lagrangian::{random_lagrangian, random_vector, rng};
use epw_core::menagerie::{build, MenagerieTag};
use epw_core::verify::lagrangian_with_kernel;
use epw_core::{EpwError, Field, PrimeField, Rationals, Q};
use proptest::prelude::*;

fn vecq(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Rationals.from_i64(x)).collect()
}

#[test]
fn random_sextic_is_a_sextic_form() {
    let a = random_lagrangian(7);
    let s = build_sextic(&a, &Chart::standard(&Rationals)).unwrap();
    assert!(s.poly.is_homogeneous());
    assert_eq!(s.poly.total_degree(), Some(6));
}

#[test]
fn sextic_does_not_depend_on_the_chart() {
    let a = random_lagrangian(11);
    let s0 = build_sextic(&a, &Chart::standard(&Rationals)).unwrap();
    let other = chart_list(0).into_iter().nth(7).unwrap();
    let s1 = build_sextic(&a, &other).unwrap();
    assert!(s0.poly.equal_up_to_scalar(&s1.poly));
    // restricting back to the chart gives the chart determinant up to scalar
    let g = restrict_to_chart(&s0.poly, &other);
    assert!(g.total_degree().unwrap() <= 6);
}

#[test]
fn sextic_vanishes_exactly_where_the_corank_jumps() {
    let f = Rationals;
    let v0 = vecq(&[1, 2, -1, 0, 3, 1]);
    let beta = KVector::basis(&f, &[1, 2]).add(&KVector::basis(&f, &[3, 4])).unwrap();
    let a = lagrangian_with_kernel(&v0, &[beta], 5).unwrap();
    let s = build_sextic_auto(&a).unwrap();
    assert_eq!(corank_at(&a, &v0).unwrap(), 1);
    assert!(f.is_zero(&s.poly.eval(&v0).unwrap()));
    let mut g = rng(2);
    for _ in 0..30 {
        let v = random_vector(&f, N, &mut g, 4);
        if v.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        let k = corank_stacked(&a, &v).unwrap();
        assert_eq!(corank_at(&a, &v).unwrap(), k);
        assert_eq!(f.is_zero(&s.poly.eval(&v).unwrap()), k > 0);
    }
}

#[test]
fn local_geometry_at_a_corank_one_point() {
    let f = Rationals;
    let v0 = vecq(&[0, 1, 0, 0, 0, 0]);
    let beta = KVector::basis(&f, &[0, 2]).add(&KVector::basis(&f, &[3, 4])).unwrap();
    let a = lagrangian_with_kernel(&v0, &[beta], 9).unwrap();
    assert_eq!(kernel_at(&a, &v0).unwrap().dim(), 1);
    let chart = Chart::around(&f, &v0).unwrap();
    let (k, f1) = local_expansion(&a, &chart).unwrap();
    assert_eq!((k, f1.total_degree()), (1, Some(1)));
    let s = build_sextic_auto(&a).unwrap();
    let tc = taylor_check(&s, &chart).unwrap();
    assert_eq!(tc.order, Some(1));
    assert!(tc.matches);
    // the tangent hyperplane contains v0 and has dimension 5
    let h = tangent_space_rank1(&a, &v0).unwrap();
    assert_eq!(h.dim(), 5);
    assert!(h.contains(&v0).unwrap());
}

#[test]
fn corank_two_point_has_a_rank_three_cone() {
    let f = Rationals;
    let v0 = vecq(&[1, 0, 0, 0, 0, 0]);
    let b1 = KVector::basis(&f, &[1, 2]).add(&KVector::basis(&f, &[3, 4])).unwrap();
    let b2 = KVector::basis(&f, &[1, 3]).add(&KVector::basis(&f, &[2, 5])).unwrap();
    let a = lagrangian_with_kernel(&v0, &[b1, b2], 4).unwrap();
    assert_eq!(corank_at(&a, &v0).unwrap(), 2);
    assert_eq!(cone_rank_at(&a, &v0).unwrap(), 3);
}

#[test]
fn degenerate_standard_chart_is_reported() {
    let m = build(MenagerieTag::AIII).unwrap();
    assert!(matches!(build_sextic(&m.a, &Chart::standard(&Rationals)), Err(EpwError::ChartDegenerate)));
    assert!(build_sextic_auto(&m.a).is_ok());
}

#[test]
fn census_counts_every_point_once() {
    for (seed, p) in [(0u64, 3u64), (1, 5)] {
        let a = random_lagrangian(seed);
        let c = match stratum_census_fp(&a, p) {
            Ok(c) => c,
            Err(EpwError::BadPrime(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        let total: usize = c.values().sum();
        assert_eq!(total as u64, (p.pow(6) - 1) / (p - 1));
        let fp = PrimeField::new(p).unwrap();
        assert_eq!(projective_points(&fp, N).len(), total);
    }
    let m = build(MenagerieTag::AIII).unwrap();
    let ap = reduce_mod_p(&m.a, &PrimeField::new(3).unwrap()).unwrap();
    let c = stratum_census(&ap).unwrap();
    // points off the six coordinate hyperplanes: 2^5
    assert_eq!(c.get(&0), Some(&32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn two_corank_computations_agree(seed in 0u64..50, v in proptest::collection::vec(-3i64..4, N)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let a = random_lagrangian(seed);
        let v = vecq(&v);
        prop_assert_eq!(corank_at(&a, &v).unwrap(), corank_stacked(&a, &v).unwrap());
    }
}

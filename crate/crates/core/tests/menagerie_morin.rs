use epw_core::exterior::{plucker_of, N};
use epw_core::grassmann::plane_in;
use epw_core::lagrangian::rng;
use epw_core::menagerie::{build, duality_identities, theta_enum_fp, uaidelta_check, verify_double_cubic, verify_six_hyperplanes, verify_triple_quadric, MenagerieTag};
use epw_core::morin::{
    bx_codim, codim_tables, curve_degree, fiber_codim, i_u_cone_check, isotropy_equivalence, make_curve, pairwise_incident, random_family, rational_curve, sample_curve,
    sigma_codim, span_dim, span_isotropic, splitting_type, CurveType, PlaneFamily, BX_CODIM,
};
use epw_core::{EpwError, Field, PrimeField, Rationals, Subspace};
use proptest::prelude::*;

#[test]
fn sextics_of_the_special_lagrangians() {
    for r in [verify_six_hyperplanes(), verify_triple_quadric(), verify_double_cubic()] {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn special_lagrangians_contain_their_families() {
    let f = Rationals;
    let expected = [
        (MenagerieTag::APlus, "F_plus_Q"),
        (MenagerieTag::AMinus, "F_minus_Q"),
        (MenagerieTag::AK, "T_V"),
        (MenagerieTag::AH, "C_V"),
    ];
    for (tag, kind) in expected {
        let m = build(tag).unwrap();
        let family = match kind {
            "F_plus_Q" => PlaneFamily::QuadricPlus(m.identification.clone()),
            "F_minus_Q" => PlaneFamily::QuadricMinus(m.identification.clone()),
            "T_V" => PlaneFamily::Tangents(m.identification.clone()),
            _ => PlaneFamily::Conics(m.identification.clone()),
        };
        assert_eq!(family.kind(), kind);
        for w in family.sample(&f, 3, 10).unwrap() {
            assert!(family.contains(&f, &w).unwrap());
            assert!(plane_in(&m.a, &w).unwrap(), "{} misses a plane of {kind}", tag.name());
        }
    }
}

#[test]
fn theta_over_f3() {
    let expect = [(MenagerieTag::APlus, 40), (MenagerieTag::AMinus, 40), (MenagerieTag::AK, 13), (MenagerieTag::AH, 13)];
    for (tag, n) in expect {
        let t = theta_enum_fp(&build(tag).unwrap().a, 3).unwrap();
        assert_eq!(t.planes.len(), n, "{}", tag.name());
    }
}

#[test]
fn duality_and_hyperplane_sections() {
    let r = duality_identities(1);
    assert!(r.passed(), "{r}");
    let (ok, nonempty) = uaidelta_check(&build(MenagerieTag::APlus).unwrap().a, 20, 2).unwrap();
    assert!(ok && nonempty > 0);
}

#[test]
fn menagerie_names() {
    for t in MenagerieTag::ALL {
        assert_eq!(MenagerieTag::parse(t.name()).unwrap(), t);
    }
    assert!(matches!(MenagerieTag::parse("a-zero"), Err(EpwError::UnknownName(_))));
}

#[test]
fn rational_types_match_the_table() {
    for tag in CurveType::ALL.into_iter().filter(|t| t.is_rational()) {
        let c = rational_curve(&Rationals, tag).unwrap();
        let row = tag.row();
        assert_eq!(curve_degree(&c).unwrap(), row.degree, "{tag}");
        let split = splitting_type(&c).unwrap();
        assert_eq!(split.iter().sum::<usize>(), row.degree);
        if let Some(s) = row.splitting {
            assert_eq!(split, s, "{tag}");
        }
        assert_eq!(span_dim(&make_curve(tag, 0).unwrap()).unwrap(), row.span, "{tag}");
        // every pair of planes on the curve meets
        let planes: Vec<_> = (1..6).map(|t| c.plane_at(&Rationals.from_i64(t)).unwrap()).collect();
        assert!(pairwise_incident(&planes).unwrap());
        assert!(span_isotropic(&Rationals, &planes).unwrap());
    }
}

#[test]
fn dual_curve_is_involutive() {
    let e2 = rational_curve(&Rationals, CurveType::E2).unwrap();
    let back = e2.dual().unwrap().dual().unwrap();
    for t in [0, 2, -3] {
        let x = Rationals.from_i64(t);
        assert_eq!(back.plane_at(&x).unwrap(), e2.plane_at(&x).unwrap());
        assert_eq!(e2.dual().unwrap().plane_at(&x).unwrap(), e2.plane_at(&x).unwrap().annihilator());
    }
}

#[test]
fn sampled_types_reach_their_span() {
    for tag in [CurveType::A, CurveType::C2] {
        let s = sample_curve(tag, 0).unwrap();
        assert!(s.planes.len() >= tag.row().span + 2);
        assert!(pairwise_incident(&s.planes).unwrap());
        let planes: Vec<Vec<u64>> = s.planes.iter().map(|w| plucker_of(w).unwrap()).collect();
        assert_eq!(Subspace::span(&s.field, 20, &planes).unwrap().dim(), tag.row().span + 1);
    }
    assert!(matches!(rational_curve(&Rationals, CurveType::T), Err(EpwError::NonRationalType(_))));
}

#[test]
fn curve_type_names() {
    for t in CurveType::ALL {
        assert_eq!(CurveType::parse(t.name()).unwrap(), t);
    }
    assert!(CurveType::parse("Z").is_err());
}

#[test]
fn codimension_tables() {
    for d in 0..12 {
        assert_eq!(sigma_codim(d), 1 + fiber_codim(d));
    }
    assert_eq!(sigma_codim(2), 4);
    let t = codim_tables();
    assert!(t.identity_holds);
    assert_eq!(BX_CODIM.len(), 9);
    assert_eq!(bx_codim(CurveType::E2dual), bx_codim(CurveType::E2));
    assert_eq!(bx_codim(CurveType::T), 18);
}

#[test]
fn cone_over_planes_meeting_u() {
    let u = Subspace::coordinate(&Rationals, N, &[0, 1, 2]);
    let r = i_u_cone_check(&u, 1, 8).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn families_reject_invalid_data() {
    let f = Rationals;
    assert!(PlaneFamily::PointStar(vec![f.zero(); N]).validate(&f).is_err());
    assert!(PlaneFamily::Hyperplane(Subspace::coordinate(&f, N, &[0, 1])).validate(&f).is_err());
    let fp = PrimeField::new(3).unwrap();
    assert!(PlaneFamily::PointStar(vec![1, 0, 0, 0, 0, 0]).validate(&fp).is_ok());
}

#[test]
fn isotropy_matches_incidence() {
    let o = isotropy_equivalence(5, 40).unwrap();
    assert_eq!(o.sets, 40);
    assert_eq!(o.exceptions, 0);
    assert!(o.incident > 0 && o.incident < 40);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn family_members_are_pairwise_incident(kind in 0usize..7, seed in 0u64..1000) {
        let f = Rationals;
        let mut r = rng(seed);
        let fam = random_family(kind, &mut r).unwrap();
        fam.validate(&f).unwrap();
        let planes = fam.sample(&f, seed, 5).unwrap();
        for w in &planes {
            prop_assert!(fam.contains(&f, w).unwrap());
        }
        prop_assert!(pairwise_incident(&planes).unwrap());
        prop_assert!(span_isotropic(&f, &planes).unwrap());
    }
}

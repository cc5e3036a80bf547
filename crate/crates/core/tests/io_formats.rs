use epw_core::epw::build_sextic_auto;
use epw_core::io::{parse_point, LagrangianFile, PolyFile};
use epw_core::lagrangian::random_lagrangian;
use epw_core::menagerie::{build, MenagerieTag};
use epw_core::EpwError;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn lagrangian_files_round_trip(seed in 0u64..10_000) {
        let a = random_lagrangian(seed);
        let text = LagrangianFile::from_lagrangian(&a, None).to_json();
        let back = LagrangianFile::from_json(&text).unwrap().to_lagrangian().unwrap();
        prop_assert_eq!(&back, &a);
        // emitting twice is byte-identical
        prop_assert_eq!(LagrangianFile::from_lagrangian(&back, None).to_json(), text);
    }
}

#[test]
fn integers_are_accepted_as_entries() {
    let m = build(MenagerieTag::AIII).unwrap();
    let file = LagrangianFile::from_lagrangian(&m.a, None);
    let mut v: serde_json::Value = serde_json::from_str(&file.to_json()).unwrap();
    for row in v["basis"].as_array_mut().unwrap() {
        for x in row.as_array_mut().unwrap() {
            let n: i64 = x.as_str().unwrap().parse().unwrap();
            *x = n.into();
        }
    }
    let back = LagrangianFile::from_json(&v.to_string()).unwrap().to_lagrangian().unwrap();
    assert_eq!(back, m.a);
}

#[test]
fn invalid_lagrangian_files_are_rejected() {
    let mut rows = vec![vec![serde_json::json!("0"); 20]; 10];
    for (i, r) in rows.iter_mut().enumerate() {
        r[i] = serde_json::json!("1");
    }
    // e012 and e345 (indices 0 and 19) pair nontrivially
    rows[9] = vec![serde_json::json!("0"); 20];
    rows[9][19] = serde_json::json!("1/2");
    let file = LagrangianFile {
        basis: rows,
        labels: None,
        meta: None,
    };
    match file.to_lagrangian() {
        Err(EpwError::NotLagrangian { failed_pairs, .. }) => assert!(!failed_pairs.is_empty()),
        other => panic!("expected rejection, got {other:?}"),
    }
    assert!(LagrangianFile::from_json("{\"basis\": 3}").is_err());
    let short = LagrangianFile {
        basis: vec![vec![serde_json::json!(1)]; 10],
        labels: None,
        meta: None,
    };
    assert!(matches!(short.to_lagrangian(), Err(EpwError::DimensionMismatch { .. })));
    let float = LagrangianFile {
        basis: vec![vec![serde_json::json!(0.5); 20]; 10],
        labels: None,
        meta: None,
    };
    assert!(matches!(float.to_lagrangian(), Err(EpwError::Parse(_))));
}

#[test]
fn sextic_files_round_trip() {
    let s = build_sextic_auto(&build(MenagerieTag::AK).unwrap().a).unwrap();
    let file = PolyFile::from_poly(&s.poly);
    assert!(file.is_homogeneous_of_degree(6));
    assert_eq!(file.vars, ["X0", "X1", "X2", "X3", "X4", "X5"]);
    let back = PolyFile::from_json(&file.to_json()).unwrap().to_poly().unwrap();
    assert_eq!(back, s.poly);
    // terms are listed in descending exponent order
    assert!(file.terms.windows(2).all(|w| w[0].exp > w[1].exp));
}

#[test]
fn points_parse() {
    assert_eq!(parse_point("1,0,-1/2,3,0,7").unwrap().len(), 6);
    assert!(parse_point("1,2,3").is_err());
    assert!(parse_point("1,2,3,x,5,6").is_err());
}

use epw_core::exterior::{
    basis_indices, delta_subspace, grade_dim, index_of, is_decomposable, plucker_of, support, symp, wedge, wedge_power, wedge_power_matrix, wedge_vectors, KVector, N,
};
use epw_core::lagrangian::{
    extend_isotropic, gram_failures, graph_lagrangian, random_lagrangian, random_symmetric, rng, symp_orthogonal, F_of, IsotropicSubspace, LagrangianSubspace, S_of, D3,
};
use epw_core::subspace::unit;
use epw_core::{EpwError, Field, Mat, PrimeField, Rationals, Subspace, Q};
use proptest::prelude::*;

fn vecq(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Rationals.from_i64(x)).collect()
}

fn vec6() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..5, N)
}

proptest! {
    #[test]
    fn wedge_is_graded_commutative(a in vec6(), b in vec6(), c in vec6()) {
        let f = Rationals;
        let va = KVector::vector(&f, &vecq(&a)).unwrap();
        let vb = KVector::vector(&f, &vecq(&b)).unwrap();
        let ab = wedge(&va, &vb).unwrap();
        prop_assert_eq!(ab.scale(&f.from_i64(-1)), wedge(&vb, &va).unwrap());
        prop_assert!(wedge(&va, &va).unwrap().is_zero());
        let abc = wedge_vectors(&f, &[vecq(&a), vecq(&b), vecq(&c)]).unwrap();
        prop_assert_eq!(&abc, &wedge(&ab, &KVector::vector(&f, &vecq(&c)).unwrap()).unwrap());
        // three vectors are dependent exactly when their wedge vanishes
        let rank = Subspace::span(&f, N, &[vecq(&a), vecq(&b), vecq(&c)]).unwrap().dim();
        prop_assert_eq!(abc.is_zero(), rank < 3);
        if rank == 3 {
            prop_assert!(is_decomposable(&abc).unwrap());
            prop_assert_eq!(support(&abc).unwrap(), Subspace::span(&f, N, &[vecq(&a), vecq(&b), vecq(&c)]).unwrap());
        }
    }

    #[test]
    fn symplectic_form_is_alternating(x in proptest::collection::vec(-3i64..4, D3), y in proptest::collection::vec(-3i64..4, D3)) {
        let f = Rationals;
        let a = KVector::from_coords(&f, 3, vecq(&x)).unwrap();
        let b = KVector::from_coords(&f, 3, vecq(&y)).unwrap();
        prop_assert_eq!(symp(&a, &b).unwrap(), f.neg(&symp(&b, &a).unwrap()));
        prop_assert!(f.is_zero(&symp(&a, &a).unwrap()));
    }

    #[test]
    fn wedge_power_is_functorial(g in proptest::collection::vec(-2i64..3, 36), h in proptest::collection::vec(-2i64..3, 36)) {
        let f = Rationals;
        let mg = Mat::from_fn(&f, N, N, |i, j| f.from_i64(g[i * N + j]));
        let mh = Mat::from_fn(&f, N, N, |i, j| f.from_i64(h[i * N + j]));
        let lhs = wedge_power_matrix(&mg.mul(&mh).unwrap(), 3).unwrap();
        let rhs = wedge_power_matrix(&mg, 3).unwrap().mul(&wedge_power_matrix(&mh, 3).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn f_v_is_the_lagrangian_of_multiples_of_v(v in vec6()) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let f = Rationals;
        let fv = F_of(&f, &vecq(&v)).unwrap();
        let kv = KVector::vector(&f, &vecq(&v)).unwrap();
        for b in fv.basis_vecs() {
            prop_assert!(wedge(&kv, &KVector::from_coords(&f, 3, b).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn isotropic_extension_contains_its_seed(seed in 0u64..1000) {
        let f = Rationals;
        let mut r = rng(seed);
        let w = Subspace::span(&f, N, &(0..3).map(|_| epw_core::lagrangian::random_vector(&f, N, &mut r, 3)).collect::<Vec<_>>()).unwrap();
        prop_assume!(w.dim() == 3);
        let l = Subspace::span(&f, D3, &[plucker_of(&w).unwrap()]).unwrap();
        let a = extend_isotropic(&IsotropicSubspace::new(l.clone()).unwrap(), seed).unwrap();
        prop_assert!(a.subspace().contains_subspace(&l).unwrap());
        prop_assert!(symp_orthogonal(a.subspace()) == *a.subspace());
    }
}

#[test]
fn index_conventions_round_trip() {
    for k in 0..=N {
        for i in 0..grade_dim(k) {
            assert_eq!(index_of(&basis_indices(k, i)), i);
        }
    }
    assert_eq!(grade_dim(3), 20);
    assert_eq!(basis_indices(3, 0), vec![0, 1, 2]);
    assert_eq!(basis_indices(3, 19), vec![3, 4, 5]);
}

#[test]
fn sum_of_two_disjoint_planes_is_not_decomposable() {
    let f = Rationals;
    let a = KVector::basis(&f, &[0, 1, 2]).add(&KVector::basis(&f, &[3, 4, 5])).unwrap();
    assert!(!is_decomposable(&a).unwrap());
    let b = KVector::basis(&f, &[0, 1, 2]).add(&KVector::basis(&f, &[0, 1, 3])).unwrap();
    assert!(is_decomposable(&b).unwrap());
}

#[test]
fn duality_is_an_involution_on_subspaces() {
    let a = random_lagrangian(3);
    let d = delta_subspace(a.subspace()).unwrap();
    assert!(LagrangianSubspace::new(d.clone()).is_ok());
    assert_eq!(delta_subspace(&d).unwrap(), *a.subspace());
    // δ(∧³W) = ∧³Ann(W)
    let f = Rationals;
    let w = Subspace::coordinate(&f, N, &[0, 2, 4]);
    let lw = Subspace::span(&f, D3, &[plucker_of(&w).unwrap()]).unwrap();
    assert_eq!(delta_subspace(&lw).unwrap(), Subspace::span(&f, D3, &[plucker_of(&w.annihilator()).unwrap()]).unwrap());
}

#[test]
fn standard_lagrangians() {
    let f = Rationals;
    for seed in 0..5 {
        let a = random_lagrangian(seed);
        assert_eq!(a.subspace().dim(), 10);
        assert!(gram_failures(a.subspace()).is_empty());
    }
    let u = Subspace::coordinate(&f, N, &[0, 1, 2]);
    let s = S_of(&u).unwrap();
    assert!(LagrangianSubspace::new(s.clone()).is_ok());
    assert!(s.contains_subspace(&wedge_power(&u, 3).unwrap()).unwrap());
    let mut r = rng(1);
    let g = graph_lagrangian(&random_symmetric(&f, 10, &mut r)).unwrap();
    assert_eq!(g.subspace().dim(), 10);
    let fp = PrimeField::new(5).unwrap();
    assert!(F_of(&fp, &unit(&fp, N, 3)).is_ok());
}

#[test]
fn non_lagrangian_input_lists_failed_pairs() {
    let f = Rationals;
    // e012 and e345 pair nontrivially
    let s = Subspace::span(&f, D3, &[KVector::basis(&f, &[0, 1, 2]).into_coords(), KVector::basis(&f, &[3, 4, 5]).into_coords()]).unwrap();
    assert!(matches!(IsotropicSubspace::new(s.clone()), Err(EpwError::NotIsotropic(_))));
    match LagrangianSubspace::new(s) {
        Err(EpwError::NotLagrangian { dim, failed_pairs }) => {
            assert_eq!(dim, 2);
            assert_eq!(failed_pairs, vec![(0, 1)]);
        }
        other => panic!("expected rejection, got {other:?}"),
    }
    assert!(matches!(F_of(&f, &vecq(&[0; N])), Err(EpwError::ZeroInput(_))));
}

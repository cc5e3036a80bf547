use epw_core::field::{bareiss_det_int, format_rational, parse_rational, Field, PrimeField, Rationals, Q};
use epw_core::grassmann::{grassmannian_count, grassmannian_fp};
use epw_core::matrix::Mat;
use epw_core::poly::{interpolate_lattice, lattice_points, poly_det, poly_det_cofactor, MultiPoly, UniPoly};
use epw_core::subspace::Subspace;
use epw_core::EpwError;
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn int_mat(f: &Rationals, n: usize, entries: &[i64]) -> Mat<Rationals> {
    Mat::from_fn(f, n, n, |i, j| f.from_i64(entries[i * n + j]))
}

/// Leibniz expansion: the sum over permutations.
fn leibniz(n: usize, e: &[i64]) -> i64 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n)
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            sign * (0..n).map(|i| e[i * n + p[i]]).product::<i64>()
        })
        .sum()
}

proptest! {
    #[test]
    fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50, e in -9i64..9) {
        let f = Rationals;
        let x = q(a, b);
        let y = q(c, d);
        let z = f.from_i64(e);
        prop_assert_eq!(f.add(&x, &y), f.add(&y, &x));
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        prop_assert_eq!(f.sub(&f.add(&x, &y), &y), x.clone());
        if !f.is_zero(&x) {
            prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
        } else {
            prop_assert!(f.inv(&x).is_none());
        }
    }

    #[test]
    fn prime_field_axioms(pi in 0usize..5, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let p = [2u64, 3, 5, 7, 101][pi];
        let f = PrimeField::new(p).unwrap();
        let (x, y, z) = (f.from_i64(a as i64), f.from_i64(b as i64), f.from_i64(c as i64));
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        prop_assert_eq!(f.add(&x, &f.neg(&x)), f.zero());
        prop_assert_eq!(f.characteristic(), p);
        if !f.is_zero(&x) {
            prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
        }
    }

    #[test]
    fn rational_text_round_trip(a in -10_000i64..10_000, b in 1i64..10_000) {
        let x = q(a, b);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn determinant_matches_leibniz(n in 1usize..5, entries in proptest::collection::vec(-6i64..6, 16)) {
        let f = Rationals;
        let e = &entries[..n * n];
        let expected = leibniz(n, e);
        prop_assert_eq!(int_mat(&f, n, e).det().unwrap(), f.from_i64(expected));
        let big: Vec<BigInt> = e.iter().map(|&x| x.into()).collect();
        prop_assert_eq!(bareiss_det_int(n, &big), BigInt::from(expected));
        let fp = PrimeField::new(7).unwrap();
        let m7 = Mat::from_fn(&fp, n, n, |i, j| fp.from_i64(e[i * n + j]));
        prop_assert_eq!(m7.det().unwrap(), fp.from_i64(expected));
    }

    #[test]
    fn inverse_is_two_sided(entries in proptest::collection::vec(-5i64..5, 9)) {
        let f = Rationals;
        let m = int_mat(&f, 3, &entries);
        match m.inverse().unwrap() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv).unwrap(), Mat::identity(&f, 3));
                prop_assert_eq!(inv.mul(&m).unwrap(), Mat::identity(&f, 3));
            }
            None => prop_assert!(f.is_zero(&m.det().unwrap())),
        }
    }

    #[test]
    fn rank_nullity(rows in 1usize..5, entries in proptest::collection::vec(-3i64..3, 24)) {
        let f = Rationals;
        let m = Mat::from_fn(&f, rows, 6, |i, j| f.from_i64(entries[i * 6 + j]));
        let k = Subspace::kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), 6);
        for v in k.basis_vecs() {
            prop_assert!(m.apply(&v).unwrap().iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn canonical_form_ignores_generators(entries in proptest::collection::vec(-4i64..4, 18), s in 1i64..5) {
        let f = Rationals;
        let gens: Vec<Vec<Q>> = entries.chunks(6).map(|c| c.iter().map(|&x| f.from_i64(x)).collect()).collect();
        let a = Subspace::span(&f, 6, &gens).unwrap();
        // reversed order, rescaled, with a redundant combination added
        let mut other: Vec<Vec<Q>> = gens.iter().rev().map(|g| g.iter().map(|x| f.mul(x, &f.from_i64(s))).collect()).collect();
        other.push(gens[0].iter().zip(&gens[1]).map(|(x, y)| f.add(x, y)).collect());
        let b = Subspace::span(&f, 6, &other).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn grassmann_dimension_formula(e1 in proptest::collection::vec(-2i64..3, 18), e2 in proptest::collection::vec(-2i64..3, 18)) {
        let f = Rationals;
        let mk = |e: &[i64]| Subspace::span(&f, 6, &e.chunks(6).map(|c| c.iter().map(|&x| f.from_i64(x)).collect()).collect::<Vec<_>>()).unwrap();
        let (a, b) = (mk(&e1), mk(&e2));
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains_subspace(&a).unwrap() && a.contains_subspace(&i).unwrap() && b.contains_subspace(&i).unwrap());
        let ann = a.annihilator();
        prop_assert_eq!(ann.dim() + a.dim(), 6);
    }

    #[test]
    fn polynomial_product_evaluates_pointwise(c1 in proptest::collection::vec(-5i64..5, 4), c2 in proptest::collection::vec(-5i64..5, 4), pt in proptest::collection::vec(-4i64..4, 3)) {
        let f = Rationals;
        let mk = |c: &[i64]| MultiPoly::affine(&f, f.from_i64(c[0]), &c[1..].iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>());
        let (p1, p2) = (mk(&c1), mk(&c2));
        let x: Vec<Q> = pt.iter().map(|&v| f.from_i64(v)).collect();
        let prod = p1.mul(&p2).unwrap();
        prop_assert_eq!(prod.eval(&x).unwrap(), f.mul(&p1.eval(&x).unwrap(), &p2.eval(&x).unwrap()));
        if !p2.is_zero() {
            prop_assert_eq!(prod.div_exact(&p2).unwrap(), p1);
        }
    }
}

#[test]
fn zero_characteristic_and_bad_primes() {
    assert_eq!(Rationals.characteristic(), 0);
    assert!(matches!(PrimeField::new(9), Err(EpwError::NotPrime(9))));
    let f3 = PrimeField::new(3).unwrap();
    assert!(f3.from_rational(&q(1, 3)).is_err());
    assert_eq!(f3.from_rational(&q(1, 2)).unwrap(), 2);
}

#[test]
fn malformed_rationals_are_rejected() {
    for s in ["", "1/0", "a", "1/2/3"] {
        assert!(parse_rational(s).is_err(), "{s}");
    }
    assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
}

#[test]
fn lattice_interpolation_recovers_polynomials() {
    let f = Rationals;
    let p = MultiPoly::from_terms(
        &f,
        3,
        [(vec![2, 1, 0], q(3, 2)), (vec![0, 0, 3], q(-1, 1)), (vec![0, 1, 0], q(5, 1)), (vec![0, 0, 0], q(7, 3))],
    )
    .unwrap();
    let r = interpolate_lattice(3, 3, |x| p.eval(&x.iter().map(|&t| f.from_i64(t as i64)).collect::<Vec<_>>()).unwrap());
    assert_eq!(r, p);
    // the lattice has C(n+d, d) points
    assert_eq!(lattice_points(5, 10).len(), 3003);
}

#[test]
fn symbolic_determinants_agree() {
    let f = Rationals;
    let x = |i| MultiPoly::var(&f, 2, i);
    let c = |n: i64| MultiPoly::constant(&f, 2, f.from_i64(n));
    let m = vec![
        vec![x(0), c(1), x(1)],
        vec![c(2), x(0).add(&x(1)).unwrap(), c(0)],
        vec![x(1), c(3), x(0).mul(&x(0)).unwrap()],
    ];
    let d = poly_det(&m).unwrap();
    assert_eq!(d, poly_det_cofactor(&m).unwrap());
    let pt = [f.from_i64(2), f.from_i64(-1)];
    let numeric = Mat::from_fn(&f, 3, 3, |i, j| m[i][j].eval(&pt).unwrap());
    assert_eq!(d.eval(&pt).unwrap(), numeric.det().unwrap());
}

#[test]
fn univariate_gcd_and_reversal() {
    let f = Rationals;
    let p = |c: &[i64]| UniPoly::new(&f, c.iter().map(|&x| f.from_i64(x)).collect());
    // (t-1)(t-2) and (t-1)(t+3)
    let a = p(&[2, -3, 1]);
    let b = p(&[-3, 2, 1]);
    let g = a.gcd(&b);
    assert_eq!(g.degree(), Some(1));
    assert!(f.is_zero(&g.eval(&f.one())));
    assert_eq!(a.div_exact(&g).unwrap().mul(&g), a);
    assert_eq!(p(&[1, 2, 0, 5]).reversed(3), p(&[5, 0, 2, 1]));
    assert!(p(&[1, 1]).div_exact(&p(&[0, 1])).is_none());
}

#[test]
fn grassmannian_enumeration_has_gaussian_count() {
    for (p, k, n) in [(2, 2, 4), (3, 2, 4), (2, 3, 6), (3, 1, 3)] {
        let fp = PrimeField::new(p).unwrap();
        let all = grassmannian_fp(&fp, k, n);
        assert_eq!(all.len() as u64, grassmannian_count(p, k, n));
        let distinct: std::collections::HashSet<_> = all.iter().map(|w| w.basis().data().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
    }
    assert_eq!(grassmannian_count(2, 3, 6), 1395);
}

//! Intersection theory on P⁵: Chern classes of the bundle F with fibre
//! `F_v` and the Porteous class of `Y_A[2]`, in `ℤ[h]/(h⁶)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::{Field, Rationals, Q};
use crate::poly::MultiPoly;

pub const TOP: usize = 5;

/// `c_0 + c_1 h + ... + c_5 h⁵` in `ℤ[h]/(h⁶)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass(pub [i64; TOP + 1]);

impl ChowClass {
    pub fn zero() -> Self {
        ChowClass([0; TOP + 1])
    }
    pub fn one() -> Self {
        Self::monomial(1, 0)
    }
    pub fn monomial(c: i64, deg: usize) -> Self {
        let mut out = Self::zero();
        if deg <= TOP {
            out.0[deg] = c;
        }
        out
    }
    pub fn coeff(&self, deg: usize) -> i64 {
        self.0[deg]
    }
    pub fn add(&self, o: &Self) -> Self {
        ChowClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
    pub fn sub(&self, o: &Self) -> Self {
        ChowClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
    pub fn scale(&self, c: i64) -> Self {
        ChowClass(self.0.map(|x| c * x))
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = [0i64; TOP + 1];
        for i in 0..=TOP {
            for j in 0..=TOP - i {
                out[i + j] += self.0[i] * o.0[j];
            }
        }
        ChowClass(out)
    }
    /// Multiplicative inverse; requires constant term ±1.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.0[0];
        if c0 != 1 && c0 != -1 {
            return None;
        }
        let mut inv = [0i64; TOP + 1];
        inv[0] = c0;
        for n in 1..=TOP {
            let s: i64 = (1..=n).map(|k| self.0[k] * inv[n - k]).sum();
            inv[n] = -c0 * s;
        }
        Some(ChowClass(inv))
    }
    /// The degree-k part as a class.
    pub fn part(&self, k: usize) -> Self {
        Self::monomial(self.0[k], k)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mon = match k {
                0 => String::new(),
                1 => "h".into(),
                _ => format!("h^{k}"),
            };
            let mag = c.unsigned_abs();
            let body = if mag == 1 && k > 0 { mon } else { format!("{mag}{mon}") };
            if out.is_empty() {
                out = if c < 0 { format!("-{body}") } else { body };
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

/// `c(Q₅) = (1 − h)^{-1}` for the rank-5 tautological quotient of P⁵.
pub fn chern_quotient() -> ChowClass {
    ChowClass([1; TOP + 1])
}

/// Truncated power series in h with rational coefficients.
type Series = [Q; TOP + 1];

fn series_zero() -> Series {
    std::array::from_fn(|_| Q::zero())
}

fn series_mul(a: &Series, b: &Series) -> Series {
    let mut out = series_zero();
    for i in 0..=TOP {
        for j in 0..=TOP - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Power sums `p_1..p_5` of roots with elementary symmetric functions `e`.
fn newton_power_sums(e: &[Q]) -> Vec<Q> {
    let mut p = vec![Q::zero(); TOP + 1];
    for m in 1..=TOP {
        let mut s = Q::zero();
        for i in 1..m {
            let t = &e[i] * &p[m - i];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        let last = &e[m] * Q::from_integer(BigInt::from(m));
        if m % 2 == 1 {
            s += last;
        } else {
            s -= last;
        }
        p[m] = s;
    }
    p
}

/// Elementary symmetric functions from power sums.
fn newton_elementary(p: &[Q]) -> Vec<Q> {
    let mut e = vec![Q::zero(); TOP + 1];
    e[0] = Q::one();
    for j in 1..=TOP {
        let mut s = Q::zero();
        for i in 1..=j {
            let t = &e[j - i] * &p[i];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        e[j] = s / Q::from_integer(BigInt::from(j));
    }
    e
}

fn to_class(c: &[Q]) -> ChowClass {
    ChowClass(std::array::from_fn(|i| {
        assert!(c[i].is_integer(), "Chern class coefficient is not integral");
        c[i].to_integer().to_i64().expect("small")
    }))
}

/// `c(∧³Q₅)` through the Chern character: `ch(∧³Q) = e_3(e^{x_1},…,e^{x_5})`.
pub fn chern_wedge3_character() -> ChowClass {
    let e: Vec<Q> = chern_quotient().0.iter().map(|&c| Q::from_integer(c.into())).collect();
    let p = newton_power_sums(&e);
    // s_k = sum_i e^{k x_i} as a truncated series in h
    let s: Vec<Series> = (1..=3)
        .map(|k: i64| {
            let mut out = series_zero();
            out[0] = Q::from_integer(5.into());
            for m in 1..=TOP {
                let km = Q::from_integer(BigInt::from(k).pow(m as u32));
                out[m] = km * &p[m] / Q::from_integer(factorial(m));
            }
            out
        })
        .collect();
    let div = |x: &Series, c: i64| -> Series { x.clone().map(|v| v / Q::from_integer(c.into())) };
    let sub = |a: &Series, b: &Series| -> Series { std::array::from_fn(|i| &a[i] - &b[i]) };
    let add = |a: &Series, b: &Series| -> Series { std::array::from_fn(|i| &a[i] + &b[i]) };
    let e1 = s[0].clone();
    let e2 = div(&sub(&series_mul(&e1, &s[0]), &s[1]), 2);
    let e3 = div(&add(&sub(&series_mul(&e2, &s[0]), &series_mul(&e1, &s[1])), &s[2]), 3);
    // ch = sum_m P_m / m!, so the power sums of the ten roots are m! ch_m
    let big_p: Vec<Q> = (0..=TOP).map(|m| &e3[m] * Q::from_integer(factorial(m))).collect();
    to_class(&newton_elementary(&big_p))
}

/// Elementary symmetric polynomial `e_k` in n variables.
fn elementary(n: usize, k: usize) -> MultiPoly<Rationals> {
    let f = Rationals;
    let terms = crate::exterior::combinations(n, k).into_iter().map(|s| {
        let mut e = vec![0u32; n];
        for i in s {
            e[i] = 1;
        }
        (e, f.one())
    });
    MultiPoly::from_terms(&f, n, terms).expect("arity")
}

fn truncate(p: &MultiPoly<Rationals>, d: u32) -> MultiPoly<Rationals> {
    let f = Rationals;
    MultiPoly::from_terms(&f, p.nvars(), p.terms().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (m.0.clone(), c.clone()))).expect("arity")
}

/// Write a symmetric homogeneous polynomial in the elementary symmetric
/// polynomials, returned as `(exponents of e_1..e_n, coefficient)`.
pub fn to_elementary(p: &MultiPoly<Rationals>) -> Vec<(Vec<u32>, Q)> {
    let n = p.nvars();
    let es: Vec<MultiPoly<Rationals>> = (1..=n).map(|k| elementary(n, k)).collect();
    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let a = &m.0;
        let b: Vec<u32> = (0..n).map(|i| a[i] - if i + 1 < n { a[i + 1] } else { 0 }).collect();
        let mut prod = MultiPoly::constant(&Rationals, n, c.clone());
        for (i, &bi) in b.iter().enumerate() {
            if bi > 0 {
                prod = prod.mul(&es[i].pow(bi)).expect("same ring");
            }
        }
        rest = rest.sub(&prod).expect("same ring");
        out.push((b, c));
    }
    out
}

/// `c(∧³Q₅)` by expanding `∏_{i<j<k}(1 + x_i + x_j + x_k)` and rewriting in
/// elementary symmetric polynomials, then `e_i ↦ c_i(Q₅)`.
pub fn chern_wedge3_expansion() -> ChowClass {
    let f = Rationals;
    let n = 5;
    let mut prod = MultiPoly::constant(&f, n, f.one());
    for s in crate::exterior::combinations(n, 3) {
        let mut c = vec![f.zero(); n];
        for i in s {
            c[i] = f.one();
        }
        prod = truncate(&prod.mul(&MultiPoly::affine(&f, f.one(), &c)).expect("same ring"), TOP as u32);
    }
    let cq = chern_quotient();
    let mut out = [0i64; TOP + 1];
    for d in 0..=TOP as u32 {
        for (b, c) in to_elementary(&prod.homogeneous_part(d)) {
            let weight: usize = b.iter().enumerate().map(|(i, &bi)| (i + 1) * bi as usize).sum();
            let value: i64 = b.iter().enumerate().map(|(i, &bi)| cq.0[i + 1].pow(bi)).product();
            assert!(c.is_integer());
            out[weight] += c.to_integer().to_i64().expect("small") * value;
        }
    }
    ChowClass(out)
}

/// `c(F) = c(∧³Q₅)^{-1}`, from `0 → F → ∧³V ⊗ O → ∧³Q₅ → 0`.
pub fn chern_f() -> ChowClass {
    chern_wedge3_character().inverse().expect("constant term 1")
}

/// `c(F)` through the expansion path.
pub fn chern_f_expansion() -> ChowClass {
    chern_wedge3_expansion().inverse().expect("constant term 1")
}

/// `2c₃(F) − c₁(F)c₂(F)`.
pub fn porteous_ya2() -> ChowClass {
    let c = chern_f();
    c.part(3).scale(2).sub(&c.part(1).mul(&c.part(2)))
}

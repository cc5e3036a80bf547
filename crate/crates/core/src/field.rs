//! Exact scalar fields: the rationals and prime fields.
//!
//! A field is a small descriptor value; elements are plain data and every
//! operation goes through the descriptor. This keeps prime-field residues as
//! bare integers while the modulus travels with the matrices and subspaces.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{EpwError, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Q = BigRational;

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(&self, q: &Q) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for the rationals, p for F_p.
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// A nonzero scalar `c` such that `c * x` is integral for every listed
    /// element (always 1 outside the rationals).
    fn clearing_multiplier(&self, _elems: &[&Self::Elem]) -> Self::Elem {
        self.one()
    }

    /// Determinant of a dense row-major `n x n` matrix.
    fn det(&self, n: usize, data: &[Self::Elem]) -> Self::Elem {
        gaussian_det(self, n, data)
    }
}

fn gaussian_det<F: Field + ?Sized>(f: &F, n: usize, data: &[F::Elem]) -> F::Elem {
    let mut m = data.to_vec();
    let mut det = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !f.is_zero(&m[r * n + col])) else {
            return f.zero();
        };
        if piv != col {
            for c in 0..n {
                m.swap(piv * n + c, col * n + c);
            }
            det = f.neg(&det);
        }
        let p = m[col * n + col].clone();
        det = f.mul(&det, &p);
        let pinv = f.inv(&p).expect("nonzero pivot");
        for r in col + 1..n {
            if f.is_zero(&m[r * n + col]) {
                continue;
            }
            let factor = f.mul(&m[r * n + col], &pinv);
            for c in col..n {
                let t = f.mul(&factor, &m[col * n + c]);
                m[r * n + c] = f.sub(&m[r * n + c], &t);
            }
        }
    }
    det
}

/// Fraction-free Bareiss determinant of an integer matrix.
pub fn bareiss_det_int(n: usize, data: &[BigInt]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut m = data.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(piv * n + c, k * n + c);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k * n + k] * &m[i * n + j] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    let d = m[n * n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_i64(&self, n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, q: &Q) -> Result<Q> {
        Ok(q.clone())
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_one(&self, a: &Q) -> bool {
        a.is_one()
    }

    fn clearing_multiplier(&self, elems: &[&Q]) -> Q {
        let l = elems.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        Q::from_integer(l)
    }

    fn det(&self, n: usize, data: &[Q]) -> Q {
        // clear denominators row by row, then run Bareiss over the integers
        let mut scale = Q::one();
        let mut ints = Vec::with_capacity(n * n);
        for r in 0..n {
            let row: Vec<&Q> = data[r * n..(r + 1) * n].iter().collect();
            let c = self.clearing_multiplier(&row);
            for x in row {
                ints.push((x * &c).to_integer());
            }
            scale *= c;
        }
        Q::from_integer(bareiss_det_int(n, &ints)) / scale
    }
}

/// The prime field F_p for a prime p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(EpwError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Every element of the field, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Q) -> Result<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().expect("residue fits");
        let den = q.denom().mod_floor(&p).to_u64().expect("residue fits");
        let inv = self.inv(&den).ok_or(EpwError::BadPrime(self.p))?;
        Ok(self.mul(&num, &inv))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Parse "p/q", "n" or "-n" into a rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || EpwError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text form: "n" for integers, "p/q" otherwise.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer value of a rational known to be integral.
pub fn q_to_i64(q: &Q) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn q_abs(q: &Q) -> Q {
    q.abs()
}

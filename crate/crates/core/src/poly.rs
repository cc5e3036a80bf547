//! Sparse multivariate polynomials, symbolic determinants, interpolation on
//! the principal lattice, and univariate gcds.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{EpwError, Result};
use crate::field::{Field, Rationals, Q};

/// Exponent vector ordered graded-lexicographically (x0 > x1 > ...).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(e, field.one());
        p
    }

    /// `c0 + sum_i c[i] * x_i`.
    pub fn affine(field: &F, c0: F::Elem, c: &[F::Elem]) -> Self {
        let n = c.len();
        let mut p = Self::constant(field, n, c0);
        for (i, ci) in c.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, ci.clone());
        }
        p
    }

    pub fn from_terms(field: &F, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, F::Elem)>) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(EpwError::DimensionMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Add `c * x^e` in place.
    pub fn add_term(&mut self, e: Vec<u32>, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        let f = &self.field;
        let key = Monomial(e);
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = f.add(v, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter().rev()
    }
    pub fn coeff(&self, e: &[u32]) -> F::Elem {
        self.terms.get(&Monomial(e.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest degree of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Monomial::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Scale so that the graded-lex leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    /// True when `self = c * other` for some nonzero scalar `c`.
    pub fn equal_up_to_scalar(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), f.mul(c, x))).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(EpwError::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(EpwError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), f.neg(x))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let mut acc: std::collections::HashMap<Vec<u32>, F::Elem> = std::collections::HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                let t = f.mul(c1, c2);
                match acc.get_mut(&e) {
                    Some(v) => *v = f.add(v, &t),
                    None => {
                        acc.insert(e, t);
                    }
                }
            }
        }
        Ok(MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !f.is_zero(c)).map(|(e, c)| (Monomial(e), c)).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Exact quotient `self / other`; fails if the division leaves a remainder.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let (lm, lc) = other.leading_term().ok_or(EpwError::ZeroInput("divisor"))?;
        let lc_inv = f.inv(lc).expect("nonzero");
        let mut rem = self.clone();
        let mut quo = Self::zero(f, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(EpwError::Precondition("inexact polynomial division".into()));
            }
            let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            let q = f.mul(c, &lc_inv);
            let mut t = Self::zero(f, self.nvars);
            t.add_term(e.clone(), q.clone());
            quo.add_term(e, q);
            rem = rem.sub(&t.mul(other)?)?;
        }
        Ok(quo)
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(EpwError::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let f = &self.field;
        let maxdeg = self.total_degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .map(|x| {
                let mut p = vec![f.one()];
                for k in 1..=maxdeg {
                    let next = f.mul(&p[k - 1], x);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Homogenize to degree `d` with a new leading variable x0.
    pub fn homogenize(&self, d: u32) -> Result<Self> {
        if let Some(td) = self.total_degree() {
            if td > d {
                return Err(EpwError::Precondition(format!("degree {td} exceeds {d}")));
            }
        }
        let mut out = Self::zero(&self.field, self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = vec![d - m.degree()];
            e.extend(m.0.iter().copied());
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Substitute `x_i = forms[i]` (all in a common ring).
    pub fn compose(&self, forms: &[MultiPoly<F>]) -> Result<Self> {
        if forms.len() != self.nvars {
            return Err(EpwError::DimensionMismatch {
                expected: self.nvars,
                found: forms.len(),
            });
        }
        let target = forms.first().map_or(0, |p| p.nvars);
        let f = &self.field;
        let maxdeg = self.total_degree().unwrap_or(0);
        let powers: Vec<Vec<MultiPoly<F>>> = forms
            .iter()
            .map(|p| {
                let mut v = vec![MultiPoly::constant(f, target, f.one())];
                for k in 1..=maxdeg as usize {
                    let next = v[k - 1].mul(p).expect("same ring");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(f, target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(f, target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Symmetric matrix `H` of a quadratic form with `q(x) = x^T H x`
    /// (off-diagonal entries are halved coefficients). Requires char != 2.
    pub fn quadratic_form_matrix(&self) -> Result<crate::matrix::Mat<F>> {
        if !self.is_homogeneous() || self.total_degree().unwrap_or(2) != 2 {
            return Err(EpwError::Precondition("not a quadratic form".into()));
        }
        let f = &self.field;
        let two_inv = f.inv(&f.from_i64(2)).ok_or(EpwError::Precondition("characteristic 2".into()))?;
        let n = self.nvars;
        let mut h = crate::matrix::Mat::zeros(f, n, n);
        for (m, c) in &self.terms {
            let idx: Vec<usize> = m.0.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                h.set(i, i, c.clone());
            } else {
                let half = f.mul(c, &two_inv);
                h.set(i, j, half.clone());
                h.set(j, i, half);
            }
        }
        Ok(h)
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("X{i}") } else { format!("X{i}^{e}") })
                    .collect();
            let coeff = format!("{c}");
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if vars.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&format!("{mag}*{}", vars.join("*")));
            }
        }
        write!(fm, "{out}")
    }
}

/// Determinant of a square grid of polynomials by fraction-free Bareiss
/// elimination with exact polynomial division. Over the rationals each row is
/// first scaled to integer coefficients.
pub fn poly_det<F: Field>(m: &[Vec<MultiPoly<F>>]) -> Result<MultiPoly<F>> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(EpwError::NotSquare { rows: n, cols: row.len() });
        }
    }
    if n == 0 {
        return Err(EpwError::ZeroInput("empty matrix"));
    }
    let f = m[0][0].field.clone();
    let nv = m[0][0].nvars;
    let mut a: Vec<Vec<MultiPoly<F>>> = Vec::with_capacity(n);
    let mut undo = f.one();
    for row in m {
        let coeffs: Vec<&F::Elem> = row.iter().flat_map(|p| p.terms.values()).collect();
        let c = f.clearing_multiplier(&coeffs);
        undo = f.mul(&undo, &c);
        a.push(row.iter().map(|p| p.scale(&c)).collect());
    }
    let mut negate = false;
    let mut prev = MultiPoly::constant(&f, nv, f.one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(MultiPoly::zero(&f, nv));
            };
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let mut d = a[n - 1][n - 1].clone();
    if negate {
        d = d.neg();
    }
    Ok(d.scale(&f.inv(&undo).expect("nonzero")))
}

/// Cofactor-expansion determinant; exponential, for cross-checks only.
pub fn poly_det_cofactor<F: Field>(m: &[Vec<MultiPoly<F>>]) -> Result<MultiPoly<F>> {
    let n = m.len();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let f = m[0][0].field.clone();
    let mut acc = MultiPoly::zero(&f, m[0][0].nvars);
    for j in 0..n {
        let minor: Vec<Vec<MultiPoly<F>>> = (1..n).map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect()).collect();
        let t = m[0][j].mul(&poly_det_cofactor(&minor)?)?;
        acc = if j % 2 == 0 { acc.add(&t)? } else { acc.sub(&t)? };
    }
    Ok(acc)
}

/// All exponent vectors with `nvars` entries and total degree at most `d`.
pub fn lattice_points(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for a in 0..=d {
            prefix.push(a);
            rec(n - 1, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Recover a polynomial of total degree at most `d` in `nvars` variables from
/// its values on the principal lattice `{a in N^n : |a| <= d}`. Uses Newton
/// divided differences along each axis, then converts falling factorials to
/// monomials with Stirling numbers of the first kind.
pub fn interpolate_lattice<Fun>(nvars: usize, d: u32, eval: Fun) -> MultiPoly<Rationals>
where
    Fun: Fn(&[u32]) -> Q + Sync,
{
    let f = Rationals;
    let side = d as usize + 1;
    let index = |a: &[u32]| a.iter().fold(0usize, |acc, &x| acc * side + x as usize);
    let points = lattice_points(nvars, d);
    let values: Vec<Q> = points.par_iter().map(|a| eval(a)).collect();
    let mut grid: Vec<Q> = vec![f.zero(); side.pow(nvars as u32)];
    for (a, v) in points.iter().zip(values) {
        grid[index(a)] = v;
    }
    // lines along `axis`: the other coordinates are fixed with sum s
    let lines = |axis: usize| -> Vec<(Vec<u32>, u32)> {
        lattice_points(nvars.saturating_sub(1), d)
            .into_iter()
            .map(|rest| {
                let s: u32 = rest.iter().sum();
                let mut base = rest;
                base.insert(axis, 0);
                (base, d - s)
            })
            .collect()
    };
    for axis in 0..nvars {
        for (base, len) in lines(axis) {
            let idx: Vec<usize> = (0..=len)
                .map(|t| {
                    let mut a = base.clone();
                    a[axis] = t;
                    index(&a)
                })
                .collect();
            for k in 1..=len as usize {
                let kq = f.from_i64(k as i64);
                for m in (k..idx.len()).rev() {
                    let diff = &grid[idx[m]] - &grid[idx[m - 1]];
                    grid[idx[m]] = diff / &kq;
                }
            }
        }
    }
    let stirling = stirling_first(d as usize);
    for axis in 0..nvars {
        for (base, len) in lines(axis) {
            let idx: Vec<usize> = (0..=len)
                .map(|t| {
                    let mut a = base.clone();
                    a[axis] = t;
                    index(&a)
                })
                .collect();
            let old: Vec<Q> = idx.iter().map(|&i| grid[i].clone()).collect();
            for l in 0..idx.len() {
                let mut acc = f.zero();
                for (j, c) in old.iter().enumerate().skip(l) {
                    if stirling[j][l] != 0 {
                        acc += c * f.from_i64(stirling[j][l]);
                    }
                }
                grid[idx[l]] = acc;
            }
        }
    }
    let mut out = MultiPoly::zero(&f, nvars);
    for a in points {
        let c = grid[index(&a)].clone();
        out.add_term(a, c);
    }
    out
}

/// Signed Stirling numbers of the first kind `s(j, l)` for `j <= n`:
/// `x(x-1)...(x-j+1) = sum_l s(j,l) x^l`.
fn stirling_first(n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n + 1]; n + 1];
    s[0][0] = 1;
    for j in 0..n {
        for l in 0..=j + 1 {
            let prev = if l > 0 { s[j][l - 1] } else { 0 };
            s[j + 1][l] = prev - (j as i64) * s[j][l];
        }
    }
    s
}

/// Dense univariate polynomial, coefficients in increasing degree, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn zero(field: &F) -> Self {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }
    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }
    /// `c·t^k`.
    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut v = vec![field.zero(); k + 1];
        v[k] = c;
        Self::new(field, v)
    }
    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }
    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|k| f.add(&self.coeff(k), &other.coeff(k))).collect())
    }
    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|k| f.sub(&self.coeff(k), &other.coeff(k))).collect())
    }
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }
    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }
    pub fn eval(&self, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, t), c))
    }
    /// `t^d · p(1/t)` for `d ≥ deg p`.
    pub fn reversed(&self, d: usize) -> Self {
        let f = &self.field;
        Self::new(f, (0..=d).map(|k| self.coeff(d - k)).collect())
    }
    /// Exact quotient; None if the division leaves a remainder.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let f = &self.field;
        let dq = other.degree()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dq {
            return if r.is_empty() { Some(Self::zero(f)) } else { None };
        }
        let mut q = vec![f.zero(); r.len() - dq];
        let lc_inv = f.inv(other.coeffs.last().expect("nonzero")).expect("nonzero");
        for shift in (0..q.len()).rev() {
            let c = f.mul(&r[shift + dq], &lc_inv);
            for (i, oc) in other.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, oc));
            }
            q[shift] = c;
        }
        r.iter().all(|x| f.is_zero(x)).then(|| Self::new(f, q))
    }

    fn rem(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut r = self.coeffs.clone();
        let dq = other.coeffs.len() - 1;
        let lc_inv = f.inv(other.coeffs.last().expect("nonzero")).expect("nonzero");
        while r.len() > dq && !r.is_empty() {
            let shift = r.len() - 1 - dq;
            let q = f.mul(r.last().expect("nonempty"), &lc_inv);
            for (i, c) in other.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &f.mul(&q, c));
            }
            while r.last().is_some_and(|c| f.is_zero(c)) {
                r.pop();
            }
        }
        UniPoly::new(f, r)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let f = &a.field;
        let inv = f.inv(a.coeffs.last().expect("nonzero")).expect("nonzero");
        let coeffs = a.coeffs.iter().map(|c| f.mul(c, &inv)).collect();
        UniPoly::new(f, coeffs)
    }
}

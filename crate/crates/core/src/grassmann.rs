//! Grassmannians: exhaustive enumeration over prime fields by pivot pattern,
//! spans of Plücker vectors, and the finite-field Θ oracle.

use rayon::prelude::*;

use crate::error::{EpwError, Result};
use crate::exterior::{combinations, plucker_of, symp_coords, N};
use crate::field::{Field, PrimeField};
use crate::lagrangian::{LagrangianSubspace, D3};
use crate::matrix::Mat;
use crate::subspace::Subspace;

/// Number of points of `Gr(k, F_p^n)`.
pub fn grassmannian_count(p: u64, k: usize, n: usize) -> u64 {
    // Gaussian binomial coefficient
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (p.pow((n - i) as u32) - 1) as u128;
        den *= (p.pow((i + 1) as u32) - 1) as u128;
    }
    (num / den) as u64
}

/// All RREF matrices with the given pivot columns, as k x n row lists.
fn cell(fp: &PrimeField, pivots: &[usize], n: usize) -> Vec<Vec<Vec<u64>>> {
    let p = fp.p();
    let k = pivots.len();
    let free: Vec<(usize, usize)> = (0..k).flat_map(|r| (pivots[r] + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c))).collect();
    let count = p.pow(free.len() as u32);
    (0..count)
        .map(|mut code| {
            let mut rows = vec![vec![0u64; n]; k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in &free {
                rows[r][c] = code % p;
                code /= p;
            }
            rows
        })
        .collect()
}

/// Every k-dimensional subspace of `F_p^n`, each exactly once, in pivot
/// pattern order.
pub fn grassmannian_fp(fp: &PrimeField, k: usize, n: usize) -> Vec<Subspace<PrimeField>> {
    combinations(n, k)
        .into_par_iter()
        .flat_map_iter(|piv| {
            cell(fp, &piv, n)
                .into_iter()
                .map(|rows| Subspace::row_space(&Mat::from_rows(fp, n, rows).expect("rectangular")))
        })
        .collect()
}

/// Span of the Plücker vectors `∧³W` of a set of planes.
pub fn wedge_span<F: Field>(f: &F, planes: &[Subspace<F>]) -> Result<Subspace<F>> {
    let rows: Vec<Vec<F::Elem>> = planes.iter().map(plucker_of).collect::<Result<_>>()?;
    Subspace::span(f, D3, &rows)
}

/// Grow the span of `∧³W` over planes drawn from `next` until the dimension
/// has not increased for `window` consecutive draws (or the source runs dry).
pub fn stable_wedge_span<F: Field>(f: &F, window: usize, max_draws: usize, mut next: impl FnMut() -> Option<Subspace<F>>) -> Result<Subspace<F>> {
    let mut span = Subspace::zero(f, D3);
    let mut quiet = 0;
    for _ in 0..max_draws {
        let Some(w) = next() else { break };
        let v = plucker_of(&w)?;
        if span.contains(&v)? {
            quiet += 1;
            if quiet >= window {
                break;
            }
        } else {
            span = span.sum(&Subspace::span(f, D3, &[v])?)?;
            quiet = 0;
        }
    }
    Ok(span)
}

/// Whether `∧³W ∈ A`, tested through `symp(∧³W, a_i) = 0` for a basis of the
/// Lagrangian A.
pub fn plane_in<F: Field>(a: &LagrangianSubspace<F>, w: &Subspace<F>) -> Result<bool> {
    let f = a.field();
    let pl = plucker_of(w)?;
    Ok(a.basis_vecs().iter().all(|r| f.is_zero(&symp_coords(f, &pl, r))))
}

/// `Θ_A` over `F_p`: all planes W with `∧³W ⊂ A`, by exhaustive search of
/// `Gr(3, F_p^6)`.
pub fn theta_fp(a: &LagrangianSubspace<PrimeField>) -> Result<Vec<Subspace<PrimeField>>> {
    let fp = *a.field();
    if fp.p() > 7 {
        return Err(EpwError::Precondition(format!("exhaustive Θ search over F_{} is too large", fp.p())));
    }
    let basis = a.basis_vecs();
    let out: Vec<Subspace<PrimeField>> = combinations(N, 3)
        .into_par_iter()
        .flat_map_iter(|piv| {
            let basis = &basis;
            cell(&fp, &piv, N).into_iter().filter_map(move |rows| {
                let w = Subspace::row_space(&Mat::from_rows(&fp, N, rows).expect("rectangular"));
                let pl = plucker_of(&w).expect("plane");
                basis.iter().all(|r| fp.is_zero(&symp_coords(&fp, &pl, r))).then_some(w)
            })
        })
        .collect();
    Ok(out)
}

/// Points of `P(W)` for a subspace W over `F_p`, as normalized vectors.
pub fn projective_points_of(w: &Subspace<PrimeField>) -> Vec<Vec<u64>> {
    let fp = *w.field();
    let d = w.dim();
    crate::epw::projective_points(&fp, d)
        .into_iter()
        .map(|c| {
            let v = crate::subspace::combine(&fp, w.basis(), &c);
            normalize_fp(&fp, &v)
        })
        .collect()
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize_fp(fp: &PrimeField, v: &[u64]) -> Vec<u64> {
    match v.iter().find(|x| **x != 0) {
        Some(lead) => {
            let inv = fp.inv(lead).expect("nonzero");
            v.iter().map(|x| fp.mul(x, &inv)).collect()
        }
        None => v.to_vec(),
    }
}

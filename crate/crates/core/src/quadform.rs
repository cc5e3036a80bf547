//! Quadratic forms: rank strata of `Sym²U∨`, their tangent spaces, and the
//! lowest-order term of `det(q* + Σ t_i q_i)`.

use crate::error::{EpwError, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::poly::{poly_det, MultiPoly};
use crate::subspace::Subspace;

/// A symmetric d x d matrix, d ≤ 10.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm<F: Field>(Mat<F>);

impl<F: Field> QuadForm<F> {
    pub fn new(m: Mat<F>) -> Result<Self> {
        if !m.is_square() {
            return Err(EpwError::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if m.rows() > 10 {
            return Err(EpwError::Precondition(format!("quadratic forms are limited to d ≤ 10, got {}", m.rows())));
        }
        if !m.is_symmetric() {
            return Err(EpwError::Precondition("matrix is not symmetric".into()));
        }
        Ok(QuadForm(m))
    }

    /// The form with coordinates `q_ij` (i ≤ j) in [`sym_pairs`] order.
    pub fn from_coords(f: &F, d: usize, c: &[F::Elem]) -> Result<Self> {
        let pairs = sym_pairs(d);
        if c.len() != pairs.len() {
            return Err(EpwError::DimensionMismatch {
                expected: pairs.len(),
                found: c.len(),
            });
        }
        let mut m = Mat::zeros(f, d, d);
        for (&(i, j), x) in pairs.iter().zip(c) {
            m.set(i, j, x.clone());
            m.set(j, i, x.clone());
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.0
    }
    pub fn dim(&self) -> usize {
        self.0.rows()
    }
    pub fn field(&self) -> &F {
        self.0.field()
    }
    pub fn coords(&self) -> Vec<F::Elem> {
        sym_pairs(self.dim()).iter().map(|&(i, j)| self.0.get(i, j).clone()).collect()
    }
    /// `q(x, y) = xᵀ M y`.
    pub fn bilinear(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<F::Elem> {
        let f = self.field();
        let my = self.0.apply(y)?;
        Ok(x.iter().zip(&my).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
    }
    /// Restriction to a subspace, as the Gram matrix on its basis.
    pub fn restrict(&self, k: &Subspace<F>) -> Result<QuadForm<F>> {
        let b = k.basis_vecs();
        let f = self.field();
        let mut m = Mat::zeros(f, b.len(), b.len());
        for i in 0..b.len() {
            for j in 0..b.len() {
                m.set(i, j, self.bilinear(&b[i], &b[j])?);
            }
        }
        QuadForm::new(m)
    }
}

/// Index pairs `(i, j)`, `i ≤ j`, in lex order: coordinates on `Sym²`.
pub fn sym_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect()
}

pub fn corank<F: Field>(q: &QuadForm<F>) -> usize {
    q.dim() - q.0.rank()
}

pub fn kernel_of<F: Field>(q: &QuadForm<F>) -> Subspace<F> {
    Subspace::kernel(&q.0)
}

/// Codimension of `{rk q ≤ r}` in `Sym²` of a d-dimensional space.
pub fn stratum_codim(d: usize, r: usize) -> Result<usize> {
    if r > d {
        return Err(EpwError::Precondition(format!("rank {r} exceeds dimension {d}")));
    }
    let m = d - r + 1;
    Ok(m * (m - 1) / 2)
}

/// Tangent space at q* to its rank stratum: `{q : q|_K = 0}`, `K = ker q*`,
/// as a subspace of the `Sym²` coordinates.
pub fn stratum_tangent<F: Field>(qstar: &QuadForm<F>) -> Result<Subspace<F>> {
    let f = qstar.field();
    let d = qstar.dim();
    let pairs = sym_pairs(d);
    let k = kernel_of(qstar).basis_vecs();
    let mut rows = Vec::new();
    for a in 0..k.len() {
        for b in a..k.len() {
            // q(k_a, k_b) as a linear form in the coordinates q_ij
            let row: Vec<F::Elem> = pairs
                .iter()
                .map(|&(i, j)| {
                    let t = f.mul(&k[a][i], &k[b][j]);
                    if i == j {
                        t
                    } else {
                        f.add(&t, &f.mul(&k[a][j], &k[b][i]))
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(f, pairs.len()));
    }
    Ok(Subspace::kernel(&Mat::from_rows(f, pairs.len(), rows)?))
}

/// The matrix `q* + Σ t_i q_i` with entries affine in the parameters.
fn pencil_entries<F: Field>(qstar: &QuadForm<F>, dirs: &[QuadForm<F>]) -> Result<Vec<Vec<MultiPoly<F>>>> {
    let f = qstar.field();
    let d = qstar.dim();
    if dirs.iter().any(|q| q.dim() != d) {
        return Err(EpwError::DimensionMismatch {
            expected: d,
            found: dirs.iter().map(|q| q.dim()).find(|&x| x != d).unwrap_or(d),
        });
    }
    Ok((0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let c: Vec<F::Elem> = dirs.iter().map(|q| q.0.get(i, j).clone()).collect();
                    MultiPoly::affine(f, qstar.0.get(i, j).clone(), &c)
                })
                .collect()
        })
        .collect())
}

/// `(k, Φ_k)`: the lowest nonvanishing homogeneous part of
/// `Φ(t) = det(q* + Σ t_i q_i)` and its degree. None if `Φ ≡ 0`.
pub fn initial_term<F: Field>(qstar: &QuadForm<F>, dirs: &[QuadForm<F>]) -> Result<Option<(u32, MultiPoly<F>)>> {
    let det = poly_det(&pencil_entries(qstar, dirs)?)?;
    Ok(det.order().map(|k| (k, det.homogeneous_part(k))))
}

/// `det((Σ t_i q_i)|_K)` with `K = ker q*`, a form of degree `dim K`.
pub fn restricted_det<F: Field>(qstar: &QuadForm<F>, dirs: &[QuadForm<F>]) -> Result<MultiPoly<F>> {
    let f = qstar.field();
    let k = kernel_of(qstar);
    let m = dirs.len();
    if k.dim() == 0 {
        return Ok(MultiPoly::constant(f, m, f.one()));
    }
    let restricted: Vec<QuadForm<F>> = dirs.iter().map(|q| q.restrict(&k)).collect::<Result<_>>()?;
    let zero = QuadForm::new(Mat::zeros(f, k.dim(), k.dim()))?;
    poly_det(&pencil_entries(&zero, &restricted)?)
}

/// Outcome of comparing the initial term with the restricted determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialTermCheck {
    pub corank: usize,
    pub order: Option<u32>,
    /// Whether `det(q|_K) ≢ 0`, the hypothesis of the identity.
    pub restricted_nonzero: bool,
    /// Whether `Φ_k = c · det(q|_K)` for one nonzero scalar c.
    pub matches: bool,
}

pub fn initial_term_check<F: Field>(qstar: &QuadForm<F>, dirs: &[QuadForm<F>]) -> Result<InitialTermCheck> {
    let k = corank(qstar);
    let restricted = restricted_det(qstar, dirs)?;
    let init = initial_term(qstar, dirs)?;
    let order = init.as_ref().map(|(o, _)| *o);
    let matches = match &init {
        Some((o, phi)) => *o as usize == k && phi.equal_up_to_scalar(&restricted),
        None => false,
    };
    Ok(InitialTermCheck {
        corank: k,
        order,
        restricted_nonzero: !restricted.is_zero(),
        matches,
    })
}

/// Rank of the restriction map `Sym²U∨ → Sym²K∨`, `q ↦ q|_K`.
pub fn restriction_rank<F: Field>(qstar: &QuadForm<F>) -> Result<usize> {
    let f = qstar.field();
    let d = qstar.dim();
    let k = kernel_of(qstar);
    let kd = k.dim();
    let npairs = sym_pairs(d).len();
    let rows: Vec<Vec<F::Elem>> = (0..npairs)
        .map(|idx| {
            let mut c = vec![f.zero(); npairs];
            c[idx] = f.one();
            let q = QuadForm::from_coords(f, d, &c)?.restrict(&k)?;
            Ok(q.coords())
        })
        .collect::<Result<_>>()?;
    Ok(Mat::from_rows(f, kd * (kd + 1) / 2, rows)?.rank())
}

//! Lagrangian subspaces of (∧³V, symp): validation, the F_v and S_U
//! families, graph charts, random generation and isotropic extension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{EpwError, Result};
use crate::exterior::{basis_indices, combinations, index_of, symp_coords, symp_row, wedge, wedge_vectors, KVector, N};
use crate::field::{Field, Rationals};
use crate::matrix::Mat;
use crate::subspace::{combine, unit, Subspace};

/// Dimension of ∧³V.
pub const D3: usize = 20;

/// Index pairs `(i, j)`, `i <= j`, of basis vectors on which symp is nonzero.
pub fn gram_failures<F: Field>(s: &Subspace<F>) -> Vec<(usize, usize)> {
    let f = s.field();
    let rows = s.basis_vecs();
    let mut bad = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if !f.is_zero(&symp_coords(f, &rows[i], &rows[j])) {
                bad.push((i, j));
            }
        }
    }
    bad
}

pub fn is_isotropic<F: Field>(s: &Subspace<F>) -> Result<bool> {
    if s.ambient() != D3 {
        return Err(EpwError::DimensionMismatch { expected: D3, found: s.ambient() });
    }
    Ok(gram_failures(s).is_empty())
}

pub fn is_lagrangian<F: Field>(s: &Subspace<F>) -> Result<bool> {
    Ok(s.dim() == 10 && is_isotropic(s)?)
}

/// A 10-dimensional isotropic subspace of ∧³V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianSubspace<F: Field>(Subspace<F>);

impl<F: Field> LagrangianSubspace<F> {
    pub fn new(s: Subspace<F>) -> Result<Self> {
        if s.ambient() != D3 {
            return Err(EpwError::DimensionMismatch { expected: D3, found: s.ambient() });
        }
        let failed = gram_failures(&s);
        if s.dim() != 10 || !failed.is_empty() {
            return Err(EpwError::NotLagrangian {
                dim: s.dim(),
                failed_pairs: failed,
            });
        }
        Ok(LagrangianSubspace(s))
    }

    pub fn subspace(&self) -> &Subspace<F> {
        &self.0
    }
    pub fn field(&self) -> &F {
        self.0.field()
    }
    pub fn basis_vecs(&self) -> Vec<Vec<F::Elem>> {
        self.0.basis_vecs()
    }
}

/// An isotropic subspace of ∧³V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicSubspace<F: Field>(Subspace<F>);

impl<F: Field> IsotropicSubspace<F> {
    pub fn new(s: Subspace<F>) -> Result<Self> {
        if s.ambient() != D3 {
            return Err(EpwError::DimensionMismatch { expected: D3, found: s.ambient() });
        }
        let failed = gram_failures(&s);
        if !failed.is_empty() {
            return Err(EpwError::NotIsotropic(failed));
        }
        Ok(IsotropicSubspace(s))
    }
    pub fn subspace(&self) -> &Subspace<F> {
        &self.0
    }
}

/// Matrix of `α -> v ∧ α` from ∧³V to ∧⁴V (15 x 20).
pub fn wedge_map_matrix<F: Field>(f: &F, v: &[F::Elem]) -> Result<Mat<F>> {
    let vk = KVector::vector(f, v)?;
    let mut m = Mat::zeros(f, 15, D3);
    for j in 0..D3 {
        let w = wedge(&vk, &KVector::basis(f, &basis_indices(3, j)))?;
        for (i, c) in w.coords().iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// `F_v = {α : v ∧ α = 0}`.
#[allow(non_snake_case)]
pub fn F_of<F: Field>(f: &F, v: &[F::Elem]) -> Result<LagrangianSubspace<F>> {
    if v.len() != N {
        return Err(EpwError::DimensionMismatch { expected: N, found: v.len() });
    }
    if v.iter().all(|x| f.is_zero(x)) {
        return Err(EpwError::ZeroInput("F_v of the zero vector"));
    }
    let k = Subspace::kernel(&wedge_map_matrix(f, v)?);
    assert_eq!(k.dim(), 10);
    LagrangianSubspace::new(k)
}

/// `S_U = (∧²U) ∧ V` for a 3-dimensional U.
#[allow(non_snake_case)]
pub fn S_of<F: Field>(u: &Subspace<F>) -> Result<Subspace<F>> {
    if u.dim() != 3 || u.ambient() != N {
        return Err(EpwError::DimensionMismatch { expected: 3, found: u.dim() });
    }
    let f = u.field();
    let b = u.basis_vecs();
    let mut vecs = Vec::new();
    for pair in combinations(3, 2) {
        for j in 0..N {
            let e = unit(f, N, j);
            vecs.push(wedge_vectors(f, &[b[pair[0]].clone(), b[pair[1]].clone(), e])?.into_coords());
        }
    }
    let s = Subspace::span(f, D3, &vecs)?;
    assert_eq!(s.dim(), 10);
    Ok(s)
}

/// `T_U = S_U / ∧³U`, with coordinates adapted to `∧²U ⊗ (V/U)`.
#[derive(Clone, Debug)]
pub struct TU<F: Field> {
    pub u: Subspace<F>,
    pub s_u: Subspace<F>,
    /// Basis `u_a ∧ u_b ∧ x_j` (pair index * 3 + j) followed by `∧³U`.
    adapted: Subspace<F>,
    adapted_rows: Mat<F>,
}

#[allow(non_snake_case)]
pub fn T_of<F: Field>(u: &Subspace<F>) -> Result<TU<F>> {
    let s_u = S_of(u)?;
    let f = u.field();
    let b = u.basis_vecs();
    let comp: Vec<Vec<F::Elem>> = u.complement_indices().into_iter().map(|i| unit(f, N, i)).collect();
    let mut rows = Vec::new();
    for pair in combinations(3, 2) {
        for x in &comp {
            rows.push(wedge_vectors(f, &[b[pair[0]].clone(), b[pair[1]].clone(), x.clone()])?.into_coords());
        }
    }
    rows.push(wedge_vectors(f, &b)?.into_coords());
    let adapted_rows = Mat::from_rows(f, D3, rows)?;
    let adapted = Subspace::row_space(&adapted_rows);
    assert_eq!(adapted, s_u);
    Ok(TU {
        u: u.clone(),
        s_u,
        adapted,
        adapted_rows,
    })
}

impl<F: Field> TU<F> {
    /// Class of `α ∈ S_U` in `T_U ≅ ∧²U ⊗ V/U`, as a 3x3 matrix (rows: pairs
    /// of U-basis vectors, columns: complement basis of V/U).
    pub fn rho(&self, alpha: &[F::Elem]) -> Result<Mat<F>> {
        let f = self.u.field();
        // solve alpha = sum c_i row_i
        let m = Mat::from_fn(f, D3, 11, |r, c| if c < 10 { self.adapted_rows.get(c, r).clone() } else { alpha[r].clone() });
        let e = m.rref();
        if e.pivots.contains(&10) {
            return Err(EpwError::NotInSubspace("α must lie in S_U"));
        }
        debug_assert!(self.adapted.contains(alpha)?);
        let coeff: Vec<F::Elem> = (0..10)
            .map(|i| {
                let r = e.pivots.iter().position(|&p| p == i).expect("independent");
                e.matrix.get(r, 10).clone()
            })
            .collect();
        Ok(Mat::from_fn(f, 3, 3, |a, j| coeff[a * 3 + j].clone()))
    }
}

/// `rho_U` as a free function.
#[allow(non_snake_case)]
pub fn rho_U<F: Field>(t: &TU<F>, alpha: &[F::Elem]) -> Result<Mat<F>> {
    t.rho(alpha)
}

/// Matrix of the symmetric map `τ: A -> B ≅ A∨` whose graph is `F_v`, in the
/// stored basis of A: entry `(i, j) = symp(a_i, τ(a_j))`.
pub fn graph_matrix<F: Field>(a: &LagrangianSubspace<F>, b: &LagrangianSubspace<F>, v: &[F::Elem]) -> Result<Mat<F>> {
    let f = a.field();
    let ab = a.subspace().basis().stack(b.subspace().basis())?;
    if ab.rank() != D3 {
        return Err(EpwError::NonTransversal);
    }
    let fv = F_of(f, v)?;
    if fv.subspace().intersect(b.subspace())?.dim() != 0 {
        return Err(EpwError::ChartMiss);
    }
    // decompose each basis vector of F_v as (A-part, B-part)
    let abt = ab.transpose();
    let inv = abt.inverse()?.expect("transversal");
    let fvb = fv.basis_vecs();
    let mut a_parts = Mat::zeros(f, 10, 10);
    let mut b_parts = Mat::zeros(f, 10, 10);
    for (k, x) in fvb.iter().enumerate() {
        let c = inv.apply(x)?;
        for i in 0..10 {
            a_parts.set(k, i, c[i].clone());
            b_parts.set(k, i, c[10 + i].clone());
        }
    }
    // rows of a_parts^{-1} * b_parts give τ(a_i) in B-coordinates
    let tau = a_parts.inverse()?.expect("F_v is a graph over A").mul(&b_parts)?;
    let brows = b.subspace().basis();
    let arows = a.subspace().basis();
    let images: Vec<Vec<F::Elem>> = (0..10).map(|j| combine(f, brows, tau.row(j))).collect();
    let m = Mat::from_fn(f, 10, 10, |i, j| symp_coords(f, arows.row(i), &images[j]));
    assert!(m.is_symmetric(), "graph matrix of a Lagrangian must be symmetric");
    Ok(m)
}

/// Dual partner `b_S` of `e_S` (0 ∈ S) under symp, so that
/// `symp(e_S, b_T) = δ_{ST}`.
fn split_bases<F: Field>(f: &F) -> (Vec<Vec<F::Elem>>, Vec<Vec<F::Elem>>) {
    let mut a0 = Vec::new();
    let mut b0 = Vec::new();
    for i in 0..D3 {
        let s = basis_indices(3, i);
        if s[0] != 0 {
            continue;
        }
        let comp: Vec<usize> = (0..N).filter(|x| !s.contains(x)).collect();
        let ea = unit(f, D3, i);
        let mut eb = unit(f, D3, index_of(&comp));
        let sgn = symp_coords(f, &ea, &eb);
        if sgn != f.one() {
            eb = eb.iter().map(|x| f.neg(x)).collect();
        }
        a0.push(ea);
        b0.push(eb);
    }
    (a0, b0)
}

/// Graph of a symmetric 10x10 matrix over the split `A0 = ⟨e_S : 0 ∈ S⟩`,
/// `B0 = ⟨e_S : 0 ∉ S⟩`.
pub fn graph_lagrangian<F: Field>(q: &Mat<F>) -> Result<LagrangianSubspace<F>> {
    if q.rows() != 10 || !q.is_symmetric() {
        return Err(EpwError::Precondition("need a symmetric 10x10 matrix".into()));
    }
    let f = q.field();
    let (a0, b0) = split_bases(f);
    let rows: Vec<Vec<F::Elem>> = (0..10)
        .map(|i| {
            let mut r = a0[i].clone();
            for j in 0..10 {
                if f.is_zero(q.get(i, j)) {
                    continue;
                }
                for k in 0..D3 {
                    r[k] = f.add(&r[k], &f.mul(q.get(i, j), &b0[j][k]));
                }
            }
            r
        })
        .collect();
    LagrangianSubspace::new(Subspace::span(f, D3, &rows)?)
}

/// Random symmetric integer matrix with entries in [−9, 9].
pub fn random_symmetric<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Mat<F> {
    let mut m = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in i..n {
            let x = f.from_i64(rng.gen_range(-9..=9));
            m.set(i, j, x.clone());
            m.set(j, i, x);
        }
    }
    m
}

/// Deterministic random Lagrangian over the rationals.
pub fn random_lagrangian(seed: u64) -> LagrangianSubspace<Rationals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_symmetric(&Rationals, 10, &mut rng);
    graph_lagrangian(&q).expect("graphs of symmetric maps are Lagrangian")
}

/// `L⊥`, the symp-orthogonal of L.
pub fn symp_orthogonal<F: Field>(l: &Subspace<F>) -> Subspace<F> {
    let f = l.field();
    if l.dim() == 0 {
        return Subspace::full(f, D3);
    }
    let rows: Vec<Vec<F::Elem>> = l.basis_vecs().iter().map(|r| symp_row(f, r)).collect();
    Subspace::kernel(&Mat::from_rows(f, D3, rows).expect("well-formed"))
}

/// Extend an isotropic L to a Lagrangian `A ⊃ L` through a random
/// Lagrangian of `L⊥/L`.
pub fn extend_isotropic<F: Field>(l: &IsotropicSubspace<F>, seed: u64) -> Result<LagrangianSubspace<F>> {
    let l = l.subspace();
    let f = l.field();
    let perp = symp_orthogonal(l);
    // complement of L inside L⊥
    let mut current = l.clone();
    let mut comp: Vec<Vec<F::Elem>> = Vec::new();
    for v in perp.basis_vecs() {
        if !current.contains(&v)? {
            current = current.sum(&Subspace::span(f, D3, std::slice::from_ref(&v))?)?;
            comp.push(v);
        }
    }
    // symplectic Gram–Schmidt on the complement
    let mut ps = Vec::new();
    let mut qs = Vec::new();
    let mut pool = comp;
    while let Some(p) = pool.pop() {
        let Some(k) = pool.iter().position(|x| !f.is_zero(&symp_coords(f, &p, x))) else {
            return Err(EpwError::Precondition("induced form on L⊥/L is degenerate".into()));
        };
        let q0 = pool.remove(k);
        let s = f.inv(&symp_coords(f, &p, &q0)).expect("nonzero");
        let q: Vec<F::Elem> = q0.iter().map(|x| f.mul(x, &s)).collect();
        pool = pool
            .into_iter()
            .map(|x| {
                let wq = symp_coords(f, &x, &q);
                let wp = symp_coords(f, &x, &p);
                x.iter().enumerate().map(|(i, xi)| f.add(&f.sub(xi, &f.mul(&wq, &p[i])), &f.mul(&wp, &q[i]))).collect()
            })
            .collect();
        ps.push(p);
        qs.push(q);
    }
    let m = ps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random_symmetric(f, m, &mut rng);
    let mut rows = l.basis_vecs();
    for i in 0..m {
        let mut r = qs[i].clone();
        for j in 0..m {
            for k in 0..D3 {
                r[k] = f.add(&r[k], &f.mul(s.get(i, j), &ps[j][k]));
            }
        }
        rows.push(r);
    }
    let a = LagrangianSubspace::new(Subspace::span(f, D3, &rows)?)?;
    debug_assert!(a.subspace().contains_subspace(l)?);
    Ok(a)
}

/// Uniform random vector with small integer entries.
pub fn random_vector<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng, bound: i64) -> Vec<F::Elem> {
    (0..n).map(|_| f.from_i64(rng.gen_range(-bound..=bound))).collect()
}

/// A random seeded generator (shared helper).
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

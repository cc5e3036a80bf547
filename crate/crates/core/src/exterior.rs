//! The exterior algebra of the fixed six-dimensional space V.
//!
//! Grade-k coordinates are indexed by strictly increasing index tuples in
//! lexicographic order; every sign comes from the parity of a sorting
//! permutation.

use std::sync::OnceLock;

use crate::error::{EpwError, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::subspace::Subspace;

/// Dimension of V.
pub const N: usize = 6;

struct Tables {
    /// `subsets[k]` lists the k-subsets of {0..5} as bitmasks in lex order.
    subsets: Vec<Vec<u8>>,
    /// Position of a bitmask inside its grade.
    index: [usize; 64],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut subsets = vec![Vec::new(); N + 1];
        for k in 0..=N {
            for c in combinations(N, k) {
                subsets[k].push(c.iter().fold(0u8, |m, &i| m | (1 << i)));
            }
        }
        let mut index = [0; 64];
        for grade in &subsets {
            for (i, &m) in grade.iter().enumerate() {
                index[m as usize] = i;
            }
        }
        Tables { subsets, index }
    })
}

/// All k-subsets of `0..n` as increasing vectors, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of coordinates of grade k.
pub fn grade_dim(k: usize) -> usize {
    tables().subsets[k].len()
}

/// Index set (increasing) of the i-th basis element of grade k.
pub fn basis_indices(k: usize, i: usize) -> Vec<usize> {
    mask_to_indices(tables().subsets[k][i])
}

/// Position of an increasing index tuple within its grade.
pub fn index_of(indices: &[usize]) -> usize {
    tables().index[indices.iter().fold(0usize, |m, &i| m | (1 << i))]
}

fn mask_to_indices(m: u8) -> Vec<usize> {
    (0..N).filter(|i| m & (1 << i) != 0).collect()
}

/// Sign of `e_S ∧ e_T` relative to `e_{S∪T}`, or `None` if they overlap.
fn wedge_sign(s: u8, t: u8) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    // count pairs (a in S, b in T) with a > b
    let mut inv = 0u32;
    for b in 0..N {
        if t & (1 << b) != 0 {
            inv += (s >> (b + 1)).count_ones();
        }
    }
    Some(inv % 2 == 1)
}

/// Homogeneous element of ∧^k V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVector<F: Field> {
    field: F,
    grade: usize,
    coords: Vec<F::Elem>,
}

/// A KVector of grade 3.
pub type Trivector<F> = KVector<F>;

impl<F: Field> KVector<F> {
    pub fn zero(field: &F, grade: usize) -> Self {
        KVector {
            field: field.clone(),
            grade,
            coords: vec![field.zero(); grade_dim(grade)],
        }
    }

    pub fn from_coords(field: &F, grade: usize, coords: Vec<F::Elem>) -> Result<Self> {
        if grade > N {
            return Err(EpwError::GradeOverflow(grade));
        }
        if coords.len() != grade_dim(grade) {
            return Err(EpwError::DimensionMismatch {
                expected: grade_dim(grade),
                found: coords.len(),
            });
        }
        Ok(KVector {
            field: field.clone(),
            grade,
            coords,
        })
    }

    /// The basis element `e_{i1} ∧ ... ∧ e_{ik}` for an increasing tuple.
    pub fn basis(field: &F, indices: &[usize]) -> Self {
        let mut v = Self::zero(field, indices.len());
        v.coords[index_of(indices)] = field.one();
        v
    }

    pub fn vector(field: &F, v: &[F::Elem]) -> Result<Self> {
        Self::from_coords(field, 1, v.to_vec())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn grade(&self) -> usize {
        self.grade
    }
    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }
    pub fn into_coords(self) -> Vec<F::Elem> {
        self.coords
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grade != other.grade {
            return Err(EpwError::WrongGrade {
                expected: self.grade,
                found: other.grade,
            });
        }
        let f = &self.field;
        Ok(KVector {
            field: f.clone(),
            grade: self.grade,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f.add(a, b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        KVector {
            field: f.clone(),
            grade: self.grade,
            coords: self.coords.iter().map(|x| f.mul(c, x)).collect(),
        }
    }

    /// Interior product with the dual basis covectors `X_r` for `r` in the
    /// increasing tuple `r`, normalized by `ι_{X_R}(e_R ∧ w) = w`.
    pub fn contract(&self, r: &[usize]) -> Result<Self> {
        if r.len() > self.grade {
            return Err(EpwError::WrongGrade {
                expected: self.grade,
                found: r.len(),
            });
        }
        let f = &self.field;
        let rm = r.iter().fold(0u8, |m, &i| m | (1 << i));
        let mut out = Self::zero(f, self.grade - r.len());
        let t = tables();
        for (i, &s) in t.subsets[self.grade].iter().enumerate() {
            if s & rm != rm || f.is_zero(&self.coords[i]) {
                continue;
            }
            let rest = s & !rm;
            let neg = wedge_sign(rm, rest).expect("disjoint");
            let j = t.index[rest as usize];
            let c = if neg { f.neg(&self.coords[i]) } else { self.coords[i].clone() };
            out.coords[j] = f.add(&out.coords[j], &c);
        }
        Ok(out)
    }
}

pub fn wedge<F: Field>(a: &KVector<F>, b: &KVector<F>) -> Result<KVector<F>> {
    if a.field != b.field {
        return Err(EpwError::FieldMismatch);
    }
    let g = a.grade + b.grade;
    if g > N {
        return Err(EpwError::GradeOverflow(g));
    }
    let f = &a.field;
    let t = tables();
    let mut out = KVector::zero(f, g);
    for (i, &s) in t.subsets[a.grade].iter().enumerate() {
        if f.is_zero(&a.coords[i]) {
            continue;
        }
        for (j, &u) in t.subsets[b.grade].iter().enumerate() {
            if f.is_zero(&b.coords[j]) {
                continue;
            }
            let Some(neg) = wedge_sign(s, u) else { continue };
            let k = t.index[(s | u) as usize];
            let prod = f.mul(&a.coords[i], &b.coords[j]);
            out.coords[k] = if neg { f.sub(&out.coords[k], &prod) } else { f.add(&out.coords[k], &prod) };
        }
    }
    Ok(out)
}

/// Wedge of a list of vectors of V.
pub fn wedge_vectors<F: Field>(field: &F, vs: &[Vec<F::Elem>]) -> Result<KVector<F>> {
    let mut acc = KVector::from_coords(field, 0, vec![field.one()])?;
    for v in vs {
        acc = wedge(&acc, &KVector::vector(field, v)?)?;
    }
    Ok(acc)
}

/// Coefficient of `e_{012345}`.
pub fn vol<F: Field>(a: &KVector<F>) -> Result<F::Elem> {
    if a.grade != N {
        return Err(EpwError::WrongGrade { expected: N, found: a.grade });
    }
    Ok(a.coords[0].clone())
}

/// The symplectic form `vol(a ∧ b)` on ∧³V.
pub fn symp<F: Field>(a: &KVector<F>, b: &KVector<F>) -> Result<F::Elem> {
    if a.grade != 3 || b.grade != 3 {
        return Err(EpwError::WrongGrade {
            expected: 3,
            found: if a.grade != 3 { a.grade } else { b.grade },
        });
    }
    Ok(symp_coords(&a.field, &a.coords, &b.coords))
}

/// `symp` on raw trivector coordinates: `sum_S a_S b_{S^c} sign(S, S^c)`.
pub fn symp_coords<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let t = tables();
    let mut acc = f.zero();
    for (i, &s) in t.subsets[3].iter().enumerate() {
        if f.is_zero(&a[i]) {
            continue;
        }
        let c = 63 & !s;
        let j = t.index[c as usize];
        if f.is_zero(&b[j]) {
            continue;
        }
        let prod = f.mul(&a[i], &b[j]);
        acc = if wedge_sign(s, c).expect("disjoint") { f.sub(&acc, &prod) } else { f.add(&acc, &prod) };
    }
    acc
}

/// Coordinates of the linear form `x -> symp(a, x)`; equals the coordinates
/// of `delta_v(a)` in the dual wedge basis.
pub fn symp_row<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let t = tables();
    let mut out = vec![f.zero(); 20];
    for (i, &s) in t.subsets[3].iter().enumerate() {
        if f.is_zero(&a[i]) {
            continue;
        }
        let c = 63 & !s;
        let j = t.index[c as usize];
        out[j] = if wedge_sign(s, c).expect("disjoint") { f.neg(&a[i]) } else { a[i].clone() };
    }
    out
}

/// The duality ∧³V → ∧³V∨, `a -> (b -> symp(a, b))`, in the dual wedge basis
/// `X_S` (with `X_S(e_T) = δ_{ST}` and dual volume `vol(X_012345) = 1`).
pub fn delta_v<F: Field>(a: &KVector<F>) -> Result<KVector<F>> {
    if a.grade != 3 {
        return Err(EpwError::WrongGrade { expected: 3, found: a.grade });
    }
    KVector::from_coords(&a.field, 3, symp_row(&a.field, &a.coords))
}

/// Image of a subspace of ∧³V under `delta_v`.
pub fn delta_subspace<F: Field>(s: &Subspace<F>) -> Result<Subspace<F>> {
    let f = s.field();
    let rows: Vec<Vec<F::Elem>> = s.basis_vecs().iter().map(|r| symp_row(f, r)).collect();
    Subspace::span(f, 20, &rows)
}

/// The smallest U ⊂ V with `a ∈ ∧^k U`: the span of all contractions of `a`
/// by (k−1)-fold wedges of dual basis covectors.
pub fn support<F: Field>(a: &KVector<F>) -> Result<Subspace<F>> {
    if a.is_zero() {
        return Err(EpwError::ZeroInput("support of zero"));
    }
    let f = &a.field;
    if a.grade == 0 {
        return Ok(Subspace::zero(f, N));
    }
    let mut vecs = Vec::new();
    for r in combinations(N, a.grade - 1) {
        let c = a.contract(&r)?;
        if !c.is_zero() {
            vecs.push(c.coords);
        }
    }
    Subspace::span(f, N, &vecs)
}

/// True iff the trivector is a pure wedge of three vectors.
pub fn is_decomposable<F: Field>(a: &KVector<F>) -> Result<bool> {
    if a.grade != 3 {
        return Err(EpwError::WrongGrade { expected: 3, found: a.grade });
    }
    Ok(support(a)?.dim() == 3)
}

/// The Plücker quadric `q_v(α) = vol(v0 ∧ v ∧ α ∧ α)` for α ∈ ∧²V0.
pub fn plucker_q<F: Field>(v0: &[F::Elem], v0_complement: &Subspace<F>, v: &[F::Elem], alpha: &KVector<F>) -> Result<F::Elem> {
    let f = v0_complement.field();
    if v0_complement.dim() != N - 1 || v0_complement.contains(v0)? {
        return Err(EpwError::Precondition("V0 must be a hyperplane complementary to v0".into()));
    }
    if !v0_complement.contains(v)? {
        return Err(EpwError::NotInSubspace("v must lie in V0"));
    }
    if alpha.grade != 2 {
        return Err(EpwError::WrongGrade { expected: 2, found: alpha.grade });
    }
    if !wedge_power(v0_complement, 2)?.contains(&alpha.coords)? {
        return Err(EpwError::NotInSubspace("α must lie in ∧²V0"));
    }
    let w = wedge(&wedge_vectors(f, &[v0.to_vec(), v.to_vec()])?, &wedge(alpha, alpha)?)?;
    vol(&w)
}

/// ∧^k U as a subspace of ∧^k V.
pub fn wedge_power<F: Field>(u: &Subspace<F>, k: usize) -> Result<Subspace<F>> {
    wedge_subspace(&[(u.clone(), k)])
}

/// The wedge subspace `(∧^{i_1} U_1) ∧ ... ∧ (∧^{i_l} U_l)`: span of all
/// wedges of basis elements.
pub fn wedge_subspace<F: Field>(parts: &[(Subspace<F>, usize)]) -> Result<Subspace<F>> {
    let f = parts.first().map(|(u, _)| u.field().clone()).ok_or(EpwError::ZeroInput("no factors"))?;
    let total: usize = parts.iter().map(|(_, k)| k).sum();
    if total > N {
        return Err(EpwError::GradeOverflow(total));
    }
    let mut acc: Vec<KVector<F>> = vec![KVector::from_coords(&f, 0, vec![f.one()])?];
    for (u, k) in parts {
        let basis = u.basis_vecs();
        let mut pieces = Vec::new();
        for c in combinations(basis.len(), *k) {
            let vs: Vec<Vec<F::Elem>> = c.iter().map(|&i| basis[i].clone()).collect();
            pieces.push(wedge_vectors(&f, &vs)?);
        }
        let mut next = Vec::new();
        for a in &acc {
            for p in &pieces {
                let w = wedge(a, p)?;
                if !w.is_zero() {
                    next.push(w);
                }
            }
        }
        // keep a basis to stop the products from blowing up
        let span = Subspace::span(
            &f,
            grade_dim(next.first().map_or(0, |w| w.grade)),
            &next.iter().map(|w| w.coords.clone()).collect::<Vec<_>>(),
        )?;
        let g = next.first().map_or(0, |w| w.grade);
        acc = span
            .basis_vecs()
            .into_iter()
            .map(|c| KVector {
                field: f.clone(),
                grade: g,
                coords: c,
            })
            .collect();
        if acc.is_empty() {
            return Ok(Subspace::zero(&f, grade_dim(total)));
        }
    }
    Subspace::span(&f, grade_dim(total), &acc.into_iter().map(|w| w.coords).collect::<Vec<_>>())
}

/// Matrix of `∧^k g` on grade-k coordinates (acting on columns): entry
/// `(S, T)` is the minor of `g` with rows S and columns T.
pub fn wedge_power_matrix<F: Field>(g: &Mat<F>, k: usize) -> Result<Mat<F>> {
    if g.rows() != N || g.cols() != N {
        return Err(EpwError::DimensionMismatch { expected: N, found: g.rows() });
    }
    let f = g.field();
    let sets: Vec<Vec<usize>> = (0..grade_dim(k)).map(|i| basis_indices(k, i)).collect();
    let mut m = Mat::zeros(f, sets.len(), sets.len());
    for (i, s) in sets.iter().enumerate() {
        for (j, t) in sets.iter().enumerate() {
            m.set(i, j, g.select(s, t).det()?);
        }
    }
    Ok(m)
}

/// Coordinates of the trivector `∧³W` for a 3-dimensional W.
pub fn plucker_of<F: Field>(w: &Subspace<F>) -> Result<Vec<F::Elem>> {
    if w.dim() != 3 || w.ambient() != N {
        return Err(EpwError::DimensionMismatch { expected: 3, found: w.dim() });
    }
    Ok(wedge_vectors(w.field(), &w.basis_vecs())?.coords)
}

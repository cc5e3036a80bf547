//! Morin's families of pairwise incident planes, the twelve curve Types of
//! one-dimensional `Θ_A`, the construction of A with prescribed `Θ_A`, the
//! flag conditions, and the differential checks along `Σ̃`.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::epw::projective_points;
use crate::error::{EpwError, Result};
use crate::exterior::{basis_indices, combinations, index_of, is_decomposable, plucker_of, support, wedge_subspace, KVector, N};
use crate::field::{Field, PrimeField, Rationals};
use crate::grassmann::{grassmannian_fp, plane_in, wedge_span};
use crate::lagrangian::{extend_isotropic, is_isotropic, random_vector, rng, IsotropicSubspace, LagrangianSubspace, S_of, T_of, D3};
use crate::matrix::Mat;
use crate::menagerie::{h_map, i_minus, i_plus, k_map, sym_product, wedge2_u, WEDGE2_PAIRS};
use crate::poly::UniPoly;
use crate::report::Report;
use crate::subspace::{unit, Subspace};

// ---------------------------------------------------------------------------
// Plane families

/// One of Morin's maximal families of pairwise incident planes, with its
/// defining datum. Identifications are 6x6 matrices whose columns are the
/// images in V of the basis of `∧²U₄` (for the quadric rulings) or of `Sym²L`
/// (for the Veronese families).
#[derive(Clone, Debug)]
pub enum PlaneFamily<F: Field> {
    /// `J_{v₀}`: planes through a point.
    PointStar(Vec<F::Elem>),
    /// `Gr(3, E)` for a hyperplane E.
    Hyperplane(Subspace<F>),
    /// `I_U`: planes meeting a fixed plane U in at least a line.
    MeetingPlane(Subspace<F>),
    /// `F₊(Q)`: one ruling of a smooth quadric, the planes `i₊(u)`.
    QuadricPlus(Mat<F>),
    /// `F₋(Q)`: the other ruling, the planes `i₋(φ)`.
    QuadricMinus(Mat<F>),
    /// `C(𝒱)`: the planes `h(φ)` of conics on the Veronese surface.
    Conics(Mat<F>),
    /// `T(𝒱)`: the planes `k(l)` tangent to the Veronese surface.
    Tangents(Mat<F>),
}

impl<F: Field> PlaneFamily<F> {
    pub fn kind(&self) -> &'static str {
        match self {
            PlaneFamily::PointStar(_) => "J_v0",
            PlaneFamily::Hyperplane(_) => "Gr3E",
            PlaneFamily::MeetingPlane(_) => "I_U",
            PlaneFamily::QuadricPlus(_) => "F_plus_Q",
            PlaneFamily::QuadricMinus(_) => "F_minus_Q",
            PlaneFamily::Conics(_) => "C_V",
            PlaneFamily::Tangents(_) => "T_V",
        }
    }

    /// Check the datum: nonzero point, 5-dimensional E, 3-dimensional U, or
    /// invertible identification.
    pub fn validate(&self, f: &F) -> Result<()> {
        let bad = |m: &str| Err(EpwError::InvalidDatum(m.into()));
        match self {
            PlaneFamily::PointStar(v) => {
                if v.len() != N || v.iter().all(|x| f.is_zero(x)) {
                    return bad("v₀ must be a nonzero vector of V");
                }
            }
            PlaneFamily::Hyperplane(e) => {
                if e.ambient() != N || e.dim() != 5 {
                    return bad("E must be a hyperplane of V");
                }
            }
            PlaneFamily::MeetingPlane(u) => {
                if u.ambient() != N || u.dim() != 3 {
                    return bad("U must be a plane of P(V)");
                }
            }
            PlaneFamily::QuadricPlus(g) | PlaneFamily::QuadricMinus(g) | PlaneFamily::Conics(g) | PlaneFamily::Tangents(g) => {
                if g.rows() != N || g.cols() != N || g.rank() != N {
                    return bad("identification must be an invertible 6x6 matrix");
                }
            }
        }
        Ok(())
    }

    /// Membership of a plane W (a 3-dimensional subspace of V).
    pub fn contains(&self, f: &F, w: &Subspace<F>) -> Result<bool> {
        self.validate(f)?;
        if w.ambient() != N || w.dim() != 3 {
            return Err(EpwError::DimensionMismatch { expected: 3, found: w.dim() });
        }
        match self {
            PlaneFamily::PointStar(v) => w.contains(v),
            PlaneFamily::Hyperplane(e) => e.contains_subspace(w),
            PlaneFamily::MeetingPlane(u) => Ok(u.intersect(w)?.dim() >= 2),
            PlaneFamily::QuadricPlus(g) => {
                let w = pull_back(g, w)?;
                in_quadric_plus(f, &w)
            }
            PlaneFamily::QuadricMinus(g) => {
                let w = pull_back(g, w)?;
                in_quadric_minus(f, &w)
            }
            PlaneFamily::Conics(g) => {
                let w = pull_back(g, w)?;
                in_conics(f, &w)
            }
            PlaneFamily::Tangents(g) => {
                let w = pull_back(g, w)?;
                in_tangents(f, &w)
            }
        }
    }

    /// n random members of the family.
    pub fn sample(&self, f: &F, seed: u64, n: usize) -> Result<Vec<Subspace<F>>> {
        self.validate(f)?;
        let mut r = rng(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let w = match self {
                PlaneFamily::PointStar(v) => {
                    let vecs = vec![v.clone(), random_vector(f, N, &mut r, 3), random_vector(f, N, &mut r, 3)];
                    Subspace::span(f, N, &vecs)?
                }
                PlaneFamily::Hyperplane(e) => {
                    let vecs: Vec<_> = (0..3).map(|_| random_combination(f, e, &mut r)).collect();
                    Subspace::span(f, N, &vecs)?
                }
                PlaneFamily::MeetingPlane(u) => {
                    let vecs = vec![random_combination(f, u, &mut r), random_combination(f, u, &mut r), random_vector(f, N, &mut r, 3)];
                    Subspace::span(f, N, &vecs)?
                }
                PlaneFamily::QuadricPlus(g) => push_forward(g, &nonzero_or_skip(f, 4, &mut r, |u| i_plus(f, u))?)?,
                PlaneFamily::QuadricMinus(g) => push_forward(g, &nonzero_or_skip(f, 4, &mut r, |p| i_minus(f, p))?)?,
                PlaneFamily::Conics(g) => push_forward(g, &nonzero_or_skip(f, 3, &mut r, |p| h_map(f, p))?)?,
                PlaneFamily::Tangents(g) => push_forward(g, &nonzero_or_skip(f, 3, &mut r, |l| k_map(f, l))?)?,
            };
            if w.dim() == 3 {
                out.push(w);
            }
        }
        Ok(out)
    }
}

fn random_combination<F: Field>(f: &F, s: &Subspace<F>, r: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let c = random_vector(f, s.dim(), r, 3);
    crate::subspace::combine(f, s.basis(), &c)
}

fn nonzero_or_skip<F: Field>(f: &F, n: usize, r: &mut ChaCha8Rng, map: impl Fn(&[F::Elem]) -> Result<Subspace<F>>) -> Result<Subspace<F>> {
    loop {
        let x = random_vector(f, n, r, 3);
        if x.iter().any(|c| !f.is_zero(c)) {
            return map(&x);
        }
    }
}

/// `g⁻¹ W`: coordinates of W with respect to the identification.
fn pull_back<F: Field>(g: &Mat<F>, w: &Subspace<F>) -> Result<Subspace<F>> {
    let inv = g.inverse()?.ok_or_else(|| EpwError::InvalidDatum("identification is singular".into()))?;
    w.image(&inv)
}

fn push_forward<F: Field>(g: &Mat<F>, w: &Subspace<F>) -> Result<Subspace<F>> {
    w.image(g)
}

/// Solutions x of a linear system `cond(x) = 0`, where `cond` is linear in x.
fn linear_solutions<F: Field>(f: &F, n: usize, cond: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Result<Subspace<F>> {
    let cols: Vec<Vec<F::Elem>> = (0..n).map(|i| cond(&unit(f, n, i))).collect();
    let m = cols.first().map_or(0, |c| c.len());
    if m == 0 {
        return Ok(Subspace::full(f, n));
    }
    Ok(Subspace::kernel(&Mat::from_fn(f, m, n, |r, c| cols[c][r].clone())))
}

fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

/// Values of the linear forms of `ann` on each vector.
fn against<F: Field>(f: &F, ann: &Subspace<F>, vs: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let forms = ann.basis_vecs();
    vs.iter().flat_map(|v| forms.iter().map(|a| dot(f, a, v)).collect::<Vec<_>>()).collect()
}

/// Contraction `ι_φ ω ∈ U₄` of a bivector in the lex coordinates of `∧²U₄`.
fn contract2<F: Field>(f: &F, phi: &[F::Elem], omega: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); 4];
    for (k, &(i, j)) in WEDGE2_PAIRS.iter().enumerate() {
        out[j] = f.add(&out[j], &f.mul(&phi[i], &omega[k]));
        out[i] = f.sub(&out[i], &f.mul(&phi[j], &omega[k]));
    }
    out
}

/// `2 M_q φ` for q in the `Sym²L` coordinates.
fn sym_apply<F: Field>(f: &F, q: &[F::Elem], phi: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); 3];
    for (k, &(i, j)) in crate::menagerie::SYM2_PAIRS.iter().enumerate() {
        if i == j {
            out[i] = f.add(&out[i], &f.mul(&f.from_i64(2), &f.mul(&q[k], &phi[i])));
        } else {
            out[i] = f.add(&out[i], &f.mul(&q[k], &phi[j]));
            out[j] = f.add(&out[j], &f.mul(&q[k], &phi[i]));
        }
    }
    out
}

/// Find x with `map(x) = w` among the solutions of the linear conditions.
fn match_parameter<F: Field>(w: &Subspace<F>, candidates: &Subspace<F>, map: impl Fn(&[F::Elem]) -> Result<Subspace<F>>) -> Result<bool> {
    for x in candidates.basis_vecs() {
        if map(&x)? == *w {
            return Ok(true);
        }
    }
    Ok(false)
}

fn in_quadric_plus<F: Field>(f: &F, w: &Subspace<F>) -> Result<bool> {
    let ann = w.annihilator();
    let sol = linear_solutions(f, 4, |u| {
        let imgs: Vec<Vec<F::Elem>> = (0..4).map(|j| wedge2_u(f, u, &unit(f, 4, j))).collect();
        against(f, &ann, &imgs)
    })?;
    match_parameter(w, &sol, |u| i_plus(f, u))
}

fn in_quadric_minus<F: Field>(f: &F, w: &Subspace<F>) -> Result<bool> {
    let b = w.basis_vecs();
    let sol = linear_solutions(f, 4, |phi| b.iter().flat_map(|om| contract2(f, phi, om)).collect())?;
    match_parameter(w, &sol, |phi| i_minus(f, phi))
}

fn in_conics<F: Field>(f: &F, w: &Subspace<F>) -> Result<bool> {
    let b = w.basis_vecs();
    let sol = linear_solutions(f, 3, |phi| b.iter().flat_map(|q| sym_apply(f, q, phi)).collect())?;
    match_parameter(w, &sol, |phi| h_map(f, phi))
}

fn in_tangents<F: Field>(f: &F, w: &Subspace<F>) -> Result<bool> {
    let ann = w.annihilator();
    let sol = linear_solutions(f, 3, |l| {
        let imgs: Vec<Vec<F::Elem>> = (0..3).map(|j| sym_product(f, l, &unit(f, 3, j))).collect();
        against(f, &ann, &imgs)
    })?;
    match_parameter(w, &sol, |l| k_map(f, l))
}

/// `I_U` is the cone with vertex `∧³U` over a Segre variety: `ρ_U(∧³W)` has
/// rank one for `W ∈ I_U∖{U}`, `ρ_U(∧³U) = 0`, the line through `∧³W` and
/// `∧³W_s` passes through `∧³U`, and a rank-two class is not `∧³` of a plane.
pub fn i_u_cone_check(u: &Subspace<Rationals>, seed: u64, trials: usize) -> Result<Report> {
    let f = Rationals;
    let fam = PlaneFamily::MeetingPlane(u.clone());
    fam.validate(&f)?;
    let t = T_of(u)?;
    let vertex = plucker_of(u)?;
    let mut report = Report::new("I_U cone");
    report.record("ρ_U(∧³U) = 0", t.rho(&vertex).map(|m| (m.is_zero(), "vertex")));
    let mut r = rng(seed);
    let mut rank_ok = true;
    let mut line_ok = true;
    let mut count = 0;
    for w in fam.sample(&f, seed, trials)? {
        if w == *u {
            continue;
        }
        count += 1;
        rank_ok &= t.rho(&plucker_of(&w)?)?.rank() == 1;
        // W = P + <x> with P = W ∩ U; slide x along U
        let p = w.intersect(u)?;
        let x = w.basis_vecs().into_iter().find(|v| !u.contains(v).unwrap_or(true)).expect("W ⊄ U");
        let y = u.basis_vecs().into_iter().find(|v| !p.contains(v).unwrap_or(true)).expect("P ≠ U");
        let s = f.from_i64(r.gen_range(1..=9));
        let xs: Vec<_> = x.iter().zip(&y).map(|(a, b)| f.add(a, &f.mul(&s, b))).collect();
        let mut ws = p.basis_vecs();
        ws.push(xs);
        let ws = Subspace::span(&f, N, &ws)?;
        let line = Subspace::span(&f, D3, &[plucker_of(&w)?, plucker_of(&ws)?])?;
        line_ok &= line.dim() == 2 && line.contains(&vertex)?;
    }
    report.push(format!("ρ_U(∧³W) has rank 1 on {count} planes of I_U∖{{U}}"), rank_ok, "");
    report.push("∧³U lies on the line through ∧³W and ∧³W_s", line_ok, "");
    // negative control: ρ_U-class of rank 2
    let ub = u.basis_vecs();
    let comp: Vec<Vec<_>> = u.complement_indices().into_iter().map(|i| unit(&f, N, i)).collect();
    let pairs = combinations(3, 2);
    let term =
        |a: usize, j: usize| -> Result<Vec<_>> { Ok(crate::exterior::wedge_vectors(&f, &[ub[pairs[a][0]].clone(), ub[pairs[a][1]].clone(), comp[j].clone()])?.into_coords()) };
    let alpha: Vec<_> = term(0, 0)?.iter().zip(&term(1, 1)?).map(|(a, b)| f.add(a, b)).collect();
    let rk = t.rho(&alpha)?.rank();
    let decomposable = is_decomposable(&KVector::from_coords(&f, 3, alpha)?)?;
    report.push("a rank-2 class is not ∧³ of a plane", rk == 2 && !decomposable, format!("rank {rk}"));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Curve Types

/// The Types of one-dimensional components of `Θ_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveType {
    F1,
    D,
    E2,
    E2dual,
    Q,
    A,
    Adual,
    C2,
    R,
    S,
    T,
    Tdual,
}

/// One row of the table of Types: projective span, degree and, where the
/// table lists it, the splitting type `{a_i}` with `ℰ ≅ ⊕O(−a_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeRow {
    pub span: usize,
    pub degree: usize,
    pub splitting: Option<[usize; 3]>,
}

impl CurveType {
    pub const ALL: [CurveType; 12] = [
        CurveType::F1,
        CurveType::D,
        CurveType::E2,
        CurveType::E2dual,
        CurveType::Q,
        CurveType::A,
        CurveType::Adual,
        CurveType::C2,
        CurveType::R,
        CurveType::S,
        CurveType::T,
        CurveType::Tdual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveType::F1 => "F1",
            CurveType::D => "D",
            CurveType::E2 => "E2",
            CurveType::E2dual => "E2dual",
            CurveType::Q => "Q",
            CurveType::A => "A",
            CurveType::Adual => "Adual",
            CurveType::C2 => "C2",
            CurveType::R => "R",
            CurveType::S => "S",
            CurveType::T => "T",
            CurveType::Tdual => "Tdual",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| EpwError::UnknownName(s.to_string()))
    }

    pub fn is_rational(self) -> bool {
        matches!(self, CurveType::F1 | CurveType::D | CurveType::E2 | CurveType::E2dual | CurveType::Q | CurveType::R)
    }

    pub fn row(self) -> TypeRow {
        let (span, degree, splitting) = match self {
            CurveType::F1 => (1, 1, Some([0, 0, 1])),
            CurveType::D => (2, 2, Some([0, 1, 1])),
            CurveType::E2 => (3, 3, Some([0, 1, 2])),
            CurveType::E2dual => (3, 3, Some([1, 1, 1])),
            CurveType::Q => (4, 4, Some([1, 1, 2])),
            CurveType::A | CurveType::Adual => (4, 5, None),
            CurveType::C2 => (5, 6, None),
            CurveType::R => (6, 6, None),
            CurveType::S => (7, 8, None),
            CurveType::T | CurveType::Tdual => (8, 9, None),
        };
        TypeRow { span, degree, splitting }
    }

    /// Expected `dim(L ∩ S_W)` for `L = ⟨∧³W : W ∈ Θ⟩` and W a general point
    /// of Θ: the point and its tangent line, except for Type C2, where L is
    /// also the span of the surface `i₊(P(H))` containing the curve and so
    /// meets `S_W` in the tangent plane of that surface.
    pub fn tangent_span_dim(self) -> usize {
        if self == CurveType::C2 {
            3
        } else {
            2
        }
    }

    /// Vector dimension of the span of `∧³W`, `W ∈ Θ`.
    pub fn span_vector_dim(self) -> usize {
        self.row().span + 1
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rational curve in `Gr(3, V)`: three generators with polynomial
/// coordinates in one parameter t.
#[derive(Clone, Debug)]
pub struct ParamCurve<F: Field> {
    field: F,
    gens: Vec<Vec<UniPoly<F>>>,
}

impl<F: Field> ParamCurve<F> {
    pub fn new(field: &F, gens: Vec<Vec<UniPoly<F>>>) -> Result<Self> {
        if gens.len() != 3 || gens.iter().any(|g| g.len() != N) {
            return Err(EpwError::DimensionMismatch { expected: 3, found: gens.len() });
        }
        let c = ParamCurve { field: field.clone(), gens };
        if c.plucker_raw().iter().all(|p| p.is_zero()) {
            return Err(EpwError::DegenerateGenerators);
        }
        Ok(c)
    }

    /// Generators given by integer coefficient lists, lowest degree first.
    pub fn from_int(field: &F, gens: &[[&[i64]; N]; 3]) -> Result<Self> {
        let g = gens
            .iter()
            .map(|w| w.iter().map(|c| UniPoly::new(field, c.iter().map(|&x| field.from_i64(x)).collect())).collect())
            .collect();
        Self::new(field, g)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn generators(&self) -> &[Vec<UniPoly<F>>] {
        &self.gens
    }

    /// The 20 coordinates of `w₁(t) ∧ w₂(t) ∧ w₃(t)`.
    pub fn plucker_raw(&self) -> Vec<UniPoly<F>> {
        let g = &self.gens;
        (0..D3)
            .map(|i| {
                let s = basis_indices(3, i);
                let m = |r: usize, c: usize| &g[r][s[c]];
                let minor = |a: usize, b: usize, c: usize, d: usize| m(a, c).mul(m(b, d)).sub(&m(a, d).mul(m(b, c)));
                m(0, 0).mul(&minor(1, 2, 1, 2)).sub(&m(0, 1).mul(&minor(1, 2, 0, 2))).add(&m(0, 2).mul(&minor(1, 2, 0, 1)))
            })
            .collect()
    }

    /// The Plücker coordinates with their common polynomial factor removed,
    /// so that they never vanish simultaneously at a finite t.
    pub fn plucker(&self) -> Vec<UniPoly<F>> {
        let raw = self.plucker_raw();
        let g = raw.iter().fold(UniPoly::zero(&self.field), |acc, p| acc.gcd(p));
        raw.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect()
    }

    /// The plane `W(t)`, read off from the cleared Plücker vector.
    pub fn plane_at(&self, t: &F::Elem) -> Result<Subspace<F>> {
        let coords: Vec<F::Elem> = self.plucker().iter().map(|p| p.eval(t)).collect();
        support(&KVector::from_coords(&self.field, 3, coords)?)
    }

    /// The plane at `t = ∞`: support of the top coefficient vector.
    pub fn plane_at_infinity(&self) -> Result<Subspace<F>> {
        let p = self.plucker();
        let d = p.iter().filter_map(|x| x.degree()).max().ok_or(EpwError::DegenerateGenerators)?;
        support(&KVector::from_coords(&self.field, 3, p.iter().map(|x| x.coeff(d)).collect())?)
    }

    /// The same curve in the parameter `1/t`.
    pub fn reversed(&self) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|w| {
                let d = w.iter().filter_map(|x| x.degree()).max().unwrap_or(0);
                w.iter().map(|x| x.reversed(d)).collect()
            })
            .collect();
        ParamCurve { field: self.field.clone(), gens }
    }

    /// Coordinates in the dual basis of the annihilators: the curve
    /// `W(t) ↦ Ann W(t)` in `Gr(3, V∨)`, through a minimal polynomial basis
    /// of the annihilator module.
    pub fn dual(&self) -> Result<Self> {
        let f = &self.field;
        let maxdeg = self.gens.iter().flatten().filter_map(|x| x.degree()).max().unwrap_or(0);
        let mut chosen: Vec<(usize, Vec<UniPoly<F>>)> = Vec::new();
        for m in 0..=2 * maxdeg + 2 {
            // unknowns: coefficient j of coordinate c, index j*6+c
            let n = N * (m + 1);
            let cols: Vec<Vec<F::Elem>> = (0..n)
                .map(|idx| {
                    let (j, c) = (idx / N, idx % N);
                    let mut out = Vec::new();
                    for w in &self.gens {
                        // coefficients of t^j * w_c(t)
                        let mut v = vec![f.zero(); m + maxdeg + 1];
                        for (k, a) in w[c].coeffs().iter().enumerate() {
                            v[j + k] = a.clone();
                        }
                        out.extend(v);
                    }
                    out
                })
                .collect();
            let rows = cols[0].len();
            let kernel = Subspace::kernel(&Mat::from_fn(f, rows, n, |r, c| cols[c][r].clone()));
            // multiples of the generators already chosen
            let mut span = Subspace::zero(f, n);
            for (d, g) in &chosen {
                for shift in 0..=(m - d) {
                    let mut v = vec![f.zero(); n];
                    for (c, x) in g.iter().enumerate() {
                        for (k, a) in x.coeffs().iter().enumerate() {
                            v[(k + shift) * N + c] = a.clone();
                        }
                    }
                    span = span.sum(&Subspace::span(f, n, &[v])?)?;
                }
            }
            for v in kernel.basis_vecs() {
                if chosen.len() == 3 {
                    break;
                }
                if !span.contains(&v)? {
                    span = span.sum(&Subspace::span(f, n, std::slice::from_ref(&v))?)?;
                    let g: Vec<UniPoly<F>> = (0..N).map(|c| UniPoly::new(f, (0..=m).map(|j| v[j * N + c].clone()).collect())).collect();
                    chosen.push((m, g));
                }
            }
            if chosen.len() == 3 {
                return ParamCurve::new(f, chosen.into_iter().map(|(_, g)| g).collect());
            }
        }
        Err(EpwError::DegenerateGenerators)
    }
}

/// Planes sampled over a prime field from a curve that has no convenient
/// rational parametrization.
#[derive(Clone, Debug)]
pub struct CurveSample {
    pub field: PrimeField,
    pub planes: Vec<Subspace<PrimeField>>,
}

/// Output of [`make_curve`].
#[derive(Clone, Debug)]
pub enum Curve {
    Param(ParamCurve<Rationals>),
    Sample(CurveSample),
}

impl Curve {
    pub fn as_param(&self) -> Option<&ParamCurve<Rationals>> {
        match self {
            Curve::Param(c) => Some(c),
            Curve::Sample(_) => None,
        }
    }
}

/// Explicit generators for the rational Types, over any field.
pub fn rational_curve<F: Field>(f: &F, tag: CurveType) -> Result<ParamCurve<F>> {
    let conic_or_cubic = |u: Vec<UniPoly<F>>| -> Result<ParamCurve<F>> {
        // i₊ of the curve u(t) ⊂ P(U₄): generators u ∧ e_j, j = 1, 2, 3
        let gens = (1..4)
            .map(|j| {
                WEDGE2_PAIRS
                    .iter()
                    .map(|&(a, b)| {
                        let ea = UniPoly::constant(f, if a == j { f.one() } else { f.zero() });
                        let eb = UniPoly::constant(f, if b == j { f.one() } else { f.zero() });
                        u[a].mul(&eb).sub(&u[b].mul(&ea))
                    })
                    .collect()
            })
            .collect();
        ParamCurve::new(f, gens)
    };
    let t_pow = |k: usize| UniPoly::monomial(f, f.one(), k);
    match tag {
        CurveType::F1 => ParamCurve::from_int(f, &[[&[1], &[], &[], &[], &[], &[]], [&[], &[1], &[], &[], &[], &[]], [&[], &[], &[1], &[0, 1], &[], &[]]]),
        CurveType::D => ParamCurve::from_int(
            f,
            &[[&[1], &[], &[], &[], &[], &[]], [&[], &[1], &[0, 1], &[], &[], &[]], [&[], &[], &[], &[1], &[0, 1], &[]]],
        ),
        CurveType::E2 => ParamCurve::from_int(
            f,
            &[
                [&[1], &[], &[], &[], &[], &[]],
                [&[], &[1], &[0, 1], &[], &[], &[]],
                [&[], &[], &[], &[1], &[0, 1], &[0, 0, 1]],
            ],
        ),
        CurveType::E2dual => rational_curve(f, CurveType::E2)?.dual(),
        CurveType::Q => conic_or_cubic(vec![t_pow(0), t_pow(1), t_pow(2), UniPoly::zero(f)]),
        CurveType::R => conic_or_cubic(vec![t_pow(0), t_pow(1), t_pow(2), t_pow(3)]),
        other => Err(EpwError::NonRationalType(other.name().into())),
    }
}

/// A representative curve of the given Type: explicit generators for the
/// rational Types, a point sample over a small prime field otherwise.
pub fn make_curve(tag: CurveType, seed: u64) -> Result<Curve> {
    if tag.is_rational() {
        rational_curve(&Rationals, tag).map(Curve::Param)
    } else {
        sample_curve(tag, seed).map(Curve::Sample)
    }
}

/// Degree of the curve in the Plücker embedding.
pub fn curve_degree<F: Field>(c: &ParamCurve<F>) -> Result<usize> {
    c.plucker().iter().filter_map(|p| p.degree()).max().ok_or(EpwError::DegenerateGenerators)
}

/// Sample until the span of `∧³W` has not grown for five consecutive
/// parameter values; returns the projective dimension.
pub fn span_dim(c: &Curve) -> Result<usize> {
    let d = match c {
        Curve::Param(p) => param_span(p)?.dim(),
        Curve::Sample(s) => wedge_span(&s.field, &s.planes)?.dim(),
    };
    Ok(d.saturating_sub(1))
}

/// Rational parameter values 0, 1, −1, 2, −2, 1/2, ...
fn parameter_values(f: &Rationals) -> impl Iterator<Item = crate::field::Q> + '_ {
    (0i64..).map(move |k| {
        let (a, b) = match k % 3 {
            0 => (k / 3, 1),
            1 => (-(k / 3) - 1, 1),
            _ => (1, k / 3 + 2),
        };
        f.div(&f.from_i64(a), &f.from_i64(b)).expect("nonzero")
    })
}

fn param_span(c: &ParamCurve<Rationals>) -> Result<Subspace<Rationals>> {
    let f = Rationals;
    let mut ts = parameter_values(&f);
    crate::grassmann::stable_wedge_span(&f, 5, 200, || ts.next().map(|t| c.plane_at(&t).expect("plane")))
}

/// `h⁰(ℰ(m))`: polynomial vectors s(t) of degree ≤ m with `s ∧ P ≡ 0`.
fn h0<F: Field>(f: &F, p: &[UniPoly<F>], m: usize) -> usize {
    let d = p.iter().filter_map(|x| x.degree()).max().unwrap_or(0);
    let n = N * (m + 1);
    // e_c ∧ e_S = sign · e_T
    let table: Vec<Vec<Option<(usize, bool)>>> = (0..N)
        .map(|c| {
            (0..D3)
                .map(|i| {
                    let s = basis_indices(3, i);
                    if s.contains(&c) {
                        return None;
                    }
                    let mut t = s.clone();
                    t.push(c);
                    t.sort_unstable();
                    let neg = s.iter().filter(|&&x| x < c).count() % 2 == 1;
                    Some((index_of(&t), neg))
                })
                .collect()
        })
        .collect();
    let rows = 15 * (m + d + 1);
    let mut mat = Mat::zeros(f, rows, n);
    for j in 0..=m {
        for c in 0..N {
            for (i, pi) in p.iter().enumerate() {
                if let Some((t, neg)) = table[c][i] {
                    for (k, a) in pi.coeffs().iter().enumerate() {
                        let r = t * (m + d + 1) + j + k;
                        let v = if neg { f.neg(a) } else { a.clone() };
                        let cur = mat.get(r, j * N + c).clone();
                        mat.set(r, j * N + c, f.add(&cur, &v));
                    }
                }
            }
        }
    }
    n - mat.rank()
}

fn ladder<F: Field>(c: &ParamCurve<F>) -> Result<Vec<usize>> {
    let f = c.field();
    let p = c.plucker();
    let d = curve_degree(c)?;
    let mut out = Vec::new();
    let mut prev_h = 0;
    let mut prev_n = 0;
    for m in 0..=d + 1 {
        let h = h0(f, &p, m);
        let n = h - prev_h;
        for _ in prev_n..n {
            out.push(m);
        }
        if n == 3 {
            return Ok(out);
        }
        prev_h = h;
        prev_n = n;
    }
    Err(EpwError::DegenerateGenerators)
}

/// Splitting type `{a₁ ≤ a₂ ≤ a₃}` of the tautological bundle, `ℰ ≅ ⊕O(−a_i)`.
pub fn splitting_type<F: Field>(c: &ParamCurve<F>) -> Result<[usize; 3]> {
    let a = ladder(c)?;
    let b = ladder(&c.reversed())?;
    if a != b {
        return Err(EpwError::BaseLocusArtifact);
    }
    let out = [a[0], a[1], a[2]];
    if out.iter().sum::<usize>() != curve_degree(c)? {
        return Err(EpwError::IdentityFailure("splitting type does not add up to the degree".into()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Point samples over prime fields

/// Primes tried in turn for the sampled Types.
pub const SAMPLE_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];
const SAMPLE_ATTEMPTS: u64 = 200;

fn random_fp(fp: &PrimeField, r: &mut ChaCha8Rng) -> u64 {
    r.gen_range(0..fp.p())
}

/// Random form of the given degree in n variables, as (exponent, coefficient).
fn random_form(fp: &PrimeField, n: usize, deg: u32, r: &mut ChaCha8Rng) -> Vec<(Vec<u32>, u64)> {
    crate::poly::lattice_points(n - 1, deg)
        .into_iter()
        .map(|e| {
            let mut full = e.clone();
            full.push(deg - e.iter().sum::<u32>());
            (full, random_fp(fp, r))
        })
        .collect()
}

fn eval_form(fp: &PrimeField, form: &[(Vec<u32>, u64)], x: &[u64]) -> u64 {
    form.iter().fold(0, |acc, (e, c)| {
        let mon = e.iter().zip(x).fold(1, |m, (&k, &xi)| fp.mul(&m, &(0..k).fold(1, |acc, _| fp.mul(&acc, &xi))));
        fp.add(&acc, &fp.mul(c, &mon))
    })
}

fn dedup_planes(planes: Vec<Subspace<PrimeField>>) -> Vec<Subspace<PrimeField>> {
    let mut seen = BTreeSet::new();
    planes.into_iter().filter(|w| seen.insert(crate::menagerie::plane_key(w))).collect()
}

/// Points of the Type-A curve `{e₀ ⊕ P : P ∈ Gr(2, ⟨e₁..e₅⟩) ∩ H₁..H₅}` for
/// random hyperplanes `H_i` of the Plücker space of `∧²⟨e₁..e₅⟩`.
fn type_a_planes(fp: &PrimeField, gr: &[(Vec<u64>, Subspace<PrimeField>)], r: &mut ChaCha8Rng) -> Vec<Subspace<PrimeField>> {
    let forms: Vec<Vec<u64>> = (0..5).map(|_| (0..10).map(|_| random_fp(fp, r)).collect()).collect();
    gr.iter()
        .filter(|(pl, _)| forms.iter().all(|h| h.iter().zip(pl).fold(0, |acc, (a, b)| fp.add(&acc, &fp.mul(a, b))) == 0))
        .map(|(_, p)| {
            let mut rows = vec![unit(fp, N, 0)];
            rows.extend(p.basis_vecs().into_iter().map(|v| {
                let mut w = vec![0];
                w.extend(v);
                w
            }));
            Subspace::span(fp, N, &rows).expect("plane")
        })
        .collect()
}

fn gr25(fp: &PrimeField) -> Vec<(Vec<u64>, Subspace<PrimeField>)> {
    grassmannian_fp(fp, 2, 5)
        .into_iter()
        .map(|p| {
            let b = p.basis_vecs();
            let pl = combinations(5, 2)
                .iter()
                .map(|s| fp.sub(&fp.mul(&b[0][s[0]], &b[1][s[1]]), &fp.mul(&b[0][s[1]], &b[1][s[0]])))
                .collect();
            (pl, p)
        })
        .collect()
}

fn annihilator_planes(planes: Vec<Subspace<PrimeField>>) -> Vec<Subspace<PrimeField>> {
    planes.iter().map(|w| w.annihilator()).collect()
}

/// Partial derivative of a form in variable i.
fn derivative(fp: &PrimeField, form: &[(Vec<u32>, u64)], i: usize) -> Vec<(Vec<u32>, u64)> {
    form.iter()
        .filter(|(e, _)| e[i] > 0)
        .map(|(e, c)| {
            let mut d = e.clone();
            d[i] -= 1;
            (d, fp.mul(c, &(e[i] as u64 % fp.p())))
        })
        .collect()
}

/// The Jacobian of the forms has full rank at every point.
fn smooth_at(fp: &PrimeField, n: usize, forms: &[Vec<(Vec<u32>, u64)>], pts: &[Vec<u64>]) -> bool {
    let grads: Vec<Vec<Vec<(Vec<u32>, u64)>>> = forms.iter().map(|g| (0..n).map(|i| derivative(fp, g, i)).collect()).collect();
    pts.iter().all(|x| {
        let rows: Vec<Vec<u64>> = grads.iter().map(|g| g.iter().map(|d| eval_form(fp, d, x)).collect()).collect();
        Mat::from_rows(fp, n, rows).expect("rectangular").rank() == forms.len()
    })
}

/// A plane cubic with no line component defined over `F_p`.
fn no_rational_line(fp: &PrimeField, pts: &[Vec<u64>]) -> bool {
    let on: BTreeSet<Vec<u64>> = pts.iter().cloned().collect();
    projective_points(fp, 3).into_iter().all(|line| {
        let l = Subspace::kernel(&Mat::from_rows(fp, 3, vec![line]).expect("row"));
        !crate::grassmann::projective_points_of(&l).iter().all(|x| on.contains(x))
    })
}

/// Zeros in `P^{n-1}(F_p)` of a list of forms.
fn zeros_of(fp: &PrimeField, n: usize, forms: &[Vec<(Vec<u32>, u64)>]) -> Vec<Vec<u64>> {
    projective_points(fp, n).into_iter().filter(|x| forms.iter().all(|g| eval_form(fp, g, x) == 0)).collect()
}

/// Points of a plane cubic that is smooth at its `F_p`-points and has no
/// rational line component; empty otherwise.
fn smooth_cubic_points(fp: &PrimeField, cubic: Vec<(Vec<u32>, u64)>) -> Vec<Vec<u64>> {
    let forms = [cubic];
    let pts = zeros_of(fp, 3, &forms);
    if smooth_at(fp, 3, &forms, &pts) && no_rational_line(fp, &pts) {
        pts
    } else {
        Vec::new()
    }
}

fn sample_planes(tag: CurveType, fp: &PrimeField, r: &mut ChaCha8Rng, gr: &mut Option<Vec<(Vec<u64>, Subspace<PrimeField>)>>) -> Result<Vec<Subspace<PrimeField>>> {
    let planes = match tag {
        CurveType::A | CurveType::Adual => {
            let g = gr.get_or_insert_with(|| gr25(fp));
            let a = type_a_planes(fp, g, r);
            if tag == CurveType::A {
                a
            } else {
                annihilator_planes(a)
            }
        }
        CurveType::C2 => {
            // plane cubic in P(H), H = <u₀,u₁,u₂> ⊂ U₄
            let cubic = random_form(fp, 3, 3, r);
            smooth_cubic_points(fp, cubic)
                .into_iter()
                .map(|x| i_plus(fp, &[x[0], x[1], x[2], 0]))
                .collect::<Result<_>>()?
        }
        CurveType::S => {
            let qs = [random_form(fp, 4, 2, r), random_form(fp, 4, 2, r)];
            let pts = zeros_of(fp, 4, &qs);
            if !smooth_at(fp, 4, &qs, &pts) {
                return Ok(Vec::new());
            }
            pts.into_iter().map(|x| i_plus(fp, &x)).collect::<Result<_>>()?
        }
        CurveType::T | CurveType::Tdual => {
            let cubic = random_form(fp, 3, 3, r);
            let pts = smooth_cubic_points(fp, cubic);
            if tag == CurveType::T {
                pts.iter().map(|x| k_map(fp, x)).collect::<Result<_>>()?
            } else {
                pts.iter().map(|x| h_map(fp, x)).collect::<Result<_>>()?
            }
        }
        other => return Err(EpwError::Precondition(format!("{other} is sampled through its parametrization"))),
    };
    Ok(dedup_planes(planes))
}

/// A point sample of a non-rational Type over the smallest prime in
/// [`SAMPLE_PRIMES`] that yields at least two points beyond the span.
pub fn sample_curve(tag: CurveType, seed: u64) -> Result<CurveSample> {
    let target = tag.span_vector_dim();
    for &p in &SAMPLE_PRIMES {
        let fp = PrimeField::new(p)?;
        if matches!(tag, CurveType::A | CurveType::Adual) && p > 7 {
            break;
        }
        let mut gr = None;
        let mut r = rng(seed.wrapping_mul(7919).wrapping_add(p));
        for _ in 0..SAMPLE_ATTEMPTS {
            let planes = sample_planes(tag, &fp, &mut r, &mut gr)?;
            if planes.len() >= target + 2 && wedge_span(&fp, &planes)?.dim() == target {
                return Ok(CurveSample { field: fp, planes });
            }
        }
    }
    Err(EpwError::RetriesExhausted(format!("no usable sample of Type {tag}")))
}

// ---------------------------------------------------------------------------
// Lagrangians with prescribed Θ

/// Transversality data at one plane W of the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalityPoint {
    /// `dim(L ∩ S_W)`.
    pub l_cap: usize,
    /// `dim(A ∩ S_W)`.
    pub a_cap: usize,
    /// `A ∩ S_W = L ∩ S_W`.
    pub equal: bool,
}

/// What the construction of A from a curve verified.
#[derive(Clone, Debug, Serialize)]
pub struct GenlagReport {
    pub tag: CurveType,
    pub field: String,
    pub span_dim: usize,
    pub expected_span_dim: usize,
    pub lagrangian: bool,
    pub fresh_checked: usize,
    pub fresh_contained: usize,
    pub transversality: Vec<TransversalityPoint>,
    /// Expected `dim(L ∩ S_W)` at a point of the curve.
    pub expected_l_cap: usize,
    /// Number of random extensions tried.
    pub attempts: usize,
}

impl GenlagReport {
    pub fn passed(&self) -> bool {
        self.span_dim == self.expected_span_dim
            && self.lagrangian
            && self.fresh_checked > 0
            && self.fresh_contained == self.fresh_checked
            && !self.transversality.is_empty()
            && self.transversality.iter().all(|t| t.equal && t.l_cap == self.expected_l_cap)
    }
}

impl fmt::Display for GenlagReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let caps: Vec<String> = self.transversality.iter().map(|t| format!("{}/{}", t.l_cap, t.a_cap)).collect();
        write!(
            f,
            "Type {} over {}: span {} (expected {}), Lagrangian {}, fresh planes in A {}/{}, dim L∩S_W / A∩S_W: {} ({} attempt{})",
            self.tag,
            self.field,
            self.span_dim,
            self.expected_span_dim,
            self.lagrangian,
            self.fresh_contained,
            self.fresh_checked,
            caps.join(" "),
            self.attempts,
            if self.attempts == 1 { "" } else { "s" }
        )
    }
}

/// A Lagrangian over ℚ or over a prime field.
#[derive(Clone, Debug)]
pub enum AnyLagrangian {
    Rational(LagrangianSubspace<Rationals>),
    Modular(LagrangianSubspace<PrimeField>),
}

const GENLAG_RETRIES: u64 = 32;

fn field_name<F: Field>(f: &F) -> String {
    match f.characteristic() {
        0 => "Q".into(),
        p => format!("F_{p}"),
    }
}

/// Extend `L = ⟨∧³W⟩` to a Lagrangian A and certify the result.
pub fn genlag_from_span<F: Field>(tag: CurveType, l: &Subspace<F>, fresh: &[Subspace<F>], probes: &[Subspace<F>], seed: u64) -> Result<(LagrangianSubspace<F>, GenlagReport)> {
    let f = l.field();
    let expected = tag.span_vector_dim();
    if l.dim() != expected {
        return Err(EpwError::SpanMismatch { expected, found: l.dim() });
    }
    let iso = IsotropicSubspace::new(l.clone())?;
    let s_ws: Vec<(Subspace<F>, Subspace<F>)> = probes
        .iter()
        .map(|w| {
            let s = S_of(w)?;
            let ls = l.intersect(&s)?;
            Ok((s, ls))
        })
        .collect::<Result<_>>()?;
    let mut best = None;
    for attempt in 0..GENLAG_RETRIES {
        let a = extend_isotropic(&iso, seed.wrapping_add(attempt))?;
        let points: Vec<TransversalityPoint> = s_ws
            .iter()
            .map(|(s, ls)| {
                let as_ = a.subspace().intersect(s)?;
                Ok(TransversalityPoint {
                    l_cap: ls.dim(),
                    a_cap: as_.dim(),
                    equal: as_ == *ls,
                })
            })
            .collect::<Result<_>>()?;
        let good = points.iter().all(|t| t.equal);
        best = Some((a, points, attempt as usize + 1));
        if good {
            break;
        }
    }
    let (a, transversality, attempts) = best.expect("at least one attempt");
    let mut contained = 0;
    for w in fresh {
        if plane_in(&a, w)? {
            contained += 1;
        }
    }
    let report = GenlagReport {
        tag,
        field: field_name(f),
        span_dim: l.dim(),
        expected_span_dim: expected,
        lagrangian: crate::lagrangian::is_lagrangian(a.subspace())?,
        fresh_checked: fresh.len(),
        fresh_contained: contained,
        transversality,
        expected_l_cap: tag.tangent_span_dim(),
        attempts,
    };
    Ok((a, report))
}

/// Fresh rational parameter values, away from those used for the span.
fn fresh_values(f: &Rationals, n: usize) -> Vec<crate::field::Q> {
    (0..n as i64).map(|k| f.div(&f.from_i64(3 * k + 5), &f.from_i64(k + 13)).expect("nonzero")).collect()
}

fn probe_values(f: &Rationals) -> Vec<crate::field::Q> {
    [(2, 7), (-3, 5), (5, 3), (7, 2), (-11, 4)]
        .iter()
        .map(|&(a, b)| f.div(&f.from_i64(a), &f.from_i64(b)).expect("nonzero"))
        .collect()
}

/// Split a finite point sample: the shortest prefix reaching the target span
/// builds L, the remaining planes are fresh.
fn split_sample<F: Field>(f: &F, planes: &[Subspace<F>], target: usize) -> Result<(Subspace<F>, usize)> {
    let mut span = Subspace::zero(f, D3);
    for (i, w) in planes.iter().enumerate() {
        span = span.sum(&Subspace::span(f, D3, &[plucker_of(w)?])?)?;
        if span.dim() == target {
            return Ok((span, i + 1));
        }
    }
    Ok((span, planes.len()))
}

/// The construction of A with `Θ_A ⊇ Θ` for a finite sample of Θ.
pub fn genlag_from_sample<F: Field>(tag: CurveType, f: &F, planes: &[Subspace<F>], seed: u64) -> Result<(LagrangianSubspace<F>, GenlagReport)> {
    let (l, used) = split_sample(f, planes, tag.span_vector_dim())?;
    let probes = &planes[..planes.len().min(5)];
    genlag_from_span(tag, &l, &planes[used..], probes, seed)
}

/// All `F_p`-points of a rational curve, `t ∈ F_p` and `t = ∞`.
pub fn param_points_fp(c: &ParamCurve<PrimeField>) -> Result<Vec<Subspace<PrimeField>>> {
    let fp = *c.field();
    let mut out: Vec<Subspace<PrimeField>> = fp.elements().map(|t| c.plane_at(&t)).collect::<Result<_>>()?;
    out.push(c.plane_at_infinity()?);
    Ok(dedup_planes(out))
}

/// Build A with `Θ_A ⊇ Θ` for a curve of the given Type.
pub fn build_a_with_theta(tag: CurveType, curve: &Curve, seed: u64) -> Result<(AnyLagrangian, GenlagReport)> {
    match curve {
        Curve::Param(c) => {
            let f = Rationals;
            let l = param_span(c)?;
            let fresh: Vec<_> = fresh_values(&f, 20).iter().map(|t| c.plane_at(t)).collect::<Result<_>>()?;
            let probes: Vec<_> = probe_values(&f).iter().map(|t| c.plane_at(t)).collect::<Result<_>>()?;
            let (a, r) = genlag_from_span(tag, &l, &fresh, &probes, seed)?;
            Ok((AnyLagrangian::Rational(a), r))
        }
        Curve::Sample(s) => {
            let (a, r) = genlag_from_sample(tag, &s.field, &s.planes, seed)?;
            Ok((AnyLagrangian::Modular(a), r))
        }
    }
}

/// `(A ∩ S_W)/∧³W`, realized as the image of `A ∩ S_W` under
/// `ρ_W: S_W → T_W ≅ ∧²W ⊗ V/W` (coordinates: the nine matrix entries).
pub fn sigma_tilde_kernel<F: Field>(w: &Subspace<F>, a: &LagrangianSubspace<F>) -> Result<Subspace<F>> {
    if !plane_in(a, w)? {
        return Err(EpwError::Precondition("∧³W must lie in A".into()));
    }
    let f = a.field();
    let t = T_of(w)?;
    let cap = a.subspace().intersect(&t.s_u)?;
    let imgs: Vec<Vec<F::Elem>> = cap.basis_vecs().iter().map(|v| Ok(t.rho(v)?.data().to_vec())).collect::<Result<_>>()?;
    Subspace::span(f, 9, &imgs)
}

// ---------------------------------------------------------------------------
// Flag conditions

/// Names of the flag conditions: the `B_X` conditions of the first table
/// and the `X_X+` conditions of the second.
pub const FLAG_NAMES: [&str; 15] = [
    "B_A",
    "B_Adual",
    "B_C2",
    "B_D",
    "B_E2",
    "B_E2dual",
    "B_F1",
    "X_A+",
    "X_Adual+",
    "X_C1+",
    "X_C2+",
    "X_D+",
    "X_E2+",
    "X_E2dual+",
    "X_F1+",
];

/// `V_ij = ⟨v_i, ..., v_j⟩`.
fn flag_piece<F: Field>(f: &F, basis: &[Vec<F::Elem>], i: usize, j: usize) -> Result<Subspace<F>> {
    Subspace::span(f, N, &basis[i..=j])
}

/// The requirements `dim(A ∩ S) ≥ k` making up a flag condition, for the
/// flag given by the basis `v₀, ..., v₅`.
pub fn flag_requirements<F: Field>(f: &F, name: &str, basis: &[Vec<F::Elem>]) -> Result<Vec<(Subspace<F>, usize)>> {
    if basis.len() != N || basis.iter().any(|v| v.len() != N) {
        return Err(EpwError::DimensionMismatch { expected: N, found: basis.len() });
    }
    if Subspace::span(f, N, basis)?.dim() != N {
        return Err(EpwError::Precondition("flag vectors must form a basis".into()));
    }
    let v = |i, j| flag_piece(f, basis, i, j);
    let ws = |parts: &[(Subspace<F>, usize)]| wedge_subspace(parts);
    let plus = |a: Subspace<F>, b: Subspace<F>| a.sum(&b);
    // the subspaces appearing in the tables
    let sub_a = || ws(&[(v(0, 0)?, 1), (v(1, 5)?, 2)]);
    let sub_adual = || ws(&[(v(0, 4)?, 3)]);
    let sub_c2 = || plus(ws(&[(v(0, 2)?, 3)])?, ws(&[(v(0, 2)?, 2), (v(3, 5)?, 1)])?);
    let sub_d = || ws(&[(v(0, 0)?, 1), (v(1, 4)?, 2)]);
    let sub_e2 = || plus(ws(&[(v(0, 0)?, 1), (v(1, 2)?, 2)])?, ws(&[(v(0, 0)?, 1), (v(1, 2)?, 1), (v(3, 5)?, 1)])?);
    let sub_e2dual = || plus(ws(&[(v(0, 2)?, 3)])?, ws(&[(v(0, 2)?, 2), (v(3, 4)?, 1)])?);
    let sub_f1 = || ws(&[(v(0, 1)?, 2), (v(2, 3)?, 1)]);
    let all = |s: Subspace<F>| {
        let d = s.dim();
        (s, d)
    };
    Ok(match name {
        "B_A" => vec![(sub_a()?, 5)],
        "B_Adual" => vec![(sub_adual()?, 5)],
        "B_C2" => vec![(sub_c2()?, 6)],
        "B_D" => vec![(sub_d()?, 3)],
        "B_E2" => vec![(sub_e2()?, 4)],
        "B_E2dual" => vec![(sub_e2dual()?, 4)],
        "B_F1" => vec![all(sub_f1()?)],
        "X_A+" => vec![(sub_a()?, 6)],
        "X_Adual+" => vec![(sub_adual()?, 6)],
        "X_C1+" => vec![all(ws(&[(v(0, 2)?, 3)])?), (ws(&[(v(0, 2)?, 2), (v(3, 5)?, 1)])?, 4)],
        "X_C2+" => vec![(sub_c2()?, 7)],
        "X_D+" => vec![(sub_d()?, 4)],
        "X_E2+" => vec![(sub_e2()?, 5)],
        "X_E2dual+" => vec![(sub_e2dual()?, 5)],
        "X_F1+" => vec![all(sub_f1()?), (plus(ws(&[(v(0, 1)?, 2), (v(4, 5)?, 1)])?, ws(&[(v(0, 1)?, 1), (v(2, 3)?, 2)])?)?, 1)],
        other => return Err(EpwError::UnknownName(other.into())),
    })
}

/// Whether A satisfies the named flag condition for the flag of `basis`.
pub fn flag_predicate<F: Field>(name: &str, a: &LagrangianSubspace<F>, basis: &[Vec<F::Elem>]) -> Result<bool> {
    for (s, k) in flag_requirements(a.field(), name, basis)? {
        if a.subspace().intersect(&s)?.dim() < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A Lagrangian satisfying the named flag condition: a random subspace of
/// each required space of the required dimension, extended isotropically.
pub fn flag_witness(name: &str, basis: &[Vec<crate::field::Q>], seed: u64) -> Result<LagrangianSubspace<Rationals>> {
    let f = Rationals;
    let mut r = rng(seed);
    let mut l = Subspace::zero(&f, D3);
    for (s, k) in flag_requirements(&f, name, basis)? {
        let mut part = Subspace::zero(&f, D3);
        while part.dim() < k {
            part = part.sum(&Subspace::span(&f, D3, &[random_combination(&f, &s, &mut r)])?)?;
        }
        l = l.sum(&part)?;
    }
    extend_isotropic(&IsotropicSubspace::new(l)?, seed)
}

/// Basis adapted to the flag condition satisfied by the output of
/// [`build_a_with_theta`] for the curves of [`make_curve`].
pub fn adapted_basis<F: Field>(f: &F, tag: CurveType) -> Option<(&'static str, Vec<Vec<F::Elem>>)> {
    let perm: (&str, [usize; N]) = match tag {
        CurveType::F1 => ("B_F1", [0, 1, 2, 3, 4, 5]),
        CurveType::D => ("B_D", [0, 1, 2, 3, 4, 5]),
        CurveType::E2 => ("B_E2", [0, 1, 2, 3, 4, 5]),
        CurveType::E2dual => ("B_E2dual", [3, 4, 5, 1, 2, 0]),
        CurveType::A => ("B_A", [0, 1, 2, 3, 4, 5]),
        CurveType::Adual => ("B_Adual", [1, 2, 3, 4, 5, 0]),
        CurveType::C2 => ("B_C2", [0, 1, 3, 2, 4, 5]),
        _ => return None,
    };
    Some((perm.0, perm.1.iter().map(|&i| unit(f, N, i)).collect()))
}

// ---------------------------------------------------------------------------
// Codimensions

/// Codimension of `Σ[d]` (Lagrangians with `dim Θ_A ≥ d`... with d counting
/// the excess of `A ∩ S_W`): `(d² + d + 2)/2`.
pub fn sigma_codim(d: usize) -> usize {
    (d * d + d + 2) / 2
}

/// Codimension of `{A : dim(A ∩ S_W) ≥ d + 1}` at a fixed `∧³W ∈ A`,
/// inside the Lagrangians containing `∧³W`: `d(d+1)/2`.
pub fn fiber_codim(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Codimension of `B_X` in the Lagrangian Grassmannian, for the Types whose
/// value is tabulated; the dual Types share the value of their partner.
pub const BX_CODIM: [(CurveType, usize); 9] = [
    (CurveType::F1, 7),
    (CurveType::D, 9),
    (CurveType::E2, 11),
    (CurveType::Q, 9),
    (CurveType::A, 10),
    (CurveType::C2, 12),
    (CurveType::R, 17),
    (CurveType::S, 16),
    (CurveType::T, 18),
];

pub fn bx_codim(tag: CurveType) -> usize {
    let base = match tag {
        CurveType::E2dual => CurveType::E2,
        CurveType::Adual => CurveType::A,
        CurveType::Tdual => CurveType::T,
        t => t,
    };
    BX_CODIM.iter().find(|(t, _)| *t == base).map(|(_, c)| *c).expect("every Type is tabulated")
}

/// The closed forms and the table, with the identity
/// `(d²+d+2)/2 = 1 + d(d+1)/2` checked for `d ≤ 20`.
#[derive(Clone, Debug, Serialize)]
pub struct CodimTables {
    pub sigma: Vec<usize>,
    pub fiber: Vec<usize>,
    pub bx: Vec<(CurveType, usize)>,
    pub identity_holds: bool,
}

pub fn codim_tables() -> CodimTables {
    let sigma: Vec<usize> = (0..=20).map(sigma_codim).collect();
    let fiber: Vec<usize> = (0..=20).map(fiber_codim).collect();
    let identity_holds = (0..=20).all(|d| 2 * sigma_codim(d) == d * d + d + 2 && sigma_codim(d) == 1 + fiber_codim(d));
    CodimTables {
        sigma,
        fiber,
        bx: CurveType::ALL.iter().map(|&t| (t, bx_codim(t))).collect(),
        identity_holds,
    }
}

// ---------------------------------------------------------------------------
// Incidence and isotropy

/// Any two planes of the set meet in at least a point.
pub fn pairwise_incident<F: Field>(planes: &[Subspace<F>]) -> Result<bool> {
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            if planes[i].intersect(&planes[j])?.dim() == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The span of the `∧³W` is isotropic.
pub fn span_isotropic<F: Field>(f: &F, planes: &[Subspace<F>]) -> Result<bool> {
    is_isotropic(&wedge_span(f, planes)?)
}

/// Tally of the incidence/isotropy comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsotropyOutcome {
    pub sets: usize,
    pub incident: usize,
    pub exceptions: usize,
}

fn random_identification(f: &Rationals, r: &mut ChaCha8Rng) -> Mat<Rationals> {
    loop {
        let vals: Vec<i64> = (0..N * N).map(|_| r.gen_range(-2..=2)).collect();
        let m = Mat::from_fn(f, N, N, |i, j| f.from_i64(vals[i * N + j]));
        if m.rank() == N {
            return m;
        }
    }
}

fn random_plane<F: Field>(f: &F, r: &mut ChaCha8Rng) -> Result<Subspace<F>> {
    loop {
        let s = Subspace::span(f, N, &(0..3).map(|_| random_vector(f, N, r, 3)).collect::<Vec<_>>())?;
        if s.dim() == 3 {
            return Ok(s);
        }
    }
}

/// A random member of each kind of Morin family, with random datum.
pub fn random_family(kind: usize, r: &mut ChaCha8Rng) -> Result<PlaneFamily<Rationals>> {
    let f = Rationals;
    Ok(match kind % 7 {
        0 => PlaneFamily::PointStar(loop {
            let v = random_vector(&f, N, r, 3);
            if v.iter().any(|x| !f.is_zero(x)) {
                break v;
            }
        }),
        1 => PlaneFamily::Hyperplane(loop {
            let e = Subspace::kernel(&Mat::from_rows(&f, N, vec![random_vector(&f, N, r, 3)])?);
            if e.dim() == 5 {
                break e;
            }
        }),
        2 => PlaneFamily::MeetingPlane(random_plane(&f, r)?),
        3 => PlaneFamily::QuadricPlus(random_identification(&f, r)),
        4 => PlaneFamily::QuadricMinus(random_identification(&f, r)),
        5 => PlaneFamily::Conics(random_identification(&f, r)),
        _ => PlaneFamily::Tangents(random_identification(&f, r)),
    })
}

fn compare<F: Field>(f: &F, planes: &[Subspace<F>], out: &mut IsotropyOutcome) -> Result<()> {
    let inc = pairwise_incident(planes)?;
    let iso = span_isotropic(f, planes)?;
    out.sets += 1;
    out.incident += inc as usize;
    out.exceptions += (inc != iso) as usize;
    Ok(())
}

/// Compare pairwise incidence with isotropy of the span on `n` random finite
/// plane sets: members of Morin families, planes of the curves of each Type,
/// random planes, and family sets with one random intruder.
pub fn isotropy_equivalence(seed: u64, n: usize) -> Result<IsotropyOutcome> {
    let f = Rationals;
    let mut r = rng(seed);
    let samples: Vec<CurveSample> = CurveType::ALL.iter().filter(|t| !t.is_rational()).map(|&t| sample_curve(t, seed)).collect::<Result<_>>()?;
    let rational: Vec<ParamCurve<Rationals>> = CurveType::ALL.iter().filter(|t| t.is_rational()).map(|&t| rational_curve(&f, t)).collect::<Result<_>>()?;
    let mut out = IsotropyOutcome::default();
    for i in 0..n {
        let size = r.gen_range(2..=5);
        match i % 10 {
            k @ 0..=6 => {
                let fam = random_family(k, &mut r)?;
                compare(&f, &fam.sample(&f, r.gen(), size)?, &mut out)?;
            }
            7 => {
                let c = &rational[r.gen_range(0..rational.len())];
                let planes: Vec<_> = (0..size).map(|_| c.plane_at(&f.from_i64(r.gen_range(-20..=20)))).collect::<Result<_>>()?;
                compare(&f, &dedup_rational(planes), &mut out)?;
            }
            8 => {
                let s = &samples[r.gen_range(0..samples.len())];
                let planes: Vec<_> = (0..size).map(|_| s.planes[r.gen_range(0..s.planes.len())].clone()).collect();
                compare(&s.field, &dedup_planes(planes), &mut out)?;
            }
            _ => {
                let mut planes = if i % 20 == 9 {
                    (0..size).map(|_| random_plane(&f, &mut r)).collect::<Result<Vec<_>>>()?
                } else {
                    let fam = random_family(r.gen_range(0..7), &mut r)?;
                    fam.sample(&f, r.gen(), size)?
                };
                planes.push(random_plane(&f, &mut r)?);
                compare(&f, &planes, &mut out)?;
            }
        }
    }
    Ok(out)
}

fn dedup_rational(planes: Vec<Subspace<Rationals>>) -> Vec<Subspace<Rationals>> {
    let mut out: Vec<Subspace<Rationals>> = Vec::new();
    for w in planes {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

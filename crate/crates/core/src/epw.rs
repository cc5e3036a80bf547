//! The EPW sextic of a Lagrangian A: coranks, the global degree-six
//! polynomial, local expansions, tangent spaces and tangent cones.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{EpwError, Result};
use crate::exterior::{combinations, grade_dim, support, vol, wedge, wedge_power, wedge_vectors, KVector, N};
use crate::field::{bareiss_det_int, Field, PrimeField, Rationals, Q};
use crate::lagrangian::{rng, wedge_map_matrix, F_of, LagrangianSubspace, D3};
use crate::matrix::Mat;
use crate::poly::{interpolate_lattice, poly_det, MultiPoly, UniPoly};
use crate::subspace::{combine, unit, Subspace};

/// An affine chart `v -> [v0 + v]`, `v ∈ V0`, with `[v0] ⊕ V0 = V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart<F: Field> {
    v0: Vec<F::Elem>,
    complement: Subspace<F>,
}

impl<F: Field> Chart<F> {
    pub fn new(v0: Vec<F::Elem>, complement: Subspace<F>) -> Result<Self> {
        if v0.len() != N || complement.ambient() != N {
            return Err(EpwError::DimensionMismatch { expected: N, found: v0.len() });
        }
        if complement.dim() != N - 1 || complement.contains(&v0)? {
            return Err(EpwError::Precondition("V0 must be a hyperplane not containing v0".into()));
        }
        Ok(Chart { v0, complement })
    }

    /// `v0 = e_0`, `V0 = ⟨e_1, ..., e_5⟩`.
    pub fn standard(f: &F) -> Self {
        Chart {
            v0: unit(f, N, 0),
            complement: Subspace::coordinate(f, N, &[1, 2, 3, 4, 5]),
        }
    }

    /// A chart centred at `v0`, with V0 spanned by the standard basis vectors
    /// other than the first coordinate where `v0` is nonzero.
    pub fn around(f: &F, v0: &[F::Elem]) -> Result<Self> {
        let i = v0.iter().position(|x| !f.is_zero(x)).ok_or(EpwError::ZeroInput("chart centre"))?;
        let rest: Vec<usize> = (0..N).filter(|&j| j != i).collect();
        Self::new(v0.to_vec(), Subspace::coordinate(f, N, &rest))
    }

    pub fn v0(&self) -> &[F::Elem] {
        &self.v0
    }
    pub fn complement(&self) -> &Subspace<F> {
        &self.complement
    }
    /// The chart basis `w_1..w_5` of V0.
    pub fn w(&self) -> Vec<Vec<F::Elem>> {
        self.complement.basis_vecs()
    }

    /// The point `v0 + sum x_i w_i`.
    pub fn point(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.complement.field();
        let mut p = self.v0.clone();
        let w = combine(f, self.complement.basis(), x);
        for (a, b) in p.iter_mut().zip(w) {
            *a = f.add(a, &b);
        }
        p
    }

    /// Columns `v0, w_1, ..., w_5`.
    pub fn frame(&self) -> Mat<F> {
        let f = self.complement.field();
        let w = self.w();
        Mat::from_fn(f, N, N, |r, c| if c == 0 { self.v0[r].clone() } else { w[c - 1][r].clone() })
    }
}

/// The fixed list of fallback charts: coordinate charts, charts over the
/// hyperplanes `sum X_j + X_i = 0`, and one random change of basis.
pub fn chart_list(seed: u64) -> Vec<Chart<Rationals>> {
    let f = Rationals;
    let mut out = Vec::new();
    for i in 0..N {
        let rest: Vec<usize> = (0..N).filter(|&j| j != i).collect();
        out.push(Chart::new(unit(&f, N, i), Subspace::coordinate(&f, N, &rest)).expect("valid"));
    }
    for i in 0..N - 1 {
        let phi: Vec<Q> = (0..N).map(|j| f.from_i64(if j == i { 2 } else { 1 })).collect();
        let h = Subspace::kernel(&Mat::from_rows(&f, N, vec![phi]).expect("row"));
        out.push(Chart::new(unit(&f, N, i), h).expect("valid"));
    }
    let mut r = rng(seed ^ 0x5eed_c4a7);
    loop {
        let vals: Vec<i64> = (0..N * N).map(|_| r.gen_range(-3..=3)).collect();
        let g = Mat::from_fn(&f, N, N, |i, j| f.from_i64(vals[i * N + j]));
        if f.is_zero(&g.det().expect("square")) {
            continue;
        }
        let cols: Vec<Vec<Q>> = (0..N).map(|c| (0..N).map(|r| g.get(r, c).clone()).collect()).collect();
        let v0 = cols[0].clone();
        let h = Subspace::span(&f, N, &cols[1..]).expect("well-formed");
        out.push(Chart::new(v0, h).expect("valid"));
        break;
    }
    out
}

/// `dim(A ∩ F_v)`, as the nullity of `a -> v ∧ a` on A.
pub fn corank_at<F: Field>(a: &LagrangianSubspace<F>, v: &[F::Elem]) -> Result<usize> {
    let f = a.field();
    if v.iter().all(|x| f.is_zero(x)) {
        return Err(EpwError::ZeroInput("corank at the zero vector"));
    }
    let m = wedge_map_matrix(f, v)?;
    let rows: Vec<Vec<F::Elem>> = a.basis_vecs().iter().map(|r| m.apply(r)).collect::<Result<_>>()?;
    Ok(10 - Mat::from_rows(f, 15, rows)?.rank())
}

/// `dim(A ∩ F_v)` from the rank of the stacked 20x20 matrix `[A; F_v]`.
pub fn corank_stacked<F: Field>(a: &LagrangianSubspace<F>, v: &[F::Elem]) -> Result<usize> {
    let fv = F_of(a.field(), v)?;
    Ok(20 - a.subspace().basis().stack(fv.subspace().basis())?.rank())
}

/// The symmetric 10x10 matrix `M(x) = Q0 + sum x_i L_i` of the quadratic
/// forms `q_A(v)` on `∧²V0`, for `v = sum x_i w_i` in chart coordinates.
#[derive(Clone, Debug)]
pub struct ChartMatrix {
    pub constant: Mat<Rationals>,
    pub linear: Vec<Mat<Rationals>>,
}

impl ChartMatrix {
    pub fn at(&self, x: &[Q]) -> Mat<Rationals> {
        let mut m = self.constant.clone();
        for (xi, li) in x.iter().zip(&self.linear) {
            m = m.add(&li.scale(xi)).expect("same shape");
        }
        m
    }

    /// Entries as affine polynomials in the five chart variables.
    pub fn poly_entries(&self) -> Vec<Vec<MultiPoly<Rationals>>> {
        (0..10)
            .map(|i| {
                (0..10)
                    .map(|j| {
                        let c: Vec<Q> = self.linear.iter().map(|l| l.get(i, j).clone()).collect();
                        MultiPoly::affine(&Rationals, self.constant.get(i, j).clone(), &c)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Build `M(x)`. Writing `v0 ∧ α = β + γ` with `β ∈ A`, `γ ∈ ∧³V0`, the form
/// is `(α, α') -> -vol(v0 ∧ α' ∧ γ(α)) - vol(v0 ∧ v ∧ α ∧ α')`.
pub fn chart_matrix(a: &LagrangianSubspace<Rationals>, chart: &Chart<Rationals>) -> Result<ChartMatrix> {
    let f = Rationals;
    let w = chart.w();
    let v0 = KVector::vector(&f, chart.v0())?;
    let pairs = combinations(N - 1, 2);
    let alphas: Vec<KVector<Rationals>> = pairs.iter().map(|p| wedge_vectors(&f, &[w[p[0]].clone(), w[p[1]].clone()])).collect::<Result<_>>()?;
    let top = wedge_power(chart.complement(), 3)?;
    let stacked = a.subspace().basis().stack(top.basis())?;
    if stacked.rank() != D3 {
        return Err(EpwError::ChartDegenerate);
    }
    let solver = stacked.transpose().inverse()?.expect("transversal");
    let gammas: Vec<KVector<Rationals>> = alphas
        .iter()
        .map(|al| {
            let target = wedge(&v0, al)?;
            let c = solver.apply(target.coords())?;
            KVector::from_coords(&f, 3, combine(&f, top.basis(), &c[10..]))
        })
        .collect::<Result<_>>()?;
    let constant = Mat::from_fn(&f, 10, 10, |i, j| {
        let t = wedge(&wedge(&v0, &alphas[j]).expect("grade"), &gammas[i]).expect("grade");
        -vol(&t).expect("grade 6")
    });
    if !constant.is_symmetric() {
        return Err(EpwError::IdentityFailure("constant part of q_A is not symmetric".into()));
    }
    let linear: Vec<Mat<Rationals>> = w
        .iter()
        .map(|wl| {
            let v0w = wedge(&v0, &KVector::vector(&f, wl).expect("vector")).expect("grade");
            Mat::from_fn(&f, 10, 10, |i, j| {
                let t = wedge(&v0w, &wedge(&alphas[i], &alphas[j]).expect("grade")).expect("grade");
                -vol(&t).expect("grade 6")
            })
        })
        .collect();
    Ok(ChartMatrix { constant, linear })
}

/// An EPW sextic: a degree-6 form with graded-lex leading coefficient 1.
#[derive(Clone, Debug)]
pub struct EPWSextic {
    pub poly: MultiPoly<Rationals>,
    pub source: LagrangianSubspace<Rationals>,
    pub chart: Chart<Rationals>,
}

/// `det M(x)` as a polynomial in the chart coordinates, recovered exactly
/// from integer Bareiss determinants on the degree-10 principal lattice.
pub fn chart_determinant(cm: &ChartMatrix) -> MultiPoly<Rationals> {
    let f = Rationals;
    let mut all: Vec<&Q> = cm.constant.data().iter().collect();
    for l in &cm.linear {
        all.extend(l.data().iter());
    }
    let clear = f.clearing_multiplier(&all);
    let ints = |m: &Mat<Rationals>| -> Vec<BigInt> { m.data().iter().map(|x| (x * &clear).to_integer()).collect() };
    let c0 = ints(&cm.constant);
    let ls: Vec<Vec<BigInt>> = cm.linear.iter().map(ints).collect();
    let scale = num_traits::pow::pow(clear.clone(), 10);
    interpolate_lattice(N - 1, 10, |x| {
        let mut m = c0.clone();
        for (xi, l) in x.iter().zip(&ls) {
            if *xi == 0 {
                continue;
            }
            let xb = BigInt::from(*xi);
            for (a, b) in m.iter_mut().zip(l) {
                if !b.is_zero() {
                    *a += &xb * b;
                }
            }
        }
        Q::from_integer(bareiss_det_int(10, &m)) / &scale
    })
}

/// Build the sextic `Y_A` through the given chart.
pub fn build_sextic(a: &LagrangianSubspace<Rationals>, chart: &Chart<Rationals>) -> Result<EPWSextic> {
    let f = Rationals;
    let cm = chart_matrix(a, chart)?;
    let g = chart_determinant(&cm);
    if g.is_zero() {
        return Err(EpwError::YIsWholeSpace);
    }
    let deg = g.total_degree().expect("nonzero") as usize;
    if deg > 6 {
        return Err(EpwError::DegreeAnomaly(deg));
    }
    // corank of M(x) must match dim(A ∩ F_v) at the chart point
    let mut r = rng(0xc0_4a_2c);
    for _ in 0..50 {
        let x: Vec<Q> = (0..N - 1).map(|_| f.from_i64(r.gen_range(-5..=5))).collect();
        let lhs = 10 - cm.at(&x).rank();
        let rhs = corank_at(a, &chart.point(&x))?;
        if lhs != rhs {
            return Err(EpwError::IdentityFailure(format!("chart corank {lhs} != corank {rhs}")));
        }
    }
    let poly = to_ambient(&g, chart)?.normalized();
    Ok(EPWSextic {
        poly,
        source: a.clone(),
        chart: chart.clone(),
    })
}

/// Convert a chart polynomial `g(x)` of degree ≤ 6 into the degree-6 form
/// `F(X) = y0^6 g(y/y0)` where `X = frame * y`.
fn to_ambient(g: &MultiPoly<Rationals>, chart: &Chart<Rationals>) -> Result<MultiPoly<Rationals>> {
    let f = Rationals;
    let frame = chart.frame();
    let hom = g.homogenize(6)?;
    if frame == Mat::identity(&f, N) {
        return Ok(hom);
    }
    let inv = frame.inverse()?.expect("frame is invertible");
    let dehom = interpolate_lattice(N - 1, 6, |x| {
        let mut pt = vec![f.one()];
        pt.extend(x.iter().map(|&t| f.from_i64(t as i64)));
        let y = inv.apply(&pt).expect("shape");
        hom.eval(&y).expect("arity")
    });
    dehom.homogenize(6)
}

/// Try the standard chart, then the fallback list, on `ChartDegenerate`.
pub fn build_sextic_auto(a: &LagrangianSubspace<Rationals>) -> Result<EPWSextic> {
    let mut charts = vec![Chart::standard(&Rationals)];
    charts.extend(chart_list(0));
    for c in &charts {
        match build_sextic(a, c) {
            Err(EpwError::ChartDegenerate) => continue,
            other => return other,
        }
    }
    Err(EpwError::RetriesExhausted("no transversal chart among the fallback list".into()))
}

/// The sextic restricted to a chart: `g(x) = F(v0 + sum x_i w_i)`.
pub fn restrict_to_chart(s: &MultiPoly<Rationals>, chart: &Chart<Rationals>) -> MultiPoly<Rationals> {
    let f = Rationals;
    interpolate_lattice(N - 1, 6, |x| {
        let xq: Vec<Q> = x.iter().map(|&t| f.from_i64(t as i64)).collect();
        s.eval(&chart.point(&xq)).expect("arity")
    })
}

/// Solve `alpha = v0 ∧ beta` for a bivector beta.
pub fn divide_by_vector<F: Field>(v0: &[F::Elem], alpha: &KVector<F>) -> Result<KVector<F>> {
    let f = alpha.field();
    let v = KVector::vector(f, v0)?;
    let g = alpha.grade();
    if g == 0 {
        return Err(EpwError::WrongGrade { expected: 1, found: 0 });
    }
    let cols = grade_dim(g - 1);
    let mut m = Mat::zeros(f, grade_dim(g), cols);
    for j in 0..cols {
        let mut e = vec![f.zero(); cols];
        e[j] = f.one();
        let w = wedge(&v, &KVector::from_coords(f, g - 1, e)?)?;
        for (i, c) in w.coords().iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    let x = m.solve(alpha.coords())?.ok_or(EpwError::NotInSubspace("α is not divisible by v0"))?;
    KVector::from_coords(f, g - 1, x)
}

/// `φ^{v0}_v(α) = vol(v0 ∧ v ∧ β ∧ β)` where `α = v0 ∧ β`.
pub fn phi_quadric<F: Field>(v0: &[F::Elem], v: &[F::Elem], alpha: &KVector<F>) -> Result<F::Elem> {
    let f = alpha.field();
    let fv0 = F_of(f, v0)?;
    if !fv0.subspace().contains(alpha.coords())? {
        return Err(EpwError::NotInSubspace("α must lie in F_v0"));
    }
    if wedge_vectors(f, &[v0.to_vec(), v.to_vec()])?.is_zero() {
        return Err(EpwError::Precondition("v must not lie on the line of v0".into()));
    }
    let beta = divide_by_vector(v0, alpha)?;
    phi_with_beta(f, v0, v, &beta, &beta)
}

fn phi_with_beta<F: Field>(f: &F, v0: &[F::Elem], v: &[F::Elem], b1: &KVector<F>, b2: &KVector<F>) -> Result<F::Elem> {
    vol(&wedge(&wedge_vectors(f, &[v0.to_vec(), v.to_vec()])?, &wedge(b1, b2)?)?)
}

/// `K = A ∩ F_{v0}`.
pub fn kernel_at<F: Field>(a: &LagrangianSubspace<F>, v0: &[F::Elem]) -> Result<Subspace<F>> {
    a.subspace().intersect(F_of(a.field(), v0)?.subspace())
}

/// `(k, f_k)` with `k = dim(A ∩ F_{v0})` and `f_k = det(φ_v|_K)` as a form of
/// degree k in the five chart coordinates.
pub fn local_expansion<F: Field>(a: &LagrangianSubspace<F>, chart: &Chart<F>) -> Result<(usize, MultiPoly<F>)> {
    let f = a.field();
    let k_space = kernel_at(a, chart.v0())?;
    let k = k_space.dim();
    if k == 0 {
        return Ok((0, MultiPoly::constant(f, N - 1, f.one())));
    }
    let betas: Vec<KVector<F>> = k_space
        .basis_vecs()
        .into_iter()
        .map(|c| divide_by_vector(chart.v0(), &KVector::from_coords(f, 3, c)?))
        .collect::<Result<_>>()?;
    let w = chart.w();
    let entries: Vec<Vec<MultiPoly<F>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let c: Vec<F::Elem> = w.iter().map(|wl| phi_with_beta(f, chart.v0(), wl, &betas[i], &betas[j]).expect("grades")).collect();
                    MultiPoly::affine(f, f.zero(), &c)
                })
                .collect()
        })
        .collect();
    Ok((k, poly_det(&entries)?))
}

/// Outcome of comparing the Taylor expansion of the sextic at `v0` with the
/// local determinant `f_k`.
#[derive(Clone, Debug)]
pub struct TaylorCheck {
    pub k: usize,
    /// Lowest degree with a nonzero homogeneous part.
    pub order: Option<u32>,
    /// Whether that part equals `f_k` up to a nonzero scalar.
    pub matches: bool,
}

pub fn taylor_check(sextic: &EPWSextic, chart: &Chart<Rationals>) -> Result<TaylorCheck> {
    let (k, fk) = local_expansion(&sextic.source, chart)?;
    let g = restrict_to_chart(&sextic.poly, chart);
    let order = g.order();
    let matches = match order {
        Some(o) => !fk.is_zero() && g.homogeneous_part(o).equal_up_to_scalar(&fk),
        None => false,
    };
    Ok(TaylorCheck { k, order, matches })
}

/// The tangent hyperplane `supp(v0 ∧ β)` at a point with one-dimensional,
/// non-decomposable `A ∩ F_{v0}`; cross-checked against the zero set of f_1.
pub fn tangent_space_rank1<F: Field>(a: &LagrangianSubspace<F>, v0: &[F::Elem]) -> Result<Subspace<F>> {
    let f = a.field();
    let k = kernel_at(a, v0)?;
    if k.dim() != 1 {
        return Err(EpwError::Precondition(format!("dim(A ∩ F_v0) = {} != 1", k.dim())));
    }
    let gen = KVector::from_coords(f, 3, k.basis_vecs().remove(0))?;
    let supp = support(&gen)?;
    if supp.dim() == 3 {
        return Err(EpwError::Precondition("generator is decomposable".into()));
    }
    let chart = Chart::around(f, v0)?;
    let (_, f1) = local_expansion(a, &chart)?;
    let coeffs: Vec<F::Elem> = (0..N - 1)
        .map(|i| {
            let mut e = vec![0; N - 1];
            e[i] = 1;
            f1.coeff(&e)
        })
        .collect();
    let zero_dirs = Mat::from_rows(f, N - 1, vec![coeffs])?.kernel_rows();
    let mut vecs: Vec<Vec<F::Elem>> = zero_dirs.iter().map(|x| combine(f, chart.complement().basis(), x)).collect();
    vecs.push(v0.to_vec());
    let hyper = Subspace::span(f, N, &vecs)?;
    if hyper != supp {
        return Err(EpwError::IdentityFailure("tangent hyperplane differs from the zero set of f1".into()));
    }
    Ok(supp)
}

/// Whether some nonzero member of the pencil `⟨α0, α1⟩` is decomposable
/// (over the algebraic closure). Substitutes `α0 + t α1` into the Plücker
/// relations `(ι_ξ α) ∧ α = 0` and takes the gcd of the resulting quadratics
/// in t; the point `t = ∞` is checked separately.
pub fn pencil_has_decomposable(alpha0: &KVector<Rationals>, alpha1: &KVector<Rationals>) -> Result<bool> {
    let f = Rationals;
    if plucker_relations_vanish(alpha1)? {
        return Ok(true);
    }
    let mut g = UniPoly::new(&f, vec![]);
    for r in combinations(N, 2) {
        let c0 = alpha0.contract(&r)?;
        let c1 = alpha1.contract(&r)?;
        let p0 = wedge(&c0, alpha0)?;
        let p1 = wedge(&c0, alpha1)?.add(&wedge(&c1, alpha0)?)?;
        let p2 = wedge(&c1, alpha1)?;
        for i in 0..grade_dim(4) {
            let u = UniPoly::new(&f, vec![p0.coords()[i].clone(), p1.coords()[i].clone(), p2.coords()[i].clone()]);
            g = g.gcd(&u);
        }
    }
    // every relation vanishes identically, or they share a root
    Ok(g.is_zero() || g.degree().is_some_and(|d| d >= 1))
}

fn plucker_relations_vanish(a: &KVector<Rationals>) -> Result<bool> {
    for r in combinations(N, 2) {
        if !wedge(&a.contract(&r)?, a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of the quadratic tangent cone `f_2` at a corank-2 point whose kernel
/// pencil has no decomposable member.
pub fn cone_rank_at(a: &LagrangianSubspace<Rationals>, v0: &[Q]) -> Result<usize> {
    let k = kernel_at(a, v0)?;
    if k.dim() != 2 {
        return Err(EpwError::Precondition(format!("corank {} != 2", k.dim())));
    }
    let b = k.basis_vecs();
    let a0 = KVector::from_coords(&Rationals, 3, b[0].clone())?;
    let a1 = KVector::from_coords(&Rationals, 3, b[1].clone())?;
    if pencil_has_decomposable(&a0, &a1)? {
        return Err(EpwError::Precondition("the kernel pencil contains a decomposable trivector".into()));
    }
    let (_, f2) = local_expansion(a, &Chart::around(&Rationals, v0)?)?;
    Ok(f2.quadratic_form_matrix()?.rank())
}

/// Rank of the linear map `v -> φ_v|_K` from V0 to `Sym²K∨`; the tangent
/// space of `Y_A[k]` at `[v0]` has dimension `5 - rank`.
pub fn stratum_tangent_rank(a: &LagrangianSubspace<Rationals>, v0: &[Q]) -> Result<usize> {
    let f = Rationals;
    let k = kernel_at(a, v0)?;
    let chart = Chart::around(&f, v0)?;
    let betas: Vec<KVector<Rationals>> = k
        .basis_vecs()
        .into_iter()
        .map(|c| divide_by_vector(v0, &KVector::from_coords(&f, 3, c)?))
        .collect::<Result<_>>()?;
    let kd = betas.len();
    let rows: Vec<Vec<Q>> = chart
        .w()
        .iter()
        .map(|w| {
            let mut r = Vec::new();
            for i in 0..kd {
                for j in i..kd {
                    r.push(phi_with_beta(&f, v0, w, &betas[i], &betas[j]).expect("grades"));
                }
            }
            r
        })
        .collect();
    Ok(Mat::from_rows(&f, kd * (kd + 1) / 2, rows)?.rank())
}

/// Reduce a rational Lagrangian modulo p via its RREF basis.
pub fn reduce_mod_p(a: &LagrangianSubspace<Rationals>, fp: &PrimeField) -> Result<LagrangianSubspace<PrimeField>> {
    let s = a.subspace().map_field(fp, |q| fp.from_rational(q))?;
    if s.dim() != 10 {
        return Err(EpwError::BadPrime(fp.p()));
    }
    LagrangianSubspace::new(s)
}

/// Points of `P^{n-1}(F_p)`, normalized with first nonzero coordinate 1.
pub fn projective_points(fp: &PrimeField, n: usize) -> Vec<Vec<u64>> {
    let p = fp.p();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = p.pow(free as u32);
        for code in 0..count {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            let mut c = code;
            for j in (lead + 1..n).rev() {
                v[j] = c % p;
                c /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Number of points of `P⁵(F_p)` with each corank.
pub fn stratum_census_fp(a: &LagrangianSubspace<Rationals>, p: u64) -> Result<BTreeMap<usize, usize>> {
    let fp = PrimeField::new(p)?;
    let ap = reduce_mod_p(a, &fp)?;
    stratum_census(&ap)
}

pub fn stratum_census(ap: &LagrangianSubspace<PrimeField>) -> Result<BTreeMap<usize, usize>> {
    let fp = *ap.field();
    let pts = projective_points(&fp, N);
    let coranks: Vec<usize> = pts.par_iter().map(|v| corank_at(ap, v).expect("nonzero point")).collect();
    let mut out = BTreeMap::new();
    for k in coranks {
        *out.entry(k).or_insert(0) += 1;
    }
    Ok(out)
}

/// Whether a rational scalar is a perfect unit (helper for comparisons).
pub fn is_one(q: &Q) -> bool {
    q.is_one()
}

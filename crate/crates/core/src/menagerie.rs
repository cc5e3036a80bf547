//! Special Lagrangians: the triple quadric `A_±(U)`, the double chordal cubic
//! `A_k(L)`, `A_h(L)`, the six hyperplanes `A_III`, and their verifications.
//!
//! Coordinates: `V ≅ ∧²U` through the lex basis `u0∧u1, u0∧u2, u0∧u3,
//! u1∧u2, u1∧u3, u2∧u3`, and `V ≅ Sym²L` through the lex monomial basis
//! `l0², l0l1, l0l2, l1², l1l2, l2²` (unit coefficients).

use std::collections::BTreeSet;

use rand::Rng;

use crate::epw::{build_sextic_auto, corank_at, projective_points, stratum_census};
use crate::error::{EpwError, Result};
use crate::exterior::{delta_subspace, plucker_of, wedge_power, wedge_power_matrix, N};
use crate::field::{Field, PrimeField, Rationals, Q};
use crate::grassmann::{stable_wedge_span, theta_fp};
use crate::lagrangian::{rng, F_of, LagrangianSubspace};
use crate::matrix::Mat;
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::subspace::{unit, Subspace};

pub const WEDGE2_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const SYM2_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// The ten planes spanning `A_III`, as characteristic strings.
pub const A_III_ROWS: [&str; 10] = ["111000", "110100", "101010", "011001", "001101", "001110", "010011", "010110", "100101", "100011"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MenagerieTag {
    APlus,
    AMinus,
    AK,
    AH,
    AIII,
}

impl MenagerieTag {
    pub const ALL: [MenagerieTag; 5] = [MenagerieTag::APlus, MenagerieTag::AMinus, MenagerieTag::AK, MenagerieTag::AH, MenagerieTag::AIII];

    pub fn name(self) -> &'static str {
        match self {
            MenagerieTag::APlus => "a-plus",
            MenagerieTag::AMinus => "a-minus",
            MenagerieTag::AK => "a-k",
            MenagerieTag::AH => "a-h",
            MenagerieTag::AIII => "a-iii",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| EpwError::UnknownName(s.into()))
    }
}

#[derive(Clone, Debug)]
pub struct MenagerieLagrangian {
    pub tag: MenagerieTag,
    pub a: LagrangianSubspace<Rationals>,
    /// Columns: images of the identification basis in V.
    pub identification: Mat<Rationals>,
}

fn check_len<F: Field>(v: &[F::Elem], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(EpwError::DimensionMismatch { expected: n, found: v.len() });
    }
    Ok(())
}

fn nonzero<F: Field>(f: &F, v: &[F::Elem], what: &'static str) -> Result<()> {
    if v.iter().all(|x| f.is_zero(x)) {
        return Err(EpwError::ZeroInput(what));
    }
    Ok(())
}

/// Coordinates of `u ∧ w ∈ ∧²U` for `u, w ∈ U`.
pub fn wedge2_u<F: Field>(f: &F, u: &[F::Elem], w: &[F::Elem]) -> Vec<F::Elem> {
    WEDGE2_PAIRS.iter().map(|&(i, j)| f.sub(&f.mul(&u[i], &w[j]), &f.mul(&u[j], &w[i]))).collect()
}

/// `i₊([u]) = {u ∧ x : x ∈ U}`.
pub fn i_plus<F: Field>(f: &F, u: &[F::Elem]) -> Result<Subspace<F>> {
    check_len::<F>(u, 4)?;
    nonzero(f, u, "i_plus of zero")?;
    let vecs: Vec<Vec<F::Elem>> = (0..4).map(|j| wedge2_u(f, u, &unit(f, 4, j))).collect();
    let s = Subspace::span(f, N, &vecs)?;
    debug_assert_eq!(s.dim(), 3);
    Ok(s)
}

/// `i₋([φ]) = ∧²ker φ`.
pub fn i_minus<F: Field>(f: &F, phi: &[F::Elem]) -> Result<Subspace<F>> {
    check_len::<F>(phi, 4)?;
    nonzero(f, phi, "i_minus of zero")?;
    let k = Subspace::kernel(&Mat::from_rows(f, 4, vec![phi.to_vec()])?).basis_vecs();
    let vecs = vec![wedge2_u(f, &k[0], &k[1]), wedge2_u(f, &k[0], &k[2]), wedge2_u(f, &k[1], &k[2])];
    Subspace::span(f, N, &vecs)
}

/// Coordinates of `l·m ∈ Sym²L`.
pub fn sym_product<F: Field>(f: &F, l: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    SYM2_PAIRS
        .iter()
        .map(|&(i, j)| {
            if i == j {
                f.mul(&l[i], &m[i])
            } else {
                f.add(&f.mul(&l[i], &m[j]), &f.mul(&l[j], &m[i]))
            }
        })
        .collect()
}

/// `k([l]) = {l·x : x ∈ L}`.
pub fn k_map<F: Field>(f: &F, l: &[F::Elem]) -> Result<Subspace<F>> {
    check_len::<F>(l, 3)?;
    nonzero(f, l, "k of zero")?;
    let vecs: Vec<Vec<F::Elem>> = (0..3).map(|j| sym_product(f, l, &unit(f, 3, j))).collect();
    Subspace::span(f, N, &vecs)
}

/// `h([φ]) = {q : φ ∈ ker q}`, where q has symmetric matrix with `q_ii` on the
/// diagonal and `q_ij / 2` off it. Requires odd characteristic.
pub fn h_map<F: Field>(f: &F, phi: &[F::Elem]) -> Result<Subspace<F>> {
    check_len::<F>(phi, 3)?;
    nonzero(f, phi, "h of zero")?;
    if f.characteristic() == 2 {
        return Err(EpwError::Precondition("h needs odd characteristic".into()));
    }
    // row r of 2·M_q·φ, as a linear form in the six coordinates of q
    let rows: Vec<Vec<F::Elem>> = (0..3)
        .map(|r| {
            SYM2_PAIRS
                .iter()
                .map(|&(i, j)| {
                    if i == j && i == r {
                        f.add(&phi[r], &phi[r])
                    } else if i == r {
                        phi[j].clone()
                    } else if j == r {
                        phi[i].clone()
                    } else {
                        f.zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(Subspace::kernel(&Mat::from_rows(f, N, rows)?))
}

/// The Plücker quadric of `Gr(2, U)` in the `∧²U` coordinates.
pub fn plucker_quadric() -> MultiPoly<Rationals> {
    poly_from(&[(&[1, 0, 0, 0, 0, 1], 1), (&[0, 1, 0, 0, 1, 0], -1), (&[0, 0, 1, 1, 0, 0], 1)])
}

/// `4·det` of the symmetric matrix of a quadric in the `Sym²L` coordinates:
/// the chordal cubic of the Veronese surface.
pub fn chordal_cubic() -> MultiPoly<Rationals> {
    poly_from(&[
        (&[1, 0, 0, 1, 0, 1], 4),
        (&[0, 1, 1, 0, 1, 0], 1),
        (&[1, 0, 0, 0, 2, 0], -1),
        (&[0, 0, 2, 1, 0, 0], -1),
        (&[0, 2, 0, 0, 0, 1], -1),
    ])
}

/// `X0·X1·X2·X3·X4·X5`.
pub fn six_hyperplanes() -> MultiPoly<Rationals> {
    poly_from(&[(&[1, 1, 1, 1, 1, 1], 1)])
}

fn poly_from(terms: &[(&[u32], i64)]) -> MultiPoly<Rationals> {
    let f = Rationals;
    MultiPoly::from_terms(&f, N, terms.iter().map(|(e, c)| (e.to_vec(), f.from_i64(*c)))).expect("six variables")
}

/// Nonzero small-integer vectors from a seeded stream.
fn sample_vectors(seed: u64, n: usize, bound: i64) -> impl FnMut() -> Vec<Q> {
    let mut r = rng(seed);
    move || loop {
        let v: Vec<Q> = (0..n).map(|_| Q::from_integer(r.gen_range(-bound..=bound).into())).collect();
        if v.iter().any(|x| *x != Q::from_integer(0.into())) {
            return v;
        }
    }
}

/// `⟨⟨im(map)⟩⟩` over sampled parameter points, stabilized with a window of 5.
fn span_of_image(nparams: usize, seed: u64, map: impl Fn(&Rationals, &[Q]) -> Result<Subspace<Rationals>>) -> Result<LagrangianSubspace<Rationals>> {
    let f = Rationals;
    let mut draw = sample_vectors(seed, nparams, 3);
    let mut err = None;
    let span = stable_wedge_span(&f, 5, 400, || match map(&f, &draw()) {
        Ok(w) => Some(w),
        Err(e) => {
            err = Some(e);
            None
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    if span.dim() != 10 {
        return Err(EpwError::SpanMismatch { expected: 10, found: span.dim() });
    }
    LagrangianSubspace::new(span)
}

pub fn build_a_plus() -> Result<MenagerieLagrangian> {
    build(MenagerieTag::APlus)
}
pub fn build_a_minus() -> Result<MenagerieLagrangian> {
    build(MenagerieTag::AMinus)
}
pub fn build_a_k() -> Result<MenagerieLagrangian> {
    build(MenagerieTag::AK)
}
pub fn build_a_h() -> Result<MenagerieLagrangian> {
    build(MenagerieTag::AH)
}
pub fn build_a_iii() -> Result<MenagerieLagrangian> {
    build(MenagerieTag::AIII)
}

/// `A_III`: span of the ten coordinate trivectors of the table.
pub fn a_iii_subspace<F: Field>(f: &F) -> Result<Subspace<F>> {
    let rows: Vec<Vec<F::Elem>> = A_III_ROWS
        .iter()
        .map(|s| {
            let idx: Vec<usize> = s.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| i).collect();
            plucker_of(&Subspace::coordinate(f, N, &idx))
        })
        .collect::<Result<_>>()?;
    Subspace::span(f, 20, &rows)
}

pub fn build(tag: MenagerieTag) -> Result<MenagerieLagrangian> {
    let f = Rationals;
    let a = match tag {
        MenagerieTag::APlus => span_of_image(4, 11, i_plus)?,
        MenagerieTag::AMinus => span_of_image(4, 12, i_minus)?,
        MenagerieTag::AK => span_of_image(3, 13, k_map)?,
        MenagerieTag::AH => span_of_image(3, 14, h_map)?,
        MenagerieTag::AIII => LagrangianSubspace::new(a_iii_subspace(&f)?)?,
    };
    Ok(MenagerieLagrangian {
        tag,
        a,
        identification: Mat::identity(&f, N),
    })
}

impl MenagerieLagrangian {
    /// Transport along a change of identification `g` (columns = new images of
    /// the basis): `A ↦ (∧³g)(A)`.
    pub fn transport(&self, g: &Mat<Rationals>) -> Result<Self> {
        if g.det()? == Q::from_integer(0.into()) {
            return Err(EpwError::InvalidDatum("identification is not invertible".into()));
        }
        let m = wedge_power_matrix(g, 3)?;
        let a = LagrangianSubspace::new(self.a.subspace().image(&m)?);
        // ∧³g scales the symplectic form by det g, so A stays Lagrangian
        Ok(MenagerieLagrangian {
            tag: self.tag,
            a: a?,
            identification: g.mul(&self.identification)?,
        })
    }
}

/// Compare a computed sextic with a reference form raised to a power.
fn sextic_identity(a: &LagrangianSubspace<Rationals>, reference: &MultiPoly<Rationals>, power: u32) -> Result<(bool, String)> {
    let s = build_sextic_auto(a)?;
    let expected = reference.pow(power).normalized();
    let ok = s.poly == expected;
    let detail = if ok {
        format!("Y_A = V(({reference})^{power})")
    } else {
        format!("got {}\nexpected {}", s.poly, expected)
    };
    Ok((ok, detail))
}

pub fn verify_triple_quadric() -> Report {
    let mut r = Report::new("triple quadric");
    let q = plucker_quadric();
    for tag in [MenagerieTag::APlus, MenagerieTag::AMinus] {
        r.record(format!("Y_{} = 3Q", tag.name()), build(tag).and_then(|m| sextic_identity(&m.a, &q, 3)));
    }
    r
}

pub fn verify_double_cubic() -> Report {
    let mut r = Report::new("double chordal cubic");
    let c = chordal_cubic();
    for tag in [MenagerieTag::AK, MenagerieTag::AH] {
        r.record(format!("Y_{} = 2 chord(V)", tag.name()), build(tag).and_then(|m| sextic_identity(&m.a, &c, 2)));
    }
    r
}

pub fn verify_six_hyperplanes() -> Report {
    let mut r = Report::new("six hyperplanes");
    let f = Rationals;
    let a = build_a_iii();
    r.record(
        "Y_A_III = V(X0...X5)",
        a.as_ref().map_err(Clone::clone).and_then(|m| sextic_identity(&m.a, &six_hyperplanes(), 1)),
    );
    if let Ok(m) = &a {
        let ones = vec![f.one(); N];
        r.record("[1:1:1:1:1:1] ∉ Y_A_III", corank_at(&m.a, &ones).map(|k| (k == 0, k)));
    }
    r
}

/// Result of the exhaustive Θ search over `F_p`.
#[derive(Clone, Debug)]
pub struct ThetaEnumeration {
    pub p: u64,
    pub planes: Vec<Subspace<PrimeField>>,
    pub caveat: &'static str,
}

pub const THETA_CAVEAT: &str = "mod-p enumeration; the count may exceed the characteristic-zero Θ_A";

/// `Θ_A` mod p, for A with a p-integral basis.
pub fn theta_enum_fp(a: &LagrangianSubspace<Rationals>, p: u64) -> Result<ThetaEnumeration> {
    let fp = PrimeField::new(p)?;
    let ap = crate::epw::reduce_mod_p(a, &fp)?;
    Ok(ThetaEnumeration {
        p,
        planes: theta_fp(&ap)?,
        caveat: THETA_CAVEAT,
    })
}

/// Canonical key of a subspace over `F_p` (its RREF entries).
pub fn plane_key(w: &Subspace<PrimeField>) -> Vec<u64> {
    w.basis().data().to_vec()
}

/// The planes `map(x)` for x over all points of `P^{n-1}(F_p)`.
pub fn image_over_fp(p: u64, n: usize, map: impl Fn(&PrimeField, &[u64]) -> Result<Subspace<PrimeField>>) -> Result<BTreeSet<Vec<u64>>> {
    let fp = PrimeField::new(p)?;
    projective_points(&fp, n).iter().map(|x| map(&fp, x).map(|w| plane_key(&w))).collect()
}

/// Θ oracle checks: `Θ_{A₊} = i₊(P³)`, `Θ_{A_k} = k(P²)` and `A_III`'s
/// coordinate planes, all over `F_p`.
pub fn verify_theta(p: u64) -> Report {
    let mut r = Report::new("theta oracles");
    let cases: [(MenagerieTag, usize, fn(&PrimeField, &[u64]) -> Result<Subspace<PrimeField>>); 2] =
        [(MenagerieTag::APlus, 4, |f, x| i_plus(f, x)), (MenagerieTag::AK, 3, |f, x| k_map(f, x))];
    for (tag, n, map) in cases {
        let outcome = (|| {
            let m = build(tag)?;
            let found: BTreeSet<Vec<u64>> = theta_enum_fp(&m.a, p)?.planes.iter().map(plane_key).collect();
            let expected = image_over_fp(p, n, map)?;
            Ok((found == expected, format!("{} planes found, {} expected", found.len(), expected.len())))
        })();
        r.record(format!("Θ_{} over F_{p}", tag.name()), outcome);
    }
    let outcome = (|| {
        let m = build_a_iii()?;
        let fp = PrimeField::new(p)?;
        let found: BTreeSet<Vec<u64>> = theta_enum_fp(&m.a, p)?.planes.iter().map(plane_key).collect();
        let coords: Vec<Vec<u64>> = A_III_ROWS
            .iter()
            .map(|s| {
                let idx: Vec<usize> = s.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| i).collect();
                plane_key(&Subspace::coordinate(&fp, N, &idx))
            })
            .collect();
        let all = coords.iter().all(|k| found.contains(k));
        Ok((all, format!("{} planes found, all 10 table planes present: {all}", found.len())))
    })();
    r.record(format!("Θ_A_III over F_{p} contains its table planes"), outcome);
    r
}

/// Θ is invasive (its planes cover `P⁵(F_p)`) iff the census has no
/// corank-0 points.
pub fn invasive_check(a: &LagrangianSubspace<Rationals>, p: u64) -> Result<(bool, bool)> {
    let fp = PrimeField::new(p)?;
    let ap = crate::epw::reduce_mod_p(a, &fp)?;
    let planes = theta_fp(&ap)?;
    let mut covered = BTreeSet::new();
    for w in &planes {
        covered.extend(crate::grassmann::projective_points_of(w));
    }
    let invasive = covered.len() == projective_points(&fp, N).len();
    let census = stratum_census(&ap)?;
    let no_corank0 = census.get(&0).copied().unwrap_or(0) == 0;
    Ok((invasive, no_corank0))
}

/// `diag(1, 1/2, 1/2, 1, 1/2, 1)`: `Sym²L∨` monomial coordinates to the
/// dual-basis coordinates of `V∨ = (Sym²L)∨`.
pub fn sym2_dual_identification() -> Mat<Rationals> {
    let f = Rationals;
    let half = Q::new(1.into(), 2.into());
    Mat::from_fn(&f, N, N, |i, j| {
        if i != j {
            f.zero()
        } else if SYM2_PAIRS[i].0 == SYM2_PAIRS[i].1 {
            f.one()
        } else {
            half.clone()
        }
    })
}

/// The duality identities, as subspace equalities in `∧³V∨`.
pub fn duality_identities(seed: u64) -> Report {
    let f = Rationals;
    let mut r = Report::new("duality");
    r.record(
        "δ(F_e0) = ∧³⟨X1..X5⟩",
        (|| {
            let lhs = delta_subspace(F_of(&f, &unit(&f, N, 0))?.subspace())?;
            let rhs = wedge_power(&Subspace::coordinate(&f, N, &[1, 2, 3, 4, 5]), 3)?;
            Ok((lhs == rhs, lhs.dim()))
        })(),
    );
    let mut draw = sample_vectors(seed, N, 3);
    let mut ok = true;
    let mut err = None;
    for _ in 0..10 {
        let w = match Subspace::span(&f, N, &[draw(), draw(), draw()]) {
            Ok(w) if w.dim() == 3 => w,
            _ => continue,
        };
        let outcome = (|| {
            let lhs = delta_subspace(&Subspace::span(&f, 20, &[plucker_of(&w)?])?)?;
            let rhs = Subspace::span(&f, 20, &[plucker_of(&w.annihilator())?])?;
            Ok(lhs == rhs)
        })();
        match outcome {
            Ok(b) => ok &= b,
            Err(e) => err = Some(e),
        }
    }
    r.record("δ(∧³W) = ∧³Ann(W) on random W", err.map_or(Ok((ok, "10 planes")), Err));
    let pairs = [
        (MenagerieTag::APlus, MenagerieTag::AMinus, false),
        (MenagerieTag::AMinus, MenagerieTag::APlus, false),
        (MenagerieTag::AK, MenagerieTag::AH, true),
        (MenagerieTag::AH, MenagerieTag::AK, true),
    ];
    for (src, dst, sym2) in pairs {
        r.record(
            format!("δ({}) = {} on the dual side", src.name(), dst.name()),
            (|| {
                let lhs = delta_subspace(build(src)?.a.subspace())?;
                let mut rhs = build(dst)?.a.subspace().clone();
                if sym2 {
                    rhs = rhs.image(&wedge_power_matrix(&sym2_dual_identification(), 3)?)?;
                }
                Ok((lhs == rhs, lhs.dim()))
            })(),
        );
    }
    r
}

/// `dim(δ(A) ∩ F_φ) = dim(∧³ker φ ∩ A)` for random hyperplanes `E = ker φ`.
pub fn uaidelta_check(a: &LagrangianSubspace<Rationals>, trials: usize, seed: u64) -> Result<(bool, usize)> {
    let f = Rationals;
    let da = LagrangianSubspace::new(delta_subspace(a.subspace())?)?;
    // sparse covectors, so that special hyperplanes are hit too
    let mut draw = sample_vectors(seed, N, 1);
    let mut nonempty = 0;
    for _ in 0..trials {
        let phi = draw();
        let e = Subspace::kernel(&Mat::from_rows(&f, N, vec![phi.clone()])?);
        let lhs = corank_at(&da, &phi)?;
        let rhs = wedge_power(&e, 3)?.intersect(a.subspace())?.dim();
        if lhs != rhs {
            return Ok((false, nonempty));
        }
        if lhs > 0 {
            nonempty += 1;
        }
    }
    Ok((true, nonempty))
}

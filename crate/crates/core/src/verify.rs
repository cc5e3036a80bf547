//! Verification suites: each returns a [`Report`] of exact checks.

use rand::Rng;

use crate::chow::{chern_f, chern_f_expansion, chern_wedge3_character, chern_wedge3_expansion, porteous_ya2, ChowClass};
use crate::epw::{build_sextic_auto, cone_rank_at, corank_at, corank_stacked, kernel_at, pencil_has_decomposable, tangent_space_rank1, taylor_check, Chart};
use crate::error::{EpwError, Result};
use crate::exterior::{wedge, wedge_vectors, KVector, N};
use crate::field::{Field, Rationals, Q};
use crate::lagrangian::{extend_isotropic, random_lagrangian, random_symmetric, random_vector, rng, IsotropicSubspace, LagrangianSubspace, D3};
use crate::matrix::Mat;
use crate::menagerie::{build, duality_identities, uaidelta_check, verify_double_cubic, verify_six_hyperplanes, verify_theta, verify_triple_quadric, MenagerieTag};
use crate::morin::{
    adapted_basis, build_a_with_theta, codim_tables, curve_degree, flag_predicate, flag_witness, i_u_cone_check, isotropy_equivalence, make_curve, sigma_tilde_kernel, span_dim,
    splitting_type, AnyLagrangian, CurveType, FLAG_NAMES,
};
use crate::poly::MultiPoly;
use crate::quadform::{initial_term_check, restriction_rank, stratum_codim, stratum_tangent, QuadForm};
use crate::report::Report;
use crate::subspace::{unit, Subspace};

/// Names accepted by [`suite`].
pub const SUITES: [&str; 6] = ["menagerie", "morin", "chern", "appendix", "epw-core", "all"];

/// Run a named suite.
pub fn suite(name: &str, seed: u64) -> Result<Report> {
    let mut r = Report::new(name);
    let parts: &[u32] = match name {
        "menagerie" => &[1, 4, 9],
        "morin" => &[3, 6, 7],
        "chern" => &[2],
        "appendix" => &[8],
        "epw-core" => &[5],
        "all" => &[1, 2, 3, 4, 5, 6, 7, 8, 9],
        other => return Err(EpwError::UnknownName(other.into())),
    };
    for &c in parts {
        r.extend(criterion(c, seed)?);
    }
    if matches!(name, "morin" | "all") {
        r.extend(morin_extras(seed));
    }
    Ok(r)
}

/// The checks behind acceptance criterion `n` (1–9).
pub fn criterion(n: u32, seed: u64) -> Result<Report> {
    Ok(match n {
        1 => menagerie_identities(),
        2 => chern_checks(),
        3 => table_fidelity(seed),
        4 => verify_theta(3),
        5 => local_geometry(seed, 20),
        6 => genlag_checks(seed),
        7 => isotropy_check(seed),
        8 => appendix_checks(seed),
        9 => duality_checks(seed),
        other => return Err(EpwError::UnknownName(format!("criterion {other}"))),
    })
}

// ---------------------------------------------------------------------------

pub fn menagerie_identities() -> Report {
    let mut r = Report::new("menagerie identities");
    r.extend(verify_six_hyperplanes());
    r.extend(verify_triple_quadric());
    r.extend(verify_double_cubic());
    r
}

pub fn chern_checks() -> Report {
    let mut r = Report::new("chern");
    let c = chern_f();
    r.push("c(F) begins 1 - 6h + 18h^2 - 34h^3", c.0[..4] == [1, -6, 18, -34], c.to_string());
    let e = chern_f_expansion();
    r.push(
        "the two ∧³ paths agree in all degrees",
        chern_wedge3_character() == chern_wedge3_expansion() && c == e,
        format!("degrees 4, 5: {}, {}", c.0[4], c.0[5]),
    );
    r.push("c(F)·c(∧³Q) = 1", c.mul(&chern_wedge3_character()) == ChowClass::one(), "");
    r.push("c₁(∧³Q₅) = 6h", chern_wedge3_character().0[1] == 6, "");
    let p = porteous_ya2();
    r.push("2c₃ - c₁c₂ = 40h^3", p == ChowClass::monomial(40, 3), p.to_string());
    r.push("2(-34) - (-6)(18) = 40", 2 * c.0[3] - c.0[1] * c.0[2] == 40, "");
    r.push("deg Y_A = -c₁(F) = 6", -c.0[1] == 6, "");
    r
}

pub fn table_fidelity(seed: u64) -> Report {
    let mut r = Report::new("table of Types");
    for tag in CurveType::ALL {
        let row = tag.row();
        let outcome = (|| {
            let c = make_curve(tag, seed)?;
            let span = span_dim(&c)?;
            let mut ok = span == row.span;
            let mut detail = format!("span {span}");
            if let Some(p) = c.as_param() {
                let deg = curve_degree(p)?;
                let split = splitting_type(p)?;
                ok &= deg == row.degree && split.iter().sum::<usize>() == deg;
                if let Some(expected) = row.splitting {
                    ok &= split == expected;
                }
                detail += &format!(", degree {deg}, splitting {split:?}");
            } else {
                detail += &format!(", degree {} (tabulated)", row.degree);
            }
            Ok((ok, detail))
        })();
        r.record(format!("Type {tag}"), outcome);
    }
    r
}

pub fn genlag_checks(seed: u64) -> Report {
    let mut r = Report::new("genlag");
    for tag in CurveType::ALL {
        let outcome = make_curve(tag, seed)
            .and_then(|c| build_a_with_theta(tag, &c, seed))
            .map(|(_, rep)| (rep.passed(), rep.to_string()));
        r.record(format!("genlag Type {tag}"), outcome);
    }
    r
}

pub fn isotropy_check(seed: u64) -> Report {
    let mut r = Report::new("isotropy");
    r.record(
        "pairwise incidence ⟺ isotropic span on 200 sets",
        isotropy_equivalence(seed, 200).map(|o| {
            (
                o.exceptions == 0 && o.sets == 200,
                format!("{} sets, {} incident, {} exceptions", o.sets, o.incident, o.exceptions),
            )
        }),
    );
    r
}

/// Flag predicates, codimensions, the I_U cone and `Σ̃` kernels.
pub fn morin_extras(seed: u64) -> Report {
    let f = Rationals;
    let mut r = Report::new("morin extras");
    let basis: Vec<Vec<Q>> = (0..N).map(|i| unit(&f, N, i)).collect();
    let random = random_lagrangian(seed.wrapping_add(17));
    for name in FLAG_NAMES {
        let outcome = (|| {
            let a = flag_witness(name, &basis, seed)?;
            let pos = flag_predicate(name, &a, &basis)?;
            let neg = flag_predicate(name, &random, &basis)?;
            Ok((pos && !neg, format!("witness {pos}, random A {neg}")))
        })();
        r.record(format!("flag condition {name}"), outcome);
    }
    for tag in CurveType::ALL {
        let outcome = (|| -> Result<Option<bool>> {
            let c = make_curve(tag, seed)?;
            let (a, _) = build_a_with_theta(tag, &c, seed)?;
            let ok = match &a {
                AnyLagrangian::Rational(a) => adapted_basis(&f, tag).map(|(n, b)| flag_predicate(n, a, &b)).transpose()?,
                AnyLagrangian::Modular(a) => adapted_basis(a.field(), tag).map(|(n, b)| flag_predicate(n, a, &b)).transpose()?,
            };
            Ok(ok)
        })();
        match outcome {
            Ok(Some(ok)) => r.push(format!("genlag Type {tag} satisfies its flag condition"), ok, ""),
            Ok(None) => {}
            Err(e) => r.push(format!("genlag Type {tag} satisfies its flag condition"), false, format!("error: {e}")),
        }
    }
    let t = codim_tables();
    r.push(
        "codim Σ[0] = 1, Σ[1] = 2, B_F1 = 7",
        t.sigma[0] == 1 && t.sigma[1] == 2 && crate::morin::bx_codim(CurveType::F1) == 7,
        "",
    );
    r.push("(d²+d+2)/2 = 1 + d(d+1)/2", t.identity_holds, "d ≤ 20");
    let u = Subspace::coordinate(&f, N, &[0, 1, 2]);
    r.record("I_U cone", i_u_cone_check(&u, seed, 10).map(|rep| (rep.passed(), rep.checks.len())));
    r.record("Σ̃ kernels", sigma_checks(seed));
    r
}

fn sigma_checks(seed: u64) -> Result<(bool, String)> {
    let f = Rationals;
    // genlag output: (A ∩ S_W)/∧³W has dimension dim(L ∩ S_W) - 1
    let c = make_curve(CurveType::D, seed)?;
    let (AnyLagrangian::Rational(a), _) = build_a_with_theta(CurveType::D, &c, seed)? else {
        return Err(EpwError::Precondition("Type D is rational".into()));
    };
    let w = c.as_param().expect("rational").plane_at(&f.from_i64(3))?;
    let genlag = sigma_tilde_kernel(&w, &a)?.dim();
    // A ⊃ S_W
    let s_w = crate::lagrangian::S_of(&w)?;
    let full = sigma_tilde_kernel(&w, &LagrangianSubspace::new(s_w)?)?.dim();
    // generic extension of ∧³W alone
    let iso = IsotropicSubspace::new(Subspace::span(&f, D3, &[crate::exterior::plucker_of(&w)?])?)?;
    let generic = sigma_tilde_kernel(&w, &extend_isotropic(&iso, seed)?)?.dim();
    Ok((genlag == 1 && full == 9 && generic == 0, format!("genlag {genlag}, A = S_W {full}, generic {generic}")))
}

// ---------------------------------------------------------------------------
// Local geometry of the sextic

/// A Lagrangian with `A ∩ F_{v0}` containing the given trivectors divisible
/// by v0 (generically equal to their span).
pub fn lagrangian_with_kernel(v0: &[Q], betas: &[KVector<Rationals>], seed: u64) -> Result<LagrangianSubspace<Rationals>> {
    let f = Rationals;
    let v = KVector::vector(&f, v0)?;
    let rows: Vec<Vec<Q>> = betas.iter().map(|b| Ok(wedge(&v, b)?.into_coords())).collect::<Result<_>>()?;
    extend_isotropic(&IsotropicSubspace::new(Subspace::span(&f, D3, &rows)?)?, seed)
}

fn random_bivector(r: &mut rand_chacha::ChaCha8Rng) -> Result<KVector<Rationals>> {
    let f = Rationals;
    let a = wedge_vectors(&f, &[random_vector(&f, N, r, 3), random_vector(&f, N, r, 3)])?;
    let b = wedge_vectors(&f, &[random_vector(&f, N, r, 3), random_vector(&f, N, r, 3)])?;
    a.add(&b)
}

/// Gradient of a polynomial at a point, as a covector.
fn gradient(p: &MultiPoly<Rationals>, x: &[Q]) -> Result<Vec<Q>> {
    let f = Rationals;
    (0..p.nvars())
        .map(|i| {
            let mut d = MultiPoly::zero(&f, p.nvars());
            for (m, c) in p.terms() {
                if m.0[i] > 0 {
                    let mut e = m.0.clone();
                    e[i] -= 1;
                    d.add_term(e, f.mul(c, &f.from_i64(m.0[i] as i64)));
                }
            }
            d.eval(x)
        })
        .collect()
}

/// Randomized local checks at points of corank 1 and 2.
pub fn local_geometry(seed: u64, trials: usize) -> Report {
    let f = Rationals;
    let mut r = Report::new("local geometry");
    let mut g = rng(seed);
    let mut corank_agree = 0;
    let mut taylor_ok = 0;
    let mut taylor_total = 0;
    let mut cone_ok = 0;
    let mut cone_total = 0;
    let mut tangent_ok = 0;
    let mut tangent_total = 0;
    let mut errors = Vec::new();
    for trial in 0..trials {
        let k = 1 + trial % 2;
        let outcome = (|| -> Result<()> {
            let v0 = loop {
                let v = random_vector(&f, N, &mut g, 3);
                if v.iter().any(|x| !f.is_zero(x)) {
                    break v;
                }
            };
            let betas: Vec<_> = (0..k).map(|_| random_bivector(&mut g)).collect::<Result<_>>()?;
            let a = lagrangian_with_kernel(&v0, &betas, g.gen())?;
            // corank: graph matrix versus stacked rank, at v0 and at a random point
            let v1 = random_vector(&f, N, &mut g, 3);
            let same = [&v0, &v1]
                .iter()
                .all(|v| v.iter().all(|x| f.is_zero(x)) || corank_at(&a, v).ok() == corank_stacked(&a, v).ok());
            corank_agree += same as usize;
            let kk = kernel_at(&a, &v0)?;
            if kk.dim() != k {
                return Ok(());
            }
            let b = kk.basis_vecs();
            let free = if k == 1 {
                !crate::exterior::is_decomposable(&KVector::from_coords(&f, 3, b[0].clone())?)?
            } else {
                !pencil_has_decomposable(&KVector::from_coords(&f, 3, b[0].clone())?, &KVector::from_coords(&f, 3, b[1].clone())?)?
            };
            if !free {
                return Ok(());
            }
            let sextic = build_sextic_auto(&a)?;
            let chart = Chart::around(&f, &v0)?;
            let tc = taylor_check(&sextic, &chart)?;
            taylor_total += 1;
            taylor_ok += (tc.order == Some(k as u32) && tc.matches) as usize;
            if k == 2 {
                cone_total += 1;
                cone_ok += (tc.order == Some(2) && cone_rank_at(&a, &v0)? == 3) as usize;
            } else {
                tangent_total += 1;
                let h = tangent_space_rank1(&a, &v0)?;
                let grad = gradient(&sextic.poly, &v0)?;
                let zero = Subspace::kernel(&Mat::from_rows(&f, N, vec![grad])?);
                tangent_ok += (h.dim() == 5 && h == zero) as usize;
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            errors.push(format!("trial {trial}: {e}"));
        }
    }
    r.push(
        "corank: graph matrix = stacked rank",
        corank_agree == trials && errors.is_empty(),
        format!("{corank_agree}/{trials} trials; {}", errors.join("; ")),
    );
    r.push(
        "Taylor order = dim K with f_k as leading form",
        taylor_total > 0 && taylor_ok == taylor_total,
        format!("{taylor_ok}/{taylor_total}"),
    );
    r.push(
        "corank-2 points: multiplicity 2, f₂ of rank 3",
        cone_total > 0 && cone_ok == cone_total,
        format!("{cone_ok}/{cone_total}"),
    );
    r.push(
        "tangent hyperplane = support of the rank-1 generator",
        tangent_total > 0 && tangent_ok == tangent_total,
        format!("{tangent_ok}/{tangent_total}"),
    );
    r
}

// ---------------------------------------------------------------------------
// Appendix: quadratic forms

/// A random symmetric d x d matrix of rank r.
pub fn random_quadform(d: usize, rank: usize, g: &mut rand_chacha::ChaCha8Rng) -> Result<QuadForm<Rationals>> {
    let f = Rationals;
    loop {
        let p = Mat::from_fn(&f, d, d, |_, _| f.zero());
        let vals: Vec<i64> = (0..d * d).map(|_| g.gen_range(-3..=3)).collect();
        let p = Mat::from_fn(&f, d, d, |i, j| f.from_i64(vals[i * d + j])).add(&p)?;
        if p.rank() != d {
            continue;
        }
        let diag = Mat::from_fn(&f, d, d, |i, j| if i == j && i < rank { f.from_i64(if i % 2 == 0 { 1 } else { -2 }) } else { f.zero() });
        return QuadForm::new(p.transpose().mul(&diag)?.mul(&p)?);
    }
}

pub fn appendix_checks(seed: u64) -> Report {
    let f = Rationals;
    let mut r = Report::new("appendix");
    let codims = [((10, 9), 1), ((10, 7), 6), ((6, 6), 0), ((3, 1), 3)];
    let ok = codims.iter().all(|&((d, rk), c)| stratum_codim(d, rk).ok() == Some(c)) && (0..=10).all(|d| stratum_codim(10, 10 - d).ok() == Some(crate::morin::fiber_codim(d)));
    r.push("stratum codimensions", ok, "C(d-r+1, 2)");
    let mut g = rng(seed);
    // congruence curves q(t) = g(t)ᵀ q* g(t) stay in the stratum; q'(0) is tangent
    let mut tangent_ok = 0;
    let mut dim_ok = 0;
    for _ in 0..100 {
        let d = g.gen_range(2..=6);
        let rank = g.gen_range(1..=d);
        let outcome = (|| -> Result<(bool, bool)> {
            let q = random_quadform(d, rank, &mut g)?;
            let g1 = Mat::from_fn(&f, d, d, |_, _| f.zero()).add(&random_symmetric(&f, d, &mut g))?;
            let skew_part = Mat::from_fn(&f, d, d, |i, j| if i < j { f.one() } else { f.zero() });
            let g1 = g1.add(&skew_part)?;
            let deriv = g1.transpose().mul(q.matrix())?.add(&q.matrix().mul(&g1)?)?;
            let t = stratum_tangent(&q)?;
            let kd = d - rank;
            let expected_dim = d * (d + 1) / 2 - kd * (kd + 1) / 2;
            Ok((t.contains(&QuadForm::new(deriv)?.coords())?, t.dim() == expected_dim))
        })();
        if let Ok((a, b)) = outcome {
            tangent_ok += a as usize;
            dim_ok += b as usize;
        }
    }
    r.push("congruence-curve derivatives lie in the stratum tangent", tangent_ok == 100, format!("{tangent_ok}/100"));
    r.push("stratum tangent has codimension C(k+1, 2)", dim_ok == 100, format!("{dim_ok}/100"));
    // initial term of det(q* + Σ t_i q_i)
    let mut init_ok = 0;
    let mut init_tested = 0;
    let mut init_err = 0;
    for _ in 0..100 {
        let d = g.gen_range(2..=5);
        let corank = g.gen_range(0..=d.min(3));
        let m = g.gen_range(1..=3);
        let outcome = (|| -> Result<Option<bool>> {
            let q = random_quadform(d, d - corank, &mut g)?;
            let dirs: Vec<QuadForm<Rationals>> = (0..m).map(|_| QuadForm::new(random_symmetric(&f, d, &mut g))).collect::<Result<_>>()?;
            let c = initial_term_check(&q, &dirs)?;
            Ok(c.restricted_nonzero.then_some(c.matches && c.corank == corank))
        })();
        match outcome {
            Ok(Some(ok)) => {
                init_tested += 1;
                init_ok += ok as usize;
            }
            Ok(None) => {}
            Err(_) => init_err += 1,
        }
    }
    r.push(
        "initial term has degree corank and equals c·det(q|_K)",
        init_err == 0 && init_tested > 0 && init_ok == init_tested,
        format!("{init_ok}/{init_tested} instances with det(q|_K) ≢ 0, {init_err} errors"),
    );
    let mut surj = 0;
    for _ in 0..20 {
        let d = g.gen_range(3..=6);
        if let Ok(q) = random_quadform(d, d - 2, &mut g) {
            surj += (restriction_rank(&q).ok() == Some(3)) as usize;
        }
    }
    r.push("q ↦ q|_K is onto Sym²K∨ at corank 2", surj == 20, format!("{surj}/20"));
    r
}

// ---------------------------------------------------------------------------

pub fn duality_checks(seed: u64) -> Report {
    let mut r = duality_identities(seed);
    let a = random_lagrangian(seed);
    r.record(
        "δ(A) ∩ F_φ ≅ ∧³E ∩ A on 50 hyperplanes, random A",
        uaidelta_check(&a, 50, seed).map(|(ok, n)| (ok, format!("{n} nonempty"))),
    );
    for tag in [MenagerieTag::APlus, MenagerieTag::AIII] {
        r.record(
            format!("δ(A) ∩ F_φ ≅ ∧³E ∩ A on 50 hyperplanes, {}", tag.name()),
            build(tag).and_then(|m| uaidelta_check(&m.a, 50, seed)).map(|(ok, n)| (ok, format!("{n} nonempty"))),
        );
    }
    r
}

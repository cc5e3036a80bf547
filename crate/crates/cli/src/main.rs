use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use epw_core::epw::{build_sextic, build_sextic_auto, chart_list, corank_at, stratum_census_fp, Chart, EPWSextic};
use epw_core::error::EpwError;
use epw_core::exterior::delta_subspace;
use epw_core::field::{PrimeField, Rationals};
use epw_core::io::{parse_point, LagrangianFile, PolyFile};
use epw_core::lagrangian::{random_lagrangian, LagrangianSubspace};
use epw_core::menagerie::{build, theta_enum_fp, MenagerieTag};
use epw_core::morin::{build_a_with_theta, curve_degree, make_curve, span_dim, splitting_type, AnyLagrangian, Curve, CurveType};
use epw_core::subspace::Subspace;
use epw_core::verify::suite;

#[derive(Parser)]
#[command(name = "epw", version, about = "Exact computations with EPW sextics and their Lagrangian data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartArg {
    Default,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Menagerie,
    Morin,
    Chern,
    Appendix,
    EpwCore,
    All,
}

impl SuiteArg {
    fn name(self) -> &'static str {
        match self {
            SuiteArg::Menagerie => "menagerie",
            SuiteArg::Morin => "morin",
            SuiteArg::Chern => "chern",
            SuiteArg::Appendix => "appendix",
            SuiteArg::EpwCore => "epw-core",
            SuiteArg::All => "all",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the sextic Y_A as a polynomial file.
    BuildSextic {
        #[arg(long)]
        lagrangian: PathBuf,
        #[arg(long, value_enum, default_value = "default")]
        chart: ChartArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// dim(A ∩ F_v) at a point of P(V).
    Corank {
        #[arg(long)]
        lagrangian: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Emit one of the special Lagrangians.
    Menagerie {
        #[arg(long)]
        which: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the planes W with ∧³W ∈ A over F_p.
    ThetaEnum {
        #[arg(long)]
        lagrangian: PathBuf,
        #[arg(long, default_value_t = 3)]
        prime: u64,
    },
    /// Count F_p-points of P(V) by corank.
    Census {
        #[arg(long)]
        lagrangian: PathBuf,
        #[arg(long, default_value_t = 3)]
        prime: u64,
    },
    /// Span, degree and splitting type of a curve of the given Type.
    Curve {
        #[arg(long = "type")]
        tag: String,
        #[arg(long)]
        invariants: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a Lagrangian A with a curve of the given Type in Θ_A.
    Genlag {
        #[arg(long = "type")]
        tag: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dual Lagrangian δ(A) ⊂ ∧³V∨.
    Dual {
        #[arg(long)]
        lagrangian: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A seeded random Lagrangian.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<EpwError> for Failure {
    fn from(e: EpwError) -> Self {
        match e {
            EpwError::IdentityFailure(_) => Failure::Verification(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

fn read_lagrangian(path: &Path) -> std::result::Result<LagrangianSubspace<Rationals>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(LagrangianFile::from_json(&text)?.to_lagrangian()?)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// The first chart of the fallback list transversal to A.
fn first_transversal_chart(a: &LagrangianSubspace<Rationals>) -> epw_core::error::Result<EPWSextic> {
    for c in chart_list(0) {
        match build_sextic(a, &c) {
            Err(EpwError::ChartDegenerate) => continue,
            other => return other,
        }
    }
    Err(EpwError::RetriesExhausted("no transversal chart among the fallback list".into()))
}

fn plane_json(w: &Subspace<PrimeField>) -> Value {
    json!(w.basis_vecs())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::BuildSextic { lagrangian, chart, out } => {
            let a = read_lagrangian(&lagrangian)?;
            let s = match chart {
                ChartArg::Default => match build_sextic(&a, &Chart::standard(&Rationals)) {
                    Err(EpwError::ChartDegenerate) => {
                        eprintln!("standard chart is degenerate for A; using the fallback chart list");
                        build_sextic_auto(&a)?
                    }
                    other => other?,
                },
                ChartArg::Auto => first_transversal_chart(&a)?,
            };
            emit(out.as_deref(), &PolyFile::from_poly(&s.poly).to_json())
        }
        Command::Corank { lagrangian, point } => {
            let a = read_lagrangian(&lagrangian)?;
            println!("{}", corank_at(&a, &parse_point(&point)?)?);
            Ok(())
        }
        Command::Menagerie { which, out } => {
            let tag = MenagerieTag::parse(&which)?;
            let m = build(tag)?;
            let file = LagrangianFile::from_lagrangian(&m.a, Some(json!({ "name": tag.name() })));
            emit(out.as_deref(), &file.to_json())
        }
        Command::ThetaEnum { lagrangian, prime } => {
            if ![2, 3, 5].contains(&prime) {
                return Err(Failure::Input(format!("--prime must be 2, 3 or 5, got {prime}")));
            }
            let a = read_lagrangian(&lagrangian)?;
            let t = theta_enum_fp(&a, prime)?;
            let doc = json!({
                "prime": t.p,
                "count": t.planes.len(),
                "caveat": t.caveat,
                "planes": t.planes.iter().map(plane_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(())
        }
        Command::Census { lagrangian, prime } => {
            let a = read_lagrangian(&lagrangian)?;
            let census = stratum_census_fp(&a, prime)?;
            let counts: serde_json::Map<String, Value> = census.iter().map(|(k, n)| (k.to_string(), json!(n))).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "prime": prime, "corank_counts": counts })).expect("serializable")
            );
            Ok(())
        }
        Command::Curve { tag, invariants, seed } => {
            let tag = CurveType::parse(&tag)?;
            let row = tag.row();
            let c = make_curve(tag, seed)?;
            let mut doc = json!({ "type": tag.name(), "rational": tag.is_rational() });
            if invariants {
                doc["span_dim"] = json!(span_dim(&c)?);
                doc["expected_span_dim"] = json!(row.span);
                match &c {
                    Curve::Param(p) => {
                        doc["field"] = json!("Q");
                        doc["degree"] = json!(curve_degree(p)?);
                        doc["splitting_type"] = json!(splitting_type(p)?);
                    }
                    Curve::Sample(s) => {
                        doc["field"] = json!(format!("F_{}", s.field.p()));
                        doc["sample_planes"] = json!(s.planes.len());
                        doc["degree"] = json!(row.degree);
                    }
                }
                if let Some(split) = row.splitting {
                    doc["expected_splitting_type"] = json!(split);
                }
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(())
        }
        Command::Genlag { tag, seed, out } => {
            let tag = CurveType::parse(&tag)?;
            let c = make_curve(tag, seed)?;
            let (a, report) = build_a_with_theta(tag, &c, seed)?;
            eprintln!("{report}");
            let meta = json!({ "type": tag.name(), "seed": seed, "field": report.field });
            let file = match &a {
                AnyLagrangian::Rational(a) => LagrangianFile::from_lagrangian(a, Some(meta)),
                AnyLagrangian::Modular(a) => LagrangianFile {
                    basis: a.basis_vecs().iter().map(|r| r.iter().map(|x| json!(x)).collect()).collect(),
                    labels: None,
                    meta: Some(meta),
                },
            };
            emit(out.as_deref(), &file.to_json())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("genlag checks failed for Type {tag}")))
            }
        }
        Command::Dual { lagrangian, out } => {
            let a = read_lagrangian(&lagrangian)?;
            let d = LagrangianSubspace::new(delta_subspace(a.subspace())?)?;
            emit(out.as_deref(), &LagrangianFile::from_lagrangian(&d, Some(json!({ "space": "dual" }))).to_json())
        }
        Command::Random { seed, out } => {
            let a = random_lagrangian(seed);
            emit(out.as_deref(), &LagrangianFile::from_lagrangian(&a, Some(json!({ "seed": seed }))).to_json())
        }
        Command::Verify { suite: which, seed, json } => {
            let r = suite(which.name(), seed)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            } else {
                print!("{r}");
                let failed = r.failures().count();
                println!("{}: {} checks, {} failed", which.name(), r.checks.len(), failed);
            }
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("suite {} failed", which.name())))
            }
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("EPW_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        // the global pool can only be set once; ignore a second attempt
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

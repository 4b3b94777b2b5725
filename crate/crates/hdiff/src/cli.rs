//! `hdiff` command line: argument parsing, σ input, dispatch and report output.
//!
//! Exit codes: 0 when every check passes, 1 when one fails, 2 on usage errors.

use crate::center::{central_elements, gamma_recovery, glN_check, quadratic_center_scan, verify_centrality};
use crate::consistency::{
    delta_witness, parse_sigma_json, pbw_overlap_check, potential_from_sigmas, w_decompose, zhelobenko_admissible,
    PbwMode, SigmaSource, SigmaSpec,
};
use crate::expr::parse_ratfunc;
use crate::poly::{Rat, RatFunc};
use crate::report::{Check, Report};
use crate::reps::{self, build_matrix_module, classify, finite_module_dims, fixture, verify_module, Structure};
use crate::ring::{self_test_relations, Ring, RingCtx, SigmaInput};
use crate::rmatrix::{check_r_properties, rhat};
use crate::symmetry::{group_relations_check, tau_and_reflection_check, Tag};
use crate::weyliso::check_iso;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "hdiff", about = "Exact checks for h-deformed differential operator rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized inputs; HDIFF_SEED overrides the default.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Analytic,
    Bruteforce,
    Both,
}

#[derive(Args, Debug, Clone)]
struct SigmaArgs {
    /// Potential: an expression in h1..hn, a JSON spec, or `random`.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// JSON file with `raw` or `pi`/`H` fields.
    #[arg(long = "sigma-file")]
    sigma_file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The dynamical R-matrix and its identities.
    Rmatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        check: bool,
    },
    /// Degree-3 overlap consistency.
    Pbw {
        #[arg(long)]
        n: usize,
        #[arg(long = "N", default_value_t = 1)]
        copies: usize,
        #[command(flatten)]
        sigma: SigmaArgs,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Solve the Δ-system for σ_1..σ_n, or decompose a potential.
    Delta {
        #[arg(long)]
        n: Option<usize>,
        /// σ_i separated by `;`.
        #[arg(long, conflicts_with = "decompose")]
        solve: Option<String>,
        #[arg(long)]
        decompose: Option<String>,
    },
    /// Central elements and Γ recovery (N = 1), gl_N and the quadratic scan (N > 1).
    Center {
        #[arg(long)]
        n: usize,
        #[arg(long = "N", default_value_t = 1)]
        copies: usize,
        #[command(flatten)]
        sigma: SigmaArgs,
    },
    /// The isomorphism with the localized Weyl algebra.
    Iso {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        sigma: SigmaArgs,
    },
    /// Finite-dimensional modules.
    Rep {
        #[command(flatten)]
        sigma: SigmaArgs,
        /// Highest weight, comma separated rationals.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        dims: Option<String>,
        #[arg(long, conflicts_with_all = ["lambda", "dims"])]
        fixture: Option<String>,
    },
    /// Symmetric group and Zhelobenko actions.
    Symmetry {
        #[arg(long)]
        n: usize,
        #[arg(long = "N", default_value_t = 1)]
        copies: usize,
        #[command(flatten)]
        sigma: SigmaArgs,
        /// s, s_prime, q (qcheck) or qw (qcheck_weyl).
        #[arg(long, default_value = "s")]
        kind: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Also check the reflection equation and the action on L.
        #[arg(long)]
        reflection: bool,
    },
    /// Γ-calculus and commuting families inside the engine.
    Selftest {
        #[arg(long)]
        n: usize,
        #[arg(long = "N", default_value_t = 1)]
        copies: usize,
        #[command(flatten)]
        sigma: SigmaArgs,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

fn seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("HDIFF_SEED").ok().and_then(|s| s.parse().ok())).unwrap_or(DEFAULT_SEED)
}

fn sigma_potential(args: &SigmaArgs, n: usize, seed: u64) -> Result<RatFunc, Usage> {
    let src = match (&args.sigma, &args.sigma_file) {
        (Some(_), Some(_)) => return Err(Usage("give either --sigma or --sigma-file".into())),
        (None, None) => return Err(Usage("missing --sigma".into())),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{path}: {e}")))?;
            parse_sigma_json(&text, n)?
        }
        (Some(s), None) if s.trim() == "random" => {
            SigmaSource::Spec(SigmaSpec::random(n, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
        (Some(s), None) if s.trim_start().starts_with('{') => parse_sigma_json(s, n)?,
        (Some(s), None) => SigmaSource::Raw(parse_ratfunc(s, n)?),
    };
    Ok(src.realize())
}

fn make_ring(n: usize, copies: usize, sigma: RatFunc) -> Result<Ring, Usage> {
    Ok(RingCtx::new(n, copies, SigmaInput::Potential(sigma))?)
}

fn parse_rats(s: &str) -> Result<Vec<Rat>, Usage> {
    s.split(',')
        .map(|t| {
            let f = parse_ratfunc(t.trim(), 0)?;
            f.constant_value().ok_or_else(|| Usage(format!("`{t}` is not a rational number")))
        })
        .collect()
}

fn parse_dims(s: &str) -> Result<Vec<usize>, Usage> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| Usage(format!("dims: {e}")))).collect()
}

fn echo(argv: &[String]) -> String {
    argv.iter().skip(1).cloned().collect::<Vec<_>>().join(" ")
}

fn rep_command(sigma: &SigmaArgs, lambda: &Option<String>, dims: &Option<String>, fix: &Option<String>, seed: u64) -> Result<Report, Usage> {
    let mut rep = Report::new("rep");
    if let Some(name) = fix {
        let (ring, m) = fixture(name).ok_or_else(|| Usage(format!("unknown fixture `{name}`; known: {:?}", reps::FIXTURES)))?;
        rep.extend(verify_module(&ring, &m));
        let s = classify(&m);
        rep.push(Check::new("reducible_indecomposable", matches!(s, Structure::Indecomposable { .. })).value(s.label()));
        rep.push(Check::new("matrices", true).value(m.to_json()));
        return Ok(rep);
    }
    let lambda = parse_rats(lambda.as_deref().ok_or_else(|| Usage("rep needs --lambda or --fixture".into()))?)?;
    let n = lambda.len();
    let ring = make_ring(n, 1, sigma_potential(sigma, n, seed)?)?;
    let pot = ring.potential.clone().expect("potential input");
    let d = match dims {
        Some(s) => {
            let d = parse_dims(s)?;
            if d.len() != n {
                return Err(Usage(format!("--dims needs {n} entries")));
            }
            d
        }
        None => match finite_module_dims(&pot, &lambda, reps::DEFAULT_BOUND) {
            Some(d) => {
                rep.push(Check::new("finite_dims", true).value(json!(d)));
                d
            }
            None => {
                rep.push(Check::new("finite_dims", true).value("none"));
                return Ok(rep);
            }
        },
    };
    match build_matrix_module(&ring, &lambda, &d) {
        Ok(m) => {
            rep.extend(verify_module(&ring, &m));
            let analytic = reps::irreducibility_condition(&pot, &lambda, &d);
            let s = classify(&m);
            let agree = analytic == (s == Structure::Irreducible);
            rep.push(Check::new("irreducibility_agree", agree).value(json!({"analytic": analytic, "structure": s.label()})));
            rep.push(Check::new("matrices", true).value(m.to_json()));
        }
        Err(e) => rep.push(Check::new("build", false).witness(e.to_string())),
    }
    Ok(rep)
}

fn dispatch(cli: &Cli) -> Result<Report, Usage> {
    let seed = seed(cli.seed);
    Ok(match &cli.cmd {
        Cmd::Rmatrix { n, check } => {
            if *n == 0 {
                return Err(Usage("--n must be positive".into()));
            }
            if *check {
                check_r_properties(*n)
            } else {
                let mut rep = Report::new(format!("rmatrix --n {n}"));
                let entries: serde_json::Map<String, serde_json::Value> = rhat(*n)
                    .entries
                    .iter()
                    .map(|((i, j, k, l), v)| (format!("{i}{j},{k}{l}"), json!(v.to_string())))
                    .collect();
                rep.push(Check::new("entries", true).value(serde_json::Value::Object(entries)));
                rep
            }
        }
        Cmd::Pbw { n, copies, sigma, mode } => {
            let ring = make_ring(*n, *copies, sigma_potential(sigma, *n, seed)?)?;
            let modes: &[PbwMode] = match mode {
                Mode::Analytic => &[PbwMode::Analytic],
                Mode::Bruteforce => &[PbwMode::Bruteforce],
                Mode::Both => &[PbwMode::Analytic, PbwMode::Bruteforce],
            };
            pbw_overlap_check(&ring, modes)
        }
        Cmd::Delta { n, solve, decompose } => match (solve, decompose) {
            (Some(s), _) => {
                let parts: Vec<&str> = s.split(';').collect();
                let n = n.unwrap_or(parts.len());
                let sig = parts.iter().map(|p| parse_ratfunc(p.trim(), n)).collect::<Result<Vec<_>, _>>()?;
                let mut rep = Report::new(format!("delta --solve {s}"));
                rep.push(Check::from_witness("delta_system", delta_witness(&sig)));
                match potential_from_sigmas(&sig) {
                    Ok(p) => rep.push(Check::new("potential", true).value(p.to_string())),
                    Err(e) => rep.push(Check::new("potential", false).witness(e.to_string())),
                }
                rep
            }
            (None, Some(s)) => {
                let n = n.ok_or_else(|| Usage("--decompose needs --n".into()))?;
                let f = parse_ratfunc(s, n)?;
                let mut rep = Report::new(format!("delta --n {n} --decompose {s}"));
                match w_decompose(&f, n) {
                    Ok(spec) => {
                        rep.push(Check::new("in_w", true).value(spec.to_json()));
                        rep.push(Check::new("realize_roundtrip", spec.realize() == f));
                        rep.push(Check::new("zhelobenko_admissible", true).value(zhelobenko_admissible(&spec)));
                    }
                    Err(e) => rep.push(Check::new("in_w", false).witness(e.to_string())),
                }
                rep
            }
            _ => return Err(Usage("delta needs --solve or --decompose".into())),
        },
        Cmd::Center { n, copies, sigma } => {
            let ring = make_ring(*n, *copies, sigma_potential(sigma, *n, seed)?)?;
            let mut rep = Report::new(format!("center --n {n} --N {copies}"));
            if *copies == 1 {
                let cp = central_elements(&ring)?;
                for (k, c) in cp.c.iter().enumerate() {
                    let v = verify_centrality(&ring, c);
                    let w = v.failures().first().map(|f| f.id.clone());
                    rep.push(Check::from_witness(format!("c_{}_central", k + 1), w));
                }
                for j in 1..=*n {
                    let g = gamma_recovery(&ring, j)?;
                    rep.checks.extend(g.checks.into_iter().filter(|c| j == 1 || c.id != "v_times_vinv"));
                }
            } else {
                rep.extend(glN_check(&ring));
                let scan = quadratic_center_scan(&ring, 1);
                rep.push(Check::new("quadratic_scan", true).value(json!({
                    "dim_mod_constants": scan.dim_mod_constants,
                    "basis": scan.basis.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                })));
            }
            rep
        }
        Cmd::Iso { n, sigma } => check_iso(*n, SigmaInput::Potential(sigma_potential(sigma, *n, seed)?))?,
        Cmd::Rep { sigma, lambda, dims, fixture } => rep_command(sigma, lambda, dims, fixture, seed)?,
        Cmd::Symmetry { n, copies, sigma, kind, depth, reflection } => {
            let tag = Tag::parse(kind).ok_or_else(|| Usage(format!("unknown kind `{kind}`")))?;
            if *n < 2 {
                return Err(Usage("symmetries need --n >= 2".into()));
            }
            let ring = make_ring(*n, *copies, sigma_potential(sigma, *n, seed)?)?;
            let mut rep = match group_relations_check(&ring, tag, *depth) {
                Ok(r) => r,
                Err(e) => {
                    let mut r = Report::new(format!("symmetry --n {n} --N {copies} --kind {}", tag.name()));
                    r.push(Check::new("admissible", false).witness(e.to_string()));
                    r
                }
            };
            if *reflection {
                rep.extend(tau_and_reflection_check(&ring));
            }
            rep
        }
        Cmd::Selftest { n, copies, sigma } => self_test_relations(&make_ring(*n, *copies, sigma_potential(sigma, *n, seed)?)?),
    })
}

/// Parse argv, run the subcommand, print the report; returns the exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(mut rep) => {
            rep.command = echo(&argv);
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&rep).expect("report serializes"),
                Format::Text => rep.to_text(),
            };
            println!("{}", out.trim_end());
            if rep.all_pass() {
                0
            } else {
                1
            }
        }
        Err(Usage(msg)) => {
            eprintln!("hdiff: {msg}");
            2
        }
    }
}

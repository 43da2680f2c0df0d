//! Batch command-line driver: subcommand dispatch, canonical JSON reports,
//! and a persistent content-addressed result cache.
//!
//! Exit codes: 0 success/verified, 1 verification failure (non-integral
//! coefficient, failing hypergeometric check, singular potential, refused
//! refinement), 2 usage or input error. Reports are byte-deterministic
//! given identical inputs and version, independent of `--jobs` and of
//! cache temperature.

pub mod cache;
pub mod report;

use cache::{Cache, CachedResult};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use gpmirror::formats::{rat_from_string, rat_to_string, HeightsInput, PolytopeInput};
use gpmirror::gf::FiniteField;
use gpmirror::gkz::verify_solutions;
use gpmirror::linalg::Rat;
use gpmirror::mirrormap::{
    build_bundle_with, default_test_set, hypersurface_fast_path, GammaSign, IntegralityEntry,
    IntegralityReport,
};
use gpmirror::monoid::{default_grading, enumerate, relation_lattice, MonoidSelector};
use gpmirror::polytope::{validate_reflexive, ReflexiveSimplex};
use gpmirror::subdivision::{
    bruteforce_smooth, lcm_lambda, mpcp_mpcs_check, regular_subdivision, tropical_smoothness,
    Normalization, SubdivisionError,
};
use num::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::{Path, PathBuf};

/// Participates in every cache key; bump on any algorithmic change (see
/// CHANGELOG.md).
pub const VERSION_TAG: &str = "gpmirror-0.1.0";

#[derive(Parser, Debug)]
#[command(name = "gpmirror", version, about = "Mirror-map toolkit driver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cache directory (overrides the GPMIRROR_CACHE environment variable).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads for parallelizable work.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output format; only "json" is supported.
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a reflexive simplex file and report its toric data.
    Polytope { input: PathBuf },
    /// Enumerate a relation submonoid up to a grade bound.
    Monoid {
        input: PathBuf,
        /// Grade bound (nonnegative rational, e.g. "4" or "7/2").
        #[arg(long)]
        order: String,
        /// One of: knonneg, kplus, ambient, kp:<index>.
        #[arg(long, default_value = "knonneg")]
        selector: String,
    },
    /// Mirror-map coefficient series and integrality checks.
    MirrorMap {
        input: PathBuf,
        /// Grade bound (nonnegative rational).
        #[arg(long)]
        order: String,
        /// Exit 1 when any tested power series is non-integral.
        #[arg(long)]
        check_integrality: bool,
        /// Exponent vector u as comma-separated integers; repeatable.
        /// Defaults to a lattice basis of K plus the extremal elements.
        #[arg(long = "u")]
        u: Vec<String>,
        /// Gamma sign convention: signed or unsigned.
        #[arg(long, default_value = "signed")]
        gamma_sign: String,
    },
    /// One-variable fast path for the degree-n hypersurface family.
    Hypersurface {
        #[arg(long)]
        n: usize,
        /// Truncation order in T.
        #[arg(long)]
        order: i64,
        /// Exponent in q(T) = T * phi(T)^power; defaults to n.
        #[arg(long)]
        power: Option<i64>,
    },
    /// Verify the hypergeometric system against the series solutions.
    GkzVerify {
        input: PathBuf,
        /// Grade bound (nonnegative rational).
        #[arg(long)]
        order: String,
    },
    /// Regular subdivision, volumes, and refinement checks for a heights file.
    Subdivision {
        input: PathBuf,
        /// Residue characteristic for the tropical volume condition
        /// (0 disables the divisibility check). Must be 0 or prime.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Reflexive simplex file; enables the fan refinement checks and
        /// the lcm report (heights are matched to its boundary points).
        #[arg(long)]
        polytope: Option<PathBuf>,
        /// Volume normalization: m-lattice or degree-sublattice.
        #[arg(long, default_value = "m-lattice")]
        normalization: String,
        /// Turn a reported verdict into the exit code: tropical, mpcp, or
        /// mpcs.
        #[arg(long)]
        check: Option<String>,
    },
    /// Brute-force smoothness of a potential over a finite field.
    SmoothCheck {
        input: PathBuf,
        /// Field characteristic (prime).
        #[arg(long = "char")]
        characteristic: u64,
        /// Field extension degree.
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
}

/// Input file for `smooth-check`: integer-coefficient (Laurent) monomials.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PotentialInput {
    pub nvars: usize,
    pub terms: Vec<PotentialTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PotentialTerm {
    pub coefficient: i64,
    pub exponent: Vec<i64>,
}

/// A fully resolved command outcome: the report to print and the exit code.
pub struct Outcome {
    pub report: String,
    pub exit: i32,
}

/// Usage/input problems (exit 2), kept apart from verification failures
/// (which produce a report with exit 1).
pub struct UsageError(pub String);

type CmdResult = Result<Outcome, UsageError>;

pub fn run(args: Vec<String>) -> i32 {
    match execute(args) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            outcome.exit
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Parse, validate, consult the cache, dispatch, publish. Separated from
/// `run` so tests can capture reports in-process.
pub fn execute(args: Vec<String>) -> CmdResult {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version render to stdout with exit 0.
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Ok(Outcome {
                    report: e.to_string(),
                    exit: 0,
                });
            }
            return Err(UsageError(e.to_string()));
        }
    };
    if cli.format != "json" {
        return Err(UsageError(format!(
            "unsupported --format {:?} (only \"json\")",
            cli.format
        )));
    }
    if cli.jobs == 0 {
        return Err(UsageError("--jobs must be at least 1".to_string()));
    }
    let job = canonical_job(&cli.command)?;
    let key = cache::job_key(&job);
    let cache = cache_dir(&cli).and_then(Cache::open);
    if let Some(c) = &cache {
        if let Some(hit) = c.get(&key) {
            return Ok(Outcome {
                report: hit.report,
                exit: hit.exit,
            });
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| UsageError(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| dispatch(&cli.command))?;
    if let Some(c) = &cache {
        c.put(
            &key,
            &CachedResult {
                report: outcome.report.clone(),
                exit: outcome.exit,
            },
        );
    }
    Ok(outcome)
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache
        .clone()
        .or_else(|| std::env::var_os("GPMIRROR_CACHE").map(PathBuf::from))
}

/// Canonical job description for hashing: parsed (hence whitespace- and
/// key-order-normalized) input, command name, flags, and the version tag.
/// Vertex/point order stays file order — it is semantic.
fn canonical_job(cmd: &Command) -> Result<serde_json::Value, UsageError> {
    let v = match cmd {
        Command::Polytope { input } => json!({
            "command": "polytope",
            "input": serde_json::to_value(read_polytope_input(input)?).unwrap(),
        }),
        Command::Monoid {
            input,
            order,
            selector,
        } => {
            parse_selector(selector)?;
            json!({
                "command": "monoid",
                "input": serde_json::to_value(read_polytope_input(input)?).unwrap(),
                "order": rat_to_string(&parse_order(order)?),
                "selector": selector,
            })
        }
        Command::MirrorMap {
            input,
            order,
            check_integrality,
            u,
            gamma_sign,
        } => {
            parse_gamma_sign(gamma_sign)?;
            json!({
                "command": "mirror-map",
                "input": serde_json::to_value(read_polytope_input(input)?).unwrap(),
                "order": rat_to_string(&parse_order(order)?),
                "check_integrality": check_integrality,
                "u": u,
                "gamma_sign": gamma_sign,
            })
        }
        Command::Hypersurface { n, order, power } => {
            if *n < 3 {
                return Err(UsageError("--n must be at least 3".to_string()));
            }
            if *order < 0 {
                return Err(UsageError("--order must be nonnegative".to_string()));
            }
            json!({
                "command": "hypersurface",
                "n": n,
                "order": order,
                "power": power.unwrap_or(*n as i64),
            })
        }
        Command::GkzVerify { input, order } => json!({
            "command": "gkz-verify",
            "input": serde_json::to_value(read_polytope_input(input)?).unwrap(),
            "order": rat_to_string(&parse_order(order)?),
        }),
        Command::Subdivision {
            input,
            characteristic,
            polytope,
            normalization,
            check,
        } => {
            if *characteristic != 0 && !is_prime(*characteristic) {
                return Err(UsageError(format!(
                    "--char {characteristic} is not prime"
                )));
            }
            parse_normalization(normalization)?;
            if let Some(c) = check {
                if !matches!(c.as_str(), "tropical" | "mpcp" | "mpcs") {
                    return Err(UsageError(format!(
                        "--check {c:?} (expected tropical, mpcp, or mpcs)"
                    )));
                }
                if c != "tropical" && polytope.is_none() {
                    return Err(UsageError(format!(
                        "--check {c} requires --polytope"
                    )));
                }
            }
            let poly = polytope
                .as_ref()
                .map(|p| read_polytope_input(p))
                .transpose()?;
            json!({
                "command": "subdivision",
                "input": serde_json::to_value(read_heights_input(input)?).unwrap(),
                "char": characteristic,
                "polytope": poly.map(|p| serde_json::to_value(p).unwrap()),
                "normalization": normalization,
                "check": check,
            })
        }
        Command::SmoothCheck {
            input,
            characteristic,
            ext,
        } => {
            if !is_prime(*characteristic) {
                return Err(UsageError(format!(
                    "--char {characteristic} is not prime"
                )));
            }
            if *ext == 0 {
                return Err(UsageError("--ext must be at least 1".to_string()));
            }
            json!({
                "command": "smooth-check",
                "input": serde_json::to_value(read_potential_input(input)?).unwrap(),
                "char": characteristic,
                "ext": ext,
            })
        }
    };
    let mut v = v;
    v["version"] = json!(VERSION_TAG);
    Ok(v)
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Polytope { input } => cmd_polytope(input),
        Command::Monoid {
            input,
            order,
            selector,
        } => cmd_monoid(input, order, selector),
        Command::MirrorMap {
            input,
            order,
            check_integrality,
            u,
            gamma_sign,
        } => cmd_mirror_map(input, order, *check_integrality, u, gamma_sign),
        Command::Hypersurface { n, order, power } => cmd_hypersurface(*n, *order, *power),
        Command::GkzVerify { input, order } => cmd_gkz_verify(input, order),
        Command::Subdivision {
            input,
            characteristic,
            polytope,
            normalization,
            check,
        } => cmd_subdivision(
            input,
            *characteristic,
            polytope.as_deref(),
            normalization,
            check.as_deref(),
        ),
        Command::SmoothCheck {
            input,
            characteristic,
            ext,
        } => cmd_smooth_check(input, *characteristic, *ext),
    }
}

// ---------------------------------------------------------------- helpers

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T, UsageError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| UsageError(format!("{} file {}: {e}", what, path.display())))
}

fn read_polytope_input(path: &Path) -> Result<PolytopeInput, UsageError> {
    read_json(path, "polytope input")
}

fn read_heights_input(path: &Path) -> Result<HeightsInput, UsageError> {
    read_json(path, "heights input")
}

fn read_potential_input(path: &Path) -> Result<PotentialInput, UsageError> {
    let p: PotentialInput = read_json(path, "potential input")?;
    if p.terms.iter().any(|t| t.exponent.len() != p.nvars) {
        return Err(UsageError(
            "potential input: exponent length differs from nvars".to_string(),
        ));
    }
    Ok(p)
}

fn load_simplex(path: &Path) -> Result<ReflexiveSimplex, UsageError> {
    let input = read_polytope_input(path)?;
    validate_reflexive(input.vertices)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn parse_order(s: &str) -> Result<Rat, UsageError> {
    let r = rat_from_string(s).map_err(UsageError)?;
    if r.is_negative() {
        return Err(UsageError(format!("--order {s} is negative")));
    }
    Ok(r)
}

fn parse_selector(s: &str) -> Result<MonoidSelector, UsageError> {
    match s {
        "knonneg" => Ok(MonoidSelector::Knonneg),
        "kplus" => Ok(MonoidSelector::Kplus),
        "ambient" => Ok(MonoidSelector::AmbientNonneg),
        _ => match s.strip_prefix("kp:") {
            Some(idx) => idx
                .parse::<usize>()
                .map(MonoidSelector::Kp)
                .map_err(|e| UsageError(format!("--selector {s:?}: {e}"))),
            None => Err(UsageError(format!(
                "--selector {s:?} (expected knonneg, kplus, ambient, or kp:<index>)"
            ))),
        },
    }
}

fn parse_gamma_sign(s: &str) -> Result<GammaSign, UsageError> {
    match s {
        "signed" => Ok(GammaSign::Signed),
        "unsigned" => Ok(GammaSign::Unsigned),
        _ => Err(UsageError(format!(
            "--gamma-sign {s:?} (expected signed or unsigned)"
        ))),
    }
}

fn parse_normalization(s: &str) -> Result<Normalization, UsageError> {
    match s {
        "m-lattice" => Ok(Normalization::MLattice),
        "degree-sublattice" => Ok(Normalization::DegreeSublattice),
        _ => Err(UsageError(format!(
            "--normalization {s:?} (expected m-lattice or degree-sublattice)"
        ))),
    }
}

fn parse_u_vector(s: &str, len: usize) -> Result<Vec<i64>, UsageError> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| UsageError(format!("--u {s:?}: {e}")))?;
    if v.len() != len {
        return Err(UsageError(format!(
            "--u {s:?} has {} entries, expected {len}",
            v.len()
        )));
    }
    Ok(v)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn render<T: Serialize>(report: &T, exit: i32) -> Outcome {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    Outcome { report: s, exit }
}

// ------------------------------------------------------------- commands

fn cmd_polytope(input: &Path) -> CmdResult {
    let simplex = load_simplex(input)?;
    let pts = simplex.boundary_points();
    let lattice = relation_lattice(&pts);
    let gp = simplex.greene_plesser_group();
    let report = report::PolytopeReport {
        command: "polytope".to_string(),
        version: VERSION_TAG.to_string(),
        vertices: simplex.vertices.clone(),
        dual_vertices: simplex.dual_vertices.clone(),
        degrees: simplex.degrees.clone(),
        total_degree: simplex.total_degree,
        weights: simplex.weights.clone(),
        num_boundary_points: pts.len(),
        boundary_points: pts.points.clone(),
        relation_rank: lattice.rank,
        greene_plesser_order: gp.order(),
        greene_plesser_invariant_factors: gp.invariant_factors,
    };
    Ok(render(&report, 0))
}

fn cmd_monoid(input: &Path, order: &str, selector: &str) -> CmdResult {
    let bound = parse_order(order)?;
    let sel = parse_selector(selector)?;
    let simplex = load_simplex(input)?;
    let pts = simplex.boundary_points();
    if let MonoidSelector::Kp(p) = sel {
        if p >= pts.len() {
            return Err(UsageError(format!(
                "--selector kp:{p} out of range ({} boundary points)",
                pts.len()
            )));
        }
    }
    let lattice = relation_lattice(&pts);
    let grading = match default_grading(&lattice) {
        Ok(g) => g,
        Err(e) => {
            // A grading that cannot be certified is a verification failure,
            // not a usage error.
            let report = serde_json::json!({
                "command": "monoid",
                "version": VERSION_TAG,
                "error": e.to_string(),
            });
            return Ok(render(&report, 1));
        }
    };
    let members = enumerate(sel, &lattice, &grading, &bound);
    let report = report::MonoidReport {
        command: "monoid".to_string(),
        version: VERSION_TAG.to_string(),
        selector: selector.to_string(),
        order: rat_to_string(&bound),
        lambda: report::rats_to_strings(&grading.lambda),
        certificate: grading
            .certificate
            .iter()
            .map(|(p, m)| report::CertificateEntry {
                point: *p,
                section_minimum: rat_to_string(m),
            })
            .collect(),
        count: members.len(),
        members,
    };
    Ok(render(&report, 0))
}

fn cmd_mirror_map(
    input: &Path,
    order: &str,
    check_integrality: bool,
    u_flags: &[String],
    gamma_sign: &str,
) -> CmdResult {
    let bound = parse_order(order)?;
    let sign = parse_gamma_sign(gamma_sign)?;
    let simplex = load_simplex(input)?;
    let pts = simplex.boundary_points();
    let lattice = relation_lattice(&pts);
    let grading =
        default_grading(&lattice).map_err(|e| UsageError(format!("grading: {e}")))?;
    let bundle = build_bundle_with(&lattice, &grading, &bound, sign)
        .map_err(|e| UsageError(format!("mirror map: {e}")))?;
    let test_set: Vec<Vec<i64>> = if u_flags.is_empty() {
        default_test_set(&bundle)
    } else {
        u_flags
            .iter()
            .map(|s| parse_u_vector(s, pts.len()))
            .collect::<Result<_, _>>()?
    };
    // Per-u series powers are independent; the thread pool carries them,
    // and ordered collection keeps the report deterministic.
    let entries: Vec<Result<IntegralityEntry, String>> = test_set
        .par_iter()
        .map(|u| {
            bundle
                .phi_power(u)
                .map(|series| {
                    let offenders = series.integrality_offenders();
                    IntegralityEntry {
                        u: u.clone(),
                        integral: offenders.is_empty(),
                        offenders,
                    }
                })
                .map_err(|e| format!("u = {u:?}: {e}"))
        })
        .collect();
    let entries: Vec<IntegralityEntry> = entries
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(UsageError)?;
    let all_integral = entries.iter().all(|e| e.integral);
    let lib_report = IntegralityReport {
        bound: bound.clone(),
        entries,
        all_integral,
    };
    let report = report::MirrorMapReport {
        command: "mirror-map".to_string(),
        version: VERSION_TAG.to_string(),
        order: rat_to_string(&bound),
        gamma_sign: gamma_sign.to_string(),
        num_boundary_points: pts.len(),
        relation_rank: lattice.rank,
        entries: report::integrality_entries(&lib_report),
        all_integral,
        integral: all_integral,
    };
    let exit = if check_integrality && !all_integral { 1 } else { 0 };
    Ok(render(&report, exit))
}

fn cmd_hypersurface(n: usize, order: i64, power: Option<i64>) -> CmdResult {
    if n < 3 {
        return Err(UsageError("--n must be at least 3".to_string()));
    }
    if order < 0 {
        return Err(UsageError("--order must be nonnegative".to_string()));
    }
    let power = power.unwrap_or(n as i64);
    let bundle = hypersurface_fast_path(n, order);
    let q = if power == n as i64 {
        bundle.q.clone()
    } else {
        bundle
            .phi
            .int_pow(power)
            .map_err(|e| UsageError(format!("--power {power}: {e}")))?
            .map_exponents(|v| vec![v[0] + 1])
    };
    let coeffs = |s: &gpmirror::series::ConeSeries, hi: i64| -> Vec<String> {
        (0..=hi)
            .map(|i| rat_to_string(&s.coefficient(&[i])))
            .collect()
    };
    let integral = bundle.phi.is_integral() && q.is_integral();
    let report = report::HypersurfaceReport {
        command: "hypersurface".to_string(),
        version: VERSION_TAG.to_string(),
        n,
        order,
        power,
        f: bundle.f.iter().map(|x| x.to_string()).collect(),
        phi_coefficients: coeffs(&bundle.phi, order),
        q_coefficients: coeffs(&q, order),
        integral,
    };
    Ok(render(&report, if integral { 0 } else { 1 }))
}

fn cmd_gkz_verify(input: &Path, order: &str) -> CmdResult {
    let bound = parse_order(order)?;
    let simplex = load_simplex(input)?;
    let lib = verify_solutions(&simplex, &bound)
        .map_err(|e| UsageError(format!("gkz: {e}")))?;
    let report = report::GkzReportJson {
        command: "gkz-verify".to_string(),
        version: VERSION_TAG.to_string(),
        order: rat_to_string(&bound),
        gamma_sign_selected: lib.gamma_sign_selected.clone(),
        euler_convention: lib.euler_convention.clone(),
        checks: report::gkz_checks(&lib),
        all_pass: lib.all_pass,
    };
    Ok(render(&report, if lib.all_pass { 0 } else { 1 }))
}

fn cmd_subdivision(
    input: &Path,
    characteristic: u64,
    polytope: Option<&Path>,
    normalization: &str,
    check: Option<&str>,
) -> CmdResult {
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(UsageError(format!("--char {characteristic} is not prime")));
    }
    let norm = parse_normalization(normalization)?;
    let heights_input = read_heights_input(input)?;
    let heights = heights_input
        .to_assignment()
        .map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
    let sub = regular_subdivision(&heights)
        .map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
    let tropical = tropical_smoothness(&heights, characteristic)
        .map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
    let total: gpmirror::linalg::Int = sub.cells.iter().map(|c| c.volume.clone()).sum();
    let refinement = match polytope {
        None => None,
        Some(path) => {
            let simplex = load_simplex(path)?;
            let pts = simplex.boundary_points();
            // Match each boundary point to its height by coordinates; the
            // refinement checks need a finite positive height everywhere.
            let lambda: Vec<Rat> = pts
                .points
                .iter()
                .map(|p| {
                    let idx = heights
                        .points
                        .iter()
                        .position(|q| q == p)
                        .ok_or_else(|| {
                            UsageError(format!("no height given for boundary point {p:?}"))
                        })?;
                    heights.heights[idx].clone().ok_or_else(|| {
                        UsageError(format!("boundary point {p:?} has infinite height"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if lambda.iter().any(|l| !l.is_positive()) {
                return Err(UsageError(
                    "refinement checks need strictly positive heights".to_string(),
                ));
            }
            let verdict = mpcp_mpcs_check(&simplex, &lambda);
            let (verdict_str, witness) = report::refinement_verdict(&verdict);
            let lcm = match lcm_lambda(&simplex, &lambda, norm) {
                Ok(vr) => Some(report::lcm_json(&vr, normalization)),
                Err(SubdivisionError::MpcpViolation(_)) => None,
                Err(e) => return Err(UsageError(format!("lcm: {e}"))),
            };
            Some(report::RefinementJson {
                verdict: verdict_str,
                witness,
                lcm,
            })
        }
    };
    let tropical_json = report::tropical_json(&tropical);
    let exit = match check {
        None => 0,
        Some("tropical") => (tropical_json.verdict != "smooth") as i32,
        Some("mpcp") => {
            let v = refinement.as_ref().map(|r| r.verdict.as_str());
            (!matches!(v, Some("mpcs") | Some("mpcp-only"))) as i32
        }
        Some("mpcs") => {
            (refinement.as_ref().map(|r| r.verdict.as_str()) != Some("mpcs")) as i32
        }
        Some(other) => {
            return Err(UsageError(format!(
                "--check {other:?} (expected tropical, mpcp, or mpcs)"
            )))
        }
    };
    let report = report::SubdivisionReport {
        command: "subdivision".to_string(),
        version: VERSION_TAG.to_string(),
        dim: sub.dim,
        cells: report::cells_json(&sub),
        total_volume: total.to_string(),
        tropical: tropical_json,
        refinement,
    };
    Ok(render(&report, exit))
}

fn cmd_smooth_check(input: &Path, characteristic: u64, ext: u32) -> CmdResult {
    if !is_prime(characteristic) {
        return Err(UsageError(format!("--char {characteristic} is not prime")));
    }
    let potential = read_potential_input(input)?;
    let field = FiniteField::new(characteristic, ext);
    let terms: Vec<(u64, Vec<i64>)> = potential
        .terms
        .iter()
        .map(|t| (field.from_int(t.coefficient), t.exponent.clone()))
        .collect();
    let verdict = bruteforce_smooth(&field, potential.nvars, &terms)
        .map_err(|e| UsageError(format!("{e}")))?;
    let (verdict_str, witness) = report::smooth_verdict(&verdict);
    let exit = (verdict_str == "singular") as i32;
    let report = report::SmoothCheckReport {
        command: "smooth-check".to_string(),
        version: VERSION_TAG.to_string(),
        characteristic,
        extension_degree: ext,
        field_size: field.q,
        nvars: potential.nvars,
        verdict: verdict_str,
        witness,
    };
    Ok(render(&report, exit))
}

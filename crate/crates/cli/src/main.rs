//! Command-line front end: evaluate scalar functionals on matrices, replay
//! the bundled reference checks, and run the randomized inequality and
//! geometry suites with JSON reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 applicability error (an input outside a functional's domain).

use clap::{Parser, Subcommand};
use immanant_lab::character::CharacterFunction;
use immanant_lab::eigen::{entrywise_abs, is_psd};
use immanant_lab::functionals::immanant;
use immanant_lab::geometry::run_geometry_suite;
use immanant_lab::harness::{run_suite, CaseId, TrialReport};
use immanant_lab::io::{parse_character_table, parse_matrix};
use immanant_lab::multilinear::{character_sum_via_symmetrized_action, PowerKind};
use immanant_lab::perm::PermutationGroup;
use immanant_lab::rng::{random_hermitian, random_matrix, RngSeed};
use immanant_lab::{Complex, Error, Functional64, Matrix64};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_APPLICABILITY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "immanant-lab",
    version,
    about = "Generalized matrix functions, operator inequalities, and their randomized verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a functional ("tr", "det", "per", "imm:<table.json>",
    /// "p:<r>", "e:<r>", "s:<r>") on a matrix read from a JSON file.
    Compute {
        /// Functional specification string.
        spec: String,
        /// Path to the matrix JSON file.
        matrix: PathBuf,
    },
    /// Run the bundled reference checks: fixture determinants, positivity
    /// verdicts, the induced-map calibration, and power trace identities.
    Verify {
        /// Emit a machine-readable {check: "pass"|"fail"} map.
        #[arg(long)]
        json: bool,
        /// Directory holding the fixture files (default: auto-detect).
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Run the randomized inequality suite and the geometry sample suite.
    Suite {
        /// Comma-separated case keys; "geometry" selects the vector-triple
        /// checks. Defaults to every case plus geometry.
        #[arg(long, value_delimiter = ',')]
        cases: Option<Vec<String>>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Outer block dimension.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Inner (matrix) dimension.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report to stdout instead of the summary table.
        #[arg(long)]
        json: bool,
    },
    /// Sample the vector-geometry checks and report margins per check.
    Angles {
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { spec, matrix } => cmd_compute(&spec, &matrix),
        Command::Verify { json, fixtures } => cmd_verify(json, fixtures.as_deref()),
        Command::Suite {
            cases,
            trials,
            m,
            n,
            tol,
            seed,
            out,
            json,
        } => cmd_suite(cases, trials, m, n, tol, seed, out.as_deref(), json),
        Command::Angles {
            samples,
            seed,
            tol,
            json,
        } => cmd_angles(samples, seed, tol, json),
    }
}

/// Applies `IMMANANT_LAB_THREADS` to the global worker pool if set.
fn configure_threads() {
    if let Ok(raw) = std::env::var("IMMANANT_LAB_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => eprintln!("warning: ignoring IMMANANT_LAB_THREADS={raw:?} (want a positive integer)"),
        }
    }
}

fn error_exit(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Parse(_) => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_APPLICABILITY),
    }
}

fn read_file(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_USAGE)
    })
}

/// Rounds to 15 significant digits and prints integers without an exponent.
fn fmt15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("own formatting");
    if rounded.fract() == 0.0 && rounded.abs() < 1e15 {
        format!("{}", rounded as i64)
    } else {
        format!("{rounded:.14e}")
    }
}

fn parse_functional(spec: &str) -> Result<Functional64, ExitCode> {
    let build_indexed = |tail: &str, what: &str| -> Result<usize, ExitCode> {
        match tail.parse::<usize>() {
            Ok(r) if r >= 1 => Ok(r),
            _ => {
                eprintln!("error: {what} wants a positive integer order, got {tail:?}");
                Err(ExitCode::from(EXIT_USAGE))
            }
        }
    };
    match spec {
        "tr" => Ok(Functional64::Trace),
        "det" => Ok(Functional64::Determinant),
        "per" => Ok(Functional64::Permanent),
        _ => {
            if let Some(tail) = spec.strip_prefix("p:") {
                Ok(Functional64::TracePower {
                    r: build_indexed(tail, "p:<r>")?,
                })
            } else if let Some(tail) = spec.strip_prefix("e:") {
                Ok(Functional64::MinorSum {
                    r: build_indexed(tail, "e:<r>")?,
                })
            } else if let Some(tail) = spec.strip_prefix("s:") {
                Ok(Functional64::PermanentalSum {
                    r: build_indexed(tail, "s:<r>")?,
                })
            } else if let Some(path) = spec.strip_prefix("imm:") {
                let text = read_file(Path::new(path))?;
                let (group, character) = parse_character_table::<f64>(&text)
                    .map_err(|e| error_exit(&e))?;
                Ok(Functional64::CharacterSum { group, character })
            } else {
                eprintln!(
                    "error: unknown functional {spec:?} (expected tr, det, per, imm:<file>, p:<r>, e:<r>, s:<r>)"
                );
                Err(ExitCode::from(EXIT_USAGE))
            }
        }
    }
}

fn cmd_compute(spec: &str, matrix_path: &Path) -> ExitCode {
    let functional = match parse_functional(spec) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let text = match read_file(matrix_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let matrix = match parse_matrix::<f64>(&text) {
        Ok(m) => m,
        Err(e) => return error_exit(&e),
    };
    match functional.evaluate(&matrix) {
        Ok(value) => {
            println!("{} {}", fmt15(value.re), fmt15(value.im));
            ExitCode::SUCCESS
        }
        Err(e) => error_exit(&e),
    }
}

/// Locates the fixture directory: an explicit flag wins; otherwise walk
/// upward from the working directory looking for `fixtures/matrix_b.json`.
fn locate_fixtures(explicit: Option<&Path>) -> Result<PathBuf, ExitCode> {
    if let Some(dir) = explicit {
        return Ok(dir.to_path_buf());
    }
    let mut probe = std::env::current_dir().map_err(|e| {
        eprintln!("error: cannot resolve the working directory: {e}");
        ExitCode::from(EXIT_USAGE)
    })?;
    loop {
        let candidate = probe.join("fixtures");
        if candidate.join("matrix_b.json").is_file() {
            return Ok(candidate);
        }
        if !probe.pop() {
            eprintln!(
                "error: no fixtures directory found above the working directory; pass --fixtures"
            );
            return Err(ExitCode::from(EXIT_USAGE));
        }
    }
}

struct CheckList {
    results: Vec<(&'static str, bool)>,
}

impl CheckList {
    fn new() -> Self {
        Self {
            results: Vec::new(),
        }
    }

    fn record(&mut self, name: &'static str, pass: bool) {
        self.results.push((name, pass));
    }

    fn failed(&self) -> Vec<&'static str> {
        self.results
            .iter()
            .filter(|(_, pass)| !pass)
            .map(|(name, _)| *name)
            .collect()
    }
}

fn cmd_verify(json: bool, fixtures: Option<&Path>) -> ExitCode {
    let dir = match locate_fixtures(fixtures) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let load = |name: &str| -> Result<Matrix64, ExitCode> {
        let text = read_file(&dir.join(name))?;
        parse_matrix::<f64>(&text).map_err(|e| error_exit(&e))
    };
    let b = match load("matrix_b.json") {
        Ok(m) => m,
        Err(code) => return code,
    };
    let c = match load("matrix_c.json") {
        Ok(m) => m,
        Err(code) => return code,
    };

    let mut checks = CheckList::new();
    match run_reference_checks(&b, &c, &mut checks) {
        Ok(()) => {}
        Err(e) => return error_exit(&e),
    }

    if json {
        let map: serde_json::Map<String, serde_json::Value> = checks
            .results
            .iter()
            .map(|(name, pass)| {
                (
                    name.to_string(),
                    serde_json::Value::String(if *pass { "pass" } else { "fail" }.into()),
                )
            })
            .collect();
        println!("{}", serde_json::Value::Object(map));
    } else {
        for (name, pass) in &checks.results {
            println!("{name}: {}", if *pass { "pass" } else { "fail" });
        }
    }
    let failed = checks.failed();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        ExitCode::from(EXIT_FAILURE)
    }
}

fn run_reference_checks(
    b: &Matrix64,
    c: &Matrix64,
    checks: &mut CheckList,
) -> Result<(), Error> {
    let tol = 1e-8;

    let det_b = b.determinant()?;
    checks.record("det_b", (det_b.re - -4.0).abs() < 1e-9 && det_b.im.abs() < 1e-9);

    let abs_c = entrywise_abs(c);
    let det_abs_c = abs_c.determinant()?;
    checks.record(
        "det_abs_c",
        (det_abs_c.re - -364.0).abs() < 1e-9 && det_abs_c.im.abs() < 1e-9,
    );

    checks.record("abs_b_psd", is_psd(&entrywise_abs(b), tol)?.holds);
    checks.record("c_psd", is_psd(c, tol)?.holds);
    checks.record("b_not_psd", !is_psd(b, tol)?.holds);
    checks.record("abs_c_not_psd", !is_psd(&abs_c, tol)?.holds);

    // Induced-map calibration: the projected tensor action recovers the
    // character sum of the transpose, for every irreducible character of
    // the degree-3 symmetric group; the sign character also matches the
    // determinant.
    let group = PermutationGroup::symmetric(3)?;
    let a = random_matrix::<f64>(3, 3, RngSeed(2024));
    let at = a.transpose();
    let rel = |x: Complex<f64>, y: Complex<f64>| {
        (x - y).norm() <= 1e-7 * (1.0 + y.norm())
    };
    for (partition, name) in [
        (vec![3usize], "induced_trivial"),
        (vec![2, 1], "induced_hook"),
        (vec![1, 1, 1], "induced_sign"),
    ] {
        let chi = CharacterFunction::<f64>::sn_irreducible(&group, &partition)?;
        let via_action = character_sum_via_symmetrized_action(&a, &group, &chi)?;
        let direct = immanant(&at, &group, &chi)?;
        let mut pass = rel(via_action, direct);
        if name == "induced_sign" {
            pass = pass && rel(via_action, at.determinant()?);
        }
        checks.record(name, pass);
    }

    // Power trace identities on a reference Hermitian sample.
    let h = random_hermitian::<f64>(3, RngSeed(2025));
    let tr = h.trace()?;
    let eig = immanant_lab::eigen::eigenvalues(&h)?;
    let e2 = eig[0] * eig[1] + eig[0] * eig[2] + eig[1] * eig[2];
    let s2: f64 = {
        let mut total = 0.0;
        for i in 0..3 {
            for j in i..3 {
                total += eig[i] * eig[j];
            }
        }
        total
    };
    let tensor_tr = PowerKind::Tensor.apply(&h, 2)?.trace()?;
    let wedge_tr = PowerKind::Wedge.apply(&h, 2)?.trace()?;
    let vee_tr = PowerKind::Vee.apply(&h, 2)?.trace()?;
    checks.record("trace_tensor", rel(tensor_tr, tr * tr));
    checks.record(
        "trace_wedge",
        rel(wedge_tr, Complex::new(e2, 0.0)),
    );
    checks.record("trace_vee", rel(vee_tr, Complex::new(s2, 0.0)));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    cases: Option<Vec<String>>,
    trials: usize,
    m: usize,
    n: usize,
    tol: f64,
    seed: u64,
    out: Option<&Path>,
    json: bool,
) -> ExitCode {
    let mut selected: Vec<CaseId> = Vec::new();
    let mut include_geometry = false;
    match &cases {
        None => {
            selected = CaseId::ALL.to_vec();
            include_geometry = true;
        }
        Some(keys) => {
            for key in keys {
                if key == "geometry" {
                    include_geometry = true;
                } else {
                    match CaseId::parse(key) {
                        Ok(case) => selected.push(case),
                        Err(e) => return error_exit(&e),
                    }
                }
            }
        }
    }
    if trials > 0 && (n < 2 || m < 1) {
        eprintln!("error: suite needs n >= 2 and m >= 1");
        return ExitCode::from(EXIT_USAGE);
    }

    let reports: Vec<TrialReport> = match run_suite::<f64>(&selected, trials, m, n, tol, RngSeed(seed))
    {
        Ok(r) => r,
        Err(e) => return error_exit(&e),
    };
    let geometry = if include_geometry {
        match run_geometry_suite::<f64>(trials, RngSeed(seed), tol) {
            Ok(g) => Some(g),
            Err(e) => return error_exit(&e),
        }
    } else {
        None
    };

    let report = serde_json::json!({
        "config": {
            "trials": trials,
            "m": m,
            "n": n,
            "tol": tol,
            "seed": seed,
        },
        "inequalities": reports,
        "geometry": geometry,
    });
    let rendered = serde_json::to_string_pretty(&report).expect("report serialization");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    if json {
        println!("{rendered}");
    } else {
        for r in &reports {
            println!(
                "{:<24} {:<12} trials {:>5}  failures {:>3}  worst margin {:+.3e}",
                r.case, r.functional, r.trials, r.failures, r.worst_margin
            );
        }
        if let Some(g) = &geometry {
            for c in &g.checks {
                println!(
                    "geometry/{:<16} samples {:>5}  violations {:>3}  worst margin {:+.3e}",
                    c.name, c.samples, c.violations, c.worst_margin
                );
            }
        }
    }

    let harness_failures: usize = reports.iter().map(|r| r.failures).sum();
    let geometry_violations = geometry.as_ref().map_or(0, |g| g.total_violations());
    if harness_failures + geometry_violations == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "failures: {harness_failures} inequality trial(s), {geometry_violations} geometry sample(s)"
        );
        ExitCode::from(EXIT_FAILURE)
    }
}

fn cmd_angles(samples: usize, seed: u64, tol: f64, json: bool) -> ExitCode {
    let report = match run_geometry_suite::<f64>(samples, RngSeed(seed), tol) {
        Ok(r) => r,
        Err(e) => return error_exit(&e),
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serialization")
        );
    } else {
        for c in &report.checks {
            println!(
                "{:<18} samples {:>6}  violations {:>4}  worst margin {:+.3e}",
                c.name, c.samples, c.violations, c.worst_margin
            );
        }
    }
    if report.total_violations() == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!("{} geometry sample(s) violated a margin", report.total_violations());
        ExitCode::from(EXIT_FAILURE)
    }
}

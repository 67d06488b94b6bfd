//! Batch CLI for the groupoid laboratory.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse
//! error. `--json` switches the report to a single JSON document.

mod report;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use groupoid_lab::complexes::{lace_sequence, verify_lace_sequence};
use groupoid_lab::exterior::{degree2_pullback_matrix, fixed_vectors, pullback, torus};
use groupoid_lab::geometry::SpherePoint;
use groupoid_lab::groupoid::{is_n_associative_exhaustive, load, validate, FiniteLocalGroupoid};
use groupoid_lab::ladder::{
    calibration_residual, ladder_associator, ladder_inside_out, LadderConfig, DEFAULT_STEP,
};
use groupoid_lab::sphere::{
    factor_gadget_base, factor_gadget_letters, tetrahedron_witness, ProductSphereGroupoid,
    WindowedSphereGroupoid,
};
use groupoid_lab::words::{ac_explore, evaluate, find_associators};

use report::{ReportBuilder, RunReport};

const FOUR_PI: f64 = 4.0 * PI;

#[derive(Parser)]
#[command(
    name = "groupoid-lab",
    about = "Local-groupoid laboratory: sphere-area groupoids, word rewriting, good complexes, laces, and an exact exterior algebra",
    version
)]
struct Cli {
    /// Seed recorded in the report (all subcommands are deterministic).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Override the subcommand's default tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit the report as a single JSON document.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both bracketings of the six-arrow tetrahedron word.
    Tetrahedron,
    /// Associator search on the coupled product groupoid over S²×S².
    HLambda(HLambdaArgs),
    /// Calibrate the ladder bands and evaluate the associator word.
    Ladder(LadderArgs),
    /// Emit (and optionally verify) the lace edge sequence.
    Lace(LaceArgs),
    /// All exterior-algebra reproductions of the 4-torus suspension.
    TorusCheck,
    /// Bounded associative-completion exploration of a groupoid file.
    Ac(AcArgs),
    /// Axiom report for a groupoid file.
    Validate(FileArg),
    /// n-associativity check with witness printing.
    AssocCheck(AssocArgs),
}

#[derive(Args)]
struct HLambdaArgs {
    /// Coupling parameter, exact rational `p/q` or decimal.
    #[arg(long = "lambda")]
    lambda: String,
    /// Longest word to search (≤ 12).
    #[arg(long = "max-len", default_value_t = 12)]
    max_len: usize,
}

#[derive(Args)]
struct LadderArgs {
    /// Deepest rung band to calibrate and evaluate.
    #[arg(long)]
    n: i64,
}

#[derive(Args)]
struct LaceArgs {
    /// Triangulation parameter (1..=64).
    #[arg(long)]
    k: u32,
    /// Run the verifier on the emitted sequence.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct FileArg {
    #[arg(long)]
    file: PathBuf,
}

#[derive(Args)]
struct AcArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long = "max-len")]
    max_len: usize,
}

#[derive(Args)]
struct AssocArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    n: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(report) => report,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> Result<RunReport, String> {
    match &cli.command {
        Command::Tetrahedron => Ok(run_tetrahedron(cli)),
        Command::HLambda(args) => run_h_lambda(cli, args),
        Command::Ladder(args) => run_ladder(cli, args),
        Command::Lace(args) => run_lace(cli, args),
        Command::TorusCheck => Ok(run_torus_check(cli)),
        Command::Ac(args) => run_ac(cli, args),
        Command::Validate(args) => run_validate(cli, args),
        Command::AssocCheck(args) => run_assoc_check(cli, args),
    }
}

fn base_report(cli: &Cli, command: &str) -> ReportBuilder {
    let mut b = ReportBuilder::new(command);
    b.param("seed", cli.seed);
    b
}

fn run_tetrahedron(cli: &Cli) -> RunReport {
    let tol = cli.tol.unwrap_or(1e-9);
    let mut b = base_report(cli, "tetrahedron");
    b.param("tol", tol);
    let g = WindowedSphereGroupoid::default();
    let w = tetrahedron_witness();
    let labels = ["F", "E", "D", "C", "B", "A"];
    b.result("word", labels.join(" "));
    b.result("bracketing_pos", w.tree_pos.render(&labels));
    b.result("bracketing_neg", w.tree_neg.render(&labels));
    let pos = evaluate(&g, &w.letters, &w.tree_pos);
    let neg = evaluate(&g, &w.letters, &w.tree_neg);
    match (pos, neg) {
        (Some(pos), Some(neg)) => {
            b.result("area_pos", pos.area);
            b.result("area_neg", neg.area);
            b.result("difference", pos.area - neg.area);
            b.check(
                "positive-evaluation",
                (pos.area - 2.0 * PI).abs() < tol,
                format!("{} vs +2π", pos.area),
            );
            b.check(
                "negative-evaluation",
                (neg.area + 2.0 * PI).abs() < tol,
                format!("{} vs −2π", neg.area),
            );
            b.check(
                "difference-4pi",
                ((pos.area - neg.area) - FOUR_PI).abs() < tol,
                format!("{} vs 4π", pos.area - neg.area),
            );
        }
        _ => {
            b.check("evaluations-defined", false, "a partial product was undefined");
        }
    }
    b.finish()
}

/// λ as an exact rational `p/q` or a decimal.
fn parse_lambda(text: &str) -> Result<(f64, Option<(i64, i64)>), String> {
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|e| format!("bad rational: {e}"))?;
        let q: i64 = q.trim().parse().map_err(|e| format!("bad rational: {e}"))?;
        if q == 0 {
            return Err("rational with zero denominator".into());
        }
        Ok((p as f64 / q as f64, Some((p, q))))
    } else {
        let v: f64 = text.trim().parse().map_err(|e| format!("bad decimal: {e}"))?;
        Ok((v, None))
    }
}

/// Distance from `value` to the lattice 4π(ℤ + λℤ), together with the
/// best coefficients. Rational λ = p/q routes through exact lattice
/// membership: the lattice is (4π·gcd(|p|, q)/q)·ℤ.
fn lattice_residual(value: f64, lambda: f64, rational: Option<(i64, i64)>) -> (f64, i64, i64) {
    if let Some((p, q)) = rational {
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
        let step = FOUR_PI * g as f64 / q.abs() as f64;
        let t = (value / step).round();
        let residual = (value - t * step).abs();
        // represent t·(g/q) = n + m·(p/q): one valid choice is m·p ≡ t·g (mod q)
        let (n, m) = lattice_coefficients_rational(t as i64, p, q, g);
        (residual, n, m)
    } else {
        let mut best = (f64::INFINITY, 0i64, 0i64);
        for n in -8..=8 {
            for m in -8..=8 {
                let r = (value - FOUR_PI * (n as f64 + m as f64 * lambda)).abs();
                if r < best.0 {
                    best = (r, n, m);
                }
            }
        }
        best
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Finds (n, m) with n + m·(p/q) = t·g/q, |m| minimal.
fn lattice_coefficients_rational(t: i64, p: i64, q: i64, g: i64) -> (i64, i64) {
    let q = q.abs();
    for m in 0..q {
        for m in [m, -m] {
            let num = t * g - m * p;
            if num % q == 0 {
                return (num / q, m);
            }
        }
    }
    (t * g / q, 0)
}

fn run_h_lambda(cli: &Cli, args: &HLambdaArgs) -> Result<RunReport, String> {
    let (lambda, rational) = parse_lambda(&args.lambda)?;
    if args.max_len > 12 {
        return Err("--max-len is capped at 12".into());
    }
    let tol = cli.tol.unwrap_or(1e-6);
    let mut b = base_report(cli, "h-lambda");
    b.param("lambda", lambda);
    if let Some((p, q)) = rational {
        b.param("lambda_exact", format!("{p}/{q}"));
    }
    b.param("max_len", args.max_len as u64);
    b.param("tol", tol);

    let g = ProductSphereGroupoid::new(lambda);
    let frozen = SpherePoint::normalize([0.0, 0.0, 1.0]).expect("pole is unit");
    let mut values: Vec<(f64, usize, usize)> = Vec::new(); // (area, factor, word length)
    for factor in 0..2 {
        let letters = factor_gadget_letters(factor, frozen);
        let base = factor_gadget_base(factor, frozen);
        for record in find_associators(&g, &letters, args.max_len, &base) {
            values.push((record.g.area, factor, record.word.len()));
        }
    }
    values.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite areas"));

    let mut rows = Vec::new();
    let mut all_in_lattice = true;
    for &(value, factor, word_len) in &values {
        let (residual, n, m) = lattice_residual(value, lambda, rational);
        all_in_lattice &= residual < tol;
        rows.push(json!({
            "area": value,
            "factor": factor,
            "word_length": word_len,
            "lattice_n": n,
            "lattice_m": m,
            "residual": residual,
        }));
    }
    b.result("associators_found", rows.len() as u64);
    b.result("associators", serde_json::Value::Array(rows));
    b.check(
        "nonempty",
        !values.is_empty(),
        format!("{} associator values", values.len()),
    );
    b.check(
        "values-in-lattice",
        all_in_lattice,
        format!("residuals vs 4π(ℤ + λℤ) below {tol:e}"),
    );
    Ok(b.finish())
}

fn run_ladder(cli: &Cli, args: &LadderArgs) -> Result<RunReport, String> {
    if args.n < 1 {
        return Err("--n must be at least 1".into());
    }
    let tol = cli.tol.unwrap_or(1e-5);
    let mut b = base_report(cli, "ladder");
    b.param("n", args.n);
    b.param("tol", tol);
    let cfg = LadderConfig::calibrated(args.n, DEFAULT_STEP).map_err(|e| e.to_string())?;
    let mut calibration = Vec::new();
    let mut residual_ok = true;
    for band in 1..=args.n {
        let c = cfg.amplitude(band).expect("band calibrated");
        let r = calibration_residual(band, c, DEFAULT_STEP).abs();
        residual_ok &= r < 1e-10;
        calibration.push(json!({ "band": band, "amplitude": c, "residual": r }));
    }
    b.result("calibration", serde_json::Value::Array(calibration));
    b.check("calibration-residuals", residual_ok, "below 1e-10");

    let inside = ladder_inside_out(args.n, &cfg).map_err(|e| e.to_string())?;
    match inside {
        Some(p) => {
            b.result("inside_out", json!([p.x, p.y]));
            b.check(
                "inside-out-neutral",
                p.x.abs() < 1e-8 && p.y.abs() < 1e-8,
                format!("({}, {}) vs (0, 0)", p.x, p.y),
            );
        }
        None => {
            b.check("inside-out-neutral", false, "flow left the ladder region");
        }
    }
    let assoc = ladder_associator(args.n, &cfg).map_err(|e| e.to_string())?;
    match assoc {
        Some(p) => {
            let expected = 1.0 / (100.0 * args.n as f64);
            b.result("associator", json!([p.x, p.y]));
            b.result("expected", json!([expected, 0.0]));
            b.check(
                "associator-value",
                (p.x - expected).abs() < tol && p.y.abs() < tol,
                format!("({}, {}) vs ({expected}, 0)", p.x, p.y),
            );
        }
        None => {
            b.check("associator-value", false, "flow left the ladder region");
        }
    }
    Ok(b.finish())
}

fn run_lace(cli: &Cli, args: &LaceArgs) -> Result<RunReport, String> {
    if !(1..=64).contains(&args.k) {
        return Err("--k must be in 1..=64".into());
    }
    let mut b = base_report(cli, "lace");
    b.param("k", args.k);
    let seq = lace_sequence(args.k);
    b.result("edge_count", seq.edge_count() as u64);
    if cli.json {
        let verts: Vec<_> = seq.vertices.iter().map(|&(i, j)| json!([i, j])).collect();
        b.result("path", serde_json::Value::Array(verts));
    } else {
        b.result("path", format!("\n{}", seq.to_text()));
    }
    if args.verify {
        let report = verify_lace_sequence(&seq, args.k);
        for check in &report.checks {
            b.check(check.name, check.passed, check.detail.clone());
        }
    }
    Ok(b.finish())
}

fn run_torus_check(cli: &Cli) -> RunReport {
    let mut b = base_report(cli, "torus-check");
    let m4 = torus::suspension_matrix();
    let induced = degree2_pullback_matrix(&m4).expect("4×4 matrix matches 4 generators");
    let reference = torus::reference_induced_matrix();
    b.result(
        "induced_matrix",
        json!(induced
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    );
    b.check(
        "induced-matrix",
        induced == reference,
        "degree-2 pullback matrix matches entry-for-entry",
    );
    let fixed = fixed_vectors(&reference);
    b.result("fixed_vector_count", fixed.len() as u64);
    b.check(
        "no-nonzero-fixed-points",
        fixed.is_empty(),
        "kernel of (M − I) is trivial",
    );
    let pulled = pullback(&m4, &torus::omega_one()).expect("sizes match");
    b.check(
        "pullback-omega1-is-omega0",
        pulled == torus::omega_zero(),
        "exact equality of forms",
    );
    let coeff = torus::volume_coefficient();
    let displayed = torus::displayed_quadratic();
    b.result("volume_coefficient", coeff.to_string());
    b.result("displayed_quadratic", displayed.to_string());
    b.result(
        "note",
        "computed coefficient is exactly twice the displayed quadratic; \
         the nonvanishing conclusion is unaffected",
    );
    let twice = displayed.scale(groupoid_lab::exterior::Rational::from_integer(2));
    b.check(
        "volume-coefficient-factor",
        coeff == twice,
        "ω_t∧ω_t coefficient equals 2·(3t² − 3t + 1) exactly",
    );
    let half = groupoid_lab::exterior::Rational::new(1, 2);
    let positive = displayed.evaluate(groupoid_lab::exterior::Rational::from_integer(0))
        > groupoid_lab::exterior::Rational::from_integer(0)
        && displayed.evaluate(half) > groupoid_lab::exterior::Rational::from_integer(0);
    b.check(
        "quadratic-positive-on-unit-interval",
        positive,
        "3t² − 3t + 1 has no roots in [0, 1]",
    );
    b.finish()
}

fn load_file(path: &PathBuf) -> Result<FiniteLocalGroupoid, String> {
    load(path).map_err(|e| e.to_string())
}

fn run_ac(cli: &Cli, args: &AcArgs) -> Result<RunReport, String> {
    if args.max_len < 1 {
        return Err("--max-len must be at least 1".into());
    }
    let g = load_file(&args.file)?;
    let mut b = base_report(cli, "ac");
    b.param("file", args.file.display().to_string());
    b.param("max_len", args.max_len as u64);
    let report = ac_explore(&g, args.max_len, 5_000_000);
    b.result("words", report.word_count as u64);
    b.result("classes", report.class_count() as u64);
    let classes: Vec<_> = report
        .classes
        .iter()
        .map(|c| {
            json!({
                "representative": c.representative.iter().map(|&e| g.element_id(e)).collect::<Vec<_>>(),
                "size": c.size,
                "has_singleton": c.has_singleton,
                "touches_frontier": c.touches_frontier,
            })
        })
        .collect();
    b.result("class_table", serde_json::Value::Array(classes));
    b.check(
        "exploration-complete",
        !report.truncated,
        "word budget not exhausted",
    );
    Ok(b.finish())
}

fn run_validate(cli: &Cli, args: &FileArg) -> Result<RunReport, String> {
    let g = load_file(&args.file)?;
    let mut b = base_report(cli, "validate");
    b.param("file", args.file.display().to_string());
    let report = validate(&g);
    b.result("violations", report.violations.len() as u64);
    let rows: Vec<_> = report
        .violations
        .iter()
        .map(|v| serde_json::Value::String(v.to_string()))
        .collect();
    b.result("violation_table", serde_json::Value::Array(rows));
    b.check(
        "axioms",
        report.is_clean(),
        format!("{} violations", report.violations.len()),
    );
    Ok(b.finish())
}

fn run_assoc_check(cli: &Cli, args: &AssocArgs) -> Result<RunReport, String> {
    if !(3..=10).contains(&args.n) {
        return Err("--n must be in 3..=10".into());
    }
    let g = load_file(&args.file)?;
    let mut b = base_report(cli, "assoc-check");
    b.param("file", args.file.display().to_string());
    b.param("n", args.n as u64);
    match is_n_associative_exhaustive(&g, args.n) {
        None => {
            b.check("n-associative", true, format!("exhaustive up to order {}", args.n));
        }
        Some(w) => {
            let ids: Vec<&str> = w.tuple.iter().map(|&e| g.element_id(e)).collect();
            b.result("witness_tuple", ids.join(" "));
            b.result("witness_tree_a", w.tree_a.render(&ids));
            b.result("witness_tree_b", w.tree_b.render(&ids));
            b.result("witness_value_a", g.element_id(w.value_a));
            b.result("witness_value_b", g.element_id(w.value_b));
            b.check(
                "n-associative",
                false,
                format!(
                    "{} evaluates to {} but {} evaluates to {}",
                    w.tree_a.render(&ids),
                    g.element_id(w.value_a),
                    w.tree_b.render(&ids),
                    g.element_id(w.value_b),
                ),
            );
        }
    }
    Ok(b.finish())
}

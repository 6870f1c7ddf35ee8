//! Command-line verification harness: load or build a Kac algebra, verify
//! its axioms, run the randomized inequality suite, enumerate biprojections
//! and bi-shifts, and check the minimizer equivalence, writing
//! machine-readable reports (report.json, violations.csv, minimizers.csv,
//! certs/*.json).
//!
//! Exit codes: 0 all checks pass, 1 a suite failed or a consistency alarm
//! fired, 2 the algebra could not be loaded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kacalg::biproj::{
    enumerate_biprojections, enumerate_right_shifts, find_bi_shift, BiprojError,
    DEFAULT_DIMENSION_CAP,
};
use kacalg::builders::{function_algebra, group_algebra, GroupTable};
use kacalg::dual::build_dual;
use kacalg::fourier::{inequality_suite, random_element, uncertainty_report};
use kacalg::minimizer::{check_main_theorem, hardy_scalar, uniqueness_dimension, HardyError};
use kacalg::{BlockOperator, Complex64, FiniteKacAlgebra, ToleranceConfig};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "kacalg",
    version,
    about = "Verification harness for Fourier analysis on finite quantum groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the algebra axioms and run the randomized inequality suite
    Verify(VerifyArgs),
    /// Enumerate biprojections and bi-shifts and check the minimizer equivalence
    Minimizers(MinimizersArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Algebra source: zn:N, zn-group:N, s3-function, s3-group, d4-function,
    /// d4-group, q8-function, q8-group, or file:PATH
    #[arg(long)]
    algebra: String,
    /// Seed for all random sampling
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override the equality tolerance (rank tolerance scales to a tenth)
    #[arg(long)]
    tol: Option<f64>,
    /// Output directory for reports
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of random elements for the inequality suite
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Which checks to run: axioms, inequalities, or all
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Args)]
struct MinimizersArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of random non-minimizer elements to score
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Which checks to run: minimizers, hardy, or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Element files added to the biprojection candidate grid
    #[arg(long)]
    element: Vec<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(args) => cmd_verify(&args),
        Command::Minimizers(args) => cmd_minimizers(&args),
    };
    ExitCode::from(code)
}

fn tolerances(common: &CommonArgs) -> Result<ToleranceConfig, String> {
    match common.tol {
        None => Ok(ToleranceConfig::default()),
        Some(t) => ToleranceConfig::with_eq_tol(t).map_err(|e| e.to_string()),
    }
}

fn load_algebra(spec: &str, tol: &ToleranceConfig) -> Result<FiniteKacAlgebra, String> {
    let build_group = |t: &GroupTable| group_algebra(t, tol).map_err(|e| e.to_string());
    if let Some(n) = spec.strip_prefix("zn:") {
        let n: usize = n.parse().map_err(|_| format!("bad order in {spec}"))?;
        if n == 0 {
            return Err("cyclic order must be positive".into());
        }
        return Ok(function_algebra(&GroupTable::cyclic(n)));
    }
    if let Some(n) = spec.strip_prefix("zn-group:") {
        let n: usize = n.parse().map_err(|_| format!("bad order in {spec}"))?;
        if n == 0 {
            return Err("cyclic order must be positive".into());
        }
        return build_group(&GroupTable::cyclic(n));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return kacalg::io::read_algebra(Path::new(path), format!("file:{path}"))
            .map_err(|e| e.to_string());
    }
    match spec {
        "s3-function" => Ok(function_algebra(&GroupTable::s3())),
        "d4-function" => Ok(function_algebra(&GroupTable::d4())),
        "q8-function" => Ok(function_algebra(&GroupTable::q8())),
        "s3-group" => build_group(&GroupTable::s3()),
        "d4-group" => build_group(&GroupTable::d4()),
        "q8-group" => build_group(&GroupTable::q8()),
        other => Err(format!("unknown algebra source `{other}`")),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    }
    std::fs::write(path, contents).map_err(|e| e.to_string())
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    let tol = match tolerances(&args.common) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let algebra = match load_algebra(&args.common.algebra, &tol) {
        Ok(k) => k,
        Err(e) => {
            eprintln!("error: cannot load algebra: {e}");
            return 2;
        }
    };
    let run_axioms = matches!(args.suite.as_str(), "axioms" | "all");
    let run_inequalities = matches!(args.suite.as_str(), "inequalities" | "all");
    if !run_axioms && !run_inequalities {
        eprintln!("error: unknown suite `{}` for verify", args.suite);
        return 2;
    }

    let report = algebra.verify_axioms(&tol);
    let axioms_pass = report.passes();
    let mut csv = String::from("sample_id,inequality_name,lhs,rhs,violation\n");
    if run_axioms {
        for entry in &report.entries {
            let violation = if entry.residual >= tol.eq_tol {
                entry.residual
            } else {
                0.0
            };
            let _ = writeln!(
                csv,
                "axiom,{},{},{},{}",
                entry.name, entry.residual, tol.eq_tol, violation
            );
        }
    }

    let mut suite_pass = true;
    let mut suite_json = serde_json::Value::Null;
    if run_inequalities {
        if axioms_pass {
            let pair = match build_dual(&algebra, &tol) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: dual construction failed: {e}");
                    return 1;
                }
            };
            let suite = inequality_suite(&pair, args.samples, args.common.seed, &tol);
            for row in &suite.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    row.sample, row.name, row.lhs, row.rhs, row.violation
                );
            }
            suite_pass = suite.max_violation <= tol.eq_tol;
            suite_json = json!({
                "samples": args.samples,
                "max_violation": suite.max_violation,
                "passes": suite_pass,
            });
        } else {
            suite_pass = false;
            suite_json = json!({ "skipped": "axiom verification failed" });
        }
    }

    let report_json = json!({
        "algebra": args.common.algebra,
        "label": algebra.label,
        "seed": args.common.seed,
        "eq_tol": tol.eq_tol,
        "axioms": {
            "residuals": report
                .entries
                .iter()
                .map(|e| (e.name.to_string(), e.residual))
                .collect::<std::collections::BTreeMap<_, _>>(),
            "max_residual": report.max_residual(),
            "passes": axioms_pass,
        },
        "inequalities": suite_json,
    });

    let out = &args.common.out;
    if let Err(e) = write_file(
        &out.join("report.json"),
        &serde_json::to_string_pretty(&report_json).expect("serializable"),
    ) {
        eprintln!("error: {e}");
        return 1;
    }
    if let Err(e) = write_file(&out.join("violations.csv"), &csv) {
        eprintln!("error: {e}");
        return 1;
    }

    let pass = (!run_axioms || axioms_pass) && (!run_inequalities || suite_pass);
    println!(
        "verify {}: axioms {} (max residual {:.3e}){}",
        algebra.label,
        if axioms_pass { "ok" } else { "FAILED" },
        report.max_residual(),
        if run_inequalities && axioms_pass {
            format!(", inequalities {}", if suite_pass { "ok" } else { "FAILED" })
        } else {
            String::new()
        }
    );
    if pass {
        0
    } else {
        1
    }
}

struct MinimizerRow {
    element_id: String,
    candidate: String,
    verdict: kacalg::MinimizerVerdict,
    hb_deficit: f64,
    ds_product: f64,
}

fn cmd_minimizers(args: &MinimizersArgs) -> u8 {
    let tol = match tolerances(&args.common) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let algebra = match load_algebra(&args.common.algebra, &tol) {
        Ok(k) => k,
        Err(e) => {
            eprintln!("error: cannot load algebra: {e}");
            return 2;
        }
    };
    let run_minimizers = matches!(args.suite.as_str(), "minimizers" | "all");
    let run_hardy = matches!(args.suite.as_str(), "hardy" | "all");
    if !run_minimizers && !run_hardy {
        eprintln!("error: unknown suite `{}` for minimizers", args.suite);
        return 2;
    }
    let pair = match build_dual(&algebra, &tol) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build the dual pair: {e}");
            return 2;
        }
    };

    let mut user_candidates: Vec<BlockOperator> = Vec::new();
    for path in &args.element {
        match kacalg::io::read_element(path) {
            Ok(x) => user_candidates.push(x),
            Err(e) => {
                eprintln!("error: cannot read element {}: {e}", path.display());
                return 2;
            }
        }
    }

    let mut alarms: Vec<String> = Vec::new();
    let mut rows: Vec<MinimizerRow> = Vec::new();
    let mut certs = Vec::new();

    let biprojections =
        match enumerate_biprojections(&pair, &user_candidates, &tol, DEFAULT_DIMENSION_CAP) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("error: biprojection enumeration failed: {e}");
                return 1;
            }
        };

    let reversed = pair.reversed();
    for (bi, b) in biprojections.iter().enumerate() {
        let shifts = match enumerate_right_shifts(&pair, b, &tol) {
            Ok(s) => s,
            Err(e) => {
                alarms.push(format!("shift enumeration failed for biprojection {bi}: {e}"));
                continue;
            }
        };
        let b_tilde = pair.fourier(b).range_projection(&tol);
        let dual_shifts = match enumerate_right_shifts(&reversed, &b_tilde, &tol) {
            Ok(s) => s,
            Err(e) => {
                alarms.push(format!(
                    "dual shift enumeration failed for biprojection {bi}: {e}"
                ));
                continue;
            }
        };
        for (si, bg) in shifts.iter().enumerate() {
            for (di, bh) in dual_shifts.iter().enumerate() {
                let candidate = format!("biproj{bi}/shift{si}/dualshift{di}");
                match find_bi_shift(&pair, bg, bh, Some(b), &tol) {
                    Ok(cert) => {
                        let mut cert = cert;
                        cert.provenance = format!("{} {}", algebra.label, candidate);
                        certs.push((candidate.clone(), cert));
                    }
                    Err(BiprojError::ZeroResult) => {
                        alarms.push(format!("no witness produced a bi-shift for {candidate}"));
                    }
                    Err(e) => {
                        alarms.push(format!("bi-shift construction failed for {candidate}: {e}"));
                    }
                }
            }
        }
    }

    if run_minimizers {
        for (idx, (candidate, cert)) in certs.iter().enumerate() {
            let verdict = check_main_theorem(&pair, &cert.element, &tol)
                .map_err(|e| e.to_string());
            let report =
                uncertainty_report(&pair, &cert.element, &tol).map_err(|e| e.to_string());
            match (verdict, report) {
                (Ok(verdict), Ok(report)) => {
                    if !verdict.consistent {
                        alarms.push(format!("inconsistent verdict for bi-shift {candidate}"));
                    } else if !verdict.all_true() {
                        alarms.push(format!("certified bi-shift {candidate} is not a minimizer"));
                    }
                    rows.push(MinimizerRow {
                        element_id: format!("bishift{idx}"),
                        candidate: candidate.clone(),
                        verdict,
                        hb_deficit: report.hb_deficit,
                        ds_product: report.ds_product,
                    });
                }
                (Err(e), _) | (_, Err(e)) => {
                    alarms.push(format!("verdict failed for {candidate}: {e}"));
                }
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
        for r in 0..args.random {
            let x = random_element(pair.primal(), &mut rng);
            let verdict = check_main_theorem(&pair, &x, &tol).map_err(|e| e.to_string());
            let report = uncertainty_report(&pair, &x, &tol).map_err(|e| e.to_string());
            match (verdict, report) {
                (Ok(verdict), Ok(report)) => {
                    if !verdict.consistent {
                        alarms.push(format!("inconsistent verdict for random sample {r}"));
                    }
                    rows.push(MinimizerRow {
                        element_id: format!("random{r}"),
                        candidate: "random".into(),
                        verdict,
                        hb_deficit: report.hb_deficit,
                        ds_product: report.ds_product,
                    });
                }
                (Err(e), _) | (_, Err(e)) => {
                    alarms.push(format!("verdict failed for random sample {r}: {e}"));
                }
            }
        }
    }

    let mut hardy_json = serde_json::Value::Null;
    if run_hardy {
        let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed ^ 0x4A5D);
        let mut scalar_ok = 0usize;
        let mut hypothesis_failed = 0usize;
        let mut uniqueness_ok = 0usize;
        for (candidate, cert) in &certs {
            let dim = uniqueness_dimension(&pair, &cert.primal_shift, &cert.dual_shift, &tol);
            if dim == 1 {
                uniqueness_ok += 1;
            } else {
                alarms.push(format!(
                    "uniqueness dimension {dim} (expected 1) for {candidate}"
                ));
            }
            for _ in 0..4 {
                let c = Complex64::new(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0);
                let x = cert.element.scale(c);
                let bound = c.norm() + 0.01;
                match hardy_scalar(&pair, &cert.element, &x, bound, bound, &tol) {
                    Ok(_) => scalar_ok += 1,
                    Err(e) => alarms.push(format!("hardy failed on dominated input: {e}")),
                }
                // deliberately broken domination constant
                match hardy_scalar(&pair, &cert.element, &cert.element, 0.5, 2.0, &tol) {
                    Err(HardyError::HypothesisFailed { .. }) => hypothesis_failed += 1,
                    Err(HardyError::TheoremViolation { residual }) => alarms.push(format!(
                        "hardy theorem violation (residual {residual:.3e}) for {candidate}"
                    )),
                    other => alarms.push(format!("unexpected hardy outcome {other:?}")),
                }
            }
        }
        hardy_json = json!({
            "dominated_ok": scalar_ok,
            "hypothesis_failed": hypothesis_failed,
            "uniqueness_ok": uniqueness_ok,
            "certificates": certs.len(),
        });
    }

    // write outputs
    let out = &args.common.out;
    let mut csv = String::from(
        "element_id,algebra,candidate,entropy_equality,ds_equality,extremal_bpi,bishift,consistent,hb_deficit,ds_product\n",
    );
    for row in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            row.element_id,
            algebra.label,
            row.candidate,
            row.verdict.entropy_equality,
            row.verdict.ds_equality,
            row.verdict.extremal_bpi,
            row.verdict.bishift,
            row.verdict.consistent,
            row.hb_deficit,
            row.ds_product
        );
    }
    if let Err(e) = write_file(&out.join("minimizers.csv"), &csv) {
        eprintln!("error: {e}");
        return 1;
    }
    for (i, (_, cert)) in certs.iter().enumerate() {
        let file = kacalg::io::CertificateFile::from_certificate(cert);
        let path = out.join("certs").join(format!("bishift{i:03}.json"));
        if let Err(e) = write_file(
            &path,
            &serde_json::to_string_pretty(&file).expect("serializable"),
        ) {
            eprintln!("error: {e}");
            return 1;
        }
    }
    let report_json = json!({
        "algebra": args.common.algebra,
        "label": algebra.label,
        "seed": args.common.seed,
        "eq_tol": tol.eq_tol,
        "biprojections": biprojections.len(),
        "bi_shifts": certs.len(),
        "rows": rows.len(),
        "alarms": alarms,
        "hardy": hardy_json,
    });
    if let Err(e) = write_file(
        &out.join("report.json"),
        &serde_json::to_string_pretty(&report_json).expect("serializable"),
    ) {
        eprintln!("error: {e}");
        return 1;
    }

    println!(
        "minimizers {}: {} biprojections, {} bi-shifts, {} rows, {} alarms",
        algebra.label,
        biprojections.len(),
        certs.len(),
        rows.len(),
        alarms.len()
    );
    for alarm in &alarms {
        eprintln!("alarm: {alarm}");
    }
    if alarms.is_empty() {
        0
    } else {
        1
    }
}

//! `hkinv`: Hilbert–Kunz-type invariants of Frobenius powers from the
//! command line.
//!
//! Exit codes: 0 success, 1 a theorem-backed check failed, 2 bad input,
//! 3 a resource cap (degree or iteration) was hit.

mod plot;
mod spec;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hk_core::filtration::{fit_hilbert_polynomial, hilbert_samuel_table, DEFAULT_WINDOW};
use hk_core::groebner::DEFAULT_DEGREE_CAP;
use hk_core::hk::paper::{fermat_char2_suite, remark_suite};
use hk_core::hk::rr::DEFAULT_RR_CAP;
use hk_core::hk::{
    estimates_inequality_check, find_minimal_reduction, ratliff_rush_closure, ratliff_rush_of_power,
    stability_check, star_refutation_search, theorem41_check, verify_reduction, Analysis, ReductionData,
};
use hk_core::Ideal;
use log::warn;
use serde::Serialize;
use serde_json::json;

use spec::{Loaded, RingSpec};

const REDUCTION_ATTEMPTS: usize = 20;
const REDUCTION_R_CAP: usize = 10;

#[derive(Parser)]
#[command(name = "hkinv", version, about = "Hilbert-Kunz-type invariants of Frobenius powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal (or of its Frobenius power with --q)
    Gb(RunConfig),
    /// Colength l(R/I), or l(R/I^[q]) with --q
    Length(RunConfig),
    /// Hilbert-Samuel table of the ordinary powers and its fitted polynomial
    Hilbert(RunConfig),
    /// Ratliff-Rush closure of I (or of I^[q]) with its colon-chain transcript
    Rr(RunConfig),
    /// Minimal reduction and reduction number
    Reduce(RunConfig),
    /// Exact Hilbert coefficients of I^[q], checked against a difference-table fit
    Coeffs(RunConfig),
    /// Convergence tables for q = p..p^e_max, written as JSON and CSV into --out
    Ehk(RunConfig),
    /// Exact finite-q closed forms for e1, e2 and the Ratliff-Rush polynomial
    CheckThm41(RunConfig),
    /// The estimate inequality for n = max(r,1)..=n_max and t = 1..=t_max
    CheckIneq(RunConfig),
    /// Test-ideal refutation search over q = p..p^e_max and n = 1..=n_max
    Search(RunConfig),
    /// Membership and equality facts for the char-2 Fermat cubic and the plane example
    VerifyPaper(RunConfig),
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Ring file (JSON)
    ring: PathBuf,
    /// Name of the ideal in the ring file; `m` is the maximal ideal
    #[arg(long, default_value = "m")]
    ideal: String,
    /// Frobenius exponent q = p^e
    #[arg(long)]
    q: Option<u64>,
    /// Largest e in q = p^e (default: 4 in char 2, 2 in char 7, else 1)
    #[arg(long)]
    e_max: Option<u32>,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, default_value_t = 3)]
    t_max: usize,
    /// Seed for the random reduction search
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extra equal steps required by the Ratliff-Rush stopping rule
    #[arg(long, default_value_t = 1)]
    confirm: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u32,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file (directory for `ehk`); stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// A theorem-backed check returned a nonzero residual.
#[derive(Debug)]
struct CheckFailed(String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check failed: {}", self.0)
    }
}

impl std::error::Error for CheckFailed {}

/// A table stopped early at a resource cap; partial output was written.
#[derive(Debug)]
struct Partial(String);

impl fmt::Display for Partial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stopped at a resource cap: {}", self.0)
    }
}

impl std::error::Error for Partial {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<CheckFailed>().is_some() {
        return 1;
    }
    if err.downcast_ref::<Partial>().is_some() {
        return 3;
    }
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<hk_core::Error>() {
            use hk_core::Error::*;
            return match e {
                e if e.is_resource_cap() => 3,
                CmCrossCheck { .. } | VTailNotZero { .. } | ContainmentViolation(_) => 1,
                _ => 2,
            };
        }
    }
    2
}

impl RunConfig {
    fn load(&self) -> anyhow::Result<Loaded> {
        RingSpec::from_path(&self.ring)?.load(self.degree_cap)
    }

    fn e_max(&self, p: u32) -> u32 {
        self.e_max.unwrap_or(match p {
            2 => 4,
            7 => 2,
            _ => 1,
        })
    }

    fn qs(&self, p: u32) -> Vec<u64> {
        (1..=self.e_max(p)).map(|e| (p as u64).pow(e)).collect()
    }

    fn write(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    fn emit<T: Serialize>(&self, value: &T) -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(&text)
    }
}

fn frobenius(ideal: &Ideal, q: Option<u64>) -> anyhow::Result<Ideal> {
    Ok(match q {
        Some(q) => ideal.frobenius_power(q)?,
        None => ideal.clone(),
    })
}

fn reduction_data(loaded: &Loaded, ideal: &Ideal, cfg: &RunConfig) -> anyhow::Result<ReductionData> {
    Ok(match loaded.reduction()? {
        Some(j) => verify_reduction(ideal, &j, REDUCTION_R_CAP)?,
        None => find_minimal_reduction(ideal, cfg.seed, REDUCTION_ATTEMPTS, REDUCTION_R_CAP)?,
    })
}

fn analysis(loaded: &Loaded, cfg: &RunConfig) -> anyhow::Result<Analysis> {
    if !loaded.spec.assert_cm {
        warn!("ring file does not assert Cohen-Macaulay; results rely on the multiplicity cross-check");
    }
    if !loaded.spec.assert_reduced {
        warn!("ring file does not assert reducedness; nonzero ideals are assumed to contain a regular element");
    }
    let ideal = loaded.ideal(&cfg.ideal)?;
    let red = reduction_data(loaded, &ideal, cfg)?;
    Ok(Analysis::new(red, cfg.confirm)?)
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gb(cfg) => {
            let loaded = cfg.load()?;
            let ideal = frobenius(&loaded.ideal(&cfg.ideal)?, cfg.q)?;
            let gb = ideal.groebner()?;
            let basis: Vec<String> = gb.generators().iter().map(|g| loaded.ring.format(g)).collect();
            cfg.emit(&json!({ "ideal": cfg.ideal, "q": cfg.q, "groebner_basis": basis }))
        }
        Command::Length(cfg) => {
            let loaded = cfg.load()?;
            let ideal = frobenius(&loaded.ideal(&cfg.ideal)?, cfg.q)?;
            let len = ideal.colength()?;
            match cfg.format.unwrap_or(Format::Text) {
                Format::Json => cfg.emit(&json!({ "ideal": cfg.ideal, "q": cfg.q, "length": len })),
                _ => cfg.write(&format!("{len}\n")),
            }
        }
        Command::Hilbert(cfg) => {
            let loaded = cfg.load()?;
            let ideal = frobenius(&loaded.ideal(&cfg.ideal)?, cfg.q)?;
            let table = hilbert_samuel_table(&ideal, cfg.n_max)?;
            let fit = fit_hilbert_polynomial(&table, DEFAULT_WINDOW).ok();
            match cfg.format.unwrap_or(Format::Csv) {
                Format::Json => cfg.emit(&json!({ "ideal": cfg.ideal, "q": cfg.q, "table": table, "fit": fit })),
                _ => {
                    let mut text = plot::hilbert_csv(&table)?;
                    if let Some(c) = fit {
                        text = format!(
                            "# fit: e0 = {}, e1 = {}, e2 = {}, postulation = {}\n{text}",
                            c.e0, c.e1, c.e2, c.postulation
                        );
                    }
                    cfg.write(&text)
                }
            }
        }
        Command::Rr(cfg) => {
            let loaded = cfg.load()?;
            let base = loaded.ideal(&cfg.ideal)?;
            let res = match cfg.q {
                Some(q) => ratliff_rush_of_power(&base.frobenius_power(q)?, 1, cfg.confirm, DEFAULT_RR_CAP)?,
                None => ratliff_rush_closure(&base, cfg.confirm)?,
            };
            let closure: Vec<String> = res.closure.format_generators();
            cfg.emit(&json!({
                "ideal": cfg.ideal,
                "q": cfg.q,
                "input_length": res.input.colength().ok(),
                "closure": closure,
                "closure_length": res.closure.colength().ok(),
                "stabilization_index": res.stabilization_index,
                "confirm": res.confirm,
                "transcript": res.transcript,
            }))
        }
        Command::Reduce(cfg) => {
            let loaded = cfg.load()?;
            let ideal = loaded.ideal(&cfg.ideal)?;
            let red = reduction_data(&loaded, &ideal, &cfg)?;
            let stable = stability_check(&ideal, &red.reduction)?;
            cfg.emit(&json!({
                "ideal": cfg.ideal,
                "seed": cfg.seed,
                "reduction": red.reduction.format_generators(),
                "reduction_number": red.r,
                "stable": stable,
                "transcript": red.transcript,
            }))
        }
        Command::Coeffs(cfg) => {
            let loaded = cfg.load()?;
            let a = analysis(&loaded, &cfg)?;
            let q = cfg.q.unwrap_or(loaded.ring.characteristic() as u64);
            let c = a.coefficients(q)?;
            // independent route: difference table of the ordinary powers of I^[q]
            let iq = a.ideal.frobenius_power(q)?;
            let n_fit = (a.r() + DEFAULT_WINDOW + 4).max(10);
            let fit = fit_hilbert_polynomial(&hilbert_samuel_table(&iq, n_fit)?, DEFAULT_WINDOW).ok();
            let agree = fit.map(|f| (f.e0, f.e1, f.e2) == (c.e0, c.e1, c.e2));
            cfg.emit(&json!({
                "ideal": cfg.ideal,
                "q": q,
                "e0": c.e0,
                "e1": c.e1,
                "e2": c.e2,
                "v": c.v.v,
                "reduction_number": a.r(),
                "multiplicity": a.multiplicity,
                "oracle_fit": fit,
                "oracle_agrees": agree,
            }))?;
            if agree == Some(false) {
                return Err(CheckFailed(format!("coefficients of I^[{q}] disagree with the difference-table fit")).into());
            }
            Ok(())
        }
        Command::Ehk(cfg) => {
            let loaded = cfg.load()?;
            let a = analysis(&loaded, &cfg)?;
            let report = a.tables(cfg.e_max(loaded.ring.characteristic()), cfg.n_max)?;
            let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("ehk-out"));
            let files = plot::emit_plot_data(&report, &dir)?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            std::fs::write(dir.join("report.json"), text)?;
            eprintln!("wrote report.json and {} CSV files to {}", files.len(), dir.display());
            match report.aborted {
                Some(reason) => Err(Partial(reason).into()),
                None => Ok(()),
            }
        }
        Command::CheckThm41(cfg) => {
            let loaded = cfg.load()?;
            let a = analysis(&loaded, &cfg)?;
            let n_max = cfg.n_max.max(a.r() + 2);
            let report = a.tables(cfg.e_max(loaded.ring.characteristic()), n_max)?;
            let check = theorem41_check(&report)?;
            let hm_ok = report.rows.iter().all(|r| r.hm_residuals.iter().all(|x| x.1 == 0));
            cfg.emit(&json!({ "theorem41": check, "hm_identities_ok": hm_ok, "aborted": report.aborted }))?;
            if !check.ok() || !hm_ok {
                return Err(CheckFailed("nonzero residual in the finite-q closed forms".into()).into());
            }
            if let Some(reason) = report.aborted {
                return Err(Partial(reason).into());
            }
            Ok(())
        }
        Command::CheckIneq(cfg) => {
            let loaded = cfg.load()?;
            let a = analysis(&loaded, &cfg)?;
            let q = cfg.q.unwrap_or(loaded.ring.characteristic() as u64);
            let reports = (a.r().max(1)..=cfg.n_max)
                .map(|n| estimates_inequality_check(&a, q, n, cfg.t_max))
                .collect::<hk_core::Result<Vec<_>>>()?;
            if reports.is_empty() {
                return Err(anyhow!("n_max = {} is below the reduction number {}", cfg.n_max, a.r()));
            }
            cfg.emit(&reports)?;
            if let Some(bad) = reports.iter().find(|r| !r.ok()) {
                return Err(CheckFailed(format!("negative slack at q = {}, n = {}", bad.q, bad.n)).into());
            }
            Ok(())
        }
        Command::Search(cfg) => {
            let loaded = cfg.load()?;
            let ideal = loaded.ideal(&cfg.ideal)?;
            let j_star = loaded.test_ideal()?;
            let qs = cfg.qs(loaded.ring.characteristic());
            let ns: Vec<usize> = (1..=cfg.n_max).collect();
            let report = star_refutation_search(&ideal, &j_star, &qs, &ns)?;
            cfg.emit(&report)?;
            match report.aborted {
                Some(reason) => Err(Partial(reason).into()),
                None => Ok(()),
            }
        }
        Command::VerifyPaper(cfg) => {
            let loaded = cfg.load()?;
            let mut checks = fermat_char2_suite(&loaded.ring, &[2, 4, 8])?;
            checks.extend(remark_suite(&[2, 4, 8], cfg.confirm)?);
            cfg.emit(&checks)?;
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            if !failed.is_empty() {
                return Err(CheckFailed(failed.join("; ")).into());
            }
            Ok(())
        }
    }
}

fn jobs(command: &Command) -> Option<usize> {
    let cfg = match command {
        Command::Gb(c)
        | Command::Length(c)
        | Command::Hilbert(c)
        | Command::Rr(c)
        | Command::Reduce(c)
        | Command::Coeffs(c)
        | Command::Ehk(c)
        | Command::CheckThm41(c)
        | Command::CheckIneq(c)
        | Command::Search(c)
        | Command::VerifyPaper(c) => c,
    };
    cfg.jobs
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = jobs(&cli.command) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

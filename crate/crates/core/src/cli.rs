//! Batch front end behind the `spectral-ldp` binary.
//!
//! Every subcommand prints a human-readable `key: value` table on standard
//! output. With `--out`, tabular commands also write CSV (header row, fixed
//! columns) and `construct`/`solve` write a `key:value` certificate record.
//! Floats are printed with 12 significant digits.
//!
//! Exit codes: 0 on success, 1 on invalid input or infeasible instances, 2 on
//! numerical failures.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions::{
    anticlique_plan, build_anticlique, build_centered_clique, build_clique, centered_clique_plan,
    certify, clique_plan, Construction,
};
use crate::graph::WeightedGraph;
use crate::graphon::{
    apriori_quantities, convex_min_split, degree_profile, embed, gamma_split, holder_cycle_check,
    opnorm_bound_check, Embedding,
};
use crate::montecarlo::{conditional_lambda2, estimate_tail, rate_curve, sample_gnp, PRule};
use crate::oracle::{enumerate_exact_tail, TailEvent};
use crate::rates::{
    indpoly_bruteforce, indpoly_recursive, rate_centered, rate_cycle, rate_lambda1, rate_lambda2,
    solve_theta_bar, MAX_BRUTEFORCE_CYCLE,
};
use crate::spectral::centered_opnorm;
use crate::varsolve::{solve_phi1, solve_phi2, Certificate, SolveOptions};
use crate::{Error, Statistic};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SPECTRAL_LDP_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "spectral-ldp",
    version,
    about = "Edge-eigenvalue large deviations of sparse random graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form rate functions.
    Rate {
        #[arg(long, value_enum)]
        mode: RateMode,
        #[arg(long)]
        delta: Option<f64>,
        /// Cycle length for `theta` and `cycle`.
        #[arg(long)]
        s: Option<usize>,
        /// Cycle-density level for `cycle`.
        #[arg(long)]
        t: Option<f64>,
    },
    /// Independence polynomial coefficients of the s-cycle.
    Indpoly {
        #[arg(long)]
        s: usize,
    },
    /// Build and certify a planted construction.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the variational solver.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        noise_starts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo tail estimate under G(n, p).
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        threshold: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Second-eigenvalue tail given a planted clique.
    Conditional {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact tail probability by enumeration (n <= 6).
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        threshold: f64,
    },
    /// Graphon identities and inequalities on a sampled or planted graph.
    GraphonCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, default_value_t = 4)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Source::Gnp)]
        source: Source,
        /// Degree thresholds, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.25,0.125,0.0625")]
        b: Vec<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical normalized rate of the top-eigenvalue tail across n.
    RateCurve {
        /// Vertex counts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        /// Fixed edge probability.
        #[arg(long, conflicts_with_all = ["c", "alpha"])]
        p: Option<f64>,
        /// Scale of p = c·n^(−alpha).
        #[arg(long, requires = "alpha")]
        c: Option<f64>,
        #[arg(long, requires = "c")]
        alpha: Option<f64>,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RateMode {
    Lambda1,
    Centered,
    Lambda2,
    Theta,
    Cycle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Clique,
    Anticlique,
    Centered,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Problem {
    Phi1,
    Phi2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    Gnp,
    Clique,
    Anticlique,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) | Error::Infeasible(_) => Failure::Input(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(format!("csv error: {e}"))
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the subcommand,
/// writing the table to `out` and diagnostics to standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn configure_threads() {
    if let Some(k) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Fails harmlessly if the pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
}

/// `%.12g`-style formatting.
pub fn fmt_g(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_g(x: Option<f64>) -> String {
    x.map_or_else(String::new, fmt_g)
}

/// Accumulates `key: value` lines in insertion order.
#[derive(Default)]
struct Record(Vec<(String, String)>);

impl Record {
    fn put(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.put(key, fmt_g(value))
    }

    fn table(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.0 {
            let _ = writeln!(s, "{k}: {v}");
        }
        s
    }

    fn file(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.0 {
            let _ = writeln!(s, "{k}:{v}");
        }
        s
    }
}

fn need<T>(value: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| Failure::Input(format!("--{flag} is required for this mode")))
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Rate { mode, delta, s, t } => cmd_rate(mode, delta, s, t, out),
        Command::Indpoly { s } => {
            let poly = if s <= MAX_BRUTEFORCE_CYCLE {
                indpoly_bruteforce(s)?
            } else {
                indpoly_recursive(s)?
            };
            writeln!(out, "{poly}")?;
            Ok(())
        }
        Command::Construct {
            kind,
            n,
            p,
            delta,
            out: path,
        } => cmd_construct(kind, n, p, delta, path, out),
        Command::Solve {
            problem,
            n,
            p,
            delta,
            max_iter,
            tol,
            noise_starts,
            seed,
            out: path,
        } => {
            let opts = SolveOptions {
                max_iter,
                tol,
                noise_starts,
                seed,
                ..SolveOptions::default()
            };
            let (name, result) = match problem {
                Problem::Phi1 => ("phi1", solve_phi1(n, p, delta, &opts)),
                Problem::Phi2 => ("phi2", solve_phi2(n, p, delta, &opts)),
            };
            let cert = match result {
                Ok(c) => c,
                Err(Error::NotConverged { best }) => {
                    let rec = certificate_record(name, n, delta, &best);
                    out.write_all(rec.table().as_bytes())?;
                    if let Some(path) = path {
                        std::fs::write(path, rec.file())?;
                    }
                    return Err(Failure::Numerical(format!(
                        "solver did not reach feasibility (best slack {})",
                        fmt_g(best.slack)
                    )));
                }
                Err(e) => return Err(e.into()),
            };
            let rec = certificate_record(name, n, delta, &cert);
            out.write_all(rec.table().as_bytes())?;
            if let Some(path) = path {
                let mut file = rec;
                file.put(
                    "weights",
                    cert.graph
                        .upper()
                        .iter()
                        .map(|&w| fmt_g(w))
                        .collect::<Vec<_>>()
                        .join(","),
                );
                std::fs::write(path, file.file())?;
            }
            Ok(())
        }
        Command::Simulate {
            n,
            p,
            stat,
            threshold,
            trials,
            seed,
            out: path,
        } => {
            let est = estimate_tail(n, p, stat, threshold, trials, seed)?;
            let mut rec = Record::default();
            rec.put("n", n)
                .num("p", p)
                .put("statistic", stat)
                .num("threshold", threshold);
            tail_fields(&mut rec, &est);
            out.write_all(rec.table().as_bytes())?;
            if let Some(path) = path {
                write_csv(&path, &rec)?;
            }
            Ok(())
        }
        Command::Conditional {
            n,
            p,
            delta,
            trials,
            seed,
            out: path,
        } => {
            let est = conditional_lambda2(n, p, delta, trials, seed)?;
            let mut rec = Record::default();
            rec.put("n", n).num("p", p).num("delta", delta);
            rec.put(
                "clique_size",
                crate::montecarlo::conditional_clique_size(n, p, delta),
            );
            rec.num("threshold", delta * n as f64 * p);
            tail_fields(&mut rec, &est);
            out.write_all(rec.table().as_bytes())?;
            if let Some(path) = path {
                write_csv(&path, &rec)?;
            }
            Ok(())
        }
        Command::Oracle {
            n,
            p,
            stat,
            threshold,
        } => {
            let prob = enumerate_exact_tail(n, p, TailEvent::new(stat, threshold))?;
            writeln!(out, "{}", fmt_g(prob))?;
            Ok(())
        }
        Command::GraphonCheck {
            n,
            p,
            delta,
            s,
            source,
            b,
            seed,
            out: path,
        } => cmd_graphon(n, p, delta, s, source, &b, seed, path, out),
        Command::RateCurve {
            ns,
            p,
            c,
            alpha,
            delta,
            trials,
            seed,
            out: path,
        } => {
            let rule = match (p, c, alpha) {
                (Some(p), None, None) => PRule::Fixed(p),
                (None, Some(c), Some(alpha)) => PRule::Power { c, alpha },
                _ => {
                    return Err(Failure::Input(
                        "give either --p or both --c and --alpha".into(),
                    ))
                }
            };
            let rows = rate_curve(&ns, rule, delta, trials, seed)?;
            let header = [
                "n",
                "p",
                "threshold",
                "trials",
                "successes",
                "estimate",
                "std_error",
                "exact",
                "normalized",
                "theory",
                "censored",
            ];
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        fmt_g(r.p),
                        fmt_g(r.threshold),
                        r.tail.trials.to_string(),
                        r.tail.successes.to_string(),
                        fmt_g(r.tail.estimate),
                        fmt_g(r.tail.std_error),
                        opt_g(r.exact),
                        opt_g(r.normalized),
                        fmt_g(r.theory),
                        r.censored.to_string(),
                    ]
                })
                .collect();
            writeln!(out, "{}", header.join("\t"))?;
            for row in &table {
                writeln!(out, "{}", row.join("\t"))?;
            }
            if let Some(path) = path {
                let mut w = csv::Writer::from_path(path)?;
                w.write_record(header)?;
                for row in &table {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            Ok(())
        }
    }
}

fn cmd_rate(
    mode: RateMode,
    delta: Option<f64>,
    s: Option<usize>,
    t: Option<f64>,
    out: &mut dyn Write,
) -> CmdResult {
    let mut rec = Record::default();
    match mode {
        RateMode::Lambda1 => {
            let r = rate_lambda1(need(delta, "delta")?)?;
            rec.num("value", r.value)
                .put("branch", r.branch)
                .put("eta", opt_g(r.eta));
        }
        RateMode::Centered => {
            rec.num("value", rate_centered(need(delta, "delta")?)?);
        }
        RateMode::Lambda2 => {
            rec.num("value", rate_lambda2(need(delta, "delta")?)?);
        }
        RateMode::Theta => {
            let delta = need(delta, "delta")?;
            let s = need(s, "s")?;
            rec.num("theta_bar", solve_theta_bar(s, delta)?)
                .num("eta", delta * (1.0 + delta));
        }
        RateMode::Cycle => {
            rec.num("value", rate_cycle(need(s, "s")?, need(t, "t")?)?);
        }
    }
    out.write_all(rec.table().as_bytes())?;
    Ok(())
}

fn cmd_construct(
    kind: Kind,
    n: usize,
    p: f64,
    delta: f64,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let mut rec = Record::default();
    if n > WeightedGraph::MAX_VERTICES {
        // Too large to materialize: report the closed-form plan.
        rec.put("kind", format!("{kind:?}").to_lowercase())
            .put("n", n)
            .num("p", p)
            .num("delta", delta);
        match kind {
            Kind::Anticlique => {
                let plan = anticlique_plan(n, p, delta)?;
                rec.put("hub", plan.hub)
                    .num("z", plan.z)
                    .num("achieved", plan.rayleigh);
                rec.num("threshold", plan.threshold);
                rec.num("entropy", plan.entropy.value)
                    .num("entropy_normalized", plan.entropy.normalized);
            }
            Kind::Clique | Kind::Centered => {
                let plan = if matches!(kind, Kind::Clique) {
                    clique_plan(n, p, delta)?
                } else {
                    centered_clique_plan(n, p, delta)?
                };
                rec.num("s", plan.s)
                    .put("block", plan.block)
                    .num("achieved", plan.achieved);
                rec.num("threshold", plan.threshold);
                rec.num("entropy", plan.entropy.value)
                    .num("entropy_normalized", plan.entropy.normalized);
            }
        }
        rec.put("materialized", false);
    } else {
        let c: Construction = match kind {
            Kind::Clique => build_clique(n, p, delta)?,
            Kind::Anticlique => build_anticlique(n, p, delta)?,
            Kind::Centered => build_centered_clique(n, p, delta)?,
        };
        let report = certify(&c)?;
        rec.put("kind", c.kind)
            .put("n", n)
            .num("p", p)
            .num("delta", delta);
        if let Some(s) = c.s {
            rec.num("s", s);
        }
        if let Some(z) = c.z {
            rec.num("z", z);
        }
        rec.put("block", c.block);
        rec.num("achieved", report.achieved)
            .num("rayleigh", report.rayleigh);
        rec.num("eigensolve", report.eigensolve)
            .num("threshold", report.threshold);
        rec.put("feasible", report.feasible);
        rec.num("entropy", c.entropy.value)
            .num("entropy_normalized", c.entropy.normalized);
        rec.put("materialized", true);
    }
    out.write_all(rec.table().as_bytes())?;
    if let Some(path) = path {
        std::fs::write(path, rec.file())?;
    }
    Ok(())
}

fn certificate_record(problem: &str, n: usize, delta: f64, c: &Certificate) -> Record {
    let mut rec = Record::default();
    rec.put("problem", problem)
        .put("n", n)
        .num("p", c.p)
        .num("delta", delta);
    rec.put("statistic", c.statistic)
        .num("threshold", c.threshold);
    rec.num("constraint_value", c.constraint_value)
        .num("slack", c.slack);
    rec.num("entropy", c.entropy.value)
        .num("entropy_normalized", c.entropy.normalized);
    rec.put("feasible", c.feasible)
        .put("start", c.start)
        .put("iterations", c.iterations);
    rec.put("restarts_used", c.restarts_used)
        .num("rho", c.rho)
        .put("seed", c.seed);
    rec
}

fn tail_fields(rec: &mut Record, est: &crate::montecarlo::TailEstimate) {
    rec.put("trials", est.trials)
        .put("successes", est.successes);
    rec.num("estimate", est.estimate)
        .num("std_error", est.std_error)
        .put("seed", est.seed);
}

/// Single-row CSV with the record keys as header.
fn write_csv(path: &Path, rec: &Record) -> CmdResult {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(rec.0.iter().map(|(k, _)| k))?;
    w.write_record(rec.0.iter().map(|(_, v)| v))?;
    w.flush()?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_graphon(
    n: usize,
    p: f64,
    delta: f64,
    s: usize,
    source: Source,
    bs: &[f64],
    seed: u64,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let g = match source {
        Source::Gnp => sample_gnp(n, p, seed)?,
        Source::Clique => build_centered_clique(n, p, delta)?.graph,
        Source::Anticlique => build_anticlique(n, p, delta)?.graph,
    };
    let hat = embed(&g, p, Embedding::Hat)?;
    let padded = embed(&g, p, Embedding::Padded)?;
    let correction = padded.difference(&hat)?.opnorm()?;
    let u = padded.shifted(p)?;
    let u_hat = hat.shifted(p)?;
    let direct = centered_opnorm(&g, p)?;
    let bound = opnorm_bound_check(&u, s)?;
    let abs_u = u.abs();
    let holder = holder_cycle_check(&abs_u, s)?;
    let split = convex_min_split(s)?;

    let mut rec = Record::default();
    rec.put("source", format!("{source:?}").to_lowercase())
        .put("n", n)
        .num("p", p)
        .put("s", s);
    rec.num("padding_correction", correction)
        .num("p_over_n", p / n as f64);
    rec.num("hat_opnorm_scaled", n as f64 * u_hat.opnorm()?)
        .num("centered_opnorm", direct);
    rec.num("opnorm_pow_s", bound.lhs)
        .num("signed_density", bound.rhs)
        .put("opnorm_bound_holds", bound.holds(1e-10));
    rec.num("abs_density", holder.lhs)
        .num("holder_rhs", holder.rhs)
        .put("holder_holds", holder.holds(1e-10));
    rec.num("split_x", split.x)
        .num("split_y", split.y)
        .num("split_value", split.value);
    rec.num("split_y_zero_value", split.y_zero_value);
    out.write_all(rec.table().as_bytes())?;

    let header = [
        "b",
        "b_mass",
        "theta_b",
        "eta_b",
        "gamma1",
        "gamma2",
        "gamma3",
        "alternating_bound",
        "low_bound",
        "mean_ratio",
        "mean_square_ratio",
        "b_mass_ratio",
        "low_degree_ratio",
    ];
    let mut rows = Vec::with_capacity(bs.len());
    for &b in bs {
        let prof = degree_profile(&abs_u, b, delta, p)?;
        let gam = gamma_split(&abs_u, &prof, s, delta, p)?;
        let ap = apriori_quantities(&abs_u, p, delta, b)?;
        rows.push(
            [
                b,
                prof.b_mass,
                prof.theta_b,
                prof.eta_b,
                gam.gamma1,
                gam.gamma2,
                gam.gamma3,
                gam.alternating_bound,
                gam.low_bound,
                ap.mean_ratio,
                ap.mean_square_ratio,
                ap.b_mass_ratio,
                ap.low_degree_ratio,
            ]
            .map(fmt_g),
        );
    }
    writeln!(out, "{}", header.join("\t"))?;
    for row in &rows {
        writeln!(out, "{}", row.join("\t"))?;
    }
    if let Some(path) = path {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(header)?;
        for row in &rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut buf = Vec::new();
        let argv = std::iter::once("spectral-ldp").chain(args.iter().copied());
        assert_eq!(run(argv, &mut buf), 0, "{args:?}");
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn twelve_digit_format() {
        assert_eq!(fmt_g(2.0), "2");
        assert_eq!(fmt_g(0.125), "0.125");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(1.5e-5), "1.5e-05");
        assert_eq!(fmt_g(-2.5e13), "-2.5e+13");
        assert_eq!(fmt_g(123456789012.0), "123456789012");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_g(0.0), "0");
    }

    #[test]
    fn rate_and_indpoly() {
        let out = run_ok(&["rate", "--mode", "lambda1", "--delta", "1.0"]);
        assert!(
            out.contains("value: 2\n") && out.contains("branch: tie"),
            "{out}"
        );
        assert_eq!(run_ok(&["indpoly", "--s", "6"]), "1,6,9,2\n");
        assert_eq!(
            run_ok(&[
                "oracle",
                "--n",
                "3",
                "--p",
                "0.5",
                "--stat",
                "lambda1",
                "--threshold",
                "2"
            ]),
            "0.125\n"
        );
    }

    #[test]
    fn exit_codes() {
        let mut sink = Vec::new();
        assert_eq!(
            run(
                ["spectral-ldp", "rate", "--mode", "lambda1", "--delta", "-1"],
                &mut sink
            ),
            1
        );
        assert_eq!(run(["spectral-ldp", "bogus"], &mut sink), 1);
        assert_eq!(
            run(["spectral-ldp", "rate", "--mode", "lambda2"], &mut sink),
            1
        );
        assert_eq!(
            run(
                [
                    "spectral-ldp",
                    "construct",
                    "--kind",
                    "clique",
                    "--n",
                    "10",
                    "--p",
                    "0.9",
                    "--delta",
                    "1"
                ],
                &mut sink
            ),
            1
        );
    }
}

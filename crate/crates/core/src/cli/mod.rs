//! Command-line front end. Every subcommand is deterministic in `(flags, seed)`;
//! `--threads` changes only how fast the answer arrives.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::combinatorics::{conjugacy_class_size, Partition};
use crate::ensembles::{
    sample_compound_wishart, sample_laguerre, CompoundSpec, DenseMatrix, LaguerreParams, Substreams,
    DEFAULT_SEED,
};
use crate::error::{param, Error, Result};
use crate::estimators::{
    compound_finiteness_verdict, finiteness_verdict, fit_gap_exponent, full_compound_report, full_report,
    gap_probabilities, mc_compound_inverse_moment, mc_inverse_moment, mc_trace_product, GapEstimate,
    DEFAULT_GRID,
};
use crate::rational::Rational;
use crate::spectra::householder_tridiagonal;
use crate::weingarten::{exact_inverse_moment, weingarten_table, MomentOrder};

/// Exit status for malformed command lines.
pub const USAGE_EXIT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "laguerre-lab", version, about = "Inverse moments and small-eigenvalue statistics of Laguerre and compound Wishart matrices")]
struct Cli {
    /// Master seed; draw i uses ChaCha8 stream i under this key.
    #[arg(long, global = true, env = "LAGUERRE_LAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the result here instead of stdout; the resolved config still goes to stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct LaguerreArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Dyson index; any positive decimal.
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
}

#[derive(Debug, Clone, Args)]
struct EnsembleArgs {
    #[command(flatten)]
    lag: LaguerreArgs,
    /// Compound weights ξ (comma separated, length m); requires beta 1 or 2.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    xi: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Form {
    Tridiagonal,
    Dense,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit random draws as JSON.
    Sample {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Form::Tridiagonal)]
        form: Form,
    },
    /// P(λ₁ < a) at each grid point, as CSV.
    Gap {
        #[command(flatten)]
        lag: LaguerreArgs,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        grid: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
    },
    /// Least-squares fit of log P(λ₁ < a) against log a.
    Exponent {
        #[command(flatten)]
        lag: LaguerreArgs,
        /// Decreasing points in (0, 0.5]; default 10^-1, 10^-1.5, 10^-2, 10^-2.5.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monte Carlo estimate of E Tr(S^-c) (or of a product of traces) with diagnostics.
    MomentMc {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, required_unless_present = "cycle_type", conflicts_with = "cycle_type")]
        c: Option<u32>,
        /// Cycle type π such as "2,1": estimates E Π Tr(S^-p) over the parts p.
        #[arg(long)]
        cycle_type: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long)]
        hill_k: Option<usize>,
    },
    /// Exact E Tr_π(W^-1) for a complex Wishart matrix, as a fraction.
    MomentExact {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, required_unless_present = "c", conflicts_with = "c")]
        cycle_type: Option<String>,
        /// Shorthand for --cycle-type c (a single c-cycle).
        #[arg(long)]
        c: Option<usize>,
    },
    /// Whether E Tr(S^-c) is finite.
    Verdict {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long)]
        c: u32,
    },
    /// Verdict, Monte Carlo evidence, Hill index and exact value in one record.
    Report {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long)]
        hill_k: Option<usize>,
    },
    /// Weingarten values Wg(μ, z) for every class μ of S_q.
    WgTable {
        #[arg(long)]
        q: usize,
        #[arg(long, allow_negative_numbers = true)]
        z: i64,
    },
}

/// The resolved inputs of a run, echoed with every result.
#[derive(Debug, Default, Serialize)]
struct Config {
    command: &'static str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_type: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hill_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<i64>,
}

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    config: &'a Config,
    #[serde(flatten)]
    body: T,
}

enum Ensemble {
    Laguerre(LaguerreParams),
    Compound(CompoundSpec),
}

impl Ensemble {
    fn resolve(args: &EnsembleArgs, config: &mut Config) -> Result<Self> {
        let lag = LaguerreParams::new(args.lag.m, args.lag.n, args.lag.beta)?;
        config.m = Some(lag.m);
        config.n = Some(lag.n);
        config.beta = Some(lag.beta);
        config.alpha = Some(lag.alpha);
        match &args.xi {
            None => Ok(Ensemble::Laguerre(lag)),
            Some(xi) => {
                if lag.beta != 1.0 && lag.beta != 2.0 {
                    return param(format!("compound matrices need beta 1 or 2, got {}", lag.beta));
                }
                let spec = CompoundSpec::new(lag.m, lag.n, lag.beta as u8, xi.clone())?;
                config.xi = Some(spec.xi.clone());
                Ok(Ensemble::Compound(spec))
            }
        }
    }
}

fn laguerre(args: &LaguerreArgs, config: &mut Config) -> Result<LaguerreParams> {
    let ens = EnsembleArgs { lag: args.clone(), xi: None };
    match Ensemble::resolve(&ens, config)? {
        Ensemble::Laguerre(p) => Ok(p),
        Ensemble::Compound(_) => unreachable!(),
    }
}

/// Output of one subcommand: the config echo and the payload, rendered.
struct Rendered {
    config: Config,
    body: String,
}

fn json_record<T: Serialize>(config: Config, body: T) -> Result<Rendered> {
    let mut text = serde_json::to_string_pretty(&Record { config: &config, body })?;
    text.push('\n');
    Ok(Rendered { config, body: text })
}

fn gap_csv(config: &Config, estimates: &[GapEstimate], preamble: &[String]) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "# config: {}", serde_json::to_string(config)?).unwrap();
    for line in preamble {
        writeln!(s, "# {line}").unwrap();
    }
    s.push_str("a,p_hat,ci_low,ci_high,hits,trials\n");
    for e in estimates {
        writeln!(s, "{},{},{},{},{},{}", e.a, e.p_hat, e.ci_low, e.ci_high, e.hits, e.trials).unwrap();
    }
    Ok(s)
}

fn matrix_rows(q: &DenseMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let rows = |f: &dyn Fn(usize, usize) -> f64| {
        (0..q.nrows()).map(|i| (0..q.ncols()).map(|j| f(i, j)).collect()).collect()
    };
    (rows(&|i, j| q[(i, j)].re), rows(&|i, j| q[(i, j)].im))
}

fn parse_cycle_type(c: Option<usize>, cycle_type: Option<&str>) -> Result<Partition> {
    match (c, cycle_type) {
        (_, Some(s)) => Partition::parse(s),
        (Some(0), None) => param("moment order c must be at least 1"),
        (Some(c), None) => Partition::new(vec![c]),
        (None, None) => param("give --c or --cycle-type"),
    }
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let streams = Substreams::new(cli.seed);
    let mut config = Config { seed: cli.seed, ..Config::default() };
    match &cli.command {
        Command::Sample { ens, count, form } => {
            config.command = "sample";
            config.count = Some(*count);
            config.form = Some(match form {
                Form::Tridiagonal => "tridiagonal",
                Form::Dense => "dense",
            });
            let draws: Vec<serde_json::Value> = match Ensemble::resolve(ens, &mut config)? {
                Ensemble::Laguerre(p) => streams
                    .map_trials(*count, |rng| sample_laguerre(&p, rng))
                    .into_iter()
                    .map(|t| match form {
                        Form::Tridiagonal => json!(t),
                        Form::Dense => {
                            let d = t.to_dense();
                            let rows: Vec<Vec<f64>> =
                                (0..d.nrows()).map(|i| (0..d.ncols()).map(|j| d[(i, j)]).collect()).collect();
                            json!({ "re": rows })
                        }
                    })
                    .collect(),
                Ensemble::Compound(spec) => streams
                    .map_trials(*count, |rng| sample_compound_wishart(&spec, rng))
                    .into_iter()
                    .map(|q| match form {
                        Form::Tridiagonal => householder_tridiagonal(&q).map(|t| json!(t)),
                        Form::Dense => {
                            let (re, im) = matrix_rows(&q);
                            Ok(json!({ "re": re, "im": im }))
                        }
                    })
                    .collect::<Result<_>>()?,
            };
            json_record(config, json!({ "draws": draws }))
        }
        Command::Gap { lag, grid, trials } => {
            config.command = "gap";
            config.trials = Some(*trials);
            config.grid = Some(grid.clone());
            let p = laguerre(lag, &mut config)?;
            let estimates = gap_probabilities(&p, grid, *trials, &streams)?;
            let body = gap_csv(&config, &estimates, &[])?;
            Ok(Rendered { config, body })
        }
        Command::Exponent { lag, grid, trials, format } => {
            config.command = "exponent";
            config.trials = Some(*trials);
            let grid = grid.clone().unwrap_or_else(|| DEFAULT_GRID.to_vec());
            config.grid = Some(grid.clone());
            let p = laguerre(lag, &mut config)?;
            let fit = fit_gap_exponent(&p, &grid, *trials, &streams)?;
            match format {
                Format::Json => json_record(config, fit),
                Format::Csv => {
                    let summary = [format!(
                        "alpha_hat={},intercept={},stderr={}",
                        fit.alpha_hat, fit.intercept, fit.stderr
                    )];
                    let body = gap_csv(&config, &fit.estimates, &summary)?;
                    Ok(Rendered { config, body })
                }
            }
        }
        Command::MomentMc { ens, c, cycle_type, trials, hill_k } => {
            config.command = "moment-mc";
            config.trials = Some(*trials);
            config.hill_k = *hill_k;
            let pi = parse_cycle_type(c.map(|c| c as usize), cycle_type.as_deref())?;
            config.c = Some(pi.q());
            let est = match Ensemble::resolve(ens, &mut config)? {
                Ensemble::Laguerre(p) => {
                    if cycle_type.is_some() {
                        config.cycle_type = Some(pi.clone());
                        mc_trace_product(&p, &pi, *trials, &streams, *hill_k)?
                    } else {
                        mc_inverse_moment(&p, pi.q() as u32, *trials, &streams, *hill_k)?
                    }
                }
                Ensemble::Compound(spec) => {
                    if cycle_type.is_some() {
                        return param("--cycle-type is not supported for compound matrices");
                    }
                    mc_compound_inverse_moment(&spec, pi.q() as u32, *trials, &streams, *hill_k)?
                }
            };
            json_record(config, est)
        }
        Command::MomentExact { m, n, cycle_type, c } => {
            config.command = "moment-exact";
            config.m = Some(*m);
            config.n = Some(*n);
            let pi = parse_cycle_type(*c, cycle_type.as_deref())?;
            config.c = Some(pi.q());
            config.cycle_type = Some(pi.clone());
            let value = exact_inverse_moment(&MomentOrder::new(pi.clone()), *m, *n)?;
            let laguerre_value = &value * &Rational::new(1, 2).pow(pi.q() as i32);
            json_record(config, json!({ "value": value, "laguerre_value": laguerre_value }))
        }
        Command::Verdict { ens, c } => {
            config.command = "verdict";
            config.c = Some(*c as usize);
            if *c == 0 {
                return param("moment order c must be at least 1");
            }
            let finite = match Ensemble::resolve(ens, &mut config)? {
                Ensemble::Laguerre(p) => finiteness_verdict(&p, *c),
                Ensemble::Compound(spec) => compound_finiteness_verdict(&spec, *c)?,
            };
            json_record(config, json!({ "finite": finite }))
        }
        Command::Report { ens, c, trials, hill_k } => {
            config.command = "report";
            config.c = Some(*c as usize);
            config.trials = Some(*trials);
            config.hill_k = *hill_k;
            let report = match Ensemble::resolve(ens, &mut config)? {
                Ensemble::Laguerre(p) => full_report(&p, *c, *trials, &streams, *hill_k)?,
                Ensemble::Compound(spec) => full_compound_report(&spec, *c, *trials, &streams, *hill_k)?,
            };
            json_record(config, report)
        }
        Command::WgTable { q, z } => {
            config.command = "wg-table";
            config.q = Some(*q);
            config.z = Some(*z);
            let rows: Vec<serde_json::Value> = weingarten_table(*q, &Rational::from_int(*z))?
                .into_iter()
                .map(|(mu, wg)| json!({ "class": mu.clone(), "class_size": conjugacy_class_size(&mu), "value": wg }))
                .collect();
            json_record(config, json!({ "table": rows }))
        }
    }
}

fn execute_with_threads(cli: &Cli) -> Result<Rendered> {
    match cli.threads {
        None => execute(cli),
        Some(0) => param("--threads must be at least 1"),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start {t} threads: {e}")))?
            .install(|| execute(cli)),
    }
}

/// Runs the command line `args` (including the program name) and returns the exit status.
pub fn run(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    USAGE_EXIT
                }
            };
        }
    };
    let result = execute_with_threads(&cli).and_then(|r| {
        match &cli.output {
            None => out.write_all(r.body.as_bytes())?,
            Some(path) => {
                std::fs::write(path, r.body.as_bytes())?;
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "config": r.config, "output": path }))?)?;
            }
        }
        out.flush()?;
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

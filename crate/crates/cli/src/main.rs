//! Command-line surface over the rieszlab library: exact pairings,
//! deficits, superlevel sets, sumsets, covering checks, the lattice
//! construction, stability probes, and reproducible sweeps.
//!
//! Interval sets use the literal grammar `[0,1) u [3/2,2)` (or `{}`),
//! integer sets use `{0,2,4,8}`, and rationals use `p/q`. All exact values
//! are emitted as `p/q` strings with `*_float` decimal shadows.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use rieszlab::additive::{discretize, freiman_cover, int_sumset, small_doubling_check};
use rieszlab::gen::counterexample_report;
use rieszlab::pairing;
use rieszlab::report::{render_csv, render_json_record, render_json_rows, Record, ToRecord};
use rieszlab::sweep::{parse_grid, run_sweep, SweepFamily, SweepSpec};
use rieszlab::{
    convolve_indicators, parse_scalar, rs_deficit, stability_probe, Error, IntegerSet,
    IntervalSet, Scalar,
};

#[derive(Parser)]
#[command(
    name = "rieszlab",
    version,
    about = "Exact rational computations with interval sets and indicator convolutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Pairing <1_A * 1_B, 1_C> of three interval sets.
    Pair { a: String, b: String, c: String },
    /// Rearrangement deficit report for a triple of interval sets.
    Deficit { a: String, b: String, c: String },
    /// Superlevel set {x : (1_A * 1_B)(x) > t}.
    Superlevel { a: String, b: String, t: String },
    /// Minkowski sumset A + B.
    Sumset { a: String, b: String },
    /// Small-doubling check: |A+A| < 3|A| confines A to a short interval.
    Keystone { a: String },
    /// Small-sumset cover of an integer set by an arithmetic progression.
    Freiman { x: String },
    /// Grid cells covered by A up to a delta fraction.
    Discretize { a: String, eps: String, delta: String },
    /// Lattice construction with superlevel ratio lambda; verifies its
    /// distribution function exactly.
    Counterexample {
        #[arg(long)]
        lambda: u64,
    },
    /// Stability probe for sets (A, B, E, F) with |F| = 3|E|.
    Probe {
        a: String,
        b: String,
        e: String,
        f: String,
        #[arg(long, default_value = "1/10")]
        eps_prime: String,
    },
    /// Deterministic sweep over a generator family.
    Sweep {
        /// Generator family: `gap` or `random`.
        #[arg(long)]
        family: String,
        /// Comma-separated gap widths for the gap family, e.g. `0,1/20,1/10`.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of trials for the random family.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value = "1/10")]
        eps_prime: String,
        /// Components per random set.
        #[arg(long, default_value_t = 3)]
        components: usize,
        /// Random sets live inside [-scale, scale].
        #[arg(long, default_value = "4")]
        scale: String,
        /// Endpoint denominators stay at most this bound.
        #[arg(long, default_value_t = 8)]
        denom_bound: u64,
    },
}

fn parse_set(label: &str, text: &str) -> Result<IntervalSet> {
    text.parse::<IntervalSet>()
        .with_context(|| format!("invalid interval set for {label}: `{text}`"))
}

fn parse_rat(label: &str, text: &str) -> Result<Scalar> {
    parse_scalar(text).with_context(|| format!("invalid rational for {label}: `{text}`"))
}

fn run(command: &Command) -> Result<Vec<Record>> {
    let record = match command {
        Command::Pair { a, b, c } => {
            let (a, b, c) = (parse_set("A", a)?, parse_set("B", b)?, parse_set("C", c)?);
            let value = pairing(&a, &b, &c)?;
            let mut r = Record::new();
            r.push_set("set_a", &a)
                .push_set("set_b", &b)
                .push_set("set_c", &c)
                .push_rat("pairing", &value);
            r
        }
        Command::Deficit { a, b, c } => {
            let (a, b, c) = (parse_set("A", a)?, parse_set("B", b)?, parse_set("C", c)?);
            let report = rs_deficit(&a, &b, &c)?;
            let mut r = Record::new();
            r.push_set("set_a", &a)
                .push_set("set_b", &b)
                .push_set("set_c", &c)
                .extend(report.to_record());
            r
        }
        Command::Superlevel { a, b, t } => {
            let (a, b) = (parse_set("A", a)?, parse_set("B", b)?);
            let t = parse_rat("t", t)?;
            let level = convolve_indicators(&a, &b)?.superlevel(&t)?;
            let mut r = Record::new();
            r.push_set("set_a", &a)
                .push_set("set_b", &b)
                .push_rat("t", &t)
                .push_set("superlevel", &level)
                .push_rat("measure", &level.measure());
            r
        }
        Command::Sumset { a, b } => {
            let (a, b) = (parse_set("A", a)?, parse_set("B", b)?);
            let sum = a.minkowski_sum(&b)?;
            let mut r = Record::new();
            r.push_set("set_a", &a)
                .push_set("set_b", &b)
                .push_set("sumset", &sum)
                .push_rat("measure", &sum.measure());
            r
        }
        Command::Keystone { a } => {
            let a = parse_set("A", a)?;
            let report = small_doubling_check(&a)?;
            let mut r = Record::new();
            r.push_set("set_a", &a).extend(report.to_record());
            r
        }
        Command::Freiman { x } => {
            let x: IntegerSet = x
                .parse()
                .with_context(|| format!("invalid integer set: `{x}`"))?;
            let doubled = int_sumset(&x, &x)?;
            let cover = freiman_cover(&x)?;
            let mut r = Record::new();
            r.push_int_set("set_x", &x)
                .push_uint("cardinality", x.len() as u64)
                .push_uint("sumset_cardinality", doubled.len() as u64)
                .push_bool("premise", cover.is_some());
            match cover {
                Some(cover) => {
                    r.push_text("cover", &cover.to_string())
                        .push_uint("cover_length", cover.length)
                        .push_uint("bound", (doubled.len() - x.len() + 1) as u64);
                }
                None => {
                    r.push_text("cover", "").push_uint("cover_length", 0).push_uint(
                        "bound",
                        0,
                    );
                }
            }
            r
        }
        Command::Discretize { a, eps, delta } => {
            let a = parse_set("A", a)?;
            let eps = parse_rat("eps", eps)?;
            let delta = parse_rat("delta", delta)?;
            let cells = discretize(&a, &eps, &delta)?;
            let mut r = Record::new();
            r.push_set("set_a", &a)
                .push_rat("eps", &eps)
                .push_rat("delta", &delta)
                .push_int_set("cells", &cells)
                .push_uint("count", cells.len() as u64);
            r
        }
        Command::Counterexample { lambda } => counterexample_report(*lambda)?.to_record(),
        Command::Probe { a, b, e, f, eps_prime } => {
            let (a, b) = (parse_set("A", a)?, parse_set("B", b)?);
            let (e, f) = (parse_set("E", e)?, parse_set("F", f)?);
            let eps_prime = parse_rat("eps-prime", eps_prime)?;
            let report = stability_probe(&a, &b, &e, &f, &eps_prime)?;
            let mut r = Record::new();
            r.push_set("set_a", &a)
                .push_set("set_b", &b)
                .push_set("set_e", &e)
                .push_set("set_f", &f)
                .extend(report.to_record());
            r
        }
        Command::Sweep {
            family,
            grid,
            seed,
            trials,
            eps_prime,
            components,
            scale,
            denom_bound,
        } => {
            let family = match family.as_str() {
                "gap" => {
                    let grid_text = grid
                        .as_deref()
                        .context("the gap family requires --grid with gap widths")?;
                    SweepFamily::Gap { grid: parse_grid(grid_text)? }
                }
                "random" => SweepFamily::Random { trials: *trials },
                other => bail!(Error::UnknownFamily(other.to_string())),
            };
            let spec = SweepSpec {
                family,
                seed: *seed,
                eps_prime: parse_rat("eps-prime", eps_prime)?,
                n_components: *components,
                scale: parse_rat("scale", scale)?,
                denominator_bound: *denom_bound,
            };
            return Ok(run_sweep(&spec)?);
        }
    };
    Ok(vec![record])
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let rows = run(&cli.command)?;
    let rendered = match cli.format.as_str() {
        "csv" => render_csv(&rows),
        _ => {
            let mut text = if matches!(cli.command, Command::Sweep { .. }) {
                render_json_rows(&rows)
            } else {
                render_json_record(rows.first().context("no output produced")?)
            };
            text.push('\n');
            text
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, rendered)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

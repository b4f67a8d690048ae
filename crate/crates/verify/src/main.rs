use clap::{Args, Parser, Subcommand};
use cosimp_verify::{
    page_dump, render_reports, run_check, tot_homology, universal_summary, CheckId, Expr, Format, Options, Overrides,
    VerifyError,
};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cosimp", about = "Spectral sequence checks for cosimplicial simplicial modules over F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump E^r of CN V on the exact part of the window.
    Page {
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Homology of N Tot V and its filtration.
    TotHomology {
        #[command(flatten)]
        common: Common,
    },
    /// Cells, E¹ and orbit E^∞ of a universal example.
    Universal {
        #[command(flatten)]
        common: Common,
    },
    /// Run one check.
    Check {
        id: CheckId,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run several checks and print one report; no ids gives an empty report.
    Report {
        ids: Vec<CheckId>,
        /// Run every check.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Default)]
struct Common {
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "P")]
    p: Option<usize>,
    #[arg(long = "Q")]
    q: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// A preset-combinator expression, e.g. `orbits(omega(1,2))`.
    #[arg(long)]
    v: Option<String>,
    /// TOML file with any of `v`, `s`, `t`, `m`, `P`, `Q`, `ell`, `format`;
    /// flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Drop one shuffle from every Sh(p,q), p,q ≥ 1 (negative control).
    #[arg(long)]
    corrupt_shuffles: bool,
    /// Record wall-clock durations in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    v: Option<String>,
    s: Option<usize>,
    t: Option<usize>,
    m: Option<usize>,
    #[serde(rename = "P")]
    p: Option<usize>,
    #[serde(rename = "Q")]
    q: Option<usize>,
    ell: Option<usize>,
    format: Option<Format>,
}

struct Resolved {
    overrides: Overrides,
    v: Option<Expr>,
    format: Format,
}

impl Common {
    fn resolve(&self) -> Result<Resolved, VerifyError> {
        let config: Config = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str(&text).map_err(|e| VerifyError::Config(e.to_string()))?
            }
            None => Config::default(),
        };
        let from_config = Overrides { s: config.s, t: config.t, m: config.m, p: config.p, q: config.q, ell: config.ell };
        let from_flags = Overrides { s: self.s, t: self.t, m: self.m, p: self.p, q: self.q, ell: self.ell };
        let v = self.v.clone().or(config.v).map(|src| Expr::parse(&src)).transpose()?;
        Ok(Resolved {
            overrides: from_config.merge(&from_flags),
            v,
            format: self.format.or(config.format).unwrap_or_default(),
        })
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, VerifyError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<bool, VerifyError> {
    match cli.command {
        Command::Page { r, common } => {
            let c = common.resolve()?;
            let (s, t) = (c.overrides.s.unwrap_or(1), c.overrides.t.unwrap_or(1));
            let v = c.v.unwrap_or(Expr::Orbits(Box::new(Expr::Omega(s, t))));
            let p = c.overrides.p.unwrap_or(2 * s);
            let q = c.overrides.q.unwrap_or(2 * t + 3);
            print!("{}", page_dump(&v, r, p, q)?.render(c.format)?);
            Ok(true)
        }
        Command::TotHomology { common } => {
            let c = common.resolve()?;
            let (s, t) = (c.overrides.s.unwrap_or(1), c.overrides.t.unwrap_or(1));
            let v = c.v.unwrap_or(Expr::Omega(s, t));
            let ell = c.overrides.ell.unwrap_or(2 * s);
            let levels = c.overrides.q.unwrap_or(t.saturating_sub(s) + 2);
            print!("{}", json(&tot_homology(&v, ell, levels)?)?);
            Ok(true)
        }
        Command::Universal { common } => {
            let c = common.resolve()?;
            let (s, t) = (c.overrides.s.unwrap_or(1), c.overrides.t.unwrap_or(1));
            let p = c.overrides.p.unwrap_or(2 * t + 2);
            let q = c.overrides.q.unwrap_or(2 * t + 2);
            print!("{}", json(&universal_summary(s, t, p, q)?)?);
            Ok(true)
        }
        Command::Check { id, run } => run_many(&[id], &run),
        Command::Report { ids, all, run } => {
            let ids = if all { CheckId::ALL.to_vec() } else { ids };
            run_many(&ids, &run)
        }
    }
}

fn run_many(ids: &[CheckId], args: &RunArgs) -> Result<bool, VerifyError> {
    let c = args.common.resolve()?;
    let options = Options { corrupt_shuffles: args.corrupt_shuffles, v: c.v, timing: args.timing };
    let reports = ids
        .iter()
        .map(|&id| run_check(id, &c.overrides, &options))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", render_reports(&reports, c.format)?);
    Ok(reports.iter().all(|r| r.passed()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qsmzv::error::{Error, Result};
use qsmzv::eval::{self, QContext};
use qsmzv::expr::{self, Env, Val};
use qsmzv::harness::{self, Params};
use qsmzv::report::Report;
use qsmzv::series::{self, IdentityId, Param};

#[derive(Parser)]
#[command(name = "qsmzv", version, about = "q-analogues of symmetric multiple zeta values")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression, e.g. `ZqM(qshuf(g[1],g[1]))`.
    Eval {
        #[arg(long)]
        expr: String,
        /// `p/q` for exact arithmetic, a decimal for floating point.
        #[arg(long, default_value = "1/2")]
        q: String,
        /// Default truncation for `ZqM`, `ZSqM`, `T`.
        #[arg(long = "M", default_value_t = 6)]
        m: usize,
        /// Target tail bound for `Zq`.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check one identity of the generating-series catalog.
    Identity {
        #[arg(long)]
        id: IdentityId,
        #[arg(long, default_value_t = 5)]
        order: u32,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        w2: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(harness::SUITES))]
        suite: String,
        #[arg(long)]
        wt_max: Option<String>,
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tabulate `Z_q(w)` along a grid of q approaching 1.
    Limit {
        #[arg(long)]
        expr: String,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.9,0.99,0.999")]
        grid: Vec<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

fn emit(rep: &Report, format: Format) -> u8 {
    match format {
        Format::Json => println!("{}", rep.to_json()),
        Format::Csv => print!("{}", rep.to_csv()),
    }
    rep.exit_code() as u8
}

fn word(src: &str) -> Result<qsmzv::freealg::NCPoly> {
    match expr::eval_str(src, &Env::default())? {
        Val::Q(p) => Ok(p),
        other => Err(Error::Type(format!("`{src}` is not a q-word polynomial: {other}"))),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Eval { expr, q, m, tol } => {
            let mut ctx = QContext::parse(&q)?;
            if let Some(t) = tol {
                ctx = ctx.with_tol(t);
            }
            println!("{}", expr::eval_str(&expr, &Env::new(ctx, m))?);
            Ok(0)
        }
        Cmd::Identity { id, order, k, w, w2, format } => {
            let mut params = Vec::new();
            for s in [w, w2].into_iter().flatten() {
                params.push(Param::Word(word(&s)?));
            }
            if let Some(k) = k {
                params.push(Param::Index(k.parse()?));
            }
            Ok(emit(&series::check_identity(id, order, &params)?, format))
        }
        Cmd::Verify { suite, wt_max, m, q, order, seed, format } => {
            let mut p = Params::new();
            for (key, v) in [("wt_max", wt_max), ("M", m), ("q", q), ("order", order), ("seed", seed)] {
                if let Some(v) = v {
                    p.insert(key.to_string(), v);
                }
            }
            Ok(emit(&harness::run_suite(&suite, &p)?, format))
        }
        Cmd::Limit { expr, grid, tol } => {
            let rows = eval::limit_probe(&word(&expr)?, &grid, tol)?;
            println!("{:>8}  {:>22}  {:>10}  {:>6}  {:>14}", "q", "Z_q", "tail", "M", "scaled");
            for r in rows {
                let scaled = r.scaled.map_or("-".to_string(), |s| format!("{s:.10}"));
                println!("{:>8}  {:>22.16}  {:>10.2e}  {:>6}  {:>14}", r.q, r.value, r.tail_bound, r.m_used, scaled);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(126)
        }
    }
}

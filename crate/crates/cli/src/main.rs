//! `pbwdem`: builds Weyl and Demazure lattices, PBW gradings and annihilator
//! ideals, and checks them against each other over a grid of weights.

mod cases;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pbwdem_core::exactlat::check_characteristic;
use pbwdem_core::rootdata::build_root_datum;
use pbwdem_core::{Family, RootDatum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use cases::{run_case, CaseOptions, CaseRecord, Command};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    A,
    C,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "pbwdem", version, about = "PBW gradings and Demazure lattices over the integers")]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Root system family.
    #[arg(long, global = true, value_enum, default_value = "a", ignore_case = true)]
    family: FamilyArg,

    /// `n` for sl_n, `m` for sp_2m.
    #[arg(long, global = true, default_value_t = 2)]
    rank: usize,

    /// Fundamental coefficients: `a,b,...`, several separated by `;`, or
    /// `grid:maxsum=k` for every nonzero dominant weight with coefficient sum at most k.
    #[arg(long, global = true, default_value = "grid:maxsum=1")]
    weights: String,

    /// Characteristics for base change (0 is the rationals).
    #[arg(long, global = true, default_value = "0,2,3")]
    primes: String,

    /// Highest ideal degree for `ideal`: `auto` or a number.
    #[arg(long, global = true, default_value = "auto")]
    max_degree: String,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Worker threads; 0 uses every processor.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Include Hermite basis rows in the report.
    #[arg(long, global = true)]
    dump_basis: bool,

    /// Omit timings so that output is byte-stable.
    #[arg(long, global = true)]
    canonical: bool,
}

#[derive(Clone, Copy, Debug, Subcommand)]
enum Sub {
    /// Root maps, special Weyl group element and root classification.
    Rootinfo,
    /// Weyl lattice, PBW filtration and associated graded module.
    Module,
    /// Demazure lattice of the doubled datum matched with each weight.
    Demazure,
    /// Annihilator ideal slices and the generator ideal.
    Ideal,
    /// Full comparison of the graded module with the Demazure module.
    Verify,
}

struct Config {
    datum: RootDatum,
    weights: Vec<Vec<i64>>,
    opts: CaseOptions,
}

fn parse_weights(text: &str, len: usize) -> Result<Vec<Vec<i64>>> {
    if let Some(rest) = text.strip_prefix("grid:") {
        let k: i64 = rest
            .strip_prefix("maxsum=")
            .ok_or_else(|| anyhow!("grid weights must look like grid:maxsum=K"))?
            .parse()
            .context("grid bound")?;
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p| {
                    let used: i64 = p.iter().sum();
                    (0..=(k - used).max(0)).map(move |a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
                })
                .collect();
        }
        out.retain(|w| w.iter().sum::<i64>() > 0);
        return Ok(out);
    }
    text.split(';')
        .map(|w| {
            let v: Vec<i64> =
                w.split(',').map(|x| x.trim().parse::<i64>()).collect::<std::result::Result<_, _>>().context("weights")?;
            if v.len() != len {
                bail!("weight {w} has {} coefficients, expected {len}", v.len());
            }
            if v.iter().any(|&a| a < 0) {
                bail!("weight {w} is not dominant");
            }
            Ok(v)
        })
        .collect()
}

fn parse_config(cli: &Cli) -> Result<Config> {
    let family = match cli.family {
        FamilyArg::A => Family::A,
        FamilyArg::C => Family::C,
    };
    let datum = build_root_datum(family, cli.rank).map_err(|e| anyhow!("{e}"))?;
    let weights = parse_weights(&cli.weights, datum.lie_rank())?;
    let primes: Vec<u64> =
        cli.primes.split(',').map(|p| p.trim().parse::<u64>()).collect::<std::result::Result<_, _>>().context("primes")?;
    for &p in &primes {
        check_characteristic(p).map_err(|e| anyhow!("{e}"))?;
    }
    let max_degree = match cli.max_degree.as_str() {
        "auto" => None,
        n => Some(n.parse().context("max degree")?),
    };
    let budget_ms = match std::env::var("PBWDEM_BUDGET_MS") {
        Ok(v) => Some(v.parse().context("PBWDEM_BUDGET_MS")?),
        Err(_) => None,
    };
    let opts = CaseOptions { primes, max_degree, dump_basis: cli.dump_basis, canonical: cli.canonical, budget_ms };
    Ok(Config { datum, weights, opts })
}

fn config_json(cli: &Cli, cfg: &Config) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(format!("{:?}", cli.command).to_lowercase()));
    m.insert("family".into(), json!(cfg.datum.family().to_string()));
    m.insert("rank".into(), json!(cfg.datum.small_rank()));
    m.insert("weights".into(), json!(cfg.weights));
    m.insert("primes".into(), json!(cfg.opts.primes));
    m.insert("max_degree".into(), cfg.opts.max_degree.map_or(json!("auto"), |d| json!(d)));
    m.insert("format".into(), json!(format!("{:?}", cli.format).to_lowercase()));
    m.insert("dump_basis".into(), json!(cli.dump_basis));
    m.insert("canonical".into(), json!(cli.canonical));
    m.insert("budget_ms".into(), json!(cfg.opts.budget_ms));
    if !cli.canonical {
        m.insert("jobs".into(), json!(cli.jobs));
    }
    Value::Object(m)
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        Value::Object(_) => serde_json::to_string(v).unwrap_or_default(),
        other => other.to_string(),
    }
}

fn write_csv(cases: &[Value], out: &mut dyn Write) -> Result<()> {
    let mut columns: Vec<String> = cases
        .iter()
        .flat_map(|c| c.as_object().into_iter().flat_map(|o| o.keys().cloned()))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    columns.retain(|c| c != "lambda");
    columns.insert(0, "lambda".into());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&columns)?;
    for c in cases {
        w.write_record(columns.iter().map(|k| c.get(k).map(scalar_text).unwrap_or_default()))?;
    }
    w.flush()?;
    Ok(())
}

fn write_text(doc: &Value, out: &mut dyn Write) -> Result<()> {
    let cfg = &doc["config"];
    writeln!(out, "pbwdem {} family={} rank={}", doc["version"].as_str().unwrap_or(""), scalar_text(&cfg["family"]), cfg["rank"])?;
    for c in doc["cases"].as_array().into_iter().flatten() {
        let fields: Vec<String> = c
            .as_object()
            .into_iter()
            .flatten()
            .filter(|(k, _)| k.as_str() != "lambda")
            .map(|(k, v)| format!("{k}={}", scalar_text(v)))
            .collect();
        writeln!(out, "[{}] {}", scalar_text(&c["lambda"]), fields.join(" "))?;
    }
    writeln!(out, "pass={}", doc["pass"])?;
    Ok(())
}

fn emit(doc: &Value, format: Format) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, doc)?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(doc["cases"].as_array().map_or(&[][..], Vec::as_slice), &mut out)?,
        Format::Text => write_text(doc, &mut out)?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = match parse_config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(EXIT_USAGE);
        }
    };
    let command = match cli.command {
        Sub::Rootinfo => {
            let info = cases::rootinfo(&cfg.datum).map_err(|e| anyhow!("{e}"))?;
            let doc = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "config": config_json(cli, &cfg),
                "cases": [info],
                "pass": true,
            });
            emit(&doc, cli.format)?;
            return Ok(0);
        }
        Sub::Module => Command::Module,
        Sub::Demazure => Command::Demazure,
        Sub::Ideal => Command::Ideal,
        Sub::Verify => Command::Verify,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    let mut records: Vec<CaseRecord> = pool.install(|| {
        cfg.weights.par_iter().map(|w| run_case(command, &cfg.datum, w, &cfg.opts)).collect()
    });
    records.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    let pass = records.iter().all(|r| r.pass);
    let code = if records.iter().any(|r| !r.pass && !r.skipped) {
        EXIT_FAIL
    } else if records.iter().any(|r| r.skipped) {
        EXIT_BUDGET
    } else {
        0
    };
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": config_json(cli, &cfg),
        "cases": records.into_iter().map(|r| r.value).collect::<Vec<_>>(),
        "pass": pass,
    });
    emit(&doc, cli.format)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

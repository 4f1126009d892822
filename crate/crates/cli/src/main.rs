use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hallcx::complexcat::{CxKey, CxKind};
use hallcx::exactla::PrimeField;
use hallcx::hallcore::{q_pow, ComplexHall, HallAlgebra, HallCategory, HallElt, ModuleHall};
use hallcx::localized::Localized;
use hallcx::quiverrep::{ModuleKey, Quiver, RepCat, DEFAULT_BUDGET};
use hallcx::report::Report;
use hallcx::suites::{run_suite, SuiteConfig, SUITES};
use hallcx::Error;

#[derive(Parser, Debug)]
#[command(name = "hallcx", version, about = "Exact Hall algebras of quiver representations and complexes of projectives")]
struct Cli {
    /// Quiver as a JSON file `{"vertices": n, "arrows": [[s, t], ...]}` (1-indexed), or `A<n>`
    /// for the linearly oriented quiver 1 -> 2 -> ... -> n.
    #[arg(long, global = true, default_value = "A2")]
    quiver: String,
    /// Prime characteristic of the ground field.
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// Dimension bound, comma separated (defaults to 1 at every vertex).
    #[arg(long = "max-dim", global = true, value_delimiter = ',')]
    max_dim: Option<Vec<usize>>,
    /// Number of components of cyclic and m-term complexes.
    #[arg(long, global = true, default_value_t = 2)]
    m: usize,
    /// Level window `LO..HI` for bounded complexes and generator indices.
    #[arg(long, global = true, default_value = "-2..3", allow_hyphen_values = true)]
    levels: String,
    /// Largest exhaustive enumeration allowed.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Random samples per sampled suite.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the table or report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List isomorphism classes with their automorphism group orders.
    Enumerate {
        #[arg(long, value_enum, default_value_t = Ambient::Modules)]
        ambient: Ambient,
    },
    /// Multiply two basis classes.
    Product {
        lhs: String,
        rhs: String,
        #[arg(long, value_enum, default_value_t = Ambient::Modules)]
        ambient: Ambient,
        /// Use the twisted product `q^{<x,y>} x ◇ y`.
        #[arg(long)]
        twisted: bool,
    },
    /// Run a named verification suite.
    Verify { suite: String },
    /// List the registered suites.
    Suites,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Ambient {
    Modules,
    Cyclic,
    Window,
    Bounded,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => 3,
                Error::Inconsistency(_) => 1,
                _ => 2,
            })
        }
    }
}

fn parse_levels(s: &str) -> hallcx::Result<(i64, i64)> {
    let bad = || Error::Parse(format!("levels must look like LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn load_quiver(spec: &str) -> hallcx::Result<Quiver> {
    if let Some(n) = spec.strip_prefix('A').and_then(|n| n.parse::<usize>().ok()) {
        if n == 0 {
            return Err(Error::Domain("A_n needs n >= 1".into()));
        }
        return Ok(Quiver::linear_a(n));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    Quiver::from_json(&text)
}

fn ambient_kind(a: Ambient, m: usize) -> Option<CxKind> {
    match a {
        Ambient::Modules => None,
        Ambient::Cyclic => Some(CxKind::Cyclic(m)),
        Ambient::Window => Some(CxKind::Window(m)),
        Ambient::Bounded => Some(CxKind::Bounded),
    }
}

fn run(cli: &Cli) -> hallcx::Result<Outcome> {
    let quiver = load_quiver(&cli.quiver)?;
    if cli.budget == 0 {
        return Err(Error::Domain("budget must be positive".into()));
    }
    let cat = RepCat::with_budget(quiver, PrimeField::new(cli.p)?, cli.budget);
    let max_dim = cli.max_dim.clone().unwrap_or_else(|| vec![1; cat.n()]);
    if max_dim.len() != cat.n() {
        return Err(Error::Domain(format!("max-dim has {} entries, the quiver has {} vertices", max_dim.len(), cat.n())));
    }
    if cli.m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let levels = parse_levels(&cli.levels)?;
    let mut cfg = SuiteConfig::new(max_dim, cli.m, levels);
    cfg.samples = cli.samples;
    cfg.seed = cli.seed;
    match &cli.command {
        Command::Enumerate { ambient } => {
            let rows = enumerate(&cat, &cfg, *ambient)?;
            emit_table(cli, &["key", "dims", "aut"], &rows)?;
            Ok(Outcome::Pass)
        }
        Command::Product { lhs, rhs, ambient, twisted } => {
            let rows = product(&cat, &cfg, *ambient, lhs, rhs, *twisted)?;
            emit_table(cli, &["lhs", "rhs", "key", "numerator", "denominator"], &rows)?;
            Ok(Outcome::Pass)
        }
        Command::Verify { suite } => {
            let report = run_suite(suite, &cat, &cfg)?;
            emit_report(cli, &cfg, &report)?;
            let failures = report.failures().count();
            eprintln!("{}: {} instances, {} failed", report.suite, report.instances.len(), failures);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            Ok(if report.pass() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Suites => {
            let rows: Vec<Vec<String>> = SUITES.iter().map(|s| vec![s.to_string()]).collect();
            emit_table(cli, &["suite"], &rows)?;
            Ok(Outcome::Pass)
        }
    }
}

fn join_dims(d: &[usize]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn enumerate(cat: &RepCat, cfg: &SuiteConfig, ambient: Ambient) -> hallcx::Result<Vec<Vec<String>>> {
    match ambient_kind(ambient, cfg.m) {
        None => {
            let h = ModuleHall::new(cat);
            cat.enumerate_iso_class_keys(&cfg.max_dim)?
                .into_iter()
                .map(|k| Ok(vec![k.to_string(), join_dims(&k.dims(cat.n())), h.aut_count(&k)?.to_string()]))
                .collect()
        }
        Some(kind) => {
            let h = ComplexHall::new(cat, kind);
            let levels = (kind == CxKind::Bounded).then_some(cfg.levels);
            cat.enumerate_cx_classes(kind, &cfg.max_dim, &cfg.max_dim, levels)?
                .into_iter()
                .map(|k| {
                    let x = cat.realize_cx(&k, kind)?;
                    let profile: Vec<String> =
                        cat.cx_profile_of(&x).iter().map(|(deg, d)| format!("{deg}:{}", join_dims(d))).collect();
                    Ok(vec![k.to_string(), profile.join(" "), h.aut_count(&k)?.to_string()])
                })
                .collect()
        }
    }
}

fn rows_of<K: Ord + Clone + std::fmt::Display>(lhs: &K, rhs: &K, x: &HallElt<K>) -> Vec<Vec<String>> {
    x.iter()
        .map(|(k, c)| vec![lhs.to_string(), rhs.to_string(), k.to_string(), c.numer().to_string(), c.denom().to_string()])
        .collect()
}

fn product(
    cat: &RepCat,
    cfg: &SuiteConfig,
    ambient: Ambient,
    lhs: &str,
    rhs: &str,
    twisted: bool,
) -> hallcx::Result<Vec<Vec<String>>> {
    match ambient_kind(ambient, cfg.m) {
        None => {
            let (x, y): (ModuleKey, ModuleKey) = (lhs.parse()?, rhs.parse()?);
            let h = HallAlgebra::new(ModuleHall::new(cat));
            h.cat.realize(&x)?;
            h.cat.realize(&y)?;
            let mut prod = h.basis_product(&x, &y)?;
            if twisted {
                let to_i64 = |k: &ModuleKey| k.dims(cat.n()).into_iter().map(|d| d as i64).collect::<Vec<_>>();
                prod = prod.scale(&q_pow(cat.p(), cat.euler_form(&to_i64(&x), &to_i64(&y))));
            }
            Ok(rows_of(&x, &y, &prod))
        }
        Some(kind) => {
            let (x, y): (CxKey, CxKey) = (lhs.parse()?, rhs.parse()?);
            let prod = if twisted {
                if matches!(kind, CxKind::Cyclic(_)) {
                    return Err(Error::Domain("the twisted product is defined for bounded and m-term complexes".into()));
                }
                Localized::new(cat, kind)?.twisted_class_product(&x, &y)?
            } else {
                HallAlgebra::new(ComplexHall::new(cat, kind)).basis_product(&x, &y)?
            };
            Ok(rows_of(&x, &y, &prod))
        }
    }
}

fn output(cli: &Cli) -> hallcx::Result<Box<dyn Write>> {
    match &cli.out {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn emit_table(cli: &Cli, header: &[&str], rows: &[Vec<String>]) -> hallcx::Result<()> {
    let mut out = output(cli)?;
    match cli.format {
        Format::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect()))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&table).map_err(io_err)?).map_err(io_err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header).map_err(io_err)?;
            for r in rows {
                w.write_record(r).map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
            return Ok(());
        }
    }
    out.flush().map_err(io_err)
}

fn config_json(cli: &Cli, cfg: &SuiteConfig) -> Value {
    json!({
        "quiver": cli.quiver,
        "p": cli.p,
        "max_dim": cfg.max_dim,
        "m": cfg.m,
        "levels": [cfg.levels.0, cfg.levels.1],
        "samples": cfg.samples,
        "seed": cfg.seed,
    })
}

fn emit_report(cli: &Cli, cfg: &SuiteConfig, report: &Report) -> hallcx::Result<()> {
    let mut out = output(cli)?;
    match cli.format {
        Format::Json => {
            let instances: Vec<Value> = report
                .instances
                .iter()
                .map(|i| {
                    let params: serde_json::Map<String, Value> =
                        i.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                    json!({"relation": i.relation, "params": params, "pass": i.pass, "lhs": i.lhs, "rhs": i.rhs})
                })
                .collect();
            let doc = json!({
                "suite": report.suite,
                "config": config_json(cli, cfg),
                "pass": report.pass(),
                "warnings": report.warnings,
                "instances": instances,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(io_err)?).map_err(io_err)?;
            out.flush().map_err(io_err)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["relation", "params", "pass", "lhs", "rhs"]).map_err(io_err)?;
            for i in &report.instances {
                let params: Vec<String> = i.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let pass = i.pass.to_string();
                w.write_record([i.relation.as_str(), &params.join(";"), &pass, &i.lhs, &i.rhs]).map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fanomirror::catalog::{self, CatalogEntry};
use fanomirror::frobenius::{
    associativity_check, build_series, structure_table, unregularize, PeriodFile, PeriodSequence, SeriesRecord,
    TableRecord,
};
use fanomirror::grassmannian::{build_rectangles_network, grass_periods, nobody_polytope, superpotential_chart, verify_valuations};
use fanomirror::laurent::{LaurentPolynomial, PolyFile, QPoly};
use fanomirror::polytope::{PolytopeFile, RationalPolytope};
use fanomirror::selfcheck;
use fanomirror::young::BoxContext;

#[derive(Parser)]
#[command(name = "fanomirror", version, about = "Exact periods, Grassmannian mirrors and theta structure constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QMode {
    Keep,
    One,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Superpotential,
    Polytope,
    Periods,
    Valuations,
    Table,
    Series,
}

#[derive(clap::Args)]
struct Source {
    /// Laurent polynomial file
    #[arg(long, value_name = "FILE", conflicts_with = "catalog")]
    poly: Option<PathBuf>,
    /// Catalog entry name instead of a file
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
}

#[derive(clap::Args)]
struct Output {
    /// Write the primary output here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Keep the Novikov parameter or set q = 1 in the output
    #[arg(long, value_enum, default_value = "keep")]
    q: QMode,
}

#[derive(Subcommand)]
enum Command {
    /// Classical periods c_0..c_N of a Laurent polynomial
    Period {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10)]
        order: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Polar polytope of a Laurent polynomial's support, with lattice counts
    Polytope {
        #[command(flatten)]
        source: Source,
        /// Dilations to count lattice points for
        #[arg(long, value_delimiter = ',', default_value = "1")]
        dilations: Vec<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Rectangles-seed chart of Gr(k, n)
    Grassmannian {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "superpotential")]
        emit: Emit,
        /// Period order for --emit periods
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        dilations: Vec<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Theta series and structure constants from a period sequence
    Frobenius {
        /// Period file
        #[arg(long, value_name = "FILE", conflicts_with = "catalog")]
        periods: Option<PathBuf>,
        /// Catalog entry whose periods to use
        #[arg(long, value_name = "NAME")]
        catalog: Option<String>,
        /// Period order when reading from the catalog
        #[arg(long, default_value_t = 12)]
        order: u32,
        #[arg(long, default_value_t = 4)]
        max_p: u32,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
        /// Ignore q powers above this in the associativity report
        #[arg(long)]
        q_window: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Show a catalog entry, or `list`
    Catalog {
        #[arg(default_value = "list")]
        name: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run the acceptance battery
    Selfcheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Period { source, order, output } => {
            let (f, index) = load_source(&source)?;
            let coeffs: Vec<QPoly> = f.classical_periods(order).iter().map(|c| apply_q(c, output.q)).collect();
            emit(&output, &serde_json::to_value(PeriodFile::from_coeffs(&coeffs, index))?)?;
        }
        Command::Polytope { source, dilations, output } => {
            let (f, _) = load_source(&source)?;
            let p = RationalPolytope::polar_from_support(&f.support())?;
            emit(&output, &polytope_json(&p, &dilations)?)?;
        }
        Command::Grassmannian { k, n, emit: what, order, dilations, output } => {
            let net = build_rectangles_network(BoxContext::new(k, n)?);
            match what {
                Emit::Superpotential => {
                    let w = superpotential_chart(&net)?;
                    let w = if output.q == QMode::One { w.specialize_q_one() } else { w };
                    emit(&output, &serde_json::to_value(PolyFile::from_polynomial(&w))?)?;
                }
                Emit::Polytope => emit(&output, &polytope_json(&nobody_polytope(&net)?, &dilations)?)?,
                Emit::Periods => {
                    let coeffs: Vec<QPoly> = grass_periods(&net, order)?.iter().map(|c| apply_q(c, output.q)).collect();
                    emit(&output, &serde_json::to_value(PeriodFile::from_coeffs(&coeffs, Some(n as u32)))?)?;
                }
                Emit::Valuations => {
                    let report = verify_valuations(&net)?;
                    emit(&output, &serde_json::to_value(&report.rows)?)?;
                    let rows = report.row_mismatches().len();
                    let pairs = report.pairing_mismatches();
                    eprintln!(
                        "{} diagrams, {rows} mismatches; {} theta pairings, {} mismatches",
                        report.rows.len(),
                        report.pairings.len(),
                        pairs.len()
                    );
                    for p in pairs {
                        eprintln!("theta {} on boundary {}: got {}, expected {}", p.i, p.j, p.got, p.expected);
                    }
                    if !report.is_clean() {
                        return Ok(ExitCode::from(1));
                    }
                }
                _ => bail!("grassmannian supports --emit superpotential|polytope|periods|valuations"),
            }
        }
        Command::Frobenius { periods, catalog, order, max_p, emit: what, q_window, output } => {
            let seq = load_periods(periods.as_deref(), catalog.as_deref(), order)?;
            for w in seq.grading_warnings() {
                eprintln!("warning: {w}");
            }
            let at_one = output.q == QMode::One;
            match what {
                Emit::Table => {
                    let series = build_series(&seq, max_p)?;
                    let table = structure_table(&series, max_p)?;
                    let violations = associativity_check(&table, max_p, q_window);
                    eprintln!("associativity through P = {max_p}: {} violations", violations.len());
                    for v in violations.iter().take(10) {
                        eprintln!("  (p,q,r,u) = ({},{},{},{}): {} != {}", v.p, v.q, v.r, v.u, v.lhs, v.rhs);
                    }
                    emit(&output, &serde_json::to_value(TableRecord::from_table(&table, at_one))?)?;
                }
                Emit::Series => {
                    let series = build_series(&seq, max_p)?;
                    let records = series
                        .iter()
                        .skip(1)
                        .map(|s| SeriesRecord::from_series(s, at_one))
                        .collect::<fanomirror::Result<Vec<_>>>()?;
                    emit(&output, &serde_json::to_value(records)?)?;
                }
                Emit::Periods => {
                    let g: Vec<QPoly> = unregularize(&seq).iter().map(|c| apply_q(c, output.q)).collect();
                    emit(&output, &serde_json::to_value(PeriodFile::from_coeffs(&g, seq.index()))?)?;
                }
                _ => bail!("frobenius supports --emit table|series|periods"),
            }
        }
        Command::Catalog { name, output } => {
            let value = if name == "list" {
                Value::Array(catalog::entries().iter().map(catalog_json).collect())
            } else {
                catalog_json(&catalog::lookup(&name)?)
            };
            emit(&output, &value)?;
        }
        Command::Selfcheck => {
            let mut ok = true;
            for outcome in selfcheck::run_all() {
                println!("{}", outcome.line());
                ok &= outcome.passed();
            }
            let catalog = selfcheck::catalog_failures(12);
            let status = if catalog.is_empty() { "PASS" } else { "FAIL" };
            println!("{status} catalog integrality: {}", if catalog.is_empty() { "all entries".to_string() } else { catalog.join("; ") });
            ok &= catalog.is_empty();
            return Ok(ExitCode::from(if ok { 0 } else { 1 }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_source(source: &Source) -> Result<(LaurentPolynomial, Option<u32>)> {
    match (&source.poly, &source.catalog) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok((LaurentPolynomial::from_json(&text).with_context(|| format!("parsing {}", path.display()))?, None))
        }
        (None, Some(name)) => {
            let e = catalog::lookup(name)?;
            Ok((e.mirror, Some(e.fano_index)))
        }
        (None, None) => bail!("one of --poly or --catalog is required"),
    }
}

fn load_periods(path: Option<&Path>, catalog: Option<&str>, order: u32) -> Result<PeriodSequence> {
    match (path, catalog) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let file: PeriodFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            Ok(file.to_sequence()?)
        }
        (None, Some(name)) => Ok(catalog::lookup(name)?.graded_periods(order)?),
        (None, None) => bail!("one of --periods or --catalog is required"),
    }
}

fn apply_q(c: &QPoly, mode: QMode) -> QPoly {
    match mode {
        QMode::Keep => c.clone(),
        QMode::One => QPoly::constant(c.eval_one()),
    }
}

fn polytope_json(p: &RationalPolytope, dilations: &[u32]) -> Result<Value> {
    let flags = p.geometry_flags();
    let counts = if flags.bounded {
        dilations
            .iter()
            .map(|&r| Ok((r, p.lattice_point_count(r)?)))
            .collect::<fanomirror::Result<Vec<_>>>()?
    } else {
        eprintln!("warning: polytope is unbounded, no lattice counts");
        Vec::new()
    };
    let mut value = serde_json::to_value(PolytopeFile::from_polytope(p, &counts))?;
    value["flags"] = serde_json::to_value(flags)?;
    Ok(value)
}

fn catalog_json(e: &CatalogEntry) -> Value {
    json!({
        "name": e.name,
        "description": e.description,
        "fano_index": e.fano_index,
        "mirror": PolyFile::from_polynomial(&e.mirror),
        "expected_head": e.expected_head.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn emit(output: &Output, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

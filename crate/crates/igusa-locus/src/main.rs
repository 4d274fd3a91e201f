//! Command-line surface over the library: locus analysis, tabulation,
//! polarization certificates, the genus-2 families, and self-verification.

use clap::{Parser, Subcommand, ValueEnum};
use igusa_locus::arith::{int, Int, QuadExtVal};
use igusa_locus::catalog::OrderCatalog;
use igusa_locus::error::{Error, Result};
use igusa_locus::hm;
use igusa_locus::locus::{self, LocusReport};
use igusa_locus::polarization;
use igusa_locus::quaternion::{algebra_for_disc, find_mu, find_twists, saturate_to_maximal, QOrder};
use igusa_locus::verify;
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "igusa-locus",
    version,
    about = "Exact structure of the quaternionic locus of abelian surfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full locus report for one quaternion discriminant
    Analyze {
        d: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locus reports for every admissible discriminant in a range
    Tabulate {
        d_min: i64,
        d_max: i64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Maximal order, principal polarization quaternion, Riemann form and
    /// twist witnesses for one discriminant
    Polarize {
        d: i64,
        /// Coordinate bound for the polarization search (default 8*D)
        #[arg(long)]
        bound: Option<i64>,
        /// Catalog JSON path (overrides IGUSA_LOCUS_CATALOG and the builtin)
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Genus-2 family member at (t, s), or a bounded point search
    Hm {
        /// Family discriminant: 6 or 10
        family: i64,
        /// Parameter t, e.g. "2", "125/18" or "1+2*sqrt(2)"
        t: Option<String>,
        /// Parameter s
        s: Option<String>,
        /// Search base-curve points of height up to this bound instead
        #[arg(long)]
        points: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the consistency suites (level: quick or full)
    Verify {
        level: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Analyze { d, format, out } => {
            let report = locus::analyze(d)?;
            let rendered = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => format!("{}\n{}\n", LocusReport::CSV_HEADER, report.csv_row()),
                Format::Text => render_report_text(&report),
            };
            emit(&rendered, out.as_deref())?;
            Ok(0)
        }
        Cmd::Tabulate {
            d_min,
            d_max,
            format,
            out,
            jobs,
        } => {
            let reports = locus::tabulate(d_min, d_max, jobs)?;
            let rendered = match format {
                Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
                Format::Csv => {
                    let mut s = String::from(LocusReport::CSV_HEADER);
                    s.push('\n');
                    for r in &reports {
                        s.push_str(&r.csv_row());
                        s.push('\n');
                    }
                    s
                }
                Format::Text => reports.iter().map(render_report_text).collect(),
            };
            emit(&rendered, out.as_deref())?;
            Ok(0)
        }
        Cmd::Polarize {
            d,
            bound,
            catalog,
            format,
            out,
        } => {
            let report = polarize(d, bound, catalog.as_deref())?;
            let rendered = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Text => render_polarize_text(&report),
                Format::Csv => {
                    return Err(Error::domain("polarize has no CSV representation"))
                }
            };
            emit(&rendered, out.as_deref())?;
            Ok(0)
        }
        Cmd::Hm {
            family,
            t,
            s,
            points,
            format,
            out,
        } => {
            let family = hm::Family::from_i64(family)?;
            let value = match (points, t, s) {
                (Some(h), _, _) => {
                    let pts = hm::rational_points(family, h)?;
                    json!(pts
                        .iter()
                        .map(|(t, s, deg)| json!({
                            "t": t.to_string(),
                            "s": s.to_string(),
                            "degenerate": deg,
                        }))
                        .collect::<Vec<_>>())
                }
                (None, Some(t), Some(s)) => {
                    let t = QuadExtVal::parse(&t)?;
                    let s = QuadExtVal::parse(&s)?;
                    hm::curve(family, &t, &s)?.to_json()
                }
                _ => {
                    return Err(Error::domain(
                        "hm needs either t and s, or --points HEIGHT",
                    ))
                }
            };
            let rendered = match format {
                Format::Json => serde_json::to_string_pretty(&value)? + "\n",
                Format::Text => render_json_text(&value),
                Format::Csv => return Err(Error::domain("hm has no CSV representation")),
            };
            emit(&rendered, out.as_deref())?;
            Ok(0)
        }
        Cmd::Verify { level, jobs } => {
            let level = verify::Level::parse(&level)?;
            let summary = verify::run(level, jobs);
            print!("{}", summary.render());
            Ok(if summary.all_passed() { 0 } else { 1 })
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct TwistWitness {
    chi: String,
    m: String,
}

#[derive(Serialize)]
struct PolarizeReport {
    #[serde(rename = "D")]
    d: i64,
    a: String,
    b: String,
    basis: Vec<String>,
    mu: String,
    riemann_matrix: Vec<Vec<String>>,
    pfaffian: String,
    degree: String,
    principal: bool,
    rosati_positive: bool,
    twists: Vec<TwistWitness>,
}

fn load_order(d: i64, catalog_flag: Option<&Path>) -> Result<QOrder> {
    let catalog = match catalog_flag {
        Some(path) => OrderCatalog::load(path)?,
        None => match std::env::var_os("IGUSA_LOCUS_CATALOG") {
            Some(path) => OrderCatalog::load(Path::new(&path))?,
            None => OrderCatalog::builtin(),
        },
    };
    if let Some(order) = catalog.get(d) {
        return Ok(order.clone());
    }
    let (a, b) = algebra_for_disc(&int(d))?;
    saturate_to_maximal(&a, &b)
}

fn polarize(d: i64, bound: Option<i64>, catalog: Option<&Path>) -> Result<PolarizeReport> {
    // rejects inadmissible discriminants up front with exit code 2
    locus::DiscD::new(d)?;
    let order = load_order(d, catalog)?;
    let bound = bound.unwrap_or(8 * d);
    if bound <= 0 {
        return Err(Error::domain("search bound must be positive"));
    }
    let mu = find_mu(&order, &int(d), bound)?.ok_or_else(|| {
        Error::SearchExhausted(format!(
            "no pure quaternion with nrd = {d} within coordinate bound {bound}; \
             raise --bound"
        ))
    })?;
    let form = polarization::riemann_form(&order, &mu)?;
    let degree = polarization::polarization_degree(&order, &form)?;
    let pf = polarization::pfaffian(&form.matrix);
    let positive = polarization::rosati_positive(&order, &mu)?;
    let twists = find_twists(&order, &mu, bound.min(8))?
        .into_iter()
        .map(|(chi, m)| TwistWitness {
            chi: chi.to_string(),
            m: m.to_string(),
        })
        .collect();
    Ok(PolarizeReport {
        d,
        a: order.algebra().a().to_string(),
        b: order.algebra().b().to_string(),
        basis: order.basis().iter().map(|e| e.to_string()).collect(),
        mu: mu.to_string(),
        riemann_matrix: form
            .matrix
            .iter()
            .map(|row| row.iter().map(Int::to_string).collect())
            .collect(),
        pfaffian: pf.to_string(),
        degree: degree.to_string(),
        principal: polarization::is_principal(&order, &mu),
        rosati_positive: positive,
        twists,
    })
}

fn render_report_text(r: &LocusReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "D = {} = {}\n",
        r.d,
        r.primes
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" * ")
    ));
    s.push_str(&format!("  h_tilde      = {}\n", r.h_tilde));
    s.push_str(&format!("  pi0          = {}\n", r.pi0));
    s.push_str(&format!(
        "  twisting     = {}{}\n",
        r.twisting,
        if r.twist_divisors.is_empty() {
            String::new()
        } else {
            format!(
                " (m = {})",
                r.twist_divisors
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }
    ));
    match r.rho_exact {
        Some(rho) => s.push_str(&format!("  rho          = {rho}\n")),
        None => s.push_str(&format!(
            "  rho_feasible = {{{}}} in ({}, {}]\n",
            r.rho_feasible
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            r.rho_bounds.low_exclusive,
            r.rho_bounds.high_inclusive
        )),
    }
    s.push_str(&format!("  irreducible  = {}\n", r.irreducible));
    s
}

fn render_polarize_text(r: &PolarizeReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("D = {}, algebra ({}, {} / Q)\n", r.d, r.a, r.b));
    s.push_str(&format!("  basis    = [{}]\n", r.basis.join(", ")));
    s.push_str(&format!("  mu       = {}\n", r.mu));
    s.push_str("  riemann  =\n");
    for row in &r.riemann_matrix {
        s.push_str(&format!("    [{}]\n", row.join(", ")));
    }
    s.push_str(&format!(
        "  pfaffian = {} (degree {}, principal = {})\n",
        r.pfaffian, r.degree, r.principal
    ));
    s.push_str(&format!("  rosati positive = {}\n", r.rosati_positive));
    if r.twists.is_empty() {
        s.push_str("  twists   = none found within bound\n");
    } else {
        for t in &r.twists {
            s.push_str(&format!("  twist    chi = {}, m = {}\n", t.chi, t.m));
        }
    }
    s
}

fn render_json_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Array(items) => items
            .iter()
            .map(|item| format!("{item}\n"))
            .collect(),
        other => format!("{other}\n"),
    }
}

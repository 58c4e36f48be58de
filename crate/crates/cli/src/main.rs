//! Batch command-line driver: every pipeline of the library behind one
//! binary with machine-readable output.
//!
//! Exit codes: 0 on success (and agreement, for oracle commands), 1 on usage
//! errors, 2 when two pipelines that must agree produce different values
//! (the first differing quantity is reported on stderr).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use topweight::arith::{decimal_string, Partition, Rational};
use topweight::graphcore::{
    chi_orb, chi_orb_oracle, enumerate_marked_graphs_p, enumerate_stable_graphs, z_g_graph_oracle,
};
use topweight::json::{GraphJson, PSeriesJson, SchurTableJson, TermJson};
use topweight::orbigraph::{gamma_formula, gamma_oracle};
use topweight::symfunc::{pseries_sub, PSeries};
use topweight::zagier::{
    default_truncation, enumerate_terms, equivariant_table, top_weight_euler,
    top_weight_euler_closed, z_any,
};

#[derive(Parser)]
#[command(
    name = "topweight",
    version,
    about = "Exact generating functions for graph-complex Euler characteristics",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (falls back to TOPWEIGHT_JOBS, then all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Append lossy decimal renderings with this many digits.
    #[arg(long, global = true, value_name = "DIGITS", num_args = 0..=1, default_missing_value = "12")]
    decimal: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// The generating function for the given genus, expanded in power sums.
    Zg {
        #[arg(long)]
        genus: u32,
        /// Truncation degree (default 3g + 6).
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// Numerical Euler characteristic: series extraction and closed form.
    Euler {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        n: u32,
    },
    /// Schur-basis table of the degree-n component.
    Schur {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        n: u32,
    },
    /// Graph-enumeration orbisum versus the closed formula (genus >= 2).
    OracleGraphs {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// Orbifold Euler characteristic of marked graphs, both ways.
    OracleOrbifold {
        /// Genus of the underlying graphs.
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        n: u32,
    },
    /// Cyclic-cover count gamma, closed formula versus brute force.
    OracleGamma {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u32,
        /// Comma-separated tail multiplicities (may be omitted).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        d: Vec<u64>,
    },
    /// Audit dump of all closed-formula terms for the given genus.
    DumpTerms {
        #[arg(long)]
        genus: u32,
    },
    /// Audit dump of enumerated graphs (marked when --n is given).
    DumpGraphs {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        n: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_jobs(cli.jobs);
    match run(&cli) {
        Ok(Outcome {
            payload,
            disagreement,
        }) => {
            if let Err(e) = emit(&cli.output, &payload) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            match disagreement {
                Some(msg) => {
                    eprintln!("disagreement: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

struct Outcome {
    payload: String,
    /// Set when two pipelines that must agree differ; triggers exit code 2.
    disagreement: Option<String>,
}

fn ok(payload: String) -> Result<Outcome, String> {
    Ok(Outcome {
        payload,
        disagreement: None,
    })
}

fn init_jobs(jobs: Option<usize>) {
    let jobs = jobs.or_else(|| {
        std::env::var("TOPWEIGHT_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn emit(output: &Option<PathBuf>, payload: &str) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, payload),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Zg { genus, truncate } => {
            let truncation = truncate.unwrap_or_else(|| default_truncation(*genus));
            let series = z_any(*genus, truncation);
            ok(render_series(&series, cli, &[("genus", json!(genus))]))
        }
        Command::Euler { genus, n } => {
            let series_value = top_weight_euler(*genus, *n);
            let closed = top_weight_euler_closed(*genus, *n).ok();
            let agreement = closed.as_ref().map(|c| c == &series_value);
            let payload = render_euler(*genus, *n, &series_value, closed.as_ref(), agreement, cli);
            let disagreement = if agreement == Some(false) {
                Some(format!(
                    "series extraction {series_value} differs from closed form {}",
                    closed.as_ref().unwrap()
                ))
            } else {
                None
            };
            Ok(Outcome {
                payload,
                disagreement,
            })
        }
        Command::Schur { genus, n } => {
            let table = equivariant_table(*genus, *n);
            let json_table = SchurTableJson::from(&table);
            let payload = match cli.format {
                Format::Json => to_pretty(&serde_json::to_value(&json_table).unwrap()),
                Format::Csv => {
                    let mut out = String::from("partition,num,den\n");
                    for t in &json_table.coefficients {
                        out.push_str(&format!("\"{}\",{},{}\n", join(&t.partition), t.num, t.den));
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("# schur genus={genus} n={n}\n");
                    out.push_str(&table.to_string());
                    out
                }
            };
            ok(payload)
        }
        Command::OracleGraphs { genus, truncate } => {
            if *genus < 2 {
                return Err("oracle-graphs requires genus >= 2".into());
            }
            let truncation = truncate.unwrap_or_else(|| default_truncation(*genus));
            let formula = topweight::zagier::z_g(*genus, truncation).map_err(|e| e.to_string())?;
            let oracle = z_g_graph_oracle(*genus, truncation).map_err(|e| e.to_string())?;
            let diff = first_difference(&formula, &oracle);
            let payload = render_two_series(
                "formula",
                &formula,
                "graph_orbisum",
                &oracle,
                diff.is_none(),
                cli,
                &[("genus", json!(genus))],
            );
            Ok(Outcome {
                payload,
                disagreement: diff,
            })
        }
        Command::OracleOrbifold { genus, n } => {
            let closed = chi_orb(*genus, *n).map_err(|e| e.to_string())?;
            let enumerated = chi_orb_oracle(*genus, *n).map_err(|e| e.to_string())?;
            let agree = closed == enumerated;
            let payload = render_pair(
                "orbifold_euler",
                &[("genus", json!(genus)), ("n", json!(n))],
                "closed",
                &closed,
                "enumeration",
                &enumerated,
                agree,
                cli,
            );
            let disagreement = (!agree)
                .then(|| format!("closed form {closed} differs from enumeration {enumerated}"));
            Ok(Outcome {
                payload,
                disagreement,
            })
        }
        Command::OracleGamma { m, r, d } => {
            if *m == 0 {
                return Err("m must be positive".into());
            }
            let d: Vec<u64> = d.iter().copied().filter(|&x| x != 0).collect();
            let d_gcd = d.iter().fold(*m, |acc, &x| gcd(acc, x));
            let formula = gamma_formula(*m, *r, d_gcd);
            let oracle = gamma_oracle(*m, *r, &d);
            let agree = formula == oracle;
            let payload = render_pair(
                "gamma",
                &[("m", json!(m)), ("r", json!(r)), ("d", json!(d))],
                "formula",
                &formula,
                "count",
                &oracle,
                agree,
                cli,
            );
            let disagreement =
                (!agree).then(|| format!("formula {formula} differs from count {oracle}"));
            Ok(Outcome {
                payload,
                disagreement,
            })
        }
        Command::DumpTerms { genus } => {
            let terms = enumerate_terms(*genus).map_err(|e| e.to_string())?;
            let records: Vec<TermJson> = terms.iter().map(TermJson::from).collect();
            let payload = match cli.format {
                Format::Json => to_pretty(&serde_json::to_value(&records).unwrap()),
                Format::Csv => {
                    let mut out = String::from("k,m,r,d,a,num,den\n");
                    for t in &records {
                        out.push_str(&format!(
                            "{},{},{},\"{}\",\"{}\",{},{}\n",
                            t.k,
                            t.m,
                            t.r,
                            join(&t.d),
                            join(&t.a),
                            t.coefficient.num,
                            t.coefficient.den
                        ));
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("# terms genus={genus}\n");
                    for t in &records {
                        out.push_str(&format!(
                            "k={} m={} r={} d=[{}] a=[{}] coefficient={}/{}\n",
                            t.k,
                            t.m,
                            t.r,
                            join(&t.d),
                            join(&t.a),
                            t.coefficient.num,
                            t.coefficient.den
                        ));
                    }
                    out
                }
            };
            ok(payload)
        }
        Command::DumpGraphs { genus, n } => {
            let records: Vec<GraphJson> = match n {
                None => {
                    let graphs = enumerate_stable_graphs(*genus).map_err(|e| e.to_string())?;
                    graphs.iter().map(GraphJson::from).collect()
                }
                Some(n) => {
                    let marked =
                        enumerate_marked_graphs_p(*genus, *n).map_err(|e| e.to_string())?;
                    marked.iter().map(GraphJson::from).collect()
                }
            };
            let payload = match cli.format {
                Format::Json => to_pretty(&serde_json::to_value(&records).unwrap()),
                Format::Csv => {
                    let mut out = String::from("vertices,half_edges,s,r,marking\n");
                    for g in &records {
                        out.push_str(&format!(
                            "{},{},\"{}\",\"{}\",\"{}\"\n",
                            g.vertices,
                            g.half_edges,
                            join(&g.s),
                            join(&g.r),
                            join(&g.marking)
                        ));
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!(
                        "# graphs genus={genus}{}\n",
                        n.map(|n| format!(" n={n}")).unwrap_or_default()
                    );
                    for g in &records {
                        out.push_str(&format!(
                            "vertices={} half_edges={} s=[{}] r=[{}] marking=[{}]\n",
                            g.vertices,
                            g.half_edges,
                            join(&g.s),
                            join(&g.r),
                            join(&g.marking)
                        ));
                    }
                    out
                }
            };
            ok(payload)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn to_pretty(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).unwrap();
    out.push('\n');
    out
}

fn series_json_value(series: &PSeries, decimal: Option<usize>) -> serde_json::Value {
    let base = PSeriesJson::from(series);
    let mut value = serde_json::to_value(&base).unwrap();
    if let Some(digits) = decimal {
        let decimals: Vec<String> = series
            .terms()
            .map(|(_, c)| decimal_string(c, digits))
            .collect();
        if let Some(terms) = value.get_mut("terms").and_then(|t| t.as_array_mut()) {
            for (term, dec) in terms.iter_mut().zip(decimals) {
                term["decimal_lossy"] = json!(dec);
            }
        }
    }
    value
}

fn render_series(series: &PSeries, cli: &Cli, meta: &[(&str, serde_json::Value)]) -> String {
    match cli.format {
        Format::Json => to_pretty(&series_json_value(series, cli.decimal)),
        Format::Csv => {
            let mut out = if cli.decimal.is_some() {
                String::from("partition,num,den,decimal_lossy\n")
            } else {
                String::from("partition,num,den\n")
            };
            for (lambda, c) in series.terms() {
                let parts = join(lambda.parts());
                if let Some(digits) = cli.decimal {
                    out.push_str(&format!(
                        "\"{}\",{},{},{}\n",
                        parts,
                        c.numer(),
                        c.denom(),
                        decimal_string(c, digits)
                    ));
                } else {
                    out.push_str(&format!("\"{}\",{},{}\n", parts, c.numer(), c.denom()));
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (k, v) in meta {
                out.push_str(&format!("# {k}={v}\n"));
            }
            out.push_str(&format!("# truncation={}\n", series.truncation()));
            if series.is_zero() {
                out.push_str("0\n");
            }
            for (lambda, c) in series.terms() {
                if let Some(digits) = cli.decimal {
                    out.push_str(&format!("p{lambda} {c} ~ {}\n", decimal_string(c, digits)));
                } else {
                    out.push_str(&format!("p{lambda} {c}\n"));
                }
            }
            out
        }
    }
}

fn render_two_series(
    name_a: &str,
    a: &PSeries,
    name_b: &str,
    b: &PSeries,
    agreement: bool,
    cli: &Cli,
    meta: &[(&str, serde_json::Value)],
) -> String {
    match cli.format {
        Format::Json => {
            let mut value = json!({});
            for (k, v) in meta {
                value[*k] = v.clone();
            }
            value[name_a] = series_json_value(a, cli.decimal);
            value[name_b] = series_json_value(b, cli.decimal);
            value["agreement"] = json!(agreement);
            to_pretty(&value)
        }
        Format::Csv => {
            let mut out = String::from("source,partition,num,den\n");
            for (name, series) in [(name_a, a), (name_b, b)] {
                for (lambda, c) in series.terms() {
                    out.push_str(&format!(
                        "{},\"{}\",{},{}\n",
                        name,
                        join(lambda.parts()),
                        c.numer(),
                        c.denom()
                    ));
                }
            }
            out.push_str(&format!("agreement,,{agreement},\n"));
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (k, v) in meta {
                out.push_str(&format!("# {k}={v}\n"));
            }
            out.push_str(&format!("# agreement={agreement}\n"));
            out.push_str(&format!("[{name_a}]\n"));
            for (lambda, c) in a.terms() {
                out.push_str(&format!("p{lambda} {c}\n"));
            }
            out.push_str(&format!("[{name_b}]\n"));
            for (lambda, c) in b.terms() {
                out.push_str(&format!("p{lambda} {c}\n"));
            }
            out
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn render_pair(
    title: &str,
    meta: &[(&str, serde_json::Value)],
    name_a: &str,
    a: &Rational,
    name_b: &str,
    b: &Rational,
    agreement: bool,
    cli: &Cli,
) -> String {
    let rational_value = |x: &Rational| {
        let mut v = json!({"num": x.numer().to_string(), "den": x.denom().to_string()});
        if let Some(digits) = cli.decimal {
            v["decimal_lossy"] = json!(decimal_string(x, digits));
        }
        v
    };
    match cli.format {
        Format::Json => {
            let mut value = json!({});
            for (k, v) in meta {
                value[*k] = v.clone();
            }
            value[name_a] = rational_value(a);
            value[name_b] = rational_value(b);
            value["agreement"] = json!(agreement);
            to_pretty(&value)
        }
        Format::Csv => {
            let mut out = String::from("quantity,num,den\n");
            out.push_str(&format!("{},{},{}\n", name_a, a.numer(), a.denom()));
            out.push_str(&format!("{},{},{}\n", name_b, b.numer(), b.denom()));
            out.push_str(&format!("agreement,{agreement},\n"));
            out
        }
        Format::Text => {
            let mut out = format!("# {title}\n");
            for (k, v) in meta {
                out.push_str(&format!("# {k}={v}\n"));
            }
            if let Some(digits) = cli.decimal {
                out.push_str(&format!("{name_a} = {a} ~ {}\n", decimal_string(a, digits)));
                out.push_str(&format!("{name_b} = {b} ~ {}\n", decimal_string(b, digits)));
            } else {
                out.push_str(&format!("{name_a} = {a}\n"));
                out.push_str(&format!("{name_b} = {b}\n"));
            }
            out.push_str(&format!("agreement = {agreement}\n"));
            out
        }
    }
}

fn render_euler(
    genus: u32,
    n: u32,
    series_value: &Rational,
    closed: Option<&Rational>,
    agreement: Option<bool>,
    cli: &Cli,
) -> String {
    match cli.format {
        Format::Json => {
            let mut value = json!({
                "genus": genus,
                "n": n,
                "series": {"num": series_value.numer().to_string(), "den": series_value.denom().to_string()},
                "closed": closed.map(|c| json!({"num": c.numer().to_string(), "den": c.denom().to_string()})),
                "agreement": agreement,
            });
            if let Some(digits) = cli.decimal {
                value["series"]["decimal_lossy"] = json!(decimal_string(series_value, digits));
            }
            to_pretty(&value)
        }
        Format::Csv => {
            let mut out = String::from("quantity,num,den\n");
            out.push_str(&format!(
                "series,{},{}\n",
                series_value.numer(),
                series_value.denom()
            ));
            if let Some(c) = closed {
                out.push_str(&format!("closed,{},{}\n", c.numer(), c.denom()));
            }
            out.push_str(&format!(
                "agreement,{},\n",
                agreement
                    .map(|a| a.to_string())
                    .unwrap_or_else(|| "n/a".into())
            ));
            out
        }
        Format::Text => {
            let mut out = format!("# euler genus={genus} n={n}\n");
            out.push_str(&format!("series = {series_value}\n"));
            match closed {
                Some(c) => out.push_str(&format!("closed = {c}\n")),
                None => out.push_str("closed = n/a (requires n > genus + 1)\n"),
            }
            out.push_str(&format!(
                "agreement = {}\n",
                agreement
                    .map(|a| a.to_string())
                    .unwrap_or_else(|| "n/a".into())
            ));
            out
        }
    }
}

/// First coefficient at which two series differ, if any.
fn first_difference(a: &PSeries, b: &PSeries) -> Option<String> {
    if a == b {
        return None;
    }
    let diff = pseries_sub(a, b);
    let (lambda, _) = diff.terms().next().expect("series differ");
    let lambda: Partition = lambda.clone();
    let ca = a.coeff(&lambda).unwrap_or_default();
    let cb = b.coeff(&lambda).unwrap_or_default();
    Some(format!(
        "first differing coefficient at p{lambda}: {ca} vs {cb}"
    ))
}

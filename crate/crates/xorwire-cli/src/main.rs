//! Command-line front end for the wiring toolkit.
//!
//! Exit status: 0 on success, 1 when a verification verdict is a mismatch,
//! 2 on usage, parse, or operational errors.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use xorwire::bits::BitVector;
use xorwire::construct::{self, Construction};
use xorwire::enumerate::{
    self, ExtremalReport, SearchOptions, Verdict, VerifyLimits, DEFAULT_BUDGET,
};
use xorwire::graph::EdgeView;
use xorwire::lighting;
use xorwire::pivot;
use xorwire::solver::{self, SolveResult};
use xorwire::wiring::{read_wiring, write_wiring, ClassSpec, ParsedWiring, WiringMatrix};
use xorwire::xnf;

#[derive(Parser)]
#[command(
    name = "xorwire",
    version,
    about = "Exact switch-and-bulb wiring toolkit over GF(2)",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    W3,
    W6,
    NuPairs,
    NuStar,
    Mu2,
    Mu2Star,
    Mu3,
    Mu3Star,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Wiring,
    Dot,
    Xnf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    Mu,
    Nu,
}

#[derive(Args, Clone)]
struct SearchFlags {
    /// Worker threads (XORWIRE_JOBS is the fallback; default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Refuse classes with more wirings than this.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named wiring family and write it in wiring text format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Dimension (not used by w3/w6).
        #[arg(long)]
        n: Option<usize>,
        /// Exact column degree (nu-star only).
        #[arg(long)]
        m: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exactly maximize the number of lit bulbs of a wiring.
    Solve {
        /// Wiring text file (stdin when omitted).
        file: Option<PathBuf>,
        /// Initial configuration: zero, even, or explicit bits.
        #[arg(long)]
        initial: Option<String>,
        /// Restrict presses to these vertices, e.g. 1,2,4.
        #[arg(long)]
        restrict: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Constructively light a degree-at-most-2 wiring from all-off.
    Light {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pivot a wiring about a vertex (optionally relative to a set).
    Pivot {
        file: Option<PathBuf>,
        /// Pivot vertex, 1-based.
        #[arg(long)]
        vertex: usize,
        /// Vertices spared from rewiring, e.g. 2,5.
        #[arg(long)]
        relative_to: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-export a wiring as wiring text, DOT, or XNF clauses.
    Export {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Initial configuration override: zero, even, or explicit bits.
        #[arg(long)]
        initial: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively compute an extremal value over a wiring class.
    Enumerate {
        #[arg(long, value_enum)]
        kind: SearchKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Exact column degree m (the starred classes).
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute the extremal grids exhaustively and check the closed
    /// forms and the construction families.
    Verify {
        /// Cap on every search grid.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample a uniform random member of a wiring class.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        exact: bool,
        /// RNG seed; drawn from entropy (and reported) when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the exact solver on construction families of growing size.
    Bench {
        #[arg(long, default_value_t = 2048)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct {
            family,
            n,
            m,
            output,
        } => {
            let c = build_family(family, n, m)?;
            let initial = if c.initial.is_zero() {
                None
            } else {
                Some(&c.initial)
            };
            emit(output.as_deref(), &write_wiring(&c.matrix, initial))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            file,
            initial,
            restrict,
            format,
            output,
        } => {
            let parsed = load_wiring(file.as_deref())?;
            let c = resolve_initial(&parsed, initial.as_deref())?;
            let result = match restrict {
                Some(list) => {
                    let allowed = parse_vertex_set(&list, parsed.matrix.n())?;
                    solver::solve_restricted(&parsed.matrix, &c, &allowed)?
                }
                None => solver::solve(&parsed.matrix, &c)?,
            };
            emit(
                output.as_deref(),
                &render_solve(&parsed.matrix, &c, &result, format)?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Light {
            file,
            format,
            output,
        } => {
            let parsed = load_wiring(file.as_deref())?;
            if parsed.initial.as_ref().is_some_and(|c| !c.is_zero()) {
                bail!("the lighting procedure starts from all-off; remove the c line");
            }
            let zeros = BitVector::zeros(parsed.matrix.n());
            let result = lighting::light_all(&parsed.matrix)?;
            emit(
                output.as_deref(),
                &render_solve(&parsed.matrix, &zeros, &result, format)?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pivot {
            file,
            vertex,
            relative_to,
            output,
        } => {
            let parsed = load_wiring(file.as_deref())?;
            let n = parsed.matrix.n();
            if vertex == 0 || vertex > n {
                bail!("--vertex must be in 1..={n}");
            }
            let spare = match relative_to {
                Some(list) => parse_vertex_set(&list, n)?,
                None => BitVector::zeros(n),
            };
            let pivoted = pivot::pivot_partial(&parsed.matrix, vertex - 1, &spare)?;
            emit(
                output.as_deref(),
                &write_wiring(&pivoted, parsed.initial.as_ref()),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            file,
            format,
            initial,
            output,
        } => {
            let parsed = load_wiring(file.as_deref())?;
            let text = match format {
                ExportFormat::Wiring => {
                    let c = resolve_initial(&parsed, initial.as_deref())?;
                    let keep = if c.is_zero() { None } else { Some(&c) };
                    write_wiring(&parsed.matrix, keep)
                }
                ExportFormat::Dot => EdgeView::new(&parsed.matrix).export_dot(),
                ExportFormat::Xnf => {
                    let c = resolve_initial(&parsed, initial.as_deref())?;
                    xnf::write_xnf(&parsed.matrix, &c)?
                }
            };
            emit(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            kind,
            n,
            m,
            exact,
            search,
            format,
            output,
        } => {
            let opts = search_options(&search);
            let report = match kind {
                SearchKind::Mu => enumerate::compute_mu(n, m, exact, &opts)?,
                SearchKind::Nu => enumerate::compute_nu(n, m, exact, &opts)?,
            };
            let text = match format {
                ReportFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
                ReportFormat::Text => render_report(&report),
            };
            emit(output.as_deref(), &text)?;
            Ok(if report.verdict == Verdict::Mismatch {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Verify {
            max_n,
            search,
            format,
            output,
        } => {
            let opts = search_options(&search);
            let limits = VerifyLimits {
                grid_max_n: max_n,
                ..VerifyLimits::default()
            };
            let report = enumerate::verify_theorems(&limits, &opts)?;
            let text = match format {
                ReportFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
                ReportFormat::Text => {
                    let mut out = String::new();
                    for r in &report.reports {
                        out.push_str(&render_report_line(r));
                    }
                    for c in &report.constructions {
                        out.push_str(&format!(
                            "construct {} n={} m={} claimed {} solved {} {}\n",
                            c.family,
                            c.n,
                            c.m,
                            c.claimed,
                            c.solved,
                            if c.ok { "ok" } else { "MISMATCH" }
                        ));
                    }
                    out.push_str(if report.ok {
                        "verified: ok\n"
                    } else {
                        "verified: MISMATCH\n"
                    });
                    out
                }
            };
            emit(output.as_deref(), &text)?;
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Random {
            n,
            m,
            exact,
            seed,
            output,
        } => {
            let seed = seed.unwrap_or_else(rand::random);
            eprintln!("seed {seed}");
            let spec = ClassSpec::new(n, m, exact)?;
            let w = spec.sample(seed)?;
            emit(output.as_deref(), &write_wiring(&w, None))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { max_n } => {
            bench(max_n)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_family(family: Family, n: Option<usize>, m: Option<usize>) -> Result<Construction> {
    if let Some(n) = n {
        let max = xorwire::wiring::MAX_DIMENSION;
        if n > max {
            bail!("--n {n} exceeds the supported maximum {max}");
        }
    }
    let need_n = || n.ok_or_else(|| anyhow!("--n is required for this family"));
    let c = match family {
        Family::W3 => construct::w3(),
        Family::W6 => construct::w6(),
        Family::NuPairs => construct::nu_pairs(need_n()?)?,
        Family::NuStar => {
            let m = m.ok_or_else(|| anyhow!("--m is required for nu-star"))?;
            construct::nu_star(need_n()?, m)?
        }
        Family::Mu2 => construct::mu2(need_n()?),
        Family::Mu2Star => construct::mu2_star(need_n()?)?,
        Family::Mu3 => construct::mu3(need_n()?),
        Family::Mu3Star => construct::mu3_star(need_n()?)?,
    };
    Ok(c)
}

fn load_wiring(path: Option<&std::path::Path>) -> Result<ParsedWiring> {
    let text = match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            buf
        }
    };
    let parsed = read_wiring(&text)?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(parsed)
}

fn resolve_initial(parsed: &ParsedWiring, flag: Option<&str>) -> Result<BitVector> {
    let n = parsed.matrix.n();
    match flag {
        Some("zero") => Ok(BitVector::zeros(n)),
        Some("even") => Ok(construct::even_indicator(n)),
        Some(bits) => {
            let c = BitVector::from_str(bits)?;
            if c.len() != n {
                bail!("--initial has {} bits, wiring has {n}", c.len());
            }
            Ok(c)
        }
        None => Ok(parsed
            .initial
            .clone()
            .unwrap_or_else(|| BitVector::zeros(n))),
    }
}

fn parse_vertex_set(list: &str, n: usize) -> Result<BitVector> {
    let mut set = BitVector::zeros(n);
    for item in list.split(',') {
        let v: usize = item
            .trim()
            .parse()
            .with_context(|| format!("bad vertex {item:?}"))?;
        if v == 0 || v > n {
            bail!("vertex {v} out of range 1..={n}");
        }
        set.set(v - 1, true);
    }
    Ok(set)
}

fn search_options(flags: &SearchFlags) -> SearchOptions {
    let jobs = flags.jobs.or_else(|| {
        std::env::var("XORWIRE_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    SearchOptions {
        budget: flags.budget,
        jobs,
        prune: true,
    }
}

fn vertices_1based(vertices: &[usize]) -> String {
    vertices
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn render_solve(
    w: &WiringMatrix,
    c: &BitVector,
    result: &SolveResult,
    format: ReportFormat,
) -> Result<String> {
    let lit = xorwire::apply(w, &result.witness, c)?;
    match format {
        ReportFormat::Text => {
            let mut out = format!(
                "n {}\nvalue {}\nwitness {}\nlit {}\n",
                w.n(),
                result.value,
                result.witness,
                lit
            );
            for part in &result.per_component {
                out.push_str(&format!(
                    "component {{{}}} value {}\n",
                    vertices_1based(&part.vertices),
                    part.value
                ));
            }
            Ok(out)
        }
        ReportFormat::Json => {
            let parts: Vec<serde_json::Value> = result
                .per_component
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "vertices": p.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                        "value": p.value,
                    })
                })
                .collect();
            let v = serde_json::json!({
                "n": w.n(),
                "value": result.value,
                "witness": result.witness.to_string(),
                "lit": lit.to_string(),
                "per_component": parts,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v)?))
        }
    }
}

fn render_report_line(r: &ExtremalReport) -> String {
    let star = if r.exact { "*" } else { "" };
    let kind = match r.kind {
        construct::ExtremalKind::Mu | construct::ExtremalKind::MuStar => "mu",
        _ => "nu",
    };
    let formula = r
        .formula
        .map(|f| f.to_string())
        .unwrap_or_else(|| "-".to_string());
    let verdict = match r.verdict {
        Verdict::Match => "match",
        Verdict::Mismatch => "MISMATCH",
        Verdict::NoFormula => "no-formula",
    };
    format!(
        "{kind}{star}({},{}) = {}  formula {formula}  {verdict}  [{} wirings, {} ms]\n",
        r.n, r.m, r.value, r.examined, r.elapsed_ms
    )
}

fn render_report(r: &ExtremalReport) -> String {
    let mut out = render_report_line(r);
    out.push_str("witness:\n");
    for i in 0..r.witness.n() {
        out.push_str(&format!("{}\n", r.witness.row(i)));
    }
    if let Some(c) = &r.witness_config {
        out.push_str(&format!("config {c}\n"));
    }
    out
}

fn bench(max_n: usize) -> Result<()> {
    println!("family      n      build_ms  solve_ms  value");
    let mut n = 64;
    while n <= max_n {
        // mu3-star stays block-diagonal only at multiples of 6; elsewhere
        // the degree extension fuses everything into one giant component.
        let n6 = n - n % 6;
        for (name, size, c) in [
            ("mu2-star", n, construct::mu2_star(n)?),
            ("mu3-star", n6, construct::mu3_star(n6)?),
            ("nu-pairs", n, construct::nu_pairs(n)?),
        ] {
            let t0 = Instant::now();
            let built = c.matrix.clone();
            let build_ms = t0.elapsed().as_secs_f64() * 1e3;
            let t1 = Instant::now();
            match solver::solve(&built, &c.initial) {
                Ok(result) => {
                    let solve_ms = t1.elapsed().as_secs_f64() * 1e3;
                    println!(
                        "{name:<10} {size:>6} {build_ms:>9.2} {solve_ms:>9.2} {:>6}",
                        result.value
                    );
                }
                Err(xorwire::SolveError::RankOverCap { rank, cap, .. }) => {
                    println!(
                        "{name:<10} {size:>6} {build_ms:>9.2}  infeasible (rank {rank} > cap {cap})"
                    );
                }
                Err(err) => return Err(err.into()),
            }
        }
        n *= 2;
    }
    Ok(())
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use ybh_core::cache::Cache;
use ybh_core::chainmaps::{splitting_pair, verify_face_naturality, verify_split, verify_tau_duality, LetterMap};
use ybh_core::complex::{verify_boundary_squared, verify_precubic, ComplexSpec};
use ybh_core::config::{cache_dir_from_env, parse_spec, OutputFormat};
use ybh_core::conjectures::{self, ConjectureReport};
use ybh_core::counting::rank_table;
use ybh_core::homology::{assemble_decomposition, closed_form_h3, closed_form_h4, compare, Coefficients, HomologyModule, Invariant};
use ybh_core::pipeline::Pipeline;
use ybh_core::ybop::{verify_column_unital, verify_ybe};

#[derive(Parser)]
#[command(name = "ybh", version, about = "Homology of the normalized HOMFLYPT Yang-Baxter operator")]
struct Cli {
    /// Worker threads for matrix assembly (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,
    /// Artifact cache directory (default: $YBH_CACHE_DIR, else .ybh-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Compute everything in memory without reading or writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Domain {
    /// Specialize t = y^2 at this integer y; symbolic over Z[t] otherwise.
    #[arg(long)]
    at_y: Option<i64>,
}

impl Domain {
    fn coeffs(self) -> Coefficients {
        self.at_y.map_or(Coefficients::Symbolic, Coefficients::at_y)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the braid relation, unitality, the face relations and d^2 = 0.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Check duality, induced-map naturality and the splitting maps.
    VerifyMaps {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Emit the boundary matrix d_n of a complex.
    Boundary {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank and elementary divisors of d_n.
    Snf {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        domain: Domain,
    },
    /// H_n of a complex.
    Homology {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        domain: Domain,
    },
    /// H_n(Final(m)) for m <= 5, n <= 4.
    Table1 {
        #[command(flatten)]
        domain: Domain,
    },
    /// H_n(Full(m)) assembled from the final complexes.
    Hn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        domain: Domain,
    },
    /// Ranks S~(n, m, m-1) of the final complexes.
    Ranks {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        max_m: usize,
        /// Shorthand for --format csv.
        #[arg(long)]
        csv: bool,
    },
    /// Evidence reports for open questions.
    #[command(subcommand)]
    Conjecture(ConjectureCommand),
    /// Cache maintenance.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Subcommand)]
enum ConjectureCommand {
    FreeRank {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_m: usize,
        #[command(flatten)]
        domain: Domain,
    },
    Fibonacci {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[command(flatten)]
        domain: Domain,
    },
    H5 {
        /// Final complex size; all of 1..=6 when omitted.
        #[arg(long)]
        j: Option<usize>,
        /// Also compute at t = 9.
        #[arg(long)]
        corroborate: bool,
    },
    Kunneth {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        split: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[command(flatten)]
        domain: Domain,
    },
    Mfl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        cap: usize,
        #[arg(long, default_value_t = 2)]
        y: i64,
    },
    /// Long-running degree-6 exploration; resumable through the cache.
    H6 {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        j: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        max_m: usize,
        #[arg(long, default_value_t = 2)]
        y: i64,
    },
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Remove temporary and corrupt artifacts.
    Gc,
}

struct Ctx {
    format: OutputFormat,
    pipeline: Pipeline,
}

impl Ctx {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        match self.format {
            OutputFormat::Json => println!("{}", serde_json::to_string_pretty(value)?),
            _ => print!("{}", text()),
        }
        Ok(())
    }
}

fn poly_text(inv: &Invariant) -> String {
    match inv {
        Invariant::Int(d) => format!("Z_{d}"),
        _ => inv.to_string().replace(' ', ""),
    }
}

fn torsion_text(h: &HomologyModule) -> String {
    if h.torsion.is_empty() {
        return "none".into();
    }
    h.torsion.iter().map(|(inv, c)| format!("{} ×{c}", poly_text(inv))).collect::<Vec<_>>().join(", ")
}

fn tuple_of(h: &HomologyModule, coeffs: Coefficients) -> String {
    let at = match coeffs {
        Coefficients::Symbolic => None,
        Coefficients::IntegerAt { t } => Some(t),
    };
    match h.counts(3, at) {
        Some(_) => h.tuple_string(3, at),
        None => h.tuple_string(4, at),
    }
}

fn module_json(h: &HomologyModule, coeffs: Coefficients) -> serde_json::Value {
    json!({
        "tuple": tuple_of(h, coeffs),
        "text": h.render(matches!(coeffs, Coefficients::IntegerAt { .. })),
        "module": h,
    })
}

fn report(ctx: &Ctx, reports: &[ConjectureReport]) -> Result<bool> {
    ctx.emit(&reports, || reports.iter().map(|r| r.to_text()).collect())?;
    Ok(reports.iter().all(|r| r.count(conjectures::Verdict::Violated) == 0))
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::at(cli.cache_dir.or_else(cache_dir_from_env).unwrap_or_else(|| PathBuf::from(".ybh-cache")))
    };
    let mut format = cli.format;
    if let Command::Ranks { csv: true, .. } = cli.command {
        format = OutputFormat::Csv;
    }
    let ctx = Ctx { format, pipeline: Pipeline::new(cache) };
    let p = &ctx.pipeline;

    let ok = match cli.command {
        Command::Verify { max_m, max_n } => {
            let mut checks: Vec<(String, bool)> = Vec::new();
            for m in 1..=max_m {
                checks.push((format!("braid relation m={m}"), verify_ybe(m)));
                checks.push((format!("column unital m={m}"), verify_column_unital(m)));
            }
            for m in 1..=max_m {
                for spec in [ComplexSpec::Full { m }, ComplexSpec::Final { m }] {
                    for n in 2..=max_n {
                        checks.push((format!("d^2 = 0 {spec} n={n}"), verify_boundary_squared(&spec, n)?));
                        checks.push((format!("face relations {spec} n={n}"), verify_precubic(&spec, n)));
                    }
                }
            }
            let ok = checks.iter().all(|c| c.1);
            let value: BTreeMap<_, _> = checks.iter().cloned().collect();
            ctx.emit(&json!({ "ok": ok, "checks": value }), || {
                checks.iter().map(|(name, v)| format!("{} {name}\n", if *v { "ok  " } else { "FAIL" })).collect()
            })?;
            ok
        }
        Command::VerifyMaps { m, n } => {
            let mut checks: Vec<(String, bool)> = vec![(format!("duality m={m} n={n}"), verify_tau_duality(m, n))];
            checks.push((format!("shift naturality m={m} n={n}"), verify_face_naturality(&LetterMap::shift(m), n)));
            if n >= 2 {
                let full = ComplexSpec::Full { m };
                checks.push((format!("face relations {full} n={n}"), verify_precubic(&full, n)));
                checks.push((format!("boundary squared {full} n={n}"), verify_boundary_squared(&full, n)?));
            }
            for u in 0..m {
                if splitting_pair(m, u).is_ok() {
                    checks.push((format!("splitting maps m={m} u={u} n={n}"), verify_split(m, u, n)?));
                }
            }
            let ok = checks.iter().all(|c| c.1);
            let value: BTreeMap<_, _> = checks.iter().cloned().collect();
            let out = json!({ "ok": ok, "checks": value });
            println!("{}", serde_json::to_string_pretty(&out)?);
            ok
        }
        Command::Boundary { spec, n, out } => {
            let spec = parse_spec(&spec)?;
            let b = p.boundary(&spec, n)?;
            let entries: Vec<_> = b.matrix.iter().map(|(i, j, v)| json!([i, j, v])).collect();
            let value = json!({
                "spec": spec.to_string(),
                "n": n,
                "rows": b.row_basis.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "cols": b.col_basis.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "entries": entries,
            });
            let text = serde_json::to_string_pretty(&value)?;
            match out {
                Some(path) => std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            true
        }
        Command::Snf { spec, n, domain } => {
            let spec = parse_spec(&spec)?;
            let s = p.summary(&spec, n, domain.coeffs())?;
            ctx.emit(&s, || {
                let tors: Vec<String> = s.torsion.iter().map(poly_text).collect();
                format!("rank {}\nelementary divisors: {}\ncertified: {}\n", s.rank, tors.join(", "), s.certified)
            })?;
            true
        }
        Command::Homology { spec, n, domain } => {
            let spec = parse_spec(&spec)?;
            let coeffs = domain.coeffs();
            let h = p.homology(&spec, n, coeffs)?;
            let value = json!({ "spec": spec.to_string(), "n": n, "coefficients": coeffs, "homology": module_json(&h, coeffs) });
            ctx.emit(&value, || {
                format!(
                    "H_{n}({spec}) = {}\ntorsion: {}\ncertified: {}\n",
                    tuple_of(&h, coeffs),
                    torsion_text(&h),
                    h.certified
                )
            })?;
            true
        }
        Command::Table1 { domain } => {
            let coeffs = domain.coeffs();
            let mut grid = Vec::new();
            for n in 1..=4 {
                let row: Vec<String> =
                    (1..=5).map(|m| p.homology(&ComplexSpec::Final { m }, n, coeffs).map(|h| tuple_of(&h, coeffs))).collect::<Result<_, _>>()?;
                grid.push(row);
            }
            let text = || {
                let mut s = format!("{:<4}", "");
                for m in 1..=5 {
                    s.push_str(&format!(" {:>12}", format!("final:m={m}")));
                }
                s.push('\n');
                for (k, row) in grid.iter().enumerate() {
                    s.push_str(&format!("H_{:<2}", k + 1));
                    for c in row {
                        s.push_str(&format!(" {c:>12}"));
                    }
                    s.push('\n');
                }
                s
            };
            match ctx.format {
                OutputFormat::Csv => {
                    print!("n,m=1,m=2,m=3,m=4,m=5\n");
                    for (k, row) in grid.iter().enumerate() {
                        println!("{},{}", k + 1, row.iter().map(|c| format!("\"{c}\"")).collect::<Vec<_>>().join(","));
                    }
                }
                _ => ctx.emit(&grid, text)?,
            }
            true
        }
        Command::Hn { n, m, domain } => {
            let coeffs = domain.coeffs();
            let mut initial = BTreeMap::new();
            for j in 1..=m.min(n + 1) {
                initial.insert(j, p.homology(&ComplexSpec::Final { m: j }, n, coeffs)?);
            }
            let h = assemble_decomposition(m, n, &initial)?;
            let closed = match (n, coeffs) {
                (3, Coefficients::Symbolic) => Some(closed_form_h3(m)),
                (4, Coefficients::Symbolic) => Some(closed_form_h4(m)),
                _ => None,
            };
            let agrees = closed.as_ref().map(|c| compare(&h, c).equal);
            let value = json!({ "n": n, "m": m, "coefficients": coeffs, "homology": module_json(&h, coeffs), "closed_form_agrees": agrees });
            ctx.emit(&value, || {
                let mut s = format!("H_{n}(full:m={m}) = {}\ntorsion: {}\n", tuple_of(&h, coeffs), torsion_text(&h));
                if let Some(a) = agrees {
                    s.push_str(&format!("closed form agrees: {a}\n"));
                }
                s
            })?;
            agrees.unwrap_or(true)
        }
        Command::Ranks { max_n, max_m, .. } => {
            let t = rank_table(max_n, max_m)?;
            match ctx.format {
                OutputFormat::Csv => print!("{}", t.to_csv()),
                OutputFormat::Json => {
                    let rows: Vec<Vec<String>> =
                        (1..=max_m).map(|m| (1..=max_n).map(|n| t.get(n, m).to_string()).collect()).collect();
                    println!("{}", serde_json::to_string_pretty(&json!({ "rows_m_columns_n": rows }))?);
                }
                OutputFormat::Text => print!("{}", t.to_text()),
            }
            true
        }
        Command::Conjecture(c) => {
            let reports = match c {
                ConjectureCommand::FreeRank { max_n, max_m, domain } => {
                    vec![conjectures::check_free_rank(p, max_n, max_m, domain.coeffs())?]
                }
                ConjectureCommand::Fibonacci { max_n, domain } => {
                    if max_n < 2 {
                        bail!("--max-n must be at least 2");
                    }
                    vec![conjectures::check_fibonacci_m2(p, max_n, domain.coeffs())?]
                }
                ConjectureCommand::H5 { j, corroborate } => {
                    let js: Vec<usize> = match j {
                        Some(j) if (1..=6).contains(&j) => vec![j],
                        Some(j) => bail!("--j must be between 1 and 6, got {j}"),
                        None => (1..=6).collect(),
                    };
                    let mut out: Vec<ConjectureReport> =
                        js.into_iter().map(|j| conjectures::check_h5(p, j, corroborate)).collect::<Result<_, _>>()?;
                    out.push(conjectures::check_h5_closed_form(8));
                    out
                }
                ConjectureCommand::Kunneth { m, split, n, domain } => {
                    vec![conjectures::check_kunneth(p, m, split, n, domain.coeffs())?]
                }
                ConjectureCommand::Mfl { n, m, cap, y } => {
                    if cap == 0 {
                        bail!("--cap must be at least 1");
                    }
                    vec![conjectures::check_mfl_split(p, m, cap, n, y * y)?]
                }
                ConjectureCommand::H6 { j, max_m, y } => vec![conjectures::explore_h6(p, &j, max_m, y * y)?],
            };
            report(&ctx, &reports)?
        }
        Command::Cache(CacheCommand::Gc) => {
            let r = p.cache().gc()?;
            ctx.emit(&r, || format!("kept {}, removed {} temporary and {} corrupt\n", r.kept, r.removed_temp, r.removed_corrupt))?;
            true
        }
    };
    let stats = p.stats();
    log::info!("cache hits {}, computed {}", stats.cache_hits, stats.computed);
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("ybh: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("ybh: {e:#}");
            ExitCode::from(1)
        }
    }
}

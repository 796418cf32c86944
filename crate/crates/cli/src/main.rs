//! `cayley-dd`: construct, search and verify large fixed-diameter Cayley graphs.
//!
//! Exit status: 0 success, 1 verification failure, 2 invalid input,
//! 3 budget exceeded.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cayley_core::abelian::{zn_cover, zn_graph, znzn_cover, znzn_graph};
use cayley_core::cayley::{moore_bound, CayleyGraph, DiameterReport};
use cayley_core::certificate::{Certificate, HeisenbergCertificate};
use cayley_core::dihedral::{build_dihedral_graph, coverage, DihedralCertificate};
use cayley_core::group::{Group, GroupSpec};
use cayley_core::heisenberg::{graph_for_degree, heisenberg_graph};
use cayley_core::published::table_rows;
use cayley_core::semidirect::{
    check_solutions, instantiate, search, verify_certificate, AdjacencyRule, EngineError, SearchConfig, SearchTarget,
    SolutionCertificate, VerifyOptions,
};

#[derive(Parser, Debug)]
#[command(name = "cayley-dd", version, about = "Large Cayley graphs of fixed diameter")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph, run BFS, optionally write the edge list and a certificate.
    Construct(ConstructArgs),
    /// Re-check a certificate file end to end.
    Verify(VerifyArgs),
    /// Search for a semidirect certificate.
    Search(SearchArgs),
    /// Good-string coverage of the dihedral construction.
    Coverage(CoverageArgs),
    /// Published best-result rows, optionally rebuilt by search.
    Table(TableArgs),
    /// Timing report for one construction.
    Bench(ConstructArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Heisenberg,
    Semidirect,
    Dihedral,
    Abelian,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Dihedral diameter.
    #[arg(long)]
    k: Option<usize>,
    /// Abelian modulus.
    #[arg(long)]
    n: Option<usize>,
    /// Modulus of the coordinate group `Z_m`.
    #[arg(long)]
    m: Option<usize>,
    /// Heisenberg prime.
    #[arg(long)]
    p: Option<usize>,
    /// Target degree (Heisenberg by degree, dihedral padding).
    #[arg(long)]
    degree: Option<usize>,
    /// Abelian: use `Z_n × Z_n` instead of `Z_n`.
    #[arg(long)]
    square: bool,
    /// Semidirect: certificate to instantiate. Other families: certificate to write.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Edge-list output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    cert: PathBuf,
    /// Modulus for the BFS check (semidirect default 2; dihedral default: the stored moduli).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Replay samples per element.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Symbolic checks only.
    #[arg(long)]
    skip_bfs: bool,
}

#[derive(Args, Debug, Clone)]
struct Budgets {
    #[arg(long)]
    budget_groups: Option<usize>,
    #[arg(long)]
    budget_homs: Option<usize>,
    #[arg(long)]
    budget_sets: Option<usize>,
    #[arg(long)]
    budget_vectors: Option<usize>,
    /// Adjacent-letter rule: generators, elements or off (experimental).
    #[arg(long, default_value = "generators")]
    adjacency: AdjacencyRule,
}

impl Budgets {
    fn apply(&self, cfg: &mut SearchConfig) {
        if let Some(b) = self.budget_groups {
            cfg.budget_groups = b;
        }
        if let Some(b) = self.budget_homs {
            cfg.budget_homs = b;
        }
        if let Some(b) = self.budget_sets {
            cfg.budget_sets = b;
        }
        if let Some(b) = self.budget_vectors {
            cfg.budget_vectors = b;
        }
        cfg.adjacency = self.adjacency;
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "semidirect")]
    family: Family,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: usize,
    /// Search every catalog group of this order.
    #[arg(long, conflicts_with = "group")]
    n: Option<usize>,
    /// Search one group, e.g. `product(cyclic(2),symmetric(4))`.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    directed: bool,
    #[command(flatten)]
    budgets: Budgets,
    /// Certificate output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoverageArgs {
    #[arg(long)]
    k: usize,
    /// Check every odd diameter from `k` to this value.
    #[arg(long)]
    k_max: Option<usize>,
    /// Certificate output path (single `k` only).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Undirected diameter.
    #[arg(long, required_unless_present = "directed")]
    k: Option<usize>,
    /// The directed table instead.
    #[arg(long)]
    directed: bool,
    /// Directory of stored semidirect certificates.
    #[arg(long)]
    cert: Option<PathBuf>,
    /// Rebuild rows without a stored certificate by search.
    #[arg(long)]
    rebuild: bool,
    /// Also write rebuilt certificates into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budgets: Budgets,
}

/// An error that maps to a specific exit status.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn fail(code: u8, message: impl Into<String>) -> anyhow::Error {
    Exit {
        code,
        message: message.into(),
    }
    .into()
}

const VERIFY_FAILED: u8 = 1;
const INVALID: u8 = 2;
const BUDGET: u8 = 3;

fn engine_exit(e: EngineError) -> anyhow::Error {
    match e {
        EngineError::Verification { .. } | EngineError::Uncovered { .. } => fail(VERIFY_FAILED, e.to_string()),
        EngineError::BudgetExceeded(_) => fail(BUDGET, e.to_string()),
        EngineError::NothingFound => fail(VERIFY_FAILED, e.to_string()),
        other => fail(INVALID, other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INVALID);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<Exit>().map_or(INVALID, |x| x.code);
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Construct(a) => construct(&a, false),
        Command::Bench(a) => construct(&a, true),
        Command::Verify(a) => verify(&a),
        Command::Search(a) => run_search(&a),
        Command::Coverage(a) => run_coverage(&a),
        Command::Table(a) => table(&a),
    }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| fail(INVALID, format!("--{flag} is required for this family")))
}

fn print_report(r: &DiameterReport, directed: bool) {
    println!("order {} degree {} diameter {}", r.order, r.degree, r.diameter);
    println!("histogram {:?}", r.histogram);
    if let Ok(mb) = moore_bound(r.degree, r.diameter, directed) {
        println!("moore bound {mb}");
    }
}

fn write_edges<G: Group>(g: &CayleyGraph<G>, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    g.write_edge_list(&mut w)?;
    w.flush()?;
    Ok(())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// BFS, report, and optional edge list.
fn finish<G: Group>(g: &CayleyGraph<G>, out: Option<&Path>, timing: bool, built: Instant) -> Result<DiameterReport> {
    let build_time = built.elapsed();
    let t = Instant::now();
    let r = g.diameter().map_err(|e| fail(VERIFY_FAILED, e.to_string()))?;
    let bfs_time = t.elapsed();
    print_report(&r, g.directed);
    if let Some(p) = out {
        write_edges(g, p)?;
    }
    if timing {
        println!("build {:.3}s bfs {:.3}s", build_time.as_secs_f64(), bfs_time.as_secs_f64());
    }
    Ok(r)
}

fn read_certificate(path: &Path) -> Result<Certificate> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Certificate::from_json(&text).map_err(|e| fail(INVALID, format!("{}: {e}", path.display())))
}

fn construct(a: &ConstructArgs, timing: bool) -> Result<()> {
    let t = Instant::now();
    match a.family {
        Family::Heisenberg => {
            let g = match (a.p, a.degree) {
                (Some(p), _) => heisenberg_graph(p),
                (None, Some(d)) => graph_for_degree(d),
                (None, None) => bail!(fail(INVALID, "--p or --degree is required")),
            }
            .map_err(|e| fail(INVALID, e.to_string()))?;
            let p = g.group.prime();
            let r = finish(&g, a.out.as_deref(), timing, t)?;
            if r.diameter != 3 {
                return Err(fail(VERIFY_FAILED, format!("diameter {} instead of 3", r.diameter)));
            }
            if let Some(path) = &a.cert {
                let cert = Certificate::Heisenberg(HeisenbergCertificate { p, report: Some(r) });
                write_text(path, &cert.to_json()?)?;
            }
        }
        Family::Dihedral => {
            let k = need(a.k, "k")?;
            let m = a.m.unwrap_or(2);
            let g = build_dihedral_graph(k, m, a.degree).map_err(|e| fail(INVALID, e.to_string()))?;
            let r = finish(&g, a.out.as_deref(), timing, t)?;
            if r.diameter != k {
                return Err(fail(VERIFY_FAILED, format!("diameter {} instead of {k}", r.diameter)));
            }
            if let Some(path) = &a.cert {
                let mut c = DihedralCertificate::build(k).map_err(|e| fail(VERIFY_FAILED, e.to_string()))?;
                c.verified_m = vec![m];
                write_text(path, &Certificate::Dihedral(c).to_json()?)?;
            }
        }
        Family::Semidirect => {
            let path = a
                .cert
                .as_ref()
                .ok_or_else(|| fail(INVALID, "--cert is required for the semidirect family"))?;
            let Certificate::Semidirect(c) = read_certificate(path)? else {
                return Err(fail(INVALID, "expected a semidirect certificate"));
            };
            let m = a.m.unwrap_or(2);
            let g = instantiate(&c.spec, m).map_err(engine_exit)?;
            let r = finish(&g, a.out.as_deref(), timing, t)?;
            if r.diameter > c.spec.k {
                return Err(fail(VERIFY_FAILED, format!("diameter {} exceeds {}", r.diameter, c.spec.k)));
            }
        }
        Family::Abelian => {
            let n = need(a.n, "n")?;
            let r = if a.square {
                let cover = znzn_cover(n).map_err(|e| fail(INVALID, e.to_string()))?;
                let g = znzn_graph(n, &cover).map_err(|e| fail(INVALID, e.to_string()))?;
                finish(&g, a.out.as_deref(), timing, t)?
            } else {
                let cover = zn_cover(n).map_err(|e| fail(INVALID, e.to_string()))?;
                let g = zn_graph(&cover).map_err(|e| fail(INVALID, e.to_string()))?;
                finish(&g, a.out.as_deref(), timing, t)?
            };
            if r.diameter > 3 {
                return Err(fail(VERIFY_FAILED, format!("diameter {} exceeds 3", r.diameter)));
            }
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Result<()> {
    match read_certificate(&a.cert)? {
        Certificate::Semidirect(c) => {
            let opts = VerifyOptions {
                samples: a.samples,
                seed: a.seed,
                skip_bfs: a.skip_bfs,
            };
            let m = a.m.unwrap_or(2);
            let r = verify_certificate(&c, m, &opts).map_err(engine_exit)?;
            println!(
                "certificate ok: k={} s={} |K|={} {}",
                c.spec.k,
                c.spec.set_size(),
                c.spec.group().order(),
                c.ratio().render()
            );
            if !a.skip_bfs {
                print_report(&r, c.spec.directed);
            }
        }
        Certificate::Dihedral(c) => {
            c.check().map_err(|e| fail(VERIFY_FAILED, e.to_string()))?;
            let k = c.params.k;
            println!("coverage ok: k={k}, {} elements, every string good", c.table.entries.len());
            if !a.skip_bfs {
                let ms = a.m.map_or_else(|| c.verified_m.clone(), |m| vec![m]);
                for m in ms {
                    let g = build_dihedral_graph(k, m, None).map_err(|e| fail(INVALID, e.to_string()))?;
                    let r = g.diameter().map_err(|e| fail(VERIFY_FAILED, e.to_string()))?;
                    print_report(&r, false);
                    if r.diameter != k {
                        return Err(fail(VERIFY_FAILED, format!("m={m}: diameter {} instead of {k}", r.diameter)));
                    }
                }
            }
        }
        Certificate::Heisenberg(c) => {
            println!("generating set ok: p={}", c.p);
            if !a.skip_bfs {
                let g = heisenberg_graph(c.p).map_err(|e| fail(INVALID, e.to_string()))?;
                let r = g.diameter().map_err(|e| fail(VERIFY_FAILED, e.to_string()))?;
                print_report(&r, false);
                if r.diameter != 3 {
                    return Err(fail(VERIFY_FAILED, format!("diameter {} instead of 3", r.diameter)));
                }
                if c.report.as_ref().is_some_and(|stored| *stored != r) {
                    return Err(fail(VERIFY_FAILED, "stored report differs from BFS"));
                }
            }
        }
    }
    Ok(())
}

fn search_config(k: usize, s: usize, directed: bool, b: &Budgets) -> SearchConfig {
    let mut cfg = SearchConfig::new(k, s, directed);
    b.apply(&mut cfg);
    cfg
}

fn run_search(a: &SearchArgs) -> Result<()> {
    if a.family != Family::Semidirect {
        return Err(fail(INVALID, "search supports only the semidirect family"));
    }
    let target = match (&a.group, a.n) {
        (Some(text), _) => SearchTarget::Group(
            text.parse::<GroupSpec>()
                .map_err(|e| fail(INVALID, e.to_string()))?,
        ),
        (None, Some(n)) => SearchTarget::Order(n),
        (None, None) => return Err(fail(INVALID, "--n or --group is required")),
    };
    let cfg = search_config(a.k, a.s, a.directed, &a.budgets);
    let t = Instant::now();
    let outcome = search(&target, &cfg).map_err(engine_exit)?;
    let c = &outcome.certificate;
    let g = c.spec.group();
    println!(
        "found {} k={} s={} {}",
        c.group_spec.as_ref().map_or_else(|| g.name().to_string(), |s| s.to_string()),
        c.spec.k,
        c.spec.set_size(),
        c.ratio().render()
    );
    println!("S = [{}]", c.spec.s.iter().map(|&e| g.label(e)).collect::<Vec<_>>().join(", "));
    println!(
        "examined groups {} homs {} sets {} vector families {} in {:.3}s",
        outcome.stats.groups,
        outcome.stats.homs,
        outcome.stats.sets,
        outcome.stats.vector_families,
        t.elapsed().as_secs_f64()
    );
    if let Some(path) = &a.out {
        write_text(path, &Certificate::Semidirect(c.clone()).to_json()?)?;
    }
    Ok(())
}

fn run_coverage(a: &CoverageArgs) -> Result<()> {
    let last = a.k_max.unwrap_or(a.k);
    if a.out.is_some() && last != a.k {
        return Err(fail(INVALID, "--out needs a single k"));
    }
    for k in (a.k..=last).filter(|k| k % 2 == 1 || *k == a.k) {
        let t = Instant::now();
        let table = coverage(k).map_err(|e| match e {
            cayley_core::dihedral::DihedralError::InvalidK(_) => fail(INVALID, e.to_string()),
            other => fail(VERIFY_FAILED, format!("k={k}: {other}")),
        })?;
        println!(
            "k={k}: {} elements covered, every string good ({:.3}s)",
            table.entries.len(),
            t.elapsed().as_secs_f64()
        );
        if let Some(path) = &a.out {
            let c = DihedralCertificate::build(k).map_err(|e| fail(VERIFY_FAILED, e.to_string()))?;
            write_text(path, &Certificate::Dihedral(c).to_json()?)?;
        }
    }
    Ok(())
}

/// Stored semidirect certificates that pass the symbolic checks.
fn load_stored(dir: &Path) -> Result<Vec<SolutionCertificate>> {
    let mut out = Vec::new();
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for p in paths {
        if let Ok(Certificate::Semidirect(c)) = read_certificate(&p) {
            if check_solutions(&c).is_ok() {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn table(a: &TableArgs) -> Result<()> {
    let rows = table_rows(a.k, a.directed);
    if rows.is_empty() {
        return Err(fail(INVALID, "no published rows for these parameters"));
    }
    let stored = match &a.cert {
        Some(dir) => load_stored(dir)?,
        None => Vec::new(),
    };
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
    }
    if a.directed {
        println!("k | s | n | K | L⁻(k) bound");
    } else {
        println!("s | n | K | L⁻({}) bound", rows[0].k);
    }
    let mut notes = Vec::new();
    let mut budget_hit = false;
    for row in &rows {
        println!("{}", row.render());
        let matching = stored.iter().find(|c| {
            c.spec.k == row.k
                && c.spec.set_size() == row.s
                && c.spec.directed == row.directed
                && c.group_spec.as_ref() == Some(&row.group)
        });
        let status = if matching.is_some() {
            "stored certificate".to_string()
        } else if a.rebuild {
            let cfg = search_config(row.k, row.s, row.directed, &a.budgets);
            let t = Instant::now();
            match search(&SearchTarget::Group(row.group.clone()), &cfg) {
                Ok(o) => {
                    if let Some(dir) = &a.out {
                        let name = format!("{}_k{}_s{}_n{}.json", if row.directed { "dir" } else { "und" }, row.k, row.s, row.order);
                        write_text(&dir.join(name), &Certificate::Semidirect(o.certificate.clone()).to_json()?)?;
                    }
                    format!("rebuilt by search in {:.3}s", t.elapsed().as_secs_f64())
                }
                Err(EngineError::BudgetExceeded(m)) => {
                    budget_hit = true;
                    format!("not rebuilt: {m}")
                }
                Err(e) => format!("not rebuilt: {e}"),
            }
        } else {
            "parameters only".to_string()
        };
        notes.push(format!("# k={} s={} {}: {status}", row.k, row.s, row.group_name()));
    }
    for n in notes {
        println!("{n}");
    }
    if budget_hit {
        return Err(fail(BUDGET, "search budget exceeded for at least one row"));
    }
    Ok(())
}

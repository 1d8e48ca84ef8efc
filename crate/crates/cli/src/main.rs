use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use tiling_forge_core::codes::{
    certify_perfect, golay_binary, golay_ternary, hamming_code, repetition_code,
};
use tiling_forge_core::criteria::{classification_table, report_all_with, ClassifyOptions, Family};
use tiling_forge_core::lattice::{determinant, extract_code, lattice_from_code, smith_normal_form};
use tiling_forge_core::search::{
    search_splitting, SearchOptions, SearchProblem, SearchStatus, Tier,
};
use tiling_forge_core::splitting::{
    splitting_to_lattice, tiling_to_splitting, verify_lattice_tiling,
};
use tiling_forge_core::{
    verify_splitting, AbelianGroup, BallParams, CoefficientSet, IntMatrix, Lattice, LinearCode,
    SplitMode, SplitterSet,
};

mod repro;

const TIER_ENV: &str = "TILING_FORGE_TIER";

#[derive(Parser)]
#[command(
    name = "tiling-forge",
    version,
    about = "Lattice tilings by limited-magnitude error balls"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Reserved; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Search tier. The TILING_FORGE_TIER environment variable takes precedence.
    #[arg(long, global = true)]
    tier: Option<Tier>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Ball sizes and enumeration.
    #[command(subcommand)]
    Ball(BallCmd),
    /// Built-in linear codes and perfection certificates.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Integer lattices: determinants, normal forms, quotients, codes.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Splitter sets of finite abelian groups.
    #[command(subcommand)]
    Split(SplitCmd),
    /// Lattice tilings of Z^n.
    #[command(subcommand)]
    Tile(TileCmd),
    /// Exhaustive search for splitter sets.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Necessary conditions and classification verdicts.
    Classify(ClassifyCmd),
    /// Re-runs the reference computations and prints a pass/fail table.
    Repro(ReproArgs),
}

#[derive(Args, Clone, Copy)]
struct BallArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    kplus: u32,
    #[arg(long, default_value_t = 0)]
    kminus: u32,
}

impl BallArgs {
    fn params(self) -> anyhow::Result<BallParams> {
        Ok(BallParams::new(self.n, self.t, self.kplus, self.kminus)?)
    }
}

#[derive(Subcommand)]
enum BallCmd {
    /// |B(n,t,k+,k-)|.
    Size(BallArgs),
    /// Every vector of the ball, in the fixed enumeration order.
    Enum {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, default_value_t = 1u64 << 48)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Prints a built-in code as JSON.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Certifies perfection at radius t of the code in FILE (or stdin).
    Certify {
        #[arg(long)]
        t: usize,
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    Hamming {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
    Repetition {
        #[arg(long)]
        t: usize,
    },
    Golay2,
    Golay3,
}

#[derive(Subcommand)]
enum LatticeCmd {
    Det {
        file: Option<PathBuf>,
    },
    Snf {
        file: Option<PathBuf>,
    },
    Quotient {
        file: Option<PathBuf>,
    },
    /// Lattice of a systematic code given as JSON.
    FromCode {
        file: Option<PathBuf>,
    },
    ExtractCode {
        #[arg(long)]
        p: u64,
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weak,
    Full,
}

impl From<ModeArg> for SplitMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Weak => SplitMode::Weak,
            ModeArg::Full => SplitMode::Full,
        }
    }
}

#[derive(Subcommand)]
enum SplitCmd {
    Verify {
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    ToLattice {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TileCmd {
    Verify {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    ToSplit {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    Split(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Group as JSON, e.g. '{"orders":[4,2,2]}'.
    #[arg(long)]
    group: String,
    #[arg(long)]
    kplus: u32,
    #[arg(long, default_value_t = 0)]
    kminus: u32,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    node_budget: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_budget: Option<u64>,
    /// Fix the first element up to units (cyclic groups only).
    #[arg(long)]
    orbit_pruning: bool,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct ClassifyCmd {
    #[command(subcommand)]
    table: Option<ClassifySub>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    kplus: Option<u32>,
    #[arg(long, default_value_t = 0)]
    kminus: u32,
    /// Directory for per-group search checkpoints.
    #[arg(long)]
    checkpoint_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ClassifySub {
    /// Classification for n = 3..=n-max.
    Table {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ReproArgs {
    /// Run only the named checks.
    #[arg(long)]
    only: Vec<String>,
}

struct Ctx {
    format: Format,
    jobs: usize,
    tier: Tier,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tier = match std::env::var(TIER_ENV) {
        Ok(v) => match v.parse::<Tier>() {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {TIER_ENV}: {e}");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.tier.unwrap_or_default(),
    };
    let ctx = Ctx {
        format: cli.format,
        jobs: cli.jobs.max(1),
        tier,
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(file: Option<&Path>) -> anyhow::Result<String> {
    match file {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(file: Option<&Path>) -> anyhow::Result<T> {
    let text = read_input(file)?;
    Ok(serde_json::from_str(&text)?)
}

/// Accepts the JSON form or the `rows cols` text form.
fn read_matrix(file: Option<&Path>) -> anyhow::Result<IntMatrix> {
    let text = read_input(file)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        Ok(IntMatrix::parse_text(&text)?)
    }
}

fn read_lattice(file: Option<&Path>) -> anyhow::Result<Lattice> {
    Ok(Lattice::new(read_matrix(file)?)?)
}

fn emit<T: Serialize>(ctx: &Ctx, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match ctx.format {
        Format::Json => {
            serde_json::to_writer(&mut out, value)?;
            writeln!(out)?;
        }
        Format::Text | Format::Tsv => {
            let s = text();
            write!(out, "{s}")?;
            if !s.ends_with('\n') {
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

fn emit_matrix(ctx: &Ctx, m: &IntMatrix) -> anyhow::Result<()> {
    emit(ctx, m, || m.to_text())
}

fn run(ctx: &Ctx, cmd: Command) -> anyhow::Result<u8> {
    match cmd {
        Command::Ball(c) => ball(ctx, c),
        Command::Code(c) => code(ctx, c),
        Command::Lattice(c) => lattice(ctx, c),
        Command::Split(c) => split(ctx, c),
        Command::Tile(c) => tile(ctx, c),
        Command::Search(SearchCmd::Split(a)) => search(ctx, a),
        Command::Classify(c) => classify(ctx, c),
        Command::Repro(a) => repro::run(ctx, &a.only),
    }
}

fn ball(ctx: &Ctx, cmd: BallCmd) -> anyhow::Result<u8> {
    match cmd {
        BallCmd::Size(b) => {
            // a bare integer is valid in both formats
            println!("{}", b.params()?.size());
        }
        BallCmd::Enum { ball, cap } => {
            let p = ball.params()?;
            let size = p.size();
            if size > BigUint::from(cap) {
                bail!("{p} has {size} vectors, above the cap of {cap}");
            }
            let mut out = BufWriter::new(io::stdout().lock());
            let json = ctx.format == Format::Json;
            if json {
                write!(out, "[")?;
            }
            for (i, v) in p.iter().enumerate() {
                if json {
                    if i > 0 {
                        write!(out, ",")?;
                    }
                    serde_json::to_writer(&mut out, &v)?;
                } else {
                    let cells: Vec<String> = v.0.iter().map(i64::to_string).collect();
                    writeln!(out, "{}", cells.join("\t"))?;
                }
            }
            if json {
                writeln!(out, "]")?;
            }
            out.flush()?;
        }
    }
    Ok(0)
}

fn code(ctx: &Ctx, cmd: CodeCmd) -> anyhow::Result<u8> {
    match cmd {
        CodeCmd::Build(b) => {
            let c = match b {
                BuildCmd::Hamming { p, m } => hamming_code(p, m)?,
                BuildCmd::Repetition { t } => repetition_code(t)?,
                BuildCmd::Golay2 => golay_binary(),
                BuildCmd::Golay3 => golay_ternary(),
            };
            emit(ctx, &c, || code_text(&c))?;
            Ok(0)
        }
        CodeCmd::Certify { t, file } => {
            let c: LinearCode = read_json(file.as_deref())?;
            let cert = certify_perfect(&c, t)?;
            emit(ctx, &cert, || {
                format!(
                    "[{}, {}] over F_{}: d = {}, sphere count {}, perfect at t={}: {}",
                    cert.n,
                    cert.k,
                    cert.p,
                    cert.min_distance.map_or("none".into(), |d| d.to_string()),
                    if cert.sphere_count_check {
                        "ok"
                    } else {
                        "fails"
                    },
                    t,
                    cert.is_perfect_for_t.is_some()
                )
            })?;
            Ok(if cert.is_perfect_for_t.is_some() {
                0
            } else {
                1
            })
        }
    }
}

fn code_text(c: &LinearCode) -> String {
    let mut s = format!("[{}, {}] code over F_{}\n", c.n(), c.k(), c.p());
    for row in c.generator() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn lattice(ctx: &Ctx, cmd: LatticeCmd) -> anyhow::Result<u8> {
    match cmd {
        LatticeCmd::Det { file } => {
            let d = determinant(&read_matrix(file.as_deref())?)?;
            println!("{d}");
        }
        LatticeCmd::Snf { file } => {
            let snf = smith_normal_form(&read_matrix(file.as_deref())?);
            emit(ctx, &snf, || {
                let diag: Vec<String> = snf.diagonal().iter().map(ToString::to_string).collect();
                format!("{}\n", diag.join(" "))
            })?;
        }
        LatticeCmd::Quotient { file } => {
            let q = read_lattice(file.as_deref())?.quotient_group()?;
            emit(ctx, &q, || {
                let mut s = format!("{}\n", q.group);
                for (i, e) in q.images.iter().enumerate() {
                    s.push_str(&format!("e{} -> {e}\n", i + 1));
                }
                s
            })?;
        }
        LatticeCmd::FromCode { file } => {
            let c: LinearCode = read_json(file.as_deref())?;
            emit_matrix(ctx, lattice_from_code(&c)?.generator())?;
        }
        LatticeCmd::ExtractCode { p, file } => {
            let c = extract_code(&read_lattice(file.as_deref())?, p)?;
            emit(ctx, &c, || code_text(&c))?;
        }
    }
    Ok(0)
}

fn split(ctx: &Ctx, cmd: SplitCmd) -> anyhow::Result<u8> {
    match cmd {
        SplitCmd::Verify { mode, file } => {
            let sp: SplitterSet = read_json(file.as_deref())?;
            let report = verify_splitting(&sp, mode.into())?;
            emit(ctx, &report, || {
                let verdict = if report.valid { "valid" } else { "invalid" };
                match &report.failure {
                    None => format!("{verdict} ({} sums checked)", report.sums_checked),
                    Some(f) => format!(
                        "{verdict}: {}",
                        serde_json::to_string(f).unwrap_or_default()
                    ),
                }
            })?;
            Ok(if report.valid { 0 } else { 1 })
        }
        SplitCmd::ToLattice { file } => {
            let sp: SplitterSet = read_json(file.as_deref())?;
            emit_matrix(ctx, splitting_to_lattice(&sp)?.generator())?;
            Ok(0)
        }
    }
}

fn tile(ctx: &Ctx, cmd: TileCmd) -> anyhow::Result<u8> {
    match cmd {
        TileCmd::Verify { ball, file } => {
            let p = ball.params()?;
            let ok = verify_lattice_tiling(&p, &read_lattice(file.as_deref())?)?;
            emit(
                ctx,
                &serde_json::json!({ "params": p, "tiles": ok }),
                || {
                    format!(
                        "{p} {} Z^{}",
                        if ok { "tiles" } else { "does not tile" },
                        p.n
                    )
                },
            )?;
            Ok(if ok { 0 } else { 1 })
        }
        TileCmd::ToSplit { ball, file } => {
            let p = ball.params()?;
            let l = read_lattice(file.as_deref())?;
            if !verify_lattice_tiling(&p, &l)? {
                eprintln!("the lattice does not tile Z^{} by {p}", p.n);
                return Ok(1);
            }
            let sp = tiling_to_splitting(&p, &l)?;
            emit(ctx, &sp, || serde_json::to_string(&sp).unwrap_or_default())?;
            Ok(0)
        }
    }
}

fn search(ctx: &Ctx, a: SearchArgs) -> anyhow::Result<u8> {
    let group: AbelianGroup = serde_json::from_str(&a.group).context("parsing --group")?;
    if !ctx.tier.admits(&group) {
        bail!("searching {group} needs --tier extended");
    }
    let coeffs = CoefficientSet::new(a.kplus, a.kminus)?;
    let options = SearchOptions {
        mode: a.mode.into(),
        orbit_pruning: a.orbit_pruning,
        jobs: ctx.jobs,
        node_budget: a.node_budget,
        time_budget: a.time_budget.map(Duration::from_secs),
        checkpoint: a.checkpoint,
        ..SearchOptions::default()
    };
    let prob = SearchProblem::new(group, coeffs, a.t, a.n)?.with_options(options);
    let out = search_splitting(&prob)?;
    emit(ctx, &out, || {
        let status = serde_json::to_string(&out.status).unwrap_or_default();
        let mut s = format!(
            "{} after {} nodes",
            status.trim_matches('"'),
            out.nodes_explored
        );
        if let Some(w) = &out.witness {
            let elems: Vec<String> = w.elements().iter().map(ToString::to_string).collect();
            s.push_str(&format!(": S = {{{}}}", elems.join(", ")));
        }
        s
    })?;
    Ok(match out.status {
        SearchStatus::Found => 0,
        SearchStatus::ExhaustedNone => 1,
        SearchStatus::BudgetExceeded => 3,
    })
}

fn classify(ctx: &Ctx, c: ClassifyCmd) -> anyhow::Result<u8> {
    let opts = |dir: Option<PathBuf>| ClassifyOptions {
        tier: ctx.tier,
        jobs: ctx.jobs,
        checkpoint_dir: dir,
        node_budget: None,
    };
    if let Some(ClassifySub::Table {
        family,
        n_max,
        checkpoint_dir,
    }) = c.table
    {
        let rows = classification_table(family, n_max, &opts(checkpoint_dir))?;
        emit(ctx, &rows, || {
            let mut s = String::from("n\t|G|\tstatus\n");
            for v in &rows {
                let status = serde_json::to_string(&v.status).unwrap_or_default();
                s.push_str(&format!(
                    "{}\t{}\t{}\n",
                    v.params.n,
                    v.params.size(),
                    status.trim_matches('"')
                ));
            }
            s
        })?;
        return Ok(0);
    }
    let (Some(n), Some(t), Some(kplus)) = (c.n, c.t, c.kplus) else {
        bail!("classify needs --n, --t and --kplus, or the `table` subcommand");
    };
    let p = BallParams::new(n, t, kplus, c.kminus)?;
    let v = report_all_with(&p, &opts(c.checkpoint_dir))?;
    emit(ctx, &v, || {
        let status = serde_json::to_string(&v.status).unwrap_or_default();
        let mut s = format!("{p}: {}\n", status.trim_matches('"'));
        for t in &v.triggers {
            s.push_str(&format!("  {} [{:?}]: {}\n", t.id, t.source, t.statement));
        }
        if let Some(w) = &v.witness {
            s.push_str(&format!("  witness: {}\n", w.construction));
        }
        s
    })?;
    Ok(0)
}

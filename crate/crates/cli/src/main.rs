use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dunblocks::blocks::{sl_block_partition, sp_block_partition, BlockPartition, PadicGroup};
use dunblocks::exceptional::ExceptionalTable;
use dunblocks::oracle::{
    check_block_closure, check_core_confluence, check_d1_minimality, check_lemmas, check_sc_unfolded,
    classical_factors, CheckReport,
};
use dunblocks::series::{
    d1_series_partition_with, d_series_partition, enumerate_unipotent_with, factor_k_threshold,
    one_series_partition_with, D1Partition, FactorLabel, UnipotentChar,
};
use dunblocks::{Family, FiniteGroupSpec, SimpleFactor};

mod render;

#[derive(Parser, Debug)]
#[command(name = "dunblocks", version, about = "Unipotent (d,1)-series and depth-zero unipotent l-blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the unipotent characters of a finite reductive group.
    Unipotent {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Partition the unipotent characters into series.
    Series {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        #[arg(long, value_enum, default_value_t = Kind::D1)]
        kind: Kind,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Unipotent depth-zero l-blocks of Sp_2n(F) or SL_n(F).
    Blocks {
        #[arg(long, value_enum)]
        group: PadicKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        q: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the brute-force oracles; exit code 2 if any check fails.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_rank: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        max_d: u32,
        #[arg(long, requires_all = ["q", "ell"])]
        n: Option<u32>,
        #[arg(long, requires_all = ["n", "ell"])]
        q: Option<u64>,
        #[arg(long, requires_all = ["n", "q"])]
        ell: Option<u64>,
    },
    /// Validate an exceptional (d,1)-series table file.
    TableCheck {
        #[arg(long, env = "DUNBLOCKS_EXCEPTIONAL_TABLE")]
        exceptional_table: PathBuf,
    },
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Family of a simple group: A, 2A, B, C, D, 2D, T, or an exceptional name.
    #[arg(long = "type", conflicts_with = "group", required_unless_present = "group")]
    family: Option<String>,
    #[arg(long, conflicts_with = "group")]
    rank: Option<u32>,
    /// Product of simple factors, e.g. "C2 x 2A3@2 x T1".
    #[arg(long)]
    group: Option<String>,
    #[arg(long, env = "DUNBLOCKS_EXCEPTIONAL_TABLE")]
    exceptional_table: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// (d,1)-series
    D1,
    /// Harish-Chandra series
    One,
    /// d-series
    D,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::D1 => "d1_series",
            Kind::One => "one_series",
            Kind::D => "d_series",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PadicKind {
    Sp,
    Sl,
}

/// Common envelope for partition-valued output.
#[derive(Serialize, Debug)]
pub struct Output {
    pub input: BTreeMap<String, serde_json::Value>,
    pub regime: String,
    pub classes: Vec<Vec<String>>,
    pub meta: Meta,
}

#[derive(Serialize, Debug)]
pub struct Meta {
    pub d: Option<u64>,
    pub k_thresholds: BTreeMap<String, Option<i64>>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

enum Failure {
    Usage(anyhow::Error),
    Verify,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<dunblocks::Error> for Failure {
    fn from(e: dunblocks::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verify) => ExitCode::from(2),
    }
}

fn broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn run(command: Command) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    match command {
        Command::Unipotent { group, out } => {
            let (g, table) = resolve(&group)?;
            let chars = enumerate_unipotent_with(&g, table.as_ref())?;
            match out.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "input": {"group": g.to_string()},
                        "count": chars.len(),
                        "characters": chars.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    });
                    emit_json(&mut stdout, &value)?;
                }
                Format::Text => {
                    writeln!(stdout, "{g}: {} unipotent characters", chars.len()).context("writing output")?;
                    for ch in &chars {
                        writeln!(stdout, "{}\n", render::two_row(ch)).context("writing output")?;
                    }
                }
            }
        }
        Command::Series { group, d, kind, out } => {
            let (g, table) = resolve(&group)?;
            let partition = match kind {
                Kind::D1 => d1_series_partition_with(&g, d, table.as_ref())?,
                Kind::One => one_series_partition_with(&g, table.as_ref())?,
                Kind::D => d_series_partition(&g, d)?,
            };
            let output = series_output(&g, d, kind, &partition);
            match out.format {
                Format::Json => emit_json(&mut stdout, &output)?,
                Format::Text => render::series_text(&mut stdout, &g, d, kind.name(), &partition)?,
            }
        }
        Command::Blocks { group, n, q, ell, format } => {
            let b = match group {
                PadicKind::Sp => sp_block_partition(n, q, ell)?,
                PadicKind::Sl => sl_block_partition(n, q, ell)?,
            };
            match format {
                Format::Json => emit_json(&mut stdout, &blocks_output(&b))?,
                Format::Text => render::blocks_text(&mut stdout, &b)?,
            }
        }
        Command::Verify { max_rank, max_d, n, q, ell } => {
            let triple = match (n, q, ell) {
                (Some(n), Some(q), Some(ell)) => Some((n, q, ell)),
                _ => None,
            };
            let mut all_passed = true;
            for report in verify(max_rank, max_d, triple)? {
                all_passed &= report.passed;
                emit_json(&mut stdout, &report)?;
            }
            if !all_passed {
                return Err(Failure::Verify);
            }
        }
        Command::TableCheck { exceptional_table } => {
            let table = load_table(&exceptional_table)?;
            writeln!(
                stdout,
                "{}: ok, {} entries",
                exceptional_table.display(),
                table.len()
            )
            .context("writing output")?;
        }
    }
    Ok(())
}

fn emit_json(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, value).context("serializing output")?;
    writeln!(out).context("writing output")?;
    Ok(())
}

fn load_table(path: &Path) -> Result<ExceptionalTable> {
    ExceptionalTable::from_path(path).with_context(|| format!("loading {}", path.display()))
}

fn resolve(args: &GroupArgs) -> Result<(FiniteGroupSpec, Option<ExceptionalTable>)> {
    let g = match (&args.group, &args.family) {
        (Some(spec), _) => spec.parse::<FiniteGroupSpec>()?,
        (None, Some(name)) => {
            let family: Family = name.parse()?;
            let rank = match (family, args.rank) {
                (Family::Exceptional(t), None) => t.rank(),
                (_, Some(r)) => r,
                (_, None) => bail!("--rank is required for type {name}"),
            };
            FiniteGroupSpec::new(vec![SimpleFactor::new(family, rank)?])
        }
        (None, None) => bail!("either --type or --group is required"),
    };
    let table = args.exceptional_table.as_deref().map(load_table).transpose()?;
    Ok((g, table))
}

fn thresholds(g: &FiniteGroupSpec, d: u64) -> BTreeMap<String, Option<i64>> {
    g.factors.iter().map(|f| (f.to_string(), factor_k_threshold(f, d))).collect()
}

fn char_classes(p: &D1Partition) -> Vec<Vec<String>> {
    p.classes
        .iter()
        .map(|c| c.iter().map(UnipotentChar::to_string).collect())
        .collect()
}

fn series_output(g: &FiniteGroupSpec, d: u64, kind: Kind, p: &D1Partition) -> Output {
    let input = BTreeMap::from([
        ("group".to_owned(), g.to_string().into()),
        ("d".to_owned(), d.into()),
        ("kind".to_owned(), kind.name().into()),
    ]);
    let extra = BTreeMap::from([("trivial_class".to_owned(), p.trivial_class_index.into())]);
    Output {
        input,
        regime: kind.name().to_owned(),
        classes: char_classes(p),
        meta: Meta { d: Some(d), k_thresholds: thresholds(g, d), extra },
    }
}

fn blocks_output(b: &BlockPartition) -> Output {
    let group = match b.group {
        PadicGroup::Sp => "sp",
        PadicGroup::Sl => "sl",
    };
    let input = BTreeMap::from([
        ("group".to_owned(), group.into()),
        ("n".to_owned(), b.n.into()),
        ("q".to_owned(), b.q.into()),
        ("ell".to_owned(), b.ell.into()),
    ]);
    let k_thresholds = match b.group {
        PadicGroup::Sp => (1..=b.n)
            .map(|r| {
                let f = SimpleFactor::new(Family::C, r).expect("positive rank");
                (f.to_string(), factor_k_threshold(&f, b.d))
            })
            .collect(),
        PadicGroup::Sl => BTreeMap::new(),
    };
    let extra = BTreeMap::from([
        ("q".to_owned(), b.q.into()),
        ("ell".to_owned(), b.ell.into()),
        ("merged_class".to_owned(), b.merged_class.into()),
        ("single_block".to_owned(), b.is_single_block().into()),
        ("ell_good".to_owned(), b.ell_good.into()),
    ]);
    Output {
        input,
        regime: b.regime.as_str().to_owned(),
        classes: b
            .classes
            .iter()
            .map(|c| c.iter().map(ToString::to_string).collect())
            .collect(),
        meta: Meta { d: Some(b.d), k_thresholds, extra },
    }
}

const SAMPLE_Q: [u64; 6] = [2, 3, 4, 5, 7, 9];

fn verify(max_rank: u32, max_d: u32, triple: Option<(u32, u64, u64)>) -> Result<Vec<CheckReport>> {
    if max_rank == 0 {
        bail!("--max-rank must be at least 1");
    }
    let mut reports = vec![check_core_confluence(max_rank, max_d), check_lemmas(max_rank, 5)];
    for factor in classical_factors(max_rank.min(6)) {
        let g = FiniteGroupSpec::new(vec![factor]);
        for d in 1..=u64::from(max_d) {
            reports.push(check_d1_minimality(&g, d)?);
        }
    }
    let sweep: Vec<(u32, u64, u64)> = match triple {
        Some(t) => vec![t],
        None => (1..=max_rank.min(8))
            .flat_map(|n| {
                SAMPLE_Q.into_iter().flat_map(move |q| {
                    (2..=23u64)
                        .filter(move |&l| dunblocks::cyclotomic::is_prime(l) && q % l != 0)
                        .map(move |l| (n, q, l))
                })
            })
            .collect(),
    };
    let mut sc_done = std::collections::BTreeSet::new();
    for (n, q, ell) in sweep {
        if sc_done.insert(n) {
            for d in (2..=2 * u64::from(n) + 2).step_by(2) {
                reports.push(check_sc_unfolded(n, d)?);
            }
        }
        reports.push(check_block_closure(n, q, ell)?);
    }
    Ok(reports)
}

pub(crate) fn label_rows(label: &FactorLabel) -> (String, String) {
    match label {
        FactorLabel::Symbol { symbol, degenerate } => {
            let row = |r: &[u32]| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let mut top = row(symbol.top());
            if let Some(i) = degenerate {
                top.push_str(&format!("  [{i}]"));
            }
            (top, row(symbol.bottom()))
        }
        other => (other.to_string(), String::new()),
    }
}

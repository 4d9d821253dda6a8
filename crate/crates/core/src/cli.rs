//! Command-line front end. `run` takes the argument vector and two output
//! streams so tests can drive it without spawning a process.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::benchmarks;
use crate::bits::BitPattern;
use crate::circuit::{self, permutation, simulate, simulate_inverse, Circuit, Permutation};
use crate::defense::{
    never_triggered_surface, percent_1dp, surface_csv, table2_report, to_f64,
    trigger_count_distribution, Level,
};
use crate::embedding::{embed, Completion, EmbeddingResult, TruthTable};
use crate::error::Error;
use crate::metrics::{cost, overhead, overhead_csv, OverheadRow};
use crate::patterns::{all1_suite, detect, onecold_suite, random_detect, TestSuite};
use crate::realfmt::{parse_real, write_real};
use crate::synthesis::{build_level, synthesize, synthesize_embedding};
use crate::trojan::{insert, TrojanDescriptor, TrojanSpec};

#[derive(Parser, Debug)]
#[command(
    name = "revguard",
    version,
    about = "Trojan insertion, detection and scrambling for reversible circuits"
)]
struct Cli {
    /// Largest line count handled by exhaustive sweeps.
    #[arg(long, global = true)]
    exhaustive_limit: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate a circuit on one input pattern.
    Sim {
        circuit: PathBuf,
        /// Bit string, line 0 first.
        pattern: String,
        /// First gate of the sub-cascade.
        #[arg(long, default_value_t = 0)]
        from: usize,
        /// One past the last gate of the sub-cascade (default: gate count).
        #[arg(long)]
        to: Option<usize>,
        /// Run the sub-cascade backwards.
        #[arg(long)]
        inverse: bool,
    },
    /// Dump the full permutation of a circuit.
    Table { circuit: PathBuf },
    /// Embed a truth table into a reversible specification.
    Embed {
        table: PathBuf,
        #[arg(long, value_enum, default_value_t = CompletionArg::Lex)]
        completion: CompletionArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = EmbedFormat::Json)]
        format: EmbedFormat,
    },
    /// Synthesize a cascade from a truth table (embedding it first if needed).
    Synth { table: PathBuf },
    /// Insert a Trojan into a host circuit.
    Inject { host: PathBuf, trojan: PathBuf },
    /// Generate a test suite for a host circuit.
    Suite {
        host: PathBuf,
        #[arg(long, value_enum)]
        kind: SuiteArg,
    },
    /// Compare golden and infected outputs under a test suite.
    Detect {
        host: PathBuf,
        trojan: PathBuf,
        #[command(flatten)]
        source: PatternSource,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Apply a scrambling level and resynthesize.
    Scramble {
        table: PathBuf,
        #[arg(long)]
        level: Level,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Line, gate and quantum cost of a circuit.
    Cost {
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Scrambling overheads for a set of truth tables, one row per file.
    Overhead {
        #[arg(required = true)]
        tables: Vec<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Distribution of visited triggering patterns.
    Prob {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        t: u64,
    },
    /// Never-triggered probability over a (p, c) grid.
    Surface {
        #[arg(long)]
        t: u64,
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        c: RangeInclusive<u32>,
    },
    /// Disable probabilities for a benchmark list.
    Table2 {
        /// CSV of name,total_inputs,constants (default: bundled list).
        #[arg(long)]
        bench: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PatternSource {
    #[arg(long, value_enum)]
    kind: Option<SuiteArg>,
    /// Pattern file, one bit string per line.
    #[arg(long)]
    patterns: Option<PathBuf>,
    /// Number of uniformly random patterns.
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All1,
    Onecold,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CompletionArg {
    Lex,
    Shuffled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmbedFormat {
    Json,
    Real,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Text,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// Failure of a subcommand; always reported as exit code 1.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile { path: String, source: Error },
    #[error("{0}")]
    Domain(#[from] Error),
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn in_file<T>(path: &Path, r: crate::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::InFile {
        path: path.display().to_string(),
        source,
    })
}

fn load_circuit(path: &Path) -> CliResult<Circuit> {
    in_file(path, parse_real(&read(path)?))
}

fn load_table(path: &Path) -> CliResult<TruthTable> {
    in_file(path, read(path)?.parse())
}

fn load_trojan(path: &Path, width: usize) -> CliResult<TrojanSpec> {
    let d: TrojanDescriptor =
        serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
            path: path.display().to_string(),
            source,
        })?;
    in_file(path, TrojanSpec::from_descriptor(width, d))
}

fn need_seed(seed: Option<u64>, what: &str) -> CliResult<u64> {
    seed.ok_or_else(|| CliError::Usage(format!("{what} is randomized and needs --seed")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct EmbeddingJson {
    schema: &'static str,
    primary_inputs: usize,
    outputs: usize,
    ancillary: usize,
    garbage: usize,
    lines: usize,
    /// Image of every row of the specification, as bit strings.
    specification: Vec<String>,
    /// Rows used in functional mode, in primary input order.
    functional_rows: Vec<String>,
    real: String,
}

fn embedding_json(e: &EmbeddingResult, c: &Circuit) -> EmbeddingJson {
    let w = e.width();
    let bits = |v: u64| BitPattern::new(w, v).expect("fits").to_string();
    EmbeddingJson {
        schema: "revguard/embedding/v1",
        primary_inputs: e.primary_inputs(),
        outputs: e.table().outputs(),
        ancillary: e.ancillary(),
        garbage: e.garbage(),
        lines: w,
        specification: e.spec().map().iter().map(|&v| bits(v)).collect(),
        functional_rows: e.functional_rows().iter().map(|&v| bits(v)).collect(),
        real: write_real(c),
    }
}

#[derive(Serialize)]
struct ScrambleJson {
    schema: &'static str,
    level: Level,
    seed: Option<u64>,
    primary_inputs: usize,
    ancillae: usize,
    garbage: usize,
    lines: usize,
    /// Decimal string; the space grows as `2^(p + c)`.
    guess_space: String,
    /// Ancillary assignment per primary input pattern, as bit strings.
    ancilla_values: Vec<String>,
    real: String,
}

fn spec_from_table(tt: &TruthTable) -> CliResult<Circuit> {
    if tt.inputs() == tt.outputs() {
        if let Ok(p) = Permutation::new(tt.inputs(), tt.rows().to_vec()) {
            return Ok(synthesize(&p)?);
        }
    }
    let e = embed(tt, Completion::LexSmallest)?;
    Ok(synthesize_embedding(&e)?)
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let mut emit = |s: String| {
        out.write_all(s.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    };
    match cli.command {
        Command::Sim {
            circuit,
            pattern,
            from,
            to,
            inverse,
        } => {
            let c = load_circuit(&circuit)?;
            let p: BitPattern = pattern.parse()?;
            let to = to.unwrap_or(c.gate_count());
            let r = if inverse {
                simulate_inverse(&c, p, from, to)?
            } else {
                simulate(&c, p, from, to)?
            };
            emit(format!("{r}\n"))
        }
        Command::Table { circuit } => {
            let c = load_circuit(&circuit)?;
            let perm = permutation(&c)?;
            let w = c.lines();
            let mut s = String::new();
            for (x, &y) in perm.map().iter().enumerate() {
                s.push_str(&format!(
                    "{} -> {}\n",
                    BitPattern::new(w, x as u64)?,
                    BitPattern::new(w, y)?
                ));
            }
            emit(s)
        }
        Command::Embed {
            table,
            completion,
            seed,
            format,
        } => {
            let tt = load_table(&table)?;
            let completion = match completion {
                CompletionArg::Lex => Completion::LexSmallest,
                CompletionArg::Shuffled => Completion::Shuffled {
                    seed: need_seed(seed, "shuffled completion")?,
                },
            };
            let e = embed(&tt, completion)?;
            let c = synthesize_embedding(&e)?;
            match format {
                EmbedFormat::Json => emit(json(&embedding_json(&e, &c))),
                EmbedFormat::Real => emit(write_real(&c)),
            }
        }
        Command::Synth { table } => {
            let tt = load_table(&table)?;
            emit(write_real(&spec_from_table(&tt)?))
        }
        Command::Inject { host, trojan } => {
            let h = load_circuit(&host)?;
            let t = load_trojan(&trojan, h.lines())?;
            emit(write_real(&insert(&h, &t)?))
        }
        Command::Suite { host, kind } => {
            let h = load_circuit(&host)?;
            let suite = match kind {
                SuiteArg::All1 => all1_suite(&h),
                SuiteArg::Onecold => onecold_suite(&h),
            };
            emit(suite.to_text())
        }
        Command::Detect {
            host,
            trojan,
            source,
            seed,
        } => {
            let h = load_circuit(&host)?;
            let t = load_trojan(&trojan, h.lines())?;
            let report = if let Some(k) = source.random {
                random_detect(&h, &t, k, need_seed(seed, "random detection")?)?
            } else if let Some(path) = source.patterns {
                let suite = in_file(&path, TestSuite::parse(&read(&path)?))?;
                detect(&h, &t, &suite)?
            } else {
                let suite = match source.kind.expect("clap enforces one source") {
                    SuiteArg::All1 => all1_suite(&h),
                    SuiteArg::Onecold => onecold_suite(&h),
                };
                detect(&h, &t, &suite)?
            };
            emit(json(&report))
        }
        Command::Scramble { table, level, seed } => {
            let tt = load_table(&table)?;
            let seed = if level.is_randomized() {
                need_seed(seed, &format!("level {level}"))?
            } else {
                seed.unwrap_or(0)
            };
            let e = embed(&tt, Completion::LexSmallest)?;
            let b = build_level(&e, level, seed)?;
            let a = &b.assignment;
            let bits = |v: u64| BitPattern::new(a.ancillae(), v).map(|p| p.to_string());
            let ancilla_values = a
                .per_pattern_values()
                .into_iter()
                .map(bits)
                .collect::<crate::Result<Vec<_>>>()?;
            emit(json(&ScrambleJson {
                schema: "revguard/scramble/v1",
                level,
                seed: a.seed(),
                primary_inputs: a.primary_inputs(),
                ancillae: a.ancillae(),
                garbage: b.embedding.garbage(),
                lines: b.circuit.lines(),
                guess_space: a.guess_space().to_string(),
                ancilla_values,
                real: write_real(&b.circuit),
            }))
        }
        Command::Cost { circuit, format } => {
            let r = cost(&load_circuit(&circuit)?);
            match format {
                ReportFormat::Json => emit(json(&CostJson {
                    schema: "revguard/cost/v1",
                    report: r,
                })),
                ReportFormat::Csv => emit(format!(
                    "line_cost,gate_cost,quantum_cost\n{},{},{}\n",
                    r.line_cost, r.gate_cost, r.quantum_cost
                )),
            }
        }
        Command::Overhead { tables, seed } => {
            let seed = need_seed(seed, "overhead (lv2/lv3)")?;
            let mut rows = Vec::with_capacity(tables.len());
            for path in &tables {
                let tt = load_table(path)?;
                let e = embed(&tt, Completion::LexSmallest)?;
                let base = cost(&synthesize_embedding(&e)?);
                let level = |l: Level| -> CliResult<Option<_>> {
                    match build_level(&e, l, seed) {
                        Ok(b) => Ok(Some(overhead(&base, &cost(&b.circuit))?)),
                        Err(Error::UnsupportedLevel(_)) => Ok(None),
                        Err(other) => Err(other.into()),
                    }
                };
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                rows.push(OverheadRow {
                    benchmark: name,
                    lv1: level(Level::Lv1)?,
                    lv2: level(Level::Lv2)?,
                    lv3: level(Level::Lv3)?,
                });
            }
            emit(overhead_csv(&rows))
        }
        Command::Prob { p, c, t } => {
            let d = trigger_count_distribution(p, c, t)?;
            let mut s = String::from("visited,exact,prob,percent\n");
            for (i, q) in d.probs.iter().enumerate() {
                s.push_str(&format!("{i},{q},{},{}\n", to_f64(q), percent_1dp(q)));
            }
            emit(s)
        }
        Command::Surface { t, p, c } => emit(surface_csv(&never_triggered_surface(t, p, c)?)),
        Command::Table2 { bench, format } => {
            let shapes = match bench {
                Some(path) => in_file(&path, benchmarks::parse_shapes(&read(&path)?))?,
                None => benchmarks::table2_shapes(),
            };
            let report = table2_report(&shapes)?;
            emit(match format {
                TableFormat::Csv => report.to_csv(),
                TableFormat::Json => json(&report),
                TableFormat::Text => report.to_text(),
            })
        }
    }
}

#[derive(Serialize)]
struct CostJson {
    schema: &'static str,
    #[serde(flatten)]
    report: crate::metrics::CostReport,
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on domain errors, 2 on usage errors.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    if let Some(limit) = cli.exhaustive_limit {
        circuit::set_exhaustive_limit(limit);
    }
    match execute(cli, out) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {line}");
            1
        }
    }
}

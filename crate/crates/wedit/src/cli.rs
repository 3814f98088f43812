//! Command-line front end.
//!
//! Four subcommands: `dist` (edit distance from a string to an automaton's
//! language), `align` (the distance plus a witness alignment), `eval` (the
//! weight an automaton assigns to a string), and `bench` (a run-statistics
//! table per queue discipline). All output is deterministic; numbers print
//! in minimal decimal form and `inf` stands for an infinite distance.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::automata::{Label, WeightedAutomaton, EPSILON};
use crate::distance::{edit_distance, DisciplineChoice};
use crate::edit::CostFunction;
use crate::shortest::RunStats;
use crate::textio::{parse_automaton, parse_cost_entries, SymbolTable, EPSILON_TOKEN};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "wedit", about = "Edit distances and alignments against weighted automata")]
pub struct CliArgs {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Edit distance from a string to the automaton's weighted language.
    Dist(DistArgs),
    /// Edit distance plus an optimal alignment and the matched string.
    Align(AlignArgs),
    /// Weight the automaton assigns to the string itself.
    Eval(EvalArgs),
    /// Distance under every applicable queue discipline, with run counters.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QueueChoice {
    /// Topological order when acyclic, back-edge counting otherwise.
    Auto,
    /// Smallest tentative distance first within each level.
    Dijkstra,
    /// Topological order; fails on cyclic automata.
    Topo,
    /// Back-edge counting order.
    Loopk,
}

impl From<QueueChoice> for DisciplineChoice {
    fn from(q: QueueChoice) -> Self {
        match q {
            QueueChoice::Auto => DisciplineChoice::Auto,
            QueueChoice::Dijkstra => DisciplineChoice::ShortestFirst,
            QueueChoice::Topo => DisciplineChoice::Topological,
            QueueChoice::Loopk => DisciplineChoice::BackEdge,
        }
    }
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Input string; single characters, or whitespace-separated tokens with --symbols.
    #[arg(long)]
    pub string: String,
    /// Automaton file.
    #[arg(long)]
    pub automaton: PathBuf,
    /// Edit-cost overrides file (`input output cost` lines).
    #[arg(long)]
    pub costs: Option<PathBuf>,
    /// Queue discipline.
    #[arg(long, value_enum, default_value_t = QueueChoice::Auto)]
    pub queue: QueueChoice,
    /// Append run counters to the output.
    #[arg(long)]
    pub stats: bool,
    /// Symbol file (one token per line); switches string tokenization.
    #[arg(long)]
    pub symbols: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    #[arg(long)]
    pub string: String,
    #[arg(long)]
    pub automaton: PathBuf,
    #[arg(long)]
    pub costs: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = QueueChoice::Auto)]
    pub queue: QueueChoice,
    #[arg(long)]
    pub stats: bool,
    #[arg(long)]
    pub symbols: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub string: String,
    #[arg(long)]
    pub automaton: PathBuf,
    #[arg(long)]
    pub symbols: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Input string; defaults to the empty string.
    #[arg(long, default_value = "")]
    pub string: String,
    #[arg(long)]
    pub automaton: PathBuf,
    #[arg(long)]
    pub costs: Option<PathBuf>,
    #[arg(long)]
    pub symbols: Option<PathBuf>,
}

/// What a CLI invocation produced, for in-process use and testing.
#[derive(Debug, Clone)]
pub struct CliOutcome {
    /// 0 success, 1 input error, 2 infinite distance / nothing to align.
    pub status: i32,
    pub stdout: String,
    /// One-line message for the error stream.
    pub diagnostic: Option<String>,
}

pub fn run(args: CliArgs) -> CliOutcome {
    let result = match args.command {
        Command::Dist(a) => run_dist(a),
        Command::Align(a) => run_align(a),
        Command::Eval(a) => run_eval(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok((stdout, status)) => CliOutcome { status, stdout, diagnostic: None },
        Err(e) => {
            let status = if matches!(e, Error::Unreachable) { 2 } else { 1 };
            CliOutcome { status, stdout: String::new(), diagnostic: Some(e.to_string()) }
        }
    }
}

/// Parses real process arguments, prints, and returns the exit status.
pub fn main_entry() -> i32 {
    let args = match CliArgs::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(args);
    print!("{}", outcome.stdout);
    if let Some(d) = outcome.diagnostic {
        eprintln!("error: {d}");
    }
    outcome.status
}

struct Problem {
    symbols: SymbolTable,
    automaton: WeightedAutomaton,
    x: Vec<Label>,
    costs: CostFunction,
    tokenized: bool,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn tokenize(s: &str, symbols: &mut SymbolTable, tokenized: bool) -> Vec<Label> {
    if tokenized {
        s.split_whitespace().map(|t| symbols.intern(t)).collect()
    } else {
        s.chars().map(|c| symbols.intern(c.encode_utf8(&mut [0u8; 4]))).collect()
    }
}

fn load_problem(
    string: &str,
    automaton: &Path,
    costs: Option<&Path>,
    symbols_path: Option<&Path>,
) -> Result<Problem> {
    let tokenized = symbols_path.is_some();
    let mut symbols = match symbols_path {
        Some(p) => SymbolTable::parse(&read_file(p)?)?,
        None => SymbolTable::new(),
    };
    let automaton = parse_automaton(&read_file(automaton)?, &mut symbols)?;
    let x = tokenize(string, &mut symbols, tokenized);
    let overrides = match costs {
        Some(p) => parse_cost_entries(&read_file(p)?, &mut symbols)?,
        None => Vec::new(),
    };
    // The edit alphabet is everything named so far: automaton labels, string
    // symbols, cost-file symbols, and any preloaded symbol file entries.
    let entries: Vec<(Label, Label, f64)> =
        overrides.iter().map(|&(i, o, w)| (i, o, w.value())).collect();
    let costs = CostFunction::levenshtein_with_overrides(symbols.labels(), &entries)?;
    Ok(Problem { symbols, automaton, x, costs, tokenized })
}

fn run_dist(a: DistArgs) -> Result<(String, i32)> {
    let p = load_problem(&a.string, &a.automaton, a.costs.as_deref(), a.symbols.as_deref())?;
    let (d, stats) = edit_distance(&p.x, &p.automaton, &p.costs, a.queue.into())?;
    let mut out = format!("{d}\n");
    if a.stats {
        out.push_str(&stats.report());
        out.push('\n');
    }
    Ok((out, if d.is_infinite() { 2 } else { 0 }))
}

fn render_symbol(symbols: &SymbolTable, label: Label) -> String {
    if label == EPSILON {
        return EPSILON_TOKEN.to_string();
    }
    symbols.name(label).map(str::to_string).unwrap_or_else(|| label.to_string())
}

fn render_string(symbols: &SymbolTable, labels: &[Label], tokenized: bool) -> String {
    let parts: Vec<String> = labels.iter().map(|&l| render_symbol(symbols, l)).collect();
    parts.join(if tokenized { " " } else { "" })
}

fn run_align(a: AlignArgs) -> Result<(String, i32)> {
    let p = load_problem(&a.string, &a.automaton, a.costs.as_deref(), a.symbols.as_deref())?;
    let (r, stats) = crate::align::optimal_alignment_with_stats(
        &p.x,
        &p.automaton,
        &p.costs,
        a.queue.into(),
    )?;
    let mut out = format!("{}\n{}\n", r.total, render_string(&p.symbols, &r.output, p.tokenized));
    for op in r.alignment.ops() {
        let _ = writeln!(
            out,
            "{}\t{}",
            render_symbol(&p.symbols, op.input),
            render_symbol(&p.symbols, op.output)
        );
    }
    if a.stats {
        let _ = writeln!(out, "depth={}", stats.depth);
        let _ = writeln!(out, "peak_resident_states={}", stats.peak_resident_states);
        let _ = writeln!(out, "peak_resident_arcs={}", stats.peak_resident_arcs);
    }
    Ok((out, 0))
}

fn run_eval(a: EvalArgs) -> Result<(String, i32)> {
    let tokenized = a.symbols.is_some();
    let mut symbols = match a.symbols.as_deref() {
        Some(p) => SymbolTable::parse(&read_file(p)?)?,
        None => SymbolTable::new(),
    };
    let automaton = parse_automaton(&read_file(&a.automaton)?, &mut symbols)?;
    let y = tokenize(&a.string, &mut symbols, tokenized);
    let w = automaton.weight_of(&y)?;
    Ok((format!("{w}\n"), if w.is_infinite() { 2 } else { 0 }))
}

fn run_bench(a: BenchArgs) -> Result<(String, i32)> {
    let p = load_problem(&a.string, &a.automaton, a.costs.as_deref(), a.symbols.as_deref())?;
    let mut rows: Vec<(&str, DisciplineChoice)> =
        vec![("dijkstra", DisciplineChoice::ShortestFirst)];
    if p.automaton.topological_order().is_ok() {
        rows.push(("topo", DisciplineChoice::Topological));
    }
    rows.push(("loopk", DisciplineChoice::BackEdge));

    let mut out = String::new();
    let mut status = 0;
    for (name, choice) in rows {
        let (d, stats) = edit_distance(&p.x, &p.automaton, &p.costs, choice)?;
        if d.is_infinite() {
            status = 2;
        }
        let _ = writeln!(out, "queue={name} distance={d} {}", inline_stats(&stats));
    }
    Ok((out, status))
}

fn inline_stats(stats: &RunStats) -> String {
    format!(
        "max_dequeues={} relaxations={} peak_resident_states={} peak_resident_arcs={}",
        stats.max_dequeues(),
        stats.relaxations,
        stats.peak_resident_states,
        stats.peak_resident_arcs
    )
}

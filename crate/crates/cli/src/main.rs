use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use setcycles::bits::catalan;
use setcycles::constructions::{generate, Method, DEFAULT_BUDGET};
use setcycles::factors::gliders::FrameState;
use setcycles::factors::{
    class_sizes, cycle_tree_label, glider_trace, kt_factor, odd_factor, paren_factor, speed_multiset,
};
use setcycles::gluing::{assemble_with, default_lengths, find_gluing_cycles, AuxiliaryHypergraph};
use setcycles::graphs::{brute_force_hamilton, Violation};
use setcycles::trees::plane_trees;
use setcycles::{CycleFactor, CyclicWord, Error, FamilySpec, HamiltonResult, Kind, Mode};

#[derive(Parser)]
#[command(name = "setcycles", version, about = "Hamilton cycles and Gray codes on subsets of [n]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a Hamilton cycle (or path) of a graph family.
    Gen {
        /// Family such as `middle:k=4`, `kneser:n=9,k=3`, `hypercube:n=4`.
        family: String,
        #[arg(long, default_value = "auto")]
        method: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check a sequence of bitstrings, one per line.
    Verify {
        family: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Cycle)]
        mode: ModeArg,
        /// Read from a file instead of standard input.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Tabulate counts for a range of k.
    Count {
        #[arg(value_enum)]
        what: CountKind,
        /// A single value `4` or an inclusive range `1..10`.
        #[arg(long)]
        k: String,
    },
    /// Statistics of a cycle factor.
    Factor {
        #[command(flatten)]
        factor: FactorArgs,
        /// Print every cycle on its own line.
        #[arg(long)]
        cycles: bool,
    },
    /// Find gluing cycles for a factor and join it into one cycle.
    Glue {
        #[command(flatten)]
        factor: FactorArgs,
        /// Gluing cycle lengths to search, e.g. `4` or `6,8`.
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<usize>,
        /// Print the assembled cycle after the summary.
        #[arg(long)]
        emit: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Follow gliders under the parenthesis map.
    Gliders {
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Turn bitstring lines into a plain PBM bitmap.
    Render {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Exhaustive search for a Hamilton cycle or path.
    Solve {
        family: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Cycle)]
        mode: ModeArg,
        /// Search node budget.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(value_enum)]
    kind: FactorKind,
    #[arg(long)]
    k: usize,
    /// Ground set size (parenthesis factor only).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
    Pbm,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Cycle,
    Path,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Cycle => Mode::Cycle,
            ModeArg::Path => Mode::Path,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    KtCycles,
    Catalan,
    CfClasses,
    PlaneTrees,
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorKind {
    /// Middle levels graph, k >= 1.
    Kt,
    /// Odd graph from the flaw-raising bijection.
    Odd,
    /// Kneser graph from the parenthesis map, needs --n.
    Paren,
}

/// Failure carrying its exit code.
#[derive(Debug)]
enum Fail {
    Verify(String),
    Input(String),
    Construct(String),
    Limit(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Verify(_) => 1,
            Fail::Input(_) => 2,
            Fail::Construct(_) => 3,
            Fail::Limit(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Verify(m) | Fail::Input(m) | Fail::Construct(m) | Fail::Limit(m) => m,
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let m = e.to_string();
        match e {
            Error::InvalidInput(_) | Error::InvalidVertex(_) | Error::InvalidParams(_) => Fail::Input(m),
            Error::Overflow(_) | Error::ResourceLimit(_) | Error::BudgetExhausted(_) | Error::OutOfScope(_) => {
                Fail::Limit(m)
            }
            Error::InvalidCertificate(_) => Fail::Verify(m),
            Error::ConstructionFailure(_)
            | Error::InvalidGluing(_)
            | Error::AssemblyFailure(_)
            | Error::TrackingAmbiguity(_)
            | Error::NoSeparatedState => Fail::Construct(m),
        }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Fail {
        Fail::Input(format!("i/o error: {e}"))
    }
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;
type CmdResult = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let res = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Fail::from));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command, out: &mut Out) -> CmdResult {
    match cmd {
        Command::Gen { family, method, out: o } => cmd_gen(&family, &method, o.format, out),
        Command::Verify { family, mode, input } => cmd_verify(&family, mode.into(), input, out),
        Command::Count { what, k } => cmd_count(what, &k, out),
        Command::Factor { factor, cycles } => cmd_factor(&factor, cycles, out),
        Command::Glue { factor, lengths, emit, out: o } => cmd_glue(&factor, &lengths, emit, o.format, out),
        Command::Gliders { start, steps } => cmd_gliders(&start, steps, out),
        Command::Render { input } => {
            let lines = read_lines(input)?;
            let seq = parse_words(&lines)?;
            write_pbm(&seq, out)
        }
        Command::Solve { family, mode, budget, out: o } => cmd_solve(&family, mode.into(), budget, o.format, out),
    }
}

fn parse_family(s: &str) -> Result<FamilySpec, Fail> {
    let f: FamilySpec = s.parse()?;
    f.validate()?;
    Ok(f)
}

fn is_petersen(f: &FamilySpec) -> bool {
    matches!(
        f,
        FamilySpec::Kneser { n: 5, k: 2 }
            | FamilySpec::OddGraph { k: 2 }
            | FamilySpec::GenJohnson { n: 5, k: 2, s: 0 }
            | FamilySpec::GenJohnson { n: 5, k: 3, s: 1 }
            | FamilySpec::GenKneser { n: 5, k: 2, s: 0 }
            | FamilySpec::GenKneser { n: 5, k: 3, s: 1 }
    )
}

fn cmd_gen(family: &str, method: &str, format: Format, out: &mut Out) -> CmdResult {
    let f = parse_family(family)?;
    let method: Method = method.parse()?;
    let r = generate(&f, method)?;
    emit_result(&f, &r, format, out)
}

fn cmd_solve(family: &str, mode: Mode, budget: u64, format: Format, out: &mut Out) -> CmdResult {
    let f = parse_family(family)?;
    let r = brute_force_hamilton(&f, mode, budget)?;
    emit_result(&f, &r, format, out)
}

/// Re-verifies and writes a result; a proven absence is reported on stderr.
fn emit_result(f: &FamilySpec, r: &HamiltonResult, format: Format, out: &mut Out) -> CmdResult {
    if r.kind == Kind::None {
        return Err(Fail::Construct(format!("{f}: {}", r.notes.join("; "))));
    }
    r.verify(f)
        .map_err(|v| Fail::Construct(format!("internal check of the {} for {f} failed: {v}", r.kind)))?;
    if r.kind == Kind::Path {
        if is_petersen(f) {
            eprintln!("warning: Petersen exception: {f} has no Hamilton cycle, emitting a Hamilton path");
        } else {
            eprintln!("warning: {f} has no Hamilton cycle, emitting a Hamilton path");
        }
    }
    write_sequence(&r.sequence, &f.to_string(), r.kind, format, out)
}

fn write_sequence(seq: &[CyclicWord], family: &str, kind: Kind, format: Format, out: &mut Out) -> CmdResult {
    match format {
        Format::Text => {
            for x in seq {
                writeln!(out, "{x}")?;
            }
        }
        Format::Jsonl => {
            for (i, x) in seq.iter().enumerate() {
                let line = json!({"v": x.to_string(), "meta": {"i": i, "family": family, "kind": kind.to_string()}});
                writeln!(out, "{line}")?;
            }
        }
        Format::Pbm => write_pbm(seq, out)?,
    }
    Ok(())
}

fn write_pbm(seq: &[CyclicWord], out: &mut Out) -> CmdResult {
    let Some(first) = seq.first() else {
        return Err(Fail::Input("nothing to render".into()));
    };
    writeln!(out, "P1")?;
    writeln!(out, "{} {}", first.len(), seq.len())?;
    for x in seq {
        writeln!(out, "{x}")?;
    }
    Ok(())
}

fn read_lines(input: Option<PathBuf>) -> Result<Vec<String>, Fail> {
    let reader: Box<dyn Read> = match input {
        Some(p) => Box::new(File::open(&p).map_err(|e| Fail::Input(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdin()),
    };
    let mut lines = Vec::new();
    for line in BufReader::new(reader).lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() {
            lines.push(t.to_string());
        }
    }
    Ok(lines)
}

/// Parses equal-length bitstrings; line numbers in messages are 1-based.
fn parse_words(lines: &[String]) -> Result<Vec<CyclicWord>, Fail> {
    if lines.is_empty() {
        return Err(Fail::Input("empty input".into()));
    }
    let mut seq = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        let x: CyclicWord = l.parse().map_err(|e| Fail::Input(format!("line {}: {e}", i + 1)))?;
        if x.len() != seq.first().map_or(x.len(), |y: &CyclicWord| y.len()) {
            return Err(Fail::Input(format!("line {}: length {} differs from {}", i + 1, x.len(), seq[0].len())));
        }
        seq.push(x);
    }
    Ok(seq)
}

fn cmd_verify(family: &str, mode: Mode, input: Option<PathBuf>, out: &mut Out) -> CmdResult {
    let f = parse_family(family)?;
    let seq = parse_words(&read_lines(input)?)?;
    if seq[0].len() != f.word_len() {
        return Err(Fail::Input(format!("words have length {}, {f} needs {}", seq[0].len(), f.word_len())));
    }
    let what = if mode == Mode::Cycle { "cycle" } else { "path" };
    match setcycles::graphs::verify_hamilton(&f, &seq, mode) {
        Ok(()) => {
            writeln!(out, "ok: Hamilton {what} of {f} with {} vertices", seq.len())?;
            Ok(())
        }
        Err(v) => Err(Fail::Verify(describe(&v, seq.len()))),
    }
}

fn describe(v: &Violation, len: usize) -> String {
    match *v {
        Violation::Empty => "empty sequence".into(),
        Violation::NotAVertex { index } => format!("line {}: not a vertex of the graph", index + 1),
        Violation::Duplicate { index, first } => format!("line {}: repeats line {}", index + 1, first + 1),
        Violation::NonEdge { index } => {
            format!("line {}: not adjacent to line {}", index + 1, (index + 1) % len + 1)
        }
        Violation::Missing { count } => format!("{count} vertices missing"),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Fail> {
    let bad = || Fail::Input(format!("invalid range {s:?}, expected `k` or `a..b`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b < a {
        return Err(bad());
    }
    Ok((a, b))
}

const COUNT_MAX_K: usize = 10;

fn cmd_count(what: CountKind, k: &str, out: &mut Out) -> CmdResult {
    let (a, b) = parse_range(k)?;
    let max = match what {
        CountKind::Catalan => 30,
        CountKind::CfClasses => 14,
        CountKind::KtCycles | CountKind::PlaneTrees => COUNT_MAX_K,
    };
    if b > max {
        return Err(Fail::Input(format!("k must be at most {max} here")));
    }
    for k in a..=b {
        match what {
            CountKind::KtCycles => writeln!(out, "{k}\t{}", kt_factor(k)?.cycle_count())?,
            CountKind::Catalan => writeln!(out, "{k}\t{}", catalan(k as u64)?)?,
            CountKind::PlaneTrees => writeln!(out, "{k}\t{}", plane_trees(k).len())?,
            CountKind::CfClasses => {
                for (e, size) in class_sizes(k).iter().enumerate() {
                    writeln!(out, "{k}\t{e}\t{size}")?;
                }
            }
        }
    }
    Ok(())
}

fn build_factor(a: &FactorArgs) -> Result<CycleFactor, Fail> {
    match (a.kind, a.n) {
        (FactorKind::Kt, None) => Ok(kt_factor(a.k)?),
        (FactorKind::Odd, None) => Ok(odd_factor(a.k)?),
        (FactorKind::Paren, Some(n)) => Ok(paren_factor(n, a.k)?),
        (FactorKind::Paren, None) => Err(Fail::Input("the parenthesis factor needs --n".into())),
        (_, Some(_)) => Err(Fail::Input("--n applies to the parenthesis factor only".into())),
    }
}

fn histogram(values: impl Iterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for v in values {
        *m.entry(v).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

fn cmd_factor(a: &FactorArgs, print_cycles: bool, out: &mut Out) -> CmdResult {
    let f = build_factor(a)?;
    writeln!(out, "family\t{}", f.family)?;
    writeln!(out, "vertices\t{}", f.family.vertex_count())?;
    writeln!(out, "cycles\t{}", f.cycle_count())?;
    for (len, c) in histogram(f.cycles.iter().map(|c| c.len())) {
        writeln!(out, "length\t{len}\t{c}")?;
    }
    match a.kind {
        FactorKind::Kt => {
            for (i, c) in f.cycles.iter().enumerate() {
                writeln!(out, "tree\t{i}\t{}", cycle_tree_label(c)?.code())?;
            }
        }
        FactorKind::Paren => {
            for (i, c) in f.cycles.iter().enumerate() {
                let s = match speed_multiset(c) {
                    Ok(s) => s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                    Err(Error::NoSeparatedState) => "-".into(),
                    Err(e) => return Err(e.into()),
                };
                writeln!(out, "speeds\t{i}\t{s}")?;
            }
        }
        FactorKind::Odd => {}
    }
    if print_cycles {
        for c in &f.cycles {
            let words: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", words.join(" "))?;
        }
    }
    Ok(())
}

fn cmd_glue(a: &FactorArgs, lengths: &[usize], emit: bool, format: Format, out: &mut Out) -> CmdResult {
    let f = build_factor(a)?;
    let lengths = if lengths.is_empty() { default_lengths(&f.family) } else { lengths.to_vec() };
    let gl = find_gluing_cycles(&f, &lengths)?;
    let aux = AuxiliaryHypergraph::from_gluings(&f, &gl);
    let mut summary = String::new();
    summary.push_str(&format!("family\t{}\ncycles\t{}\n", f.family, f.cycle_count()));
    summary.push_str(&format!("gluing cycles\t{}\n", gl.len()));
    for (arity, c) in histogram(gl.iter().map(|h| h.arity())) {
        summary.push_str(&format!("arity\t{arity}\t{c}\n"));
    }
    summary.push_str(&format!("connected\t{}\n", aux.is_connected()));
    let r = assemble_with(&f, &lengths)?;
    r.verify(&f.family)
        .map_err(|v| Fail::Construct(format!("assembled cycle fails verification: {v}")))?;
    summary.push_str(&format!("assembled\t{}\n", r.sequence.len()));
    if emit {
        // keep the emitted stream machine-readable
        eprint!("{summary}");
        write_sequence(&r.sequence, &f.family.to_string(), r.kind, format, out)
    } else {
        write!(out, "{summary}")?;
        Ok(())
    }
}

/// Matched 1s and 0s as themselves, unmatched 0s as `-`.
fn annotate(x: CyclicWord) -> Result<String, Fail> {
    let m = x.matched_mask().ok_or_else(|| Fail::Input(format!("{x} has more 1s than 0s")))?;
    Ok((0..x.len())
        .map(|i| match (x.get(i), (m >> i) & 1 == 1) {
            (true, _) => '1',
            (false, true) => '0',
            (false, false) => '-',
        })
        .collect())
}

fn cmd_gliders(start: &str, steps: usize, out: &mut Out) -> CmdResult {
    let x: CyclicWord = start.parse().map_err(|e: Error| Fail::Input(e.to_string()))?;
    let trace = glider_trace(x, steps)?;
    for fr in &trace.frames {
        let mut line = format!("{:>4}  {}", fr.t, annotate(fr.word)?);
        match &fr.state {
            FrameState::Untracked => line.push_str("  untracked"),
            FrameState::Separated(gs) => {
                for g in gs {
                    line.push_str(&format!("  g{}:v{}@{}", g.id, g.speed, g.ref_pos + 1));
                }
            }
            FrameState::Interacting(rs) => {
                line.push_str("  interacting");
                for (r, ids) in rs.iter().filter(|(_, ids)| ids.len() > 1) {
                    let ids: Vec<String> = ids.iter().map(|i| format!("g{i}")).collect();
                    line.push_str(&format!("  [{}]@{}", ids.join(","), r.positions[0] + 1));
                }
            }
        }
        let total: u32 = fr.overtakings.values().sum();
        if total > 0 {
            line.push_str(&format!("  overtakings={total}"));
        }
        writeln!(out, "{line}")?;
    }
    let mut speeds = trace.speeds.clone();
    speeds.sort_unstable();
    let speeds: Vec<String> = speeds.iter().map(|v| v.to_string()).collect();
    writeln!(out, "speeds\t{{{}}}", speeds.join(","))?;
    match trace.frames.iter().skip(1).find(|fr| fr.word == x) {
        Some(fr) => writeln!(out, "period\t{}", fr.t)?,
        None => writeln!(out, "period\t>{steps}")?,
    }
    Ok(())
}

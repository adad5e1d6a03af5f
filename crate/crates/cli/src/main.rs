use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use puzzle_core::board::{render_ascii, render_svg, Puzzle};
use puzzle_core::filling::{enumerate_puzzles, structure_constants_with, trace, Enumerator, Theory, TraceNode};
use puzzle_core::interval::{covers, essential_conditions, DotSet, RankMatrix};
use puzzle_core::poly::Term;
use puzzle_core::verify::{run_suite, Config, Report, Suite};
use puzzle_core::{Error, Word};

#[derive(Parser)]
#[command(name = "puzzle", version, about = "Grassmannian structure constants by puzzle filling")]
struct Cli {
    /// Worker threads for enumeration [default: PUZZLE_THREADS or all cores]
    #[arg(long, global = true, env = "PUZZLE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// NE boundary word
    #[arg(long)]
    mu: Word,
    /// S boundary word
    #[arg(long)]
    nu: Word,
}

#[derive(Subcommand)]
enum Command {
    /// Structure constants c_{lambda mu}^nu for every lambda
    Coeff {
        #[arg(long, value_parser = parse_theory)]
        theory: Theory,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the puzzles with the given boundary
    Puzzles {
        #[command(flatten)]
        pair: Pair,
        /// Keep only puzzles with this NW word
        #[arg(long)]
        lambda: Option<Word>,
        /// Keep only puzzles of nonzero weight in this theory
        #[arg(long, value_parser = parse_theory)]
        theory: Option<Theory>,
        #[arg(long, value_enum)]
        render: Option<Render>,
        /// Write one file per puzzle here instead of printing
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The annotated degeneration tree
    Trace {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        json: bool,
    },
    /// Interval rank matrix operations on a dot set
    Rank {
        #[arg(value_enum)]
        op: RankOp,
        #[arg(long)]
        n: usize,
        /// Dots as "i,j;i,j;..."
        #[arg(long, default_value = "")]
        dots: String,
        /// Word to test with fixed-points
        #[arg(long)]
        word: Option<Word>,
    },
    /// Run the verification suites
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = puzzle_core::verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankOp {
    Dots,
    Essential,
    Covers,
    Envelope,
    FixedPoints,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures mapped to exit codes: 1 for bad input, 2 for broken invariants.
enum Failure {
    Input(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Invariant(e.to_string())
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Invariant(e.to_string())
    }
}

#[derive(Serialize)]
struct CoeffJson<'a> {
    n: usize,
    k: usize,
    mu: &'a Word,
    nu: &'a Word,
    theory: Theory,
    coefficients: BTreeMap<String, Vec<Term>>,
    puzzle_count: usize,
}

fn coeff(theory: Theory, pair: &Pair, json: bool) -> Result<String, Failure> {
    let c = structure_constants_with(theory, &pair.mu, &pair.nu, Enumerator::new(Some(theory)))?;
    if json {
        let out = CoeffJson {
            n: pair.mu.len(),
            k: pair.mu.ones(),
            mu: &pair.mu,
            nu: &pair.nu,
            theory,
            coefficients: c.coefficients.iter().map(|(l, v)| (l.to_string(), v.to_terms())).collect(),
            puzzle_count: c.puzzle_count,
        };
        return Ok(serde_json::to_string_pretty(&out)? + "\n");
    }
    Ok(c.coefficients.iter().map(|(l, v)| format!("{l}: {v}\n")).collect())
}

fn file_name(idx: usize, pz: &Puzzle, ext: &str) -> String {
    format!("puzzle-{:03}-{}.{ext}", idx + 1, pz.lambda)
}

fn puzzles(
    pair: &Pair,
    lambda: Option<&Word>,
    theory: Option<Theory>,
    render: Option<Render>,
    out: Option<&PathBuf>,
) -> Result<String, Failure> {
    let list = enumerate_puzzles(&pair.mu, &pair.nu, lambda, theory)?;
    let mut text = String::new();
    let render = match (render, out) {
        (None, Some(_)) => Some(Render::Ascii),
        (r, _) => r,
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
    }
    for (idx, pz) in list.iter().enumerate() {
        let (body, ext) = match render {
            Some(Render::Ascii) => (render_ascii(pz), "txt"),
            Some(Render::Svg) => (render_svg(pz), "svg"),
            None => {
                let kinds: Vec<String> = pz
                    .pieces
                    .iter()
                    .filter(|p| p.kind != puzzle_core::board::BranchKind::Boring)
                    .map(|p| format!("{}@{}", p.kind, p.pos))
                    .collect();
                let _ = writeln!(text, "{}: lambda={} [{}]", idx + 1, pz.lambda, kinds.join(", "));
                continue;
            }
        };
        match out {
            Some(dir) => {
                let path = dir.join(file_name(idx, pz, ext));
                fs::write(&path, body)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            None => {
                let _ = writeln!(text, "# {} lambda={}\n{body}", idx + 1, pz.lambda);
            }
        }
    }
    let _ = writeln!(text, "count: {}", list.len());
    Ok(text)
}

fn show_node(node: &TraceNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let step = match (node.branch, node.position) {
        (Some(b), Some(p)) => format!("{b} {p}"),
        _ => "start".to_string(),
    };
    let conds: Vec<String> = node.conditions.iter().map(ToString::to_string).collect();
    let _ = write!(
        out,
        "{pad}{step}: {} dots={{{}}} conditions=[{}] envelope=({}, {}) codim={}",
        node.path,
        node.dots,
        conds.join("; "),
        node.envelope.0,
        node.envelope.1,
        node.codim
    );
    if node.branch.is_some_and(|b| b != puzzle_core::board::BranchKind::Boring) {
        let ws: Vec<String> = node.weights.iter().map(|(t, w)| format!("{t}={w}")).collect();
        let _ = write!(out, " weights: {}", ws.join(", "));
    }
    if let Some(l) = &node.lambda {
        let _ = write!(out, " lambda={l}");
    }
    out.push('\n');
    for c in &node.children {
        show_node(c, depth + 1, out);
    }
}

fn trace_cmd(pair: &Pair, json: bool) -> Result<String, Failure> {
    let report = trace(&pair.mu, &pair.nu, true)?;
    let text = if json {
        serde_json::to_string_pretty(&report)? + "\n"
    } else {
        let mut s = String::new();
        show_node(&report.root, 0, &mut s);
        let _ = writeln!(s, "nodes: {}", report.nodes);
        s
    };
    if !report.failures.is_empty() {
        return Err(Failure::Invariant(format!("{text}{}", report.failures.join("\n"))));
    }
    Ok(text)
}

fn rank(op: RankOp, n: usize, dots: &str, word: Option<&Word>) -> Result<String, Failure> {
    let d = DotSet::parse(dots, n)?;
    Ok(match op {
        RankOp::Dots => format!("{}\n", RankMatrix::from_dots(&d)),
        RankOp::Essential => {
            let conds: Vec<String> = essential_conditions(&d).iter().map(ToString::to_string).collect();
            format!("{}\n", conds.join("; "))
        }
        RankOp::Covers => covers(&d).iter().map(|c| format!("{c}\n")).collect(),
        RankOp::Envelope => {
            let (lambda, mu) = d.envelope();
            format!("lambda={lambda} mu={mu}\n")
        }
        RankOp::FixedPoints => match word {
            Some(w) => format!("{}\n", d.fixed_point_in(w)?),
            None => d.fixed_points().iter().map(|w| format!("{w}\n")).collect(),
        },
    })
}

fn verify(max_n: usize, suite: Option<Suite>, seed: u64, json: bool) -> Result<String, Failure> {
    let cfg = Config { seed, ..Config::new(max_n) };
    let suites: Vec<Suite> = suite.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s]);
    let reports: Vec<Report> = suites.iter().map(|&s| run_suite(s, &cfg)).collect::<Result<_, _>>()?;
    let text = if json {
        serde_json::to_string_pretty(&reports)? + "\n"
    } else {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(s, "{r}");
            for f in r.failures.iter().take(20) {
                let _ = writeln!(s, "  {f}");
            }
        }
        s
    };
    if reports.iter().all(Report::passed) {
        Ok(text)
    } else {
        Err(Failure::Invariant(text))
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Input(format!("cannot start {t} threads: {e}")))?;
    }
    match &cli.command {
        Command::Coeff { theory, pair, json } => coeff(*theory, pair, *json),
        Command::Puzzles { pair, lambda, theory, render, out } => {
            puzzles(pair, lambda.as_ref(), *theory, *render, out.as_ref())
        }
        Command::Trace { pair, json } => trace_cmd(pair, *json),
        Command::Rank { op, n, dots, word } => rank(*op, *n, dots, word.as_ref()),
        Command::Verify { max_n, suite, seed, json } => verify(*max_n, *suite, *seed, *json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(2)
        }
    }
}

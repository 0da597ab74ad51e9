//! Command-line front end: circuit synthesis/verification, solver runs
//! against honest or adversarial oracles, benchmark sweeps, and boundary
//! edge counts.
//!
//! Exit codes: 0 success; 1 a verified circuit had a counterexample; 2 a
//! solver answered incorrectly; 64 malformed flags; 65 precondition or input
//! errors.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use majk::{
    adjustable_query_bound, block_partition, boundary_edges, circuit_from_json, circuit_to_json,
    fixed_query_bound, majority_truth_table, solve_adjustable, solve_fixed, synthesize,
    trivial_circuit, verify_exhaustive, AdversaryOracle, BitVector, HonestOracle, Oracle,
    SolveReport, SplitMix64, VerifyOutcome, DEFAULT_VERIFY_LIMIT,
};

const EXIT_COUNTEREXAMPLE: i32 = 1;
const EXIT_WRONG_ANSWER: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_PRECONDITION: i32 = 65;

#[derive(Parser)]
#[command(
    name = "majk",
    version,
    about = "Depth-two majority circuits and adaptive majority-query solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Model {
    /// Plain majority queries only
    Fixed,
    /// Each query chooses its own counting threshold
    Adjustable,
}

/// Inclusive range written as `lo:hi`.
#[derive(Copy, Clone)]
struct Span {
    lo: usize,
    hi: usize,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
        let lo = lo.parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
        let hi = hi.parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the depth-two majority circuit for n inputs and emit JSON
    Synth {
        #[arg(long)]
        n: usize,
        /// Use the fan-in-n baseline instead of the bounded-fan-in construction
        #[arg(long)]
        trivial: bool,
        /// Write the JSON here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively compare a circuit JSON file against MAJ_n
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        /// Refuse circuits with more inputs than this
        #[arg(long, default_value_t = DEFAULT_VERIFY_LIMIT)]
        limit: usize,
    },
    /// Run a solver against an oracle and report answer, queries, and bound
    #[command(group(ArgGroup::new("source").required(true).args(["input", "random", "adversary"])))]
    Solve {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        /// Largest query set size the oracle accepts
        #[arg(long)]
        k: usize,
        /// Hidden input as a bitstring, x0 leftmost
        #[arg(long)]
        input: Option<String>,
        /// Draw the hidden input from the seeded generator (requires --seed)
        #[arg(long, requires = "seed")]
        random: bool,
        /// Use the adversarial oracle instead of a hidden input
        #[arg(long)]
        adversary: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sweep (n, k) cells and write worst-case query counts as CSV
    #[command(group(ArgGroup::new("inputs").required(true).args(["exhaustive", "samples"])))]
    Bench {
        #[arg(long, value_enum)]
        model: Model,
        /// Inclusive n range, e.g. 4:10
        #[arg(long)]
        n: Span,
        /// Inclusive k range, e.g. 2:6; cells with k > n are skipped
        #[arg(long)]
        k: Span,
        /// Try all 2^n inputs per cell
        #[arg(long)]
        exhaustive: bool,
        /// Number of random inputs per cell (requires --seed)
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count the hypercube boundary edges of MAJ_n
    Edges {
        #[arg(long)]
        n: usize,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive here too; they are not usage errors
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_PRECONDITION
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Synth { n, trivial, out } => cmd_synth(n, trivial, out),
        Command::Verify { circuit, limit } => cmd_verify(&circuit, limit),
        Command::Solve {
            model,
            n,
            k,
            input,
            random,
            adversary,
            seed,
        } => cmd_solve(model, n, k, input, random, adversary, seed),
        Command::Bench {
            model,
            n,
            k,
            exhaustive,
            samples,
            seed,
            out,
        } => cmd_bench(model, n, k, exhaustive, samples, seed, &out),
        Command::Edges { n } => cmd_edges(n),
    }
}

fn cmd_synth(n: usize, trivial: bool, out: Option<PathBuf>) -> anyhow::Result<i32> {
    let circuit = if trivial {
        trivial_circuit(n)?
    } else {
        synthesize(n)?
    };
    let json = circuit_to_json(&circuit);
    match out {
        Some(path) => {
            std::fs::write(&path, json + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
            println!("gates: {}", circuit.gate_count());
            println!("fan-in: {}", circuit.fan_in());
        }
        None => {
            println!("{json}");
            eprintln!("gates: {}", circuit.gate_count());
            eprintln!("fan-in: {}", circuit.fan_in());
        }
    }
    Ok(0)
}

fn cmd_verify(path: &PathBuf, limit: usize) -> anyhow::Result<i32> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let circuit = circuit_from_json(&text)?;
    match verify_exhaustive(&circuit, limit)? {
        VerifyOutcome::Equivalent => {
            println!("equivalent");
            Ok(0)
        }
        VerifyOutcome::Counterexample(x) => {
            println!("counterexample: {x}");
            Ok(EXIT_COUNTEREXAMPLE)
        }
    }
}

fn run_solver<O: Oracle + ?Sized>(
    model: Model,
    oracle: &mut O,
    n: usize,
    k: usize,
) -> majk::Result<SolveReport> {
    match model {
        Model::Fixed => solve_fixed(oracle, n, k),
        Model::Adjustable => solve_adjustable(oracle, n, k),
    }
}

fn print_report(report: &SolveReport) {
    println!("answer: {}", report.answer as u8);
    println!("queries: {}", report.queries);
    match report.bound {
        Some(bound) => println!("bound: {bound}"),
        None => println!("bound: n/a"),
    }
}

fn cmd_solve(
    model: Model,
    n: usize,
    k: usize,
    input: Option<String>,
    random: bool,
    adversary: bool,
    seed: Option<u64>,
) -> anyhow::Result<i32> {
    // fail on bad (n, k) before touching the oracle, for a uniform error
    block_partition(n, k)?;

    if adversary {
        let mut oracle = AdversaryOracle::new(n, k)?;
        let report = run_solver(model, &mut oracle, n, k)?;
        print_report(&report);
        let (zeros, ones) = oracle.completions();
        println!("completion_zeros: {zeros}");
        println!("completion_ones: {ones}");
        println!("ambiguous: {}", oracle.is_ambiguous());
        if oracle.is_ambiguous() {
            eprintln!("solver stopped while the majority was still undetermined");
            return Ok(EXIT_WRONG_ANSWER);
        }
        if report.answer != zeros.majority() || report.answer != ones.majority() {
            eprintln!("solver answer disagrees with the oracle's completions");
            return Ok(EXIT_WRONG_ANSWER);
        }
        return Ok(0);
    }

    let hidden = match input {
        Some(text) => {
            let x = BitVector::from_bitstring(&text)?;
            if x.len() != n {
                bail!("--input has {} bits but n = {n}", x.len());
            }
            x
        }
        None => {
            debug_assert!(random);
            SplitMix64::new(seed.expect("clap enforces --seed with --random")).bitvector(n)
        }
    };
    let expected = hidden.majority();
    let mut oracle = HonestOracle::new(hidden, k)?;
    let report = run_solver(model, &mut oracle, n, k)?;
    print_report(&report);
    if report.answer != expected {
        eprintln!(
            "solver answered {} but MAJ_n(x) = {}",
            report.answer as u8, expected as u8
        );
        return Ok(EXIT_WRONG_ANSWER);
    }
    Ok(0)
}

fn cmd_bench(
    model: Model,
    n_span: Span,
    k_span: Span,
    exhaustive: bool,
    samples: Option<u64>,
    seed: Option<u64>,
    out: &PathBuf,
) -> anyhow::Result<i32> {
    if exhaustive && n_span.hi > 24 {
        bail!("exhaustive benches are limited to n <= 24, got {n_span}");
    }
    // one deterministic stream, consumed in row order
    let mut rng = SplitMix64::new(seed.unwrap_or(0));
    let mut csv = String::from("n,k,max_queries,bound,inputs_tested\n");
    let mut rows = 0usize;
    for n in n_span.lo..=n_span.hi {
        for k in k_span.lo..=k_span.hi {
            if k == 0 || k > n {
                continue;
            }
            let mut max_queries = 0usize;
            let mut tested = 0u64;
            let mut try_input = |x: BitVector| -> anyhow::Result<()> {
                let mut oracle = HonestOracle::without_log(x, k)?;
                let report = run_solver(model, &mut oracle, n, k)?;
                max_queries = max_queries.max(report.queries);
                tested += 1;
                Ok(())
            };
            if exhaustive {
                for rank in 0..1u64 << n {
                    try_input(BitVector::from_lex_rank(n, rank))?;
                }
            } else {
                for _ in 0..samples.expect("clap enforces --samples or --exhaustive") {
                    try_input(rng.bitvector(n))?;
                }
            }
            let bound = match model {
                Model::Adjustable => adjustable_query_bound(n, k).to_string(),
                Model::Fixed => fixed_query_bound(n, k)
                    .map(|b| b.to_string())
                    .unwrap_or_default(),
            };
            csv.push_str(&format!("{n},{k},{max_queries},{bound},{tested}\n"));
            rows += 1;
        }
    }
    std::fs::write(out, csv).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("wrote {} ({rows} rows)", out.display());
    Ok(0)
}

fn cmd_edges(n: usize) -> anyhow::Result<i32> {
    let table = majority_truth_table(n)?;
    println!("{}", boundary_edges(&table, n)?);
    Ok(0)
}

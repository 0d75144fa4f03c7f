//! Command-line front end: explore machines and specifications, compose,
//! check bisimilarity, compile, generate simulators, work with persistent
//! machines and step through a machine interactively.
//!
//! Exit codes: 0 on success or a positive verdict, 1 on a negative
//! verdict, 2 on malformed input or usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use rtmkit::bisim::{check_branching, check_dp_branching, FrontierMode};
use rtmkit::calculus::{lts_of, parse, print};
use rtmkit::compiler::compile;
use rtmkit::lts::{explore, explore_observable, parallel_compose, parse_lts, sym, FiniteLts, LtsGenerator, Sym};
use rtmkit::ptm::{its_isomorphic, its_of_lts, its_of_ptm, lts_of_its, max_word_len, parse_ptm, Its};
use rtmkit::rtm::{godel_decode, godel_encode, parse_rtm, Rtm};
use rtmkit::simgen::build_simulator;

#[derive(Parser)]
#[command(name = "rtmkit", version, about = "Reactive Turing machines, process specifications and branching bisimilarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Budget {
    /// Depth bound: transitions, or visible actions with --observable.
    #[arg(long, default_value_t = 12)]
    depth: usize,
    /// Maximum number of states.
    #[arg(long, default_value_t = 20000)]
    states: usize,
    /// Count only visible actions towards the depth.
    #[arg(long)]
    observable: bool,
}

#[derive(clap::Args)]
struct PtmBudget {
    #[arg(long)]
    machine: PathBuf,
    /// Configurations expanded per macrostep.
    #[arg(long, default_value_t = 10000)]
    fuel: usize,
    #[arg(long, default_value_t = 2)]
    max_input_len: usize,
    /// Work contents expanded.
    #[arg(long, default_value_t = 100)]
    max_states: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Explore the transition system of a machine and write it as `.lts`.
    RtmExplore {
        #[arg(long)]
        machine: PathBuf,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check (divergence-preserving) branching bisimilarity of two `.lts` files.
    Bisim {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        divergence: bool,
        #[arg(long, value_enum, default_value_t = Frontier::Pessimistic)]
        frontier: Frontier,
    },
    /// Compile a machine into a finite `.tcp` specification.
    Compile {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explore the transition system of a `.tcp` specification.
    CalcExplore {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a machine simulating a finite `.lts`.
    Simgen {
        #[arg(long)]
        lts: PathBuf,
        /// Bound on the branching degree.
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explore the parallel composition of two `.rtm` or `.lts` files.
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Channels to synchronise on, comma separated.
        #[arg(long, value_delimiter = ',')]
        channels: Vec<String>,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the interactive transition system of a `.ptm` machine.
    PtmIts {
        #[command(flatten)]
        budget: PtmBudget,
    },
    /// Check that encoding the interactive transition system of a `.ptm`
    /// machine as a labelled one and reading it back is lossless.
    PtmRoundtrip {
        #[command(flatten)]
        budget: PtmBudget,
    },
    /// Gödel numbers of machines.
    Godel {
        #[command(subcommand)]
        op: GodelOp,
    },
    /// Step through a machine interactively.
    RtmRepl {
        #[arg(long)]
        machine: PathBuf,
    },
}

#[derive(Subcommand)]
enum GodelOp {
    /// Print the code of a machine.
    Encode {
        #[arg(long)]
        machine: PathBuf,
    },
    /// Print the machine with a given code.
    Decode {
        #[arg(long)]
        code: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Frontier {
    Pessimistic,
    Optimistic,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_rtm(path: &Path) -> Result<Rtm> {
    parse_rtm(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn read_lts(path: &Path) -> Result<FiniteLts> {
    parse_lts(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("cannot write to stdout"),
    }
}

fn explore_with<G: LtsGenerator>(gen: &G, budget: &Budget) -> FiniteLts {
    if budget.observable {
        explore_observable(gen, budget.depth, budget.states)
    } else {
        explore(gen, budget.depth, budget.states)
    }
}

enum Component {
    Machine(Rtm),
    System(FiniteLts),
}

fn read_component(path: &Path) -> Result<Component> {
    if path.extension().is_some_and(|e| e == "lts") {
        Ok(Component::System(read_lts(path)?))
    } else {
        Ok(Component::Machine(read_rtm(path)?))
    }
}

fn compose(left: Component, right: Component, channels: BTreeSet<Sym>, budget: &Budget) -> FiniteLts {
    use Component::*;
    match (left, right) {
        (Machine(l), Machine(r)) => explore_with(&parallel_compose(l, r, channels), budget),
        (Machine(l), System(r)) => explore_with(&parallel_compose(l, r, channels), budget),
        (System(l), Machine(r)) => explore_with(&parallel_compose(l, r, channels), budget),
        (System(l), System(r)) => explore_with(&parallel_compose(l, r, channels), budget),
    }
}

fn read_ptm_its(budget: &PtmBudget) -> Result<Its> {
    let m = parse_ptm(&read(&budget.machine)?).with_context(|| format!("{}", budget.machine.display()))?;
    if budget.fuel == 0 || budget.max_states == 0 {
        bail!("--fuel and --max-states must be positive");
    }
    Ok(its_of_ptm(&m, budget.max_input_len, budget.fuel, budget.max_states))
}

fn repl(m: &Rtm) -> Result<ExitCode> {
    let mut config = m.initial_configuration();
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        let menu = m.step(&config);
        println!("{config}{}", if m.is_final(&config.state) { " final" } else { "" });
        if menu.is_empty() {
            println!("  no enabled transitions");
        }
        for (k, (a, next)) in menu.iter().enumerate() {
            println!("  [{k}] {a} -> {next}");
        }
        print!("> ");
        io::stdout().flush()?;
        let Some(line) = lines.next() else { return Ok(ExitCode::SUCCESS) };
        let line = line?;
        let choice = line.trim();
        if choice == "quit" {
            return Ok(ExitCode::SUCCESS);
        }
        match choice.parse::<usize>().ok().and_then(|k| menu.get(k)) {
            Some((_, next)) => config = next.clone(),
            None => println!("  enter a number from the menu or `quit`"),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::RtmExplore { machine, budget, out } => {
            let m = read_rtm(&machine)?;
            write_out(&out, &explore_with(&m, &budget).to_text())?;
        }
        Command::Bisim { left, right, divergence, frontier } => {
            let (l1, l2) = (read_lts(&left)?, read_lts(&right)?);
            let mode = match frontier {
                Frontier::Pessimistic => FrontierMode::Pessimistic,
                Frontier::Optimistic => FrontierMode::Optimistic,
            };
            let verdict =
                if divergence { check_dp_branching(&l1, &l2, mode) } else { check_branching(&l1, &l2, mode) };
            if let Some(v) = verdict.counterexample() {
                println!("not related: pair ({}, {}) violates clause {}", v.pair.0, v.pair.1, v.clause);
                return Ok(ExitCode::from(1));
            }
            let mut text = String::from("related\n");
            for (s1, s2) in verdict.witness().into_iter().flatten() {
                text.push_str(&format!("({s1}, {s2})\n"));
            }
            write_out(&None, &text)?;
        }
        Command::Compile { machine, out } => {
            let (spec, root) = compile(&read_rtm(&machine)?).context("cannot compile")?;
            write_out(&out, &print(&spec, &root))?;
        }
        Command::CalcExplore { spec, budget, out } => {
            let (eqs, root) = parse(&read(&spec)?).with_context(|| format!("{}", spec.display()))?;
            let gen = lts_of(eqs, root).with_context(|| format!("{}", spec.display()))?;
            write_out(&out, &explore_with(&gen, &budget).to_text())?;
        }
        Command::Simgen { lts, bound, out } => {
            let m = build_simulator(&read_lts(&lts)?, bound)?;
            write_out(&out, &m.to_text())?;
        }
        Command::Compose { left, right, channels, budget, out } => {
            let channels = channels.iter().filter(|c| !c.is_empty()).map(|c| sym(c)).collect();
            let lts = compose(read_component(&left)?, read_component(&right)?, channels, &budget);
            write_out(&out, &lts.to_text())?;
        }
        Command::PtmIts { budget } => print!("{}", read_ptm_its(&budget)?),
        Command::PtmRoundtrip { budget } => {
            let its = read_ptm_its(&budget)?;
            let bound = max_word_len(&its);
            let lts = explore(&lts_of_its(&its).with_input_bound(bound), usize::MAX, 1_000_000);
            if !lts.frontier().is_empty() {
                println!("encoding not explored completely");
                return Ok(ExitCode::from(1));
            }
            let back = its_of_lts(&lts, bound)?;
            if !its_isomorphic(&its, &back) {
                println!("not isomorphic\noriginal:\n{its}read back:\n{back}");
                return Ok(ExitCode::from(1));
            }
            println!("isomorphic: {} states, {} transitions", its.num_states(), its.edges().len());
        }
        Command::Godel { op: GodelOp::Encode { machine } } => println!("{}", godel_encode(&read_rtm(&machine)?)),
        Command::Godel { op: GodelOp::Decode { code } } => {
            let n: BigUint = code.trim().parse().with_context(|| format!("`{code}` is not a natural number"))?;
            print!("{}", godel_decode(&n)?.to_text());
        }
        Command::RtmRepl { machine } => return repl(&read_rtm(&machine)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

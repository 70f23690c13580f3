mod check;
mod construct;
mod hom;
mod input;
mod pipeline;

use clap::{Args, Parser, Subcommand};
use endoreg::SearchConfig;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

/// Rigid regular graphs, gadget constructions and monoid representations.
#[derive(Parser)]
#[command(name = "endoreg", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Wall-clock budget in seconds for all engine searches of this command.
    #[arg(long, global = true)]
    budget: Option<f64>,
    /// Seed for randomized test corpora; constructions ignore it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl Global {
    pub fn budget(&self) -> Option<Duration> {
        self.budget.map(|s| Duration::from_secs_f64(s.max(0.0)))
    }

    /// Engine settings with the deadline starting now.
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            jobs: self.jobs.max(1),
            ..SearchConfig::with_budget(self.budget())
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report structural facts and rigidity of every structure in a file.
    Check(check::CheckArgs),
    /// Build gadgets, tilings, indicators and rigid families.
    #[command(subcommand)]
    Construct(construct::ConstructCmd),
    /// Šíp and Cartesian products of files.
    #[command(subcommand)]
    Product(hom::ProductCmd),
    /// Count or list homomorphisms between two structures.
    #[command(subcommand)]
    Hom(hom::HomCmd),
    /// Degree-homogenize the Cayley system of a monoid.
    Homogenize(pipeline::HomogenizeArgs),
    /// Build a regular graph of given odd girth whose endomorphism monoid is M.
    Represent(pipeline::RepresentArgs),
    /// Exhaustive search for small rigid or asymmetric regular graphs.
    #[command(subcommand)]
    Search(pipeline::SearchCmd),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(pipeline::VerifyCmd),
}

pub type CmdResult = Result<bool, Box<dyn std::error::Error>>;

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = if cli.global.jobs == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        cli.global.jobs
    };
    let global = Global { jobs, ..cli.global };
    // Only fails if a pool already exists, which cannot happen here.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global();
    let result = match cli.command {
        Command::Check(a) => check::run(&a, &global),
        Command::Construct(c) => construct::run(&c),
        Command::Product(c) => hom::product(&c),
        Command::Hom(c) => hom::run(&c, &global),
        Command::Homogenize(a) => pipeline::homogenize(&a, &global),
        Command::Represent(a) => pipeline::represent(&a, &global),
        Command::Search(c) => pipeline::search(&c, &global),
        Command::Verify(c) => pipeline::verify(&c, &global),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

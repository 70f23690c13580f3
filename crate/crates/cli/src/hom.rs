use crate::input::{load_graph, load_indicator, load_one, load_system, Structure};
use crate::{emit, CmdResult, Global};
use clap::{Args, Subcommand};
use endoreg::homsearch::HomStructure;
use endoreg::{
    cartesian, cartesian_variant, emit_d6, emit_g6, sip, sip_vec, solve, HomOutcome, HomProblem,
    Indicator, Mode, SearchConfig,
};
use std::path::PathBuf;

#[derive(Subcommand, Debug)]
pub enum ProductCmd {
    /// D * S with graph indicators, one per colour of D (graph6 output).
    Sip {
        system: PathBuf,
        #[arg(required = true)]
        indicators: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// D * S with oriented indicators (digraph6 output).
    Sipvec {
        system: PathBuf,
        #[arg(required = true)]
        indicators: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// G □ H.
    Cartesian {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// (G1, G2) □_f H, with f a string over {1,2} of length |V(H)|.
    Variant {
        g1: PathBuf,
        g2: PathBuf,
        h: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct HomArgs {
    pub source: PathBuf,
    pub target: PathBuf,
    /// Only injective homomorphisms.
    #[arg(long)]
    pub injective: bool,
}

#[derive(Subcommand, Debug)]
pub enum HomCmd {
    /// Number of homomorphisms.
    Count(HomArgs),
    /// Homomorphisms as a JSON array of vertex maps.
    List {
        #[command(flatten)]
        args: HomArgs,
        #[arg(long)]
        limit: Option<usize>,
    },
}

fn indicators(paths: &[PathBuf]) -> Result<Vec<Indicator>, crate::input::InputError> {
    paths.iter().map(|p| load_indicator(p)).collect()
}

pub fn product(c: &ProductCmd) -> CmdResult {
    match c {
        ProductCmd::Sip {
            system,
            indicators: s,
            out,
        } => {
            let p = sip(&load_system(system)?, &indicators(s)?)?;
            emit(out.as_deref(), &emit_g6(&p.carrier))?;
        }
        ProductCmd::Sipvec {
            system,
            indicators: s,
            out,
        } => {
            let p = sip_vec(&load_system(system)?, &indicators(s)?)?;
            emit(out.as_deref(), &emit_d6(&p.carrier))?;
        }
        ProductCmd::Cartesian { g, h, out } => {
            emit(
                out.as_deref(),
                &emit_g6(&cartesian(&load_graph(g)?, &load_graph(h)?)),
            )?;
        }
        ProductCmd::Variant { g1, g2, h, f, out } => {
            let layers: Vec<u8> = f
                .chars()
                .map(|c| match c {
                    '1' => Ok(1),
                    '2' => Ok(2),
                    _ => Err(format!("layer map may only contain 1 and 2, found {c:?}")),
                })
                .collect::<Result<_, _>>()?;
            let p =
                cartesian_variant(&load_graph(g1)?, &load_graph(g2)?, &layers, &load_graph(h)?)?;
            emit(out.as_deref(), &emit_g6(&p))?;
        }
    }
    Ok(true)
}

fn solve_pair<S: HomStructure>(
    s: &S,
    t: &S,
    mode: Mode,
    injective: bool,
    limit: Option<usize>,
    cfg: SearchConfig,
) -> HomOutcome {
    let mut p = HomProblem::new(s, t, mode).config(cfg);
    p.injective = injective;
    p.limit = limit;
    solve(&p)
}

fn run_pair(
    a: &HomArgs,
    mode: Mode,
    limit: Option<usize>,
    cfg: SearchConfig,
) -> Result<HomOutcome, Box<dyn std::error::Error>> {
    let (s, t) = (load_one(&a.source)?, load_one(&a.target)?);
    Ok(match (&s, &t) {
        (Structure::Graph(x), Structure::Graph(y)) => {
            solve_pair(x, y, mode, a.injective, limit, cfg)
        }
        (Structure::Digraph(x), Structure::Digraph(y)) => {
            solve_pair(x, y, mode, a.injective, limit, cfg)
        }
        (Structure::System(x), Structure::System(y)) => {
            solve_pair(x, y, mode, a.injective, limit, cfg)
        }
        _ => return Err(format!("cannot map a {} to a {}", s.kind(), t.kind()).into()),
    })
}

pub fn run(c: &HomCmd, global: &Global) -> CmdResult {
    let out = match c {
        HomCmd::Count(a) => {
            let out = run_pair(a, Mode::Count, None, global.config())?;
            println!("{}", out.count);
            out
        }
        HomCmd::List { args, limit } => {
            let out = run_pair(args, Mode::Enumerate, *limit, global.config())?;
            println!("{}", serde_json::to_string(&out.maps)?);
            out
        }
    };
    if !out.complete {
        eprintln!(
            "search incomplete after {} nodes: budget exhausted",
            out.nodes
        );
    }
    Ok(out.complete)
}

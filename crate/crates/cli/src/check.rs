use crate::input::{load_all, Structure};
use crate::{CmdResult, Global};
use clap::Args;
use endoreg::homsearch::{asymmetry, rigidity, HomStructure};
use endoreg::metrics::{girth, is_connected, odd_girth};
use endoreg::{emit_g6, Graph, SearchConfig, Verdict};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// graph6/digraph6 lines or a JSON system.
    pub file: PathBuf,
    /// Require every structure to be rigid.
    #[arg(long)]
    pub rigid: bool,
    /// Require every structure to be asymmetric.
    #[arg(long)]
    pub asymmetric: bool,
    /// Require constant (total) degree D.
    #[arg(long, value_name = "D")]
    pub degree: Option<usize>,
    /// Require odd girth G (of the underlying graph).
    #[arg(long, value_name = "G")]
    pub odd_girth: Option<usize>,
    /// Require a connected underlying graph.
    #[arg(long)]
    pub connected: bool,
    /// Skip the rigidity and asymmetry searches unless required.
    #[arg(long)]
    pub no_engine: bool,
}

struct Facts {
    degree: Option<usize>,
    underlying: Graph,
}

fn facts(s: &Structure) -> Facts {
    match s {
        Structure::Graph(g) => Facts {
            degree: g.regular_degree(),
            underlying: g.clone(),
        },
        Structure::Digraph(d) => Facts {
            degree: constant(&d.degrees()),
            underlying: d.underlying(),
        },
        Structure::System(s) => Facts {
            degree: constant(&s.degrees()),
            underlying: s.flatten().underlying(),
        },
    }
}

fn constant(v: &[usize]) -> Option<usize> {
    let first = *v.first()?;
    v.iter().all(|&x| x == first).then_some(first)
}

fn engine<S: HomStructure>(
    s: &S,
    want_rigid: bool,
    want_asym: bool,
    cfg: &SearchConfig,
) -> (Option<Verdict>, Option<Verdict>) {
    (
        want_rigid.then(|| rigidity(s, cfg)),
        want_asym.then(|| asymmetry(s, cfg)),
    )
}

fn show(v: &Option<Verdict>) -> String {
    match v {
        None => "skipped".into(),
        Some(Verdict::No { witness, .. }) if witness.len() <= 40 => {
            format!("no, witness {witness:?}")
        }
        Some(Verdict::No { witness, .. }) => {
            let moved = witness.iter().enumerate().filter(|&(v, &w)| v != w).count();
            format!("no, witness moves {moved} vertices")
        }
        Some(v) => v.label().into(),
    }
}

fn expect(ok: &mut bool, label: &str, status: Option<bool>) {
    let tag = match status {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "UNKNOWN",
    };
    println!("  {tag} {label}");
    *ok &= status == Some(true);
}

fn verdict_status(v: &Option<Verdict>) -> Option<bool> {
    match v {
        Some(Verdict::Yes) => Some(true),
        Some(Verdict::No { .. }) => Some(false),
        _ => None,
    }
}

pub fn run(a: &CheckArgs, global: &Global) -> CmdResult {
    let all = load_all(&a.file)?;
    let cfg = global.config();
    let mut ok = true;
    for (k, s) in all.iter().enumerate() {
        let f = facts(s);
        let og = odd_girth(&f.underlying);
        let label = match s {
            Structure::Graph(g) if g.n() <= 40 => emit_g6(g),
            _ => s.kind().to_string(),
        };
        println!("[{k}] {label}");
        println!("  kind {}, n = {}", s.kind(), s.n());
        match s {
            Structure::Graph(g) => println!("  edges {}, girth {:?}", g.edge_count(), girth(g)),
            Structure::Digraph(d) => println!(
                "  arcs {}, oriented {}, loops {}",
                d.arc_count(),
                d.is_oriented(),
                d.has_loops()
            ),
            Structure::System(x) => {
                println!("  colours {}, arcs {}", x.colour_count(), x.total_arcs())
            }
        }
        println!(
            "  constant degree {:?}, connected {}, odd girth {og:?}",
            f.degree,
            is_connected(&f.underlying)
        );
        let (want_r, want_a) = (a.rigid || !a.no_engine, a.asymmetric || !a.no_engine);
        let (rig, asym) = match s {
            Structure::Graph(g) => engine(g, want_r, want_a, &cfg),
            Structure::Digraph(d) => engine(d, want_r, want_a, &cfg),
            Structure::System(x) => engine(x, want_r, want_a, &cfg),
        };
        println!("  rigid: {}", show(&rig));
        println!("  asymmetric: {}", show(&asym));
        if a.rigid {
            expect(&mut ok, "rigid", verdict_status(&rig));
        }
        if a.asymmetric {
            expect(&mut ok, "asymmetric", verdict_status(&asym));
        }
        if let Some(d) = a.degree {
            expect(&mut ok, &format!("degree {d}"), Some(f.degree == Some(d)));
        }
        if let Some(g) = a.odd_girth {
            expect(&mut ok, &format!("odd girth {g}"), Some(og == Some(g)));
        }
        if a.connected {
            expect(&mut ok, "connected", Some(is_connected(&f.underlying)));
        }
    }
    Ok(ok)
}

//! Exact homomorphism search between graphs, digraphs and relational systems.

mod endo;
mod engine;
mod structure;

pub use endo::{
    asymmetry, automorphisms, end_monoid, endomorphisms, is_asymmetric, is_core, is_rigid,
    monoid_iso, mutual_rigidity, mutually_rigid, rigidity, EndMonoid, Verdict,
};
pub use structure::HomStructure;

use engine::{Engine, Params};
use std::time::{Duration, Instant};
use structure::Compiled;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Enumerate,
    Count,
    FindFirst,
    FindNonIdentity,
}

/// Sound pruning rules; switching any of them off never changes results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    /// Per-colour forward checking of neighbour domains.
    pub forward_check: bool,
    /// A vertex on an odd closed walk of length l maps to one with an odd closed walk of length <= l.
    pub odd_walk: bool,
    /// Walk-length (parity) bounds between an assigned vertex and its ball.
    pub distance: bool,
    /// Per-colour degree filter; only applied to injective searches.
    pub degree: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning {
            forward_check: true,
            odd_walk: true,
            distance: true,
            degree: true,
        }
    }
}

impl Pruning {
    pub fn none() -> Self {
        Pruning {
            forward_check: false,
            odd_walk: false,
            distance: false,
            degree: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub pruning: Pruning,
    /// Ball radius for the distance filter; `None` picks a default per kind.
    pub radius: Option<u32>,
    pub deadline: Option<Instant>,
    pub node_limit: Option<u64>,
    /// Worker threads for the root-level split; 1 runs sequentially.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            pruning: Pruning::default(),
            radius: None,
            deadline: None,
            node_limit: None,
            jobs: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: Option<Duration>) -> Self {
        SearchConfig {
            deadline: budget.map(|b| Instant::now() + b),
            ..Default::default()
        }
    }
}

pub struct HomProblem<'a, S: HomStructure + ?Sized> {
    pub source: &'a S,
    pub target: &'a S,
    pub mode: Mode,
    pub limit: Option<usize>,
    pub injective: bool,
    /// Restrict to idempotent maps; only meaningful when source and target coincide.
    pub idempotent: bool,
    pub config: SearchConfig,
}

impl<'a, S: HomStructure + ?Sized> HomProblem<'a, S> {
    pub fn new(source: &'a S, target: &'a S, mode: Mode) -> Self {
        HomProblem {
            source,
            target,
            mode,
            limit: None,
            injective: false,
            idempotent: false,
            config: SearchConfig::default(),
        }
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn idempotent(mut self) -> Self {
        self.idempotent = true;
        self
    }

    pub fn config(mut self, config: SearchConfig) -> Self {
        self.config = config;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomOutcome {
    /// Maps found, sorted lexicographically (empty in count mode).
    pub maps: Vec<Vec<usize>>,
    pub count: u128,
    /// False if a deadline or node limit cut the search short.
    pub complete: bool,
    pub nodes: u64,
}

fn colour_map<S: HomStructure + ?Sized>(s: &S, t: &S) -> Option<Vec<usize>> {
    let tn = t.colour_names();
    s.colour_names()
        .iter()
        .map(|c| tn.iter().position(|x| x == c))
        .collect()
}

fn same_structure(a: &Compiled, b: &Compiled) -> bool {
    a.n == b.n && a.ncol == b.ncol && a.out == b.out
}

pub fn solve<S: HomStructure + ?Sized>(p: &HomProblem<'_, S>) -> HomOutcome {
    let s = Compiled::new(p.source);
    let same = std::ptr::addr_eq(p.source, p.target);
    let t_owned;
    let t = if same {
        &s
    } else {
        t_owned = Compiled::new(p.target);
        &t_owned
    };
    let identity_last = same || same_structure(&s, t);
    let radius = p.config.radius.unwrap_or(if s.symmetric { 4 } else { 3 });
    let params = Params {
        mode: p.mode,
        limit: p.limit,
        injective: p.injective,
        idempotent: p.idempotent && identity_last,
        pruning: p.config.pruning,
        identity_last,
        deadline: p.config.deadline,
        node_limit: p.config.node_limit,
        radius,
    };
    let engine = Engine::new(&s, t, colour_map(p.source, p.target), params);
    let (sink, nodes, complete) = engine.run(p.config.jobs.max(1));
    let mut maps: Vec<Vec<usize>> = sink
        .maps
        .into_iter()
        .map(|m| m.into_iter().map(|v| v as usize).collect())
        .collect();
    maps.sort_unstable();
    HomOutcome {
        maps,
        count: sink.count,
        complete,
        nodes,
    }
}

/// All homomorphisms, sorted lexicographically.
pub fn enumerate_homs<S: HomStructure + ?Sized>(source: &S, target: &S) -> Vec<Vec<usize>> {
    solve(&HomProblem::new(source, target, Mode::Enumerate)).maps
}

pub fn count_homs<S: HomStructure + ?Sized>(source: &S, target: &S) -> u128 {
    solve(&HomProblem::new(source, target, Mode::Count)).count
}

pub fn find_hom<S: HomStructure + ?Sized>(source: &S, target: &S) -> Option<Vec<usize>> {
    solve(&HomProblem::new(source, target, Mode::FindFirst))
        .maps
        .into_iter()
        .next()
}

/// Checks that `map` sends every arc of `source` to an arc of the same colour.
pub fn is_homomorphism<S: HomStructure + ?Sized>(source: &S, target: &S, map: &[usize]) -> bool {
    let Some(cmap) = colour_map(source, target) else {
        return false;
    };
    if map.len() != source.vertex_count() || map.iter().any(|&v| v >= target.vertex_count()) {
        return false;
    }
    cmap.iter().enumerate().all(|(c, &tc)| {
        (0..source.vertex_count()).all(|u| {
            source.out_list(c, u).iter().all(|&v| {
                target
                    .out_list(tc, map[u])
                    .binary_search(&(map[v as usize] as u32))
                    .is_ok()
            })
        })
    })
}

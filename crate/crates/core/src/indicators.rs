//! Recursive d-indicators of prescribed odd girth and the hypothesis checker for šíp products.

use crate::graph::{Carrier, Digraph, Graph, GraphError, Indicator, RelSystem};
use crate::homsearch::{mutual_rigidity, SearchConfig, Verdict};
use crate::metrics::{
    bfs, bounded_simple_path, directed_dist, is_connected, odd_girth, vertex_without_cycle,
};
use crate::products::{cartesian_variant, pair_index, sip, ProductError};
use crate::sausage::{family_f1, SausageError};
use crate::tiling::{build_factor, default_h, first_accepting_index, TilingError, TilingFactor};
use std::fmt;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 1_000_000;

/// Generations tried when looking for a tiling factor.
const MAX_TILING_INDEX: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndicatorError {
    #[error("degree must be at least 3, got {0}")]
    BadDegree(usize),
    #[error("odd girth must be odd and at least 7, got {0}")]
    BadGirth(usize),
    #[error("estimated {estimate} vertices exceeds the cap of {cap}")]
    TooLarge { estimate: usize, cap: usize },
    #[error("no tiling factor for g = {0} within {MAX_TILING_INDEX} generations")]
    NoFactor(usize),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Sausage(#[from] SausageError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A budgeted search ran out.
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: &'static str,
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    fn new(label: &'static str, ok: bool, witness: impl FnOnce() -> String) -> Check {
        Check {
            label,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: (!ok).then(witness),
        }
    }
}

/// Outcome of the hypothesis checks for an indicator tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorReport {
    pub checks: Vec<Check>,
}

impl IndicatorReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// No check failed but some search was cut short.
    pub fn partial(&self) -> bool {
        !self.failed() && self.checks.iter().any(|c| c.status == Status::Unknown)
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn get(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for IndicatorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<44} {}", c.label, c.status)?;
            if let Some(w) = &c.witness {
                write!(f, "  ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn underlying(c: &Carrier) -> Graph {
    match c {
        Carrier::Graph(g) => g.clone(),
        Carrier::Digraph(d) => d.underlying(),
    }
}

fn rigidity_check(s: &[Indicator], config: &SearchConfig) -> Check {
    let verdict = if let Some(gs) = s
        .iter()
        .map(|i| i.carrier().as_graph().cloned())
        .collect::<Option<Vec<Graph>>>()
    {
        mutual_rigidity(&gs, config)
    } else {
        let ds: Vec<Digraph> = s
            .iter()
            .map(|i| match i.carrier() {
                Carrier::Graph(g) => g.to_digraph(),
                Carrier::Digraph(d) => d.clone(),
            })
            .collect();
        mutual_rigidity(&ds, config)
    };
    let label = "mutually rigid";
    match verdict {
        Verdict::Yes => Check {
            label,
            status: Status::Pass,
            witness: None,
        },
        Verdict::Unknown => Check {
            label,
            status: Status::Unknown,
            witness: Some("budget exhausted".into()),
        },
        Verdict::No {
            source,
            target,
            witness,
        } => {
            let moved = witness.iter().enumerate().filter(|(a, b)| a != *b).count();
            Check {
                label,
                status: Status::Fail,
                witness: Some(format!(
                    "map from member {source} to member {target} moving {moved} vertices"
                )),
            }
        }
    }
}

/// Checks the hypotheses under which the šíp product preserves hom sets.
///
/// Oriented indicators are checked against the directed-path variant of the
/// distance condition; graphs against the undirected one.
pub fn indicator_hypotheses(s: &[Indicator], g: usize, config: &SearchConfig) -> IndicatorReport {
    let mut checks = Vec::new();
    let und: Vec<Graph> = s.iter().map(|i| underlying(i.carrier())).collect();
    let first_bad = |f: &dyn Fn(usize) -> Option<String>| {
        (0..s.len()).find_map(|k| f(k).map(|w| format!("member {k}: {w}")))
    };

    let disconnected = first_bad(&|k| (!is_connected(&und[k])).then(|| "disconnected".to_string()));
    checks.push(Check::new("connected", disconnected.is_none(), || {
        disconnected.clone().unwrap()
    }));
    checks.push(rigidity_check(s, config));

    let girth_bad = first_bad(&|k| match odd_girth(&und[k]) {
        Some(x) if x == g => None,
        other => Some(format!("odd girth {other:?}")),
    });
    checks.push(Check::new(
        "odd girth equals g",
        girth_bad.is_none(),
        || girth_bad.clone().unwrap(),
    ));

    let cycle_bad = first_bad(&|k| {
        vertex_without_cycle(&und[k], g).map(|v| format!("vertex {v} on no {g}-cycle"))
    });
    checks.push(Check::new(
        "g-cycle through every vertex",
        cycle_bad.is_none(),
        || cycle_bad.clone().unwrap(),
    ));

    let oriented = s.iter().all(|i| i.carrier().as_digraph().is_some());
    if oriented {
        let bad = first_bad(&|k| {
            let d = s[k].carrier().as_digraph().unwrap();
            directed_dist(d, s[k].output(), s[k].input())
                .filter(|&x| x < 3)
                .map(|x| format!("directed out->in path of length {x}"))
        });
        checks.push(Check::new(
            "directed out->in distance >= 3",
            bad.is_none(),
            || bad.clone().unwrap(),
        ));
    } else {
        let bad = first_bad(&|k| {
            bfs(&und[k], s[k].output())[s[k].input()]
                .filter(|&x| x < 3)
                .map(|x| format!("in-out distance {x}"))
        });
        checks.push(Check::new("in-out distance >= 3", bad.is_none(), || {
            bad.clone().unwrap()
        }));
    }

    let odd_bad = first_bad(&|k| {
        bounded_simple_path(
            &und[k],
            s[k].input(),
            s[k].output(),
            g.saturating_sub(2),
            1,
            false,
        )
        .map(|p| format!("odd in-out path of length {}", p.len() - 1))
    });
    checks.push(Check::new(
        "odd in-out paths have length >= g",
        odd_bad.is_none(),
        || odd_bad.clone().unwrap(),
    ));
    IndicatorReport { checks }
}

/// Both distinguished vertices have degree d-1, every other vertex degree d.
pub fn is_d_indicator(s: &Indicator, d: usize) -> bool {
    let g = underlying(s.carrier());
    (0..g.n()).all(|v| g.degree(v) + usize::from(v == s.input() || v == s.output()) == d)
}

/// The first tiling factor for odd girth `g`.
pub fn tiling_factor(g: usize) -> Result<TilingFactor, IndicatorError> {
    let (t, u) = first_accepting_index(g, default_h(g), MAX_TILING_INDEX)?
        .ok_or(IndicatorError::NoFactor(g))?;
    Ok(build_factor(&t, &u)?)
}

fn check_params(d: usize, g: usize) -> Result<(), IndicatorError> {
    if d < 3 {
        return Err(IndicatorError::BadDegree(d));
    }
    if g < 7 || g.is_multiple_of(2) {
        return Err(IndicatorError::BadGirth(g));
    }
    Ok(())
}

/// Number of vertices of S(d, g) without building it.
pub fn estimate_size(d: usize, g: usize) -> Result<usize, IndicatorError> {
    check_params(d, g)?;
    let t = tiling_factor(g)?.t.n();
    Ok(match d {
        3 => t,
        4 => 2 * t,
        5 => (2 * g + 1) * t,
        _ => {
            let f1 = family_f1(d - 3, 1)?;
            let inner = estimate_size(d - 3, g + 2)?;
            t.saturating_mul(
                f1.digraph
                    .n()
                    .saturating_add(f1.digraph.arc_count().saturating_mul(inner)),
            )
        }
    })
}

/// Lower bound on the size of S(d, g) that only builds tiling factors for g <= 9.
///
/// A tiling factor of odd girth g contains an odd cycle of length g, so it has
/// at least g vertices.
pub fn size_lower_bound(d: usize, g: usize) -> Result<u128, IndicatorError> {
    check_params(d, g)?;
    let t = if g <= 9 { tiling_factor(g)?.t.n() } else { g } as u128;
    Ok(match d {
        3 => t,
        4 => 2 * t,
        5 => (2 * g as u128 + 1) * t,
        _ => {
            let f1 = family_f1(d - 3, 1)?;
            let inner = size_lower_bound(d - 3, g + 2)?;
            let arcs = f1.digraph.arc_count() as u128;
            t.saturating_mul((f1.digraph.n() as u128).saturating_add(arcs.saturating_mul(inner)))
        }
    })
}

/// A built d-indicator with the data the structural facts refer to.
#[derive(Clone, Debug)]
pub struct BuiltIndicator {
    pub d: usize,
    pub g: usize,
    pub indicator: Indicator,
    pub factor: TilingFactor,
    /// Second factor of the layered product; `None` for d = 3.
    pub layers: Option<Graph>,
    /// Layers carrying T rather than T'.
    pub t_layers: Vec<usize>,
}

impl BuiltIndicator {
    pub fn graph(&self) -> &Graph {
        self.indicator
            .carrier()
            .as_graph()
            .expect("graph indicator")
    }
}

/// S(d, g), refusing to build anything with more than `cap` vertices.
pub fn build_indicator(d: usize, g: usize, cap: usize) -> Result<BuiltIndicator, IndicatorError> {
    let bound = size_lower_bound(d, g)?;
    if bound > cap as u128 {
        return Err(IndicatorError::TooLarge {
            estimate: usize::try_from(bound).unwrap_or(usize::MAX),
            cap,
        });
    }
    let estimate = estimate_size(d, g)?;
    if estimate > cap {
        return Err(IndicatorError::TooLarge { estimate, cap });
    }
    let factor = tiling_factor(g)?;
    let (u0, u1) = (factor.u[0], factor.u[1]);
    let nt = factor.t.n();
    let layered =
        |h: Graph, ones: &[usize], extra: Option<(usize, usize)>, pair: (usize, usize)| {
            let f: Vec<u8> = (0..h.n())
                .map(|v| if ones.contains(&v) { 1 } else { 2 })
                .collect();
            let mut prod = cartesian_variant(&factor.t, &factor.t_prime, &f, &h)?;
            if let Some(e) = extra {
                prod = prod.with_edges([e])?;
            }
            let indicator = Indicator::graph(prod, pair.0, pair.1)?;
            Ok::<_, IndicatorError>((indicator, h))
        };
    let (indicator, layers, t_layers) = match d {
        3 => (Indicator::graph(factor.t.clone(), u0, u1)?, None, vec![0]),
        4 => {
            let (ind, h) = layered(
                Graph::complete(2),
                &[0],
                None,
                (pair_index(nt, u0, 0), pair_index(nt, u1, 0)),
            )?;
            (ind, Some(h), vec![0])
        }
        5 => {
            let (v0, v1) = (0, g);
            let extra = (pair_index(nt, u1, v0), pair_index(nt, u0, v1));
            let pair = (pair_index(nt, u0, v0), pair_index(nt, u1, v1));
            let (ind, h) = layered(Graph::cycle(2 * g + 1), &[v0, v1], Some(extra), pair)?;
            (ind, Some(h), vec![v0, v1])
        }
        _ => {
            let inner = build_indicator(d - 3, g + 2, cap)?;
            let f1 = family_f1(d - 3, 1)?;
            let h = sip(
                &RelSystem::from_digraph(&f1.digraph, "a"),
                &[inner.indicator],
            )?
            .carrier;
            let (ind, h) = layered(
                h,
                &[0],
                None,
                (pair_index(nt, u0, 0), pair_index(nt, u1, 0)),
            )?;
            (ind, Some(h), vec![0])
        }
    };
    Ok(BuiltIndicator {
        d,
        g,
        indicator,
        factor,
        layers,
        t_layers,
    })
}

/// Inter-layer edges lie on no odd cycle of minimum length.
pub fn layers_hold_min_odd_cycles(b: &BuiltIndicator) -> bool {
    let Some(h) = &b.layers else { return true };
    let nt = b.factor.t.n();
    let g = b.graph();
    let Some(og) = odd_girth(g) else { return true };
    g.edges()
        .filter(|&(x, y)| x / nt != y / nt)
        .all(|(x, y)| !crate::metrics::edge_on_short_odd_cycle(g, x, y, og))
        && h.n() * nt == g.n()
}

/// Every path from a copy of u_0 to a copy of u_1 has length at least g.
pub fn copies_far_apart(b: &BuiltIndicator) -> bool {
    let nt = b.factor.t.n();
    let g = b.graph();
    let layers = b.layers.as_ref().map_or(1, Graph::n);
    let (u0, u1) = (b.factor.u[0], b.factor.u[1]);
    let extra: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(x, y)| x / nt != y / nt && x % nt != y % nt)
        .collect();
    let g = if extra.is_empty() {
        g.clone()
    } else {
        Graph::from_edges(g.n(), g.edges().filter(|e| !extra.contains(e))).expect("subgraph")
    };
    (0..layers).all(|v| {
        let dist = bfs(&g, pair_index(nt, u0, v));
        (0..layers).all(|w| dist[pair_index(nt, u1, w)].is_none_or(|x| x as usize >= b.g))
    })
}

/// F1(d, l) * S(d, g) for l = 1..=count.
pub fn rigid_family(
    d: usize,
    g: usize,
    count: usize,
    cap: usize,
) -> Result<Vec<Graph>, IndicatorError> {
    let s = build_indicator(d, g, cap)?;
    (1..=count)
        .map(|ell| {
            let f1 = family_f1(d, ell)?;
            Ok(sip(
                &RelSystem::from_digraph(&f1.digraph, "a"),
                std::slice::from_ref(&s.indicator),
            )?
            .carrier)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sausage::family_f2;

    #[test]
    fn cycle_indicator_fails_distance() {
        let c5 = Indicator::graph(Graph::cycle(5), 0, 1).unwrap();
        let r = indicator_hypotheses(&[c5], 5, &SearchConfig::default());
        assert_eq!(r.get("in-out distance >= 3").unwrap().status, Status::Fail);
        assert!(r.failed());
    }

    #[test]
    fn f2_orientation() {
        let (_, ind) = family_f2(3, 2).unwrap();
        let d = ind.carrier().as_digraph().unwrap().clone();
        let forward = indicator_hypotheses(std::slice::from_ref(&ind), 3, &SearchConfig::default());
        assert!(forward.passed(), "{forward}");
        let flipped = Indicator::digraph(d, ind.output(), ind.input()).unwrap();
        let back = indicator_hypotheses(&[flipped], 3, &SearchConfig::default());
        // Both orientations keep the directed endpoints at least 3 apart.
        assert_eq!(
            back.get("directed out->in distance >= 3").unwrap().status,
            Status::Pass
        );
        let g = ind.carrier().as_digraph().unwrap();
        assert_eq!(
            crate::metrics::directed_dist(g, ind.output(), ind.input()),
            Some(7)
        );
        assert_eq!(
            crate::metrics::directed_dist(g, ind.input(), ind.output()),
            Some(6)
        );
    }

    #[test]
    fn small_degrees() {
        let s3 = build_indicator(3, 7, DEFAULT_CAP).unwrap();
        assert!(is_d_indicator(&s3.indicator, 3));
        let s4 = build_indicator(4, 7, DEFAULT_CAP).unwrap();
        assert_eq!(s4.indicator.n(), 2 * s3.indicator.n());
        assert!(is_d_indicator(&s4.indicator, 4));
        assert!(layers_hold_min_odd_cycles(&s4) && copies_far_apart(&s4));
        assert!(matches!(
            build_indicator(5, 7, 100),
            Err(IndicatorError::TooLarge { .. })
        ));
        assert!(build_indicator(2, 7, DEFAULT_CAP).is_err());
        assert!(build_indicator(3, 8, DEFAULT_CAP).is_err());
    }
}

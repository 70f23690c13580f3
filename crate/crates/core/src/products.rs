//! Šíp products, the Cartesian product and its two-layer-graph variant.

use crate::graph::{Carrier, Digraph, Graph, GraphError, Indicator, RelSystem};
use crate::homsearch::{solve, HomProblem, HomStructure, Mode, SearchConfig};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("expected {expected} indicators (one per colour), got {got}")]
    TupleLength { expected: usize, got: usize },
    #[error("indicator {0} must be a graph")]
    NotSymmetric(usize),
    #[error("indicator {0} must be an oriented graph")]
    NotOriented(usize),
    #[error("layer graphs have {0} and {1} vertices")]
    VertexSetMismatch(usize, usize),
    #[error("layer map has {got} entries for {expected} vertices, or a value outside {{1, 2}}")]
    BadLayerMap { expected: usize, got: usize },
    #[error("system has a vertex with zero in- or out-degree: {0}")]
    DegreeZero(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where the gadget for one coloured arc sits in the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCopy {
    pub colour: usize,
    pub arc: (usize, usize),
    pub start: usize,
    pub len: usize,
}

/// A šíp product together with its gadget provenance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SipProduct<C> {
    pub carrier: C,
    /// Number of vertices of the base system; they come first.
    pub base: usize,
    /// Gadget copies in (colour, arc) lexicographic order.
    pub copies: Vec<GadgetCopy>,
}

impl<C> SipProduct<C> {
    fn index(&self) -> HashMap<(usize, usize, usize), usize> {
        self.copies
            .iter()
            .enumerate()
            .map(|(k, g)| ((g.colour, g.arc.0, g.arc.1), k))
            .collect()
    }

    /// The map induced on products by a homomorphism `phi` of the base systems.
    pub fn transport(&self, target: &SipProduct<C>, phi: &[usize]) -> Option<Vec<usize>> {
        let idx = target.index();
        let mut out: Vec<usize> = phi.to_vec();
        for g in &self.copies {
            let &k = idx.get(&(g.colour, phi[g.arc.0], phi[g.arc.1]))?;
            let start = target.copies[k].start;
            out.extend((0..g.len).map(|i| start + i));
        }
        Some(out)
    }

    /// Which gadget copy (if any) contains vertex `v`.
    pub fn copy_of(&self, v: usize) -> Option<&GadgetCopy> {
        if v < self.base {
            return None;
        }
        let k = self.copies.partition_point(|g| g.start + g.len <= v);
        self.copies.get(k)
    }
}

pub fn sip_order(d: &RelSystem, s: &[Indicator]) -> usize {
    d.n()
        + (0..d.colour_count())
            .map(|c| d.arc_count(c) * s[c].n())
            .sum::<usize>()
}

fn layout(d: &RelSystem, s: &[Indicator]) -> Result<Vec<GadgetCopy>, ProductError> {
    if s.len() != d.colour_count() {
        return Err(ProductError::TupleLength {
            expected: d.colour_count(),
            got: s.len(),
        });
    }
    let mut next = d.n();
    let mut copies = Vec::with_capacity(d.total_arcs());
    for c in 0..d.colour_count() {
        for arc in d.arcs(c) {
            copies.push(GadgetCopy {
                colour: c,
                arc,
                start: next,
                len: s[c].n(),
            });
            next += s[c].n();
        }
    }
    Ok(copies)
}

/// D * S: every arc (x, y) of colour i becomes a copy of S_i joined by the edges {x, in} and {out, y}.
pub fn sip(d: &RelSystem, s: &[Indicator]) -> Result<SipProduct<Graph>, ProductError> {
    for (i, ind) in s.iter().enumerate() {
        if ind.carrier().as_graph().is_none() {
            return Err(ProductError::NotSymmetric(i));
        }
    }
    let copies = layout(d, s)?;
    let mut edges = Vec::new();
    for g in &copies {
        let ind = &s[g.colour];
        let inner = ind.carrier().as_graph().expect("checked");
        edges.push((g.arc.0, g.start + ind.input()));
        edges.push((g.start + ind.output(), g.arc.1));
        edges.extend(inner.edges().map(|(a, b)| (g.start + a, g.start + b)));
    }
    let n = sip_order(d, s);
    Ok(SipProduct {
        carrier: Graph::from_edges(n, edges)?,
        base: d.n(),
        copies,
    })
}

/// D ⃗* S: every arc (x, y) of colour i becomes a copy of S_i joined by the arcs (x, in) and (out, y).
pub fn sip_vec(d: &RelSystem, s: &[Indicator]) -> Result<SipProduct<Digraph>, ProductError> {
    for (i, ind) in s.iter().enumerate() {
        match ind.carrier() {
            Carrier::Digraph(x) if x.is_oriented() => {}
            _ => return Err(ProductError::NotOriented(i)),
        }
    }
    let copies = layout(d, s)?;
    let mut arcs = Vec::new();
    for g in &copies {
        let ind = &s[g.colour];
        let inner = ind.carrier().as_digraph().expect("checked");
        arcs.push((g.arc.0, g.start + ind.input()));
        arcs.push((g.start + ind.output(), g.arc.1));
        arcs.extend(inner.arcs().map(|(a, b)| (g.start + a, g.start + b)));
    }
    let n = sip_order(d, s);
    Ok(SipProduct {
        carrier: Digraph::from_arcs(n, arcs, false)?,
        base: d.n(),
        copies,
    })
}

/// Vertex `(x, u)` of a product with first factor on `n_first` vertices.
#[inline]
pub fn pair_index(n_first: usize, x: usize, u: usize) -> usize {
    u * n_first + x
}

/// G □ H on vertices `(x, u) -> u * |G| + x`.
pub fn cartesian(g: &Graph, h: &Graph) -> Graph {
    cartesian_variant(g, g, &vec![1; h.n()], h).expect("same layer graph")
}

/// (G1, G2) □_f H: layer `u` carries a copy of `G_{f(u)}`.
pub fn cartesian_variant(
    g1: &Graph,
    g2: &Graph,
    f: &[u8],
    h: &Graph,
) -> Result<Graph, ProductError> {
    if g1.n() != g2.n() {
        return Err(ProductError::VertexSetMismatch(g1.n(), g2.n()));
    }
    if f.len() != h.n() || f.iter().any(|&v| v != 1 && v != 2) {
        return Err(ProductError::BadLayerMap {
            expected: h.n(),
            got: f.len(),
        });
    }
    let n = g1.n();
    let mut edges = Vec::new();
    for u in 0..h.n() {
        let layer = if f[u] == 1 { g1 } else { g2 };
        edges.extend(
            layer
                .edges()
                .map(|(x, y)| (pair_index(n, x, u), pair_index(n, y, u))),
        );
    }
    for (u, v) in h.edges() {
        edges.extend((0..n).map(|x| (pair_index(n, x, u), pair_index(n, x, v))));
    }
    Ok(Graph::from_edges(n * h.n(), edges)?)
}

pub fn add_edges(g: &Graph, extra: &[(usize, usize)]) -> Result<Graph, ProductError> {
    Ok(g.with_edges(extra.iter().copied())?)
}

/// Result of comparing Hom(D, D') with Hom(D*S, D'*S).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportReport {
    pub base_homs: usize,
    pub product_homs: usize,
    /// Every product homomorphism is the transport of a base one.
    pub covered: bool,
    /// Both searches ran to completion.
    pub complete: bool,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        self.complete && self.covered && self.base_homs == self.product_homs
    }
}

fn check_min_degrees(d: &RelSystem) -> Result<(), ProductError> {
    match (0..d.n()).find(|&v| d.in_degree(v) == 0 || d.out_degree(v) == 0) {
        Some(v) => Err(ProductError::DegreeZero(v)),
        None => Ok(()),
    }
}

fn transport_generic<C: HomStructure>(
    d: &RelSystem,
    d2: &RelSystem,
    p: &SipProduct<C>,
    p2: &SipProduct<C>,
    config: &SearchConfig,
) -> TransportReport {
    let base = solve(&HomProblem::new(d, d2, Mode::Enumerate).config(config.clone()));
    let prod =
        solve(&HomProblem::new(&p.carrier, &p2.carrier, Mode::Enumerate).config(config.clone()));
    let transported: BTreeSet<Vec<usize>> = base
        .maps
        .iter()
        .filter_map(|phi| p.transport(p2, phi))
        .collect();
    let found: BTreeSet<Vec<usize>> = prod.maps.iter().cloned().collect();
    TransportReport {
        base_homs: base.maps.len(),
        product_homs: prod.maps.len(),
        covered: found.is_subset(&transported) && transported.len() == base.maps.len(),
        complete: base.complete && prod.complete,
    }
}

/// Compares Hom(D, D') with Hom(D*S, D'*S) and checks the transport covers it.
///
/// The indicator hypotheses are not re-checked here; see
/// [`crate::indicators::indicator_hypotheses`].
pub fn hom_transport_check(
    d: &RelSystem,
    d2: &RelSystem,
    s: &[Indicator],
    config: &SearchConfig,
) -> Result<TransportReport, ProductError> {
    check_min_degrees(d)?;
    check_min_degrees(d2)?;
    let oriented = s.iter().all(|i| i.carrier().as_digraph().is_some());
    if oriented {
        let (p, p2) = (sip_vec(d, s)?, sip_vec(d2, s)?);
        Ok(transport_generic(d, d2, &p, &p2, config))
    } else {
        let (p, p2) = (sip(d, s)?, sip(d2, s)?);
        Ok(transport_generic(d, d2, &p, &p2, config))
    }
}

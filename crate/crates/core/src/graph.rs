//! Graphs, digraphs, binary relational systems and indicators.
//!
//! All structures use vertices `0..n` and keep sorted, duplicate-free
//! neighbour lists. They are immutable once built; operations that change a
//! structure return a new value.

use crate::bitset::Bitset;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {0} not allowed")]
    Loop(usize),
    #[error("duplicate colour {0:?}")]
    DuplicateColour(String),
    #[error("unknown colour {0:?}")]
    UnknownColour(String),
    #[error("indicator pair must be two distinct vertices, got ({0}, {1})")]
    BadIndicatorPair(usize, usize),
    #[error("expected {expected} arc lists, got {got}")]
    ColourCountMismatch { expected: usize, got: usize },
}

fn check_vertex(v: usize, n: usize) -> Result<(), GraphError> {
    if v < n {
        Ok(())
    } else {
        Err(GraphError::VertexOutOfRange { v, n })
    }
}

fn sort_dedup(lists: &mut [Vec<u32>]) {
    for l in lists {
        l.sort_unstable();
        l.dedup();
    }
}

/// Undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        sort_dedup(&mut adj);
        Ok(Graph { n, adj })
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| {
            l.iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn row(&self, v: usize) -> Bitset {
        Bitset::from_indices(self.n, self.adj[v].iter().map(|&u| u as usize))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        let adj = (0..n)
            .map(|u| {
                let mut it = self.adj[u].iter().peekable();
                (0..n as u32)
                    .filter(|&v| {
                        while it.peek().is_some_and(|&&w| w < v) {
                            it.next();
                        }
                        v as usize != u && it.peek() != Some(&&v)
                    })
                    .collect()
            })
            .collect();
        Graph { n, adj }
    }

    /// The graph with the given extra edges.
    pub fn with_edges<I>(&self, extra: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(self.n, self.edges().chain(extra))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("valid permutation")
    }

    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|(u, v)| (pos[u], pos[v]));
        Graph::from_edges(keep.len(), edges).expect("valid")
    }

    /// Symmetric digraph with both orientations of each edge.
    pub fn to_digraph(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.adj.clone(),
            inn: self.adj.clone(),
            allow_loops: false,
        }
    }
}

/// Directed graph, optionally with loops. Antiparallel arcs are allowed.
#[derive(Clone, Debug, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    allow_loops: bool,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.out == other.out
    }
}

impl std::hash::Hash for Digraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.out.hash(state);
    }
}

impl Digraph {
    pub fn from_arcs<I>(n: usize, arcs: I, allow_loops: bool) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (u, v) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v && !allow_loops {
                return Err(GraphError::Loop(u));
            }
            out[u].push(v as u32);
            inn[v].push(u as u32);
        }
        sort_dedup(&mut out);
        sort_dedup(&mut inn);
        Ok(Digraph {
            n,
            out,
            inn,
            allow_loops,
        })
    }

    pub fn directed_cycle(n: usize) -> Self {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n)), n == 1).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn allow_loops(&self) -> bool {
        self.allow_loops
    }

    #[inline]
    pub fn out_neighbours(&self, v: usize) -> &[u32] {
        &self.out[v]
    }

    #[inline]
    pub fn in_neighbours(&self, v: usize) -> &[u32] {
        &self.inn[v]
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v as usize)))
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.has_arc(v, v))
    }

    /// True if no loops and no pair of antiparallel arcs.
    pub fn is_oriented(&self) -> bool {
        self.arcs().all(|(u, v)| u != v && !self.has_arc(v, u))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// In-degree plus out-degree; a loop counts twice.
    pub fn total_degree(&self, v: usize) -> usize {
        self.out[v].len() + self.inn[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.total_degree(v)).collect()
    }

    /// Underlying simple graph: loops dropped, antiparallel arcs merged.
    pub fn underlying(&self) -> Graph {
        Graph::from_edges(self.n, self.arcs().filter(|(u, v)| u != v)).expect("valid")
    }

    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
            allow_loops: self.allow_loops,
        }
    }
}

/// Binary relational system: one arc relation per colour.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelSystem {
    n: usize,
    colours: Vec<String>,
    out: Vec<Vec<Vec<u32>>>,
    inn: Vec<Vec<Vec<u32>>>,
}

impl RelSystem {
    /// `arcs[c]` holds the arcs of colour `colours[c]`.
    pub fn new(
        n: usize,
        colours: Vec<String>,
        arcs: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self, GraphError> {
        if arcs.len() != colours.len() {
            return Err(GraphError::ColourCountMismatch {
                expected: colours.len(),
                got: arcs.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for c in &colours {
            if !seen.insert(c.as_str()) {
                return Err(GraphError::DuplicateColour(c.clone()));
            }
        }
        let mut out = Vec::with_capacity(colours.len());
        let mut inn = Vec::with_capacity(colours.len());
        for list in arcs {
            let mut o = vec![Vec::new(); n];
            let mut i = vec![Vec::new(); n];
            for (u, v) in list {
                check_vertex(u, n)?;
                check_vertex(v, n)?;
                o[u].push(v as u32);
                i[v].push(u as u32);
            }
            sort_dedup(&mut o);
            sort_dedup(&mut i);
            out.push(o);
            inn.push(i);
        }
        Ok(RelSystem {
            n,
            colours,
            out,
            inn,
        })
    }

    /// Builds from a colour-name keyed map; colour order follows `colours`.
    pub fn from_named(
        n: usize,
        colours: Vec<String>,
        mut arcs: BTreeMap<String, Vec<(usize, usize)>>,
    ) -> Result<Self, GraphError> {
        let lists = colours
            .iter()
            .map(|c| arcs.remove(c).unwrap_or_default())
            .collect();
        if let Some(extra) = arcs.into_keys().next() {
            return Err(GraphError::UnknownColour(extra));
        }
        RelSystem::new(n, colours, lists)
    }

    pub fn from_digraph(d: &Digraph, colour: &str) -> Self {
        RelSystem::new(d.n(), vec![colour.to_string()], vec![d.arcs().collect()]).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn colour_count(&self) -> usize {
        self.colours.len()
    }

    pub fn colour_index(&self, name: &str) -> Option<usize> {
        self.colours.iter().position(|c| c == name)
    }

    #[inline]
    pub fn out_neighbours(&self, c: usize, v: usize) -> &[u32] {
        &self.out[c][v]
    }

    #[inline]
    pub fn in_neighbours(&self, c: usize, v: usize) -> &[u32] {
        &self.inn[c][v]
    }

    pub fn has_arc(&self, c: usize, u: usize, v: usize) -> bool {
        self.out[c][u].binary_search(&(v as u32)).is_ok()
    }

    /// Arcs of colour `c` in lexicographic order.
    pub fn arcs(&self, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out[c]
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v as usize)))
    }

    pub fn arc_count(&self, c: usize) -> usize {
        self.out[c].iter().map(Vec::len).sum()
    }

    pub fn total_arcs(&self) -> usize {
        (0..self.colours.len()).map(|c| self.arc_count(c)).sum()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out.iter().map(|o| o[v].len()).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn.iter().map(|i| i[v].len()).sum()
    }

    pub fn total_degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.total_degree(v)).collect()
    }

    /// Union of all colours as a single digraph (loops kept).
    pub fn flatten(&self) -> Digraph {
        Digraph::from_arcs(
            self.n,
            (0..self.colours.len()).flat_map(|c| self.arcs(c)),
            true,
        )
        .expect("valid")
    }

    /// The system with an extra colour appended.
    pub fn with_colour(
        &self,
        name: &str,
        arcs: Vec<(usize, usize)>,
    ) -> Result<RelSystem, GraphError> {
        let mut colours = self.colours.clone();
        colours.push(name.to_string());
        let mut lists: Vec<Vec<(usize, usize)>> = (0..self.colours.len())
            .map(|c| self.arcs(c).collect())
            .collect();
        lists.push(arcs);
        RelSystem::new(self.n, colours, lists)
    }
}

/// Either kind of carrier an indicator can live on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Graph(Graph),
    Digraph(Digraph),
}

impl Carrier {
    pub fn n(&self) -> usize {
        match self {
            Carrier::Graph(g) => g.n(),
            Carrier::Digraph(d) => d.n(),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Carrier::Graph(g) => Some(g),
            Carrier::Digraph(_) => None,
        }
    }

    pub fn as_digraph(&self) -> Option<&Digraph> {
        match self {
            Carrier::Digraph(d) => Some(d),
            Carrier::Graph(_) => None,
        }
    }
}

/// A graph or digraph with a distinguished ordered pair `(input, output)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indicator {
    carrier: Carrier,
    input: usize,
    output: usize,
}

impl Indicator {
    pub fn new(carrier: Carrier, input: usize, output: usize) -> Result<Self, GraphError> {
        check_vertex(input, carrier.n())?;
        check_vertex(output, carrier.n())?;
        if input == output {
            return Err(GraphError::BadIndicatorPair(input, output));
        }
        Ok(Indicator {
            carrier,
            input,
            output,
        })
    }

    pub fn graph(g: Graph, input: usize, output: usize) -> Result<Self, GraphError> {
        Indicator::new(Carrier::Graph(g), input, output)
    }

    pub fn digraph(d: Digraph, input: usize, output: usize) -> Result<Self, GraphError> {
        Indicator::new(Carrier::Digraph(d), input, output)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn input(&self) -> usize {
        self.input
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn n(&self) -> usize {
        self.carrier.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_basics() {
        let g = Graph::cycle(5);
        assert_eq!(g.edge_count(), 5);
        assert!(g.has_edge(4, 0));
        assert_eq!(g.regular_degree(), Some(2));
        let c = g.complement();
        assert_eq!(c.regular_degree(), Some(2));
        assert!(!c.has_edge(0, 1) && c.has_edge(0, 2));
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::Loop(1)));
    }

    #[test]
    fn digraph_loop_degree() {
        let d = Digraph::from_arcs(2, [(0, 0), (0, 1)], true).unwrap();
        assert_eq!(d.total_degree(0), 3);
        assert!(Digraph::from_arcs(1, [(0, 0)], false).is_err());
        assert!(!d.is_oriented());
    }

    #[test]
    fn relsystem_colours() {
        let s = RelSystem::new(
            2,
            vec!["a".into(), "b".into()],
            vec![vec![(0, 1)], vec![(0, 1), (1, 1)]],
        )
        .unwrap();
        assert_eq!(s.total_degree(1), 4);
        assert_eq!(s.flatten().arc_count(), 2);
        assert!(RelSystem::new(1, vec!["a".into(), "a".into()], vec![vec![], vec![]]).is_err());
    }

    #[test]
    fn indicator_pair_distinct() {
        assert!(Indicator::graph(Graph::path(2), 0, 0).is_err());
        assert!(Indicator::graph(Graph::path(2), 0, 1).is_ok());
    }
}

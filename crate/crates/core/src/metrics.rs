//! Distances, connectivity, girth and odd girth.
//!
//! Infinite values (no cycle, unreachable vertex) are `None`.

use crate::graph::{Digraph, Graph};
use std::collections::VecDeque;

const UNSEEN: u32 = u32::MAX;

/// BFS distances from `src`; `None` for unreachable vertices.
pub fn bfs(g: &Graph, src: usize) -> Vec<Option<u32>> {
    bfs_raw(g, src, u32::MAX)
        .into_iter()
        .map(|d| (d != UNSEEN).then_some(d))
        .collect()
}

/// BFS distances up to `radius`; vertices further away get `u32::MAX`.
pub(crate) fn bfs_raw(g: &Graph, src: usize, radius: u32) -> Vec<u32> {
    let mut dist = vec![UNSEEN; g.n()];
    let mut q = VecDeque::new();
    dist[src] = 0;
    q.push_back(src);
    while let Some(u) = q.pop_front() {
        if dist[u] >= radius {
            continue;
        }
        for &w in g.neighbours(u) {
            let w = w as usize;
            if dist[w] == UNSEEN {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

pub fn dist(g: &Graph, u: usize, v: usize) -> Option<usize> {
    bfs(g, u)[v].map(|d| d as usize)
}

/// Length of a shortest directed path from `u` to `v`.
pub fn directed_dist(d: &Digraph, u: usize, v: usize) -> Option<usize> {
    let mut dist = vec![UNSEEN; d.n()];
    let mut q = VecDeque::from([u]);
    dist[u] = 0;
    while let Some(x) = q.pop_front() {
        if x == v {
            return Some(dist[x] as usize);
        }
        for &y in d.out_neighbours(x) {
            if dist[y as usize] == UNSEEN {
                dist[y as usize] = dist[x] + 1;
                q.push_back(y as usize);
            }
        }
    }
    None
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &w in g.neighbours(u) {
                if comp[w as usize] == usize::MAX {
                    comp[w as usize] = id;
                    members.push(w as usize);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || components(g).len() == 1
}

/// Shortest odd cycle, from same-level BFS edges over all roots.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for r in 0..g.n() {
        // A same-level edge at depth t closes an odd walk of length 2t+1.
        let radius = best.map_or(u32::MAX, |b| ((b - 1) / 2) as u32);
        let dist = bfs_raw(g, r, radius);
        for (x, y) in g.edges() {
            if dist[x] != UNSEEN && dist[x] == dist[y] {
                let len = 2 * dist[x] as usize + 1;
                if best.is_none_or(|b| len < b) {
                    best = Some(len);
                }
            }
        }
    }
    best
}

/// Length of a shortest cycle.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let n = g.n();
    let mut dist = vec![UNSEEN; n];
    let mut parent = vec![usize::MAX; n];
    for r in 0..n {
        dist.iter_mut().for_each(|d| *d = UNSEEN);
        let mut q = VecDeque::from([r]);
        dist[r] = 0;
        parent[r] = usize::MAX;
        while let Some(u) = q.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] as usize + 1 >= b) {
                break;
            }
            for &w in g.neighbours(u) {
                let w = w as usize;
                if dist[w] == UNSEEN {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if parent[u] != w {
                    let len = (dist[u] + dist[w] + 1) as usize;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// Per vertex, the length of a shortest odd closed walk through it.
pub fn odd_closed_walks(g: &Graph) -> Vec<Option<usize>> {
    (0..g.n())
        .map(|v| {
            let (_, odd) = parity_bfs(g.n(), |u| g.neighbours(u), v, u32::MAX);
            (odd[v] != UNSEEN).then_some(odd[v] as usize)
        })
        .collect()
}

/// Shortest even and odd walk lengths from `src`, capped at `radius`.
pub(crate) fn parity_bfs<'a, F>(n: usize, nbrs: F, src: usize, radius: u32) -> (Vec<u32>, Vec<u32>)
where
    F: Fn(usize) -> &'a [u32],
{
    let mut even = vec![UNSEEN; n];
    let mut odd = vec![UNSEEN; n];
    let mut q = VecDeque::new();
    even[src] = 0;
    q.push_back((src, 0u32));
    while let Some((u, d)) = q.pop_front() {
        if d >= radius {
            continue;
        }
        let nd = d + 1;
        let layer = if nd % 2 == 0 { &mut even } else { &mut odd };
        for &w in nbrs(u) {
            let w = w as usize;
            if layer[w] == UNSEEN {
                layer[w] = nd;
                q.push_back((w, nd));
            }
        }
    }
    (even, odd)
}

/// Shortest directed odd cycle; a loop counts as a cycle of length 1.
pub fn shortest_odd_dicycle(d: &Digraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in 0..d.n() {
        let radius = best.map_or(u32::MAX, |b| b as u32 - 1);
        let (_, odd) = parity_bfs(d.n(), |u| d.out_neighbours(u), v, radius);
        if odd[v] != UNSEEN && best.is_none_or(|b| (odd[v] as usize) < b) {
            best = Some(odd[v] as usize);
        }
    }
    best
}

/// Per vertex, the length of a shortest directed odd closed walk through it.
pub fn directed_odd_closed_walks(d: &Digraph) -> Vec<Option<usize>> {
    (0..d.n())
        .map(|v| {
            let (_, odd) = parity_bfs(d.n(), |u| d.out_neighbours(u), v, u32::MAX);
            (odd[v] != UNSEEN).then_some(odd[v] as usize)
        })
        .collect()
}

/// A simple path from `a` to `b` of length at most `max_len` and the given parity.
///
/// With `skip_edge` the single-edge path `a b` is not allowed.
pub fn bounded_simple_path(
    g: &Graph,
    a: usize,
    b: usize,
    max_len: usize,
    parity: usize,
    skip_edge: bool,
) -> Option<Vec<usize>> {
    fn walk(
        g: &Graph,
        path: &mut Vec<usize>,
        on: &mut [bool],
        b: usize,
        max_len: usize,
        parity: usize,
        skip: bool,
    ) -> bool {
        let v = *path.last().unwrap();
        let len = path.len() - 1;
        if v == b {
            return len % 2 == parity;
        }
        if len == max_len {
            return false;
        }
        // Not enough room left to reach b: prune by parity only when at the last step.
        for &w in g.neighbours(v) {
            let w = w as usize;
            if on[w] || (skip && len == 0 && w == b) {
                continue;
            }
            on[w] = true;
            path.push(w);
            if walk(g, path, on, b, max_len, parity, skip) {
                return true;
            }
            path.pop();
            on[w] = false;
        }
        false
    }
    let mut on = vec![false; g.n()];
    on[a] = true;
    let mut path = vec![a];
    walk(g, &mut path, &mut on, b, max_len, parity % 2, skip_edge).then_some(path)
}

/// Whether some odd cycle of length at most `len` uses the edge `{a, b}`.
pub fn edge_on_short_odd_cycle(g: &Graph, a: usize, b: usize, len: usize) -> bool {
    len >= 3 && bounded_simple_path(g, a, b, len - 1, 0, true).is_some()
}

/// A cycle of length exactly `len` through `v`, as a vertex sequence starting at `v`.
pub fn cycle_through(g: &Graph, v: usize, len: usize) -> Option<Vec<usize>> {
    fn walk(g: &Graph, path: &mut Vec<usize>, on: &mut [bool], len: usize) -> bool {
        let x = *path.last().unwrap();
        if path.len() == len {
            return g.has_edge(x, path[0]);
        }
        for &w in g.neighbours(x) {
            let w = w as usize;
            if on[w] {
                continue;
            }
            on[w] = true;
            path.push(w);
            if walk(g, path, on, len) {
                return true;
            }
            path.pop();
            on[w] = false;
        }
        false
    }
    if len < 3 {
        return None;
    }
    let mut on = vec![false; g.n()];
    on[v] = true;
    let mut path = vec![v];
    walk(g, &mut path, &mut on, len).then_some(path)
}

/// First vertex not on any cycle of length `len`.
pub fn vertex_without_cycle(g: &Graph, len: usize) -> Option<usize> {
    (0..g.n()).find(|&v| cycle_through(g, v, len).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_g6;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn odd_girth_examples() {
        assert_eq!(odd_girth(&Graph::cycle(7)), Some(7));
        assert_eq!(odd_girth(&Graph::complete(2)), None);
        assert_eq!(odd_girth(&Graph::cycle(8)), None);
        assert_eq!(odd_girth(&petersen()), Some(5));
        assert_eq!(girth(&petersen()), Some(5));
        assert_eq!(girth(&Graph::cycle(8)), Some(8));
        assert_eq!(girth(&Graph::path(4)), None);
    }

    #[test]
    fn dicycles() {
        assert_eq!(shortest_odd_dicycle(&Digraph::directed_cycle(3)), Some(3));
        assert_eq!(shortest_odd_dicycle(&Digraph::directed_cycle(4)), None);
        let l = Digraph::from_arcs(2, [(0, 1), (1, 1)], true).unwrap();
        assert_eq!(shortest_odd_dicycle(&l), Some(1));
    }

    #[test]
    fn distances_and_components() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(dist(&g, 0, 2), Some(2));
        assert_eq!(dist(&g, 0, 3), None);
        assert_eq!(components(&g), vec![vec![0, 1, 2], vec![3, 4]]);
        let d = Digraph::directed_cycle(4);
        assert_eq!(directed_dist(&d, 1, 0), Some(3));
    }

    #[test]
    fn odd_walks_on_fig1_graph() {
        let g = parse_g6("MCHY@e??KOCBOC?g_").unwrap();
        let w = odd_closed_walks(&g);
        let og = odd_girth(&g).unwrap();
        assert!(w.iter().all(|x| x.unwrap() >= og));
        assert_eq!(w.iter().flatten().min(), Some(&og));
    }

    #[test]
    fn bounded_paths_and_cycles() {
        let c7 = Graph::cycle(7);
        assert_eq!(
            bounded_simple_path(&c7, 0, 1, 6, 0, true),
            Some(vec![0, 6, 5, 4, 3, 2, 1])
        );
        assert_eq!(bounded_simple_path(&c7, 0, 1, 5, 0, true), None);
        assert!(edge_on_short_odd_cycle(&c7, 0, 1, 7));
        assert!(!edge_on_short_odd_cycle(&c7, 0, 1, 5));
        assert_eq!(cycle_through(&petersen(), 0, 5).map(|c| c.len()), Some(5));
        assert!(cycle_through(&petersen(), 0, 3).is_none());
        assert_eq!(vertex_without_cycle(&Graph::path(3), 3), Some(0));
        assert_eq!(vertex_without_cycle(&c7, 7), None);
    }
}

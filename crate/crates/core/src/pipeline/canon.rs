//! Canonical labelling by maximal adjacency code.
//!
//! The code of a labelled graph is its upper adjacency triangle read row by
//! row; the canonical labelling maximizes it. Rows are stored as `u64` with
//! column `c` at bit `63 - c`, so numeric order on a row is lexicographic order.
//! The same search, run on a partially known matrix, is the canonicity test of
//! the orderly generator.

use crate::graph::Graph;
use std::cmp::Ordering;

/// Largest vertex count handled by the `u64` row representation.
pub const MAX_CANON_N: usize = 64;

#[inline]
pub(crate) fn bit(c: usize) -> u64 {
    1u64 << (63 - c)
}

/// Bits for columns strictly greater than `p`.
#[inline]
pub(crate) fn above(p: usize) -> u64 {
    if p >= 63 {
        0
    } else {
        u64::MAX >> (p + 1)
    }
}

pub(crate) fn rows_of(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            g.neighbours(v)
                .iter()
                .fold(0u64, |acc, &w| acc | bit(w as usize))
        })
        .collect()
}

/// Ordered partition of positions `0..n`: `order[q]` is the vertex at position q,
/// `end[q]` is one past the last position of the cell containing q (valid at cell starts).
#[derive(Clone)]
struct Partition {
    order: Vec<usize>,
    end: Vec<usize>,
}

impl Partition {
    fn new(n: usize, split: usize) -> Self {
        let mut end = vec![0; n];
        for (q, e) in end.iter_mut().enumerate() {
            *e = if q < split { split } else { n };
        }
        Partition {
            order: (0..n).collect(),
            end,
        }
    }

    /// Places `order[pick]` at position `p` and splits every later cell by adjacency to it.
    /// Returns the row code of position `p` over positions `> p`.
    fn individualize(&mut self, adj: &[u64], p: usize, pick: usize) -> u64 {
        let n = self.order.len();
        self.order.swap(p, pick);
        let v = self.order[p];
        let cell_end = self.end[p];
        self.end[p] = p + 1;
        if p + 1 < cell_end {
            self.end[p + 1] = cell_end;
        }
        let row = adj[v];
        let mut code = 0u64;
        let mut s = p + 1;
        while s < n {
            let e = self.end[s];
            let slice = &mut self.order[s..e];
            let mut k = 0;
            for t in 0..slice.len() {
                if row & bit(slice[t]) != 0 {
                    slice.swap(k, t);
                    k += 1;
                }
            }
            for q in s..s + k {
                code |= bit(q);
            }
            if k > 0 && k < e - s {
                self.end[s] = s + k;
                self.end[s + k] = e;
            }
            s = e;
        }
        code
    }
}

/// Does some relabelling fixing the split `{0..known} | rest` setwise give a larger
/// code on the first `known` rows? Rows `0..known` of `adj` must be complete.
pub(crate) fn exceeded(adj: &[u64], known: usize) -> bool {
    let n = adj.len();
    let target: Vec<u64> = (0..known).map(|p| adj[p] & above(p)).collect();
    fn go(adj: &[u64], target: &[u64], part: &Partition, p: usize) -> bool {
        if p == target.len() {
            return false;
        }
        let e = part.end[p];
        for pick in p..e {
            let mut next = part.clone();
            let row = next.individualize(adj, p, pick);
            match row.cmp(&target[p]) {
                Ordering::Greater => return true,
                Ordering::Less => continue,
                Ordering::Equal => {
                    if go(adj, target, &next, p + 1) {
                        return true;
                    }
                }
            }
        }
        false
    }
    go(adj, &target, &Partition::new(n, known), 0)
}

/// A canonical labelling: `order[q]` is the original vertex placed at position q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    /// Canonical rows restricted to columns above the diagonal.
    pub code: Vec<u64>,
    pub order: Vec<usize>,
}

impl CanonicalForm {
    /// The canonically relabelled graph.
    pub fn graph(&self) -> Graph {
        let edges = (0..self.n).flat_map(|p| {
            (p + 1..self.n)
                .filter(move |&q| self.code[p] & bit(q) != 0)
                .map(move |q| (p, q))
        });
        Graph::from_edges(self.n, edges).expect("valid code")
    }
}

/// Maximal-code canonical form; panics above [`MAX_CANON_N`] vertices.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    assert!(
        n <= MAX_CANON_N,
        "canonical form supports at most {MAX_CANON_N} vertices"
    );
    let adj = rows_of(g);
    let mut best: Vec<u64> = Vec::with_capacity(n);
    let mut best_order: Vec<usize> = (0..n).collect();
    // Invariant: the current prefix equals `best[..p]`; `fresh` marks a path that rewrote `best`.
    fn go(
        adj: &[u64],
        part: &Partition,
        p: usize,
        fresh: bool,
        best: &mut Vec<u64>,
        best_order: &mut Vec<usize>,
    ) {
        let n = adj.len();
        if p == n {
            if fresh {
                best_order.clone_from(&part.order);
            }
            return;
        }
        let e = part.end[p];
        for pick in p..e {
            let mut next = part.clone();
            let row = next.individualize(adj, p, pick);
            if best.len() > p {
                match row.cmp(&best[p]) {
                    Ordering::Less => continue,
                    Ordering::Equal => go(adj, &next, p + 1, fresh, best, best_order),
                    Ordering::Greater => {
                        best.truncate(p);
                        best.push(row);
                        go(adj, &next, p + 1, true, best, best_order);
                    }
                }
            } else {
                best.push(row);
                go(adj, &next, p + 1, true, best, best_order);
            }
        }
    }
    if n > 0 {
        go(
            &adj,
            &Partition::new(n, n),
            0,
            true,
            &mut best,
            &mut best_order,
        );
    }
    CanonicalForm {
        n,
        code: best,
        order: best_order,
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && canonical_form(a).code == canonical_form(b).code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_g6;
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_max(g: &Graph) -> Vec<u64> {
        let n = g.n();
        let adj = rows_of(g);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = Vec::new();
        fn heap(k: usize, perm: &mut Vec<usize>, adj: &[u64], best: &mut Vec<u64>) {
            if k <= 1 {
                let n = perm.len();
                let code: Vec<u64> = (0..n)
                    .map(|p| {
                        (p + 1..n)
                            .filter(|&q| adj[perm[p]] & bit(perm[q]) != 0)
                            .fold(0, |a, q| a | bit(q))
                    })
                    .collect();
                if code > *best {
                    *best = code;
                }
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, adj, best);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                perm.swap(j, k - 1);
            }
        }
        heap(n, &mut perm, &adj, &mut best);
        best
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.2..0.8);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let c = canonical_form(&g);
            assert_eq!(c.code, brute_max(&g));
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g.relabel(&perm)).code, c.code);
            assert!(are_isomorphic(&c.graph(), &g));
        }
    }

    #[test]
    fn distinguishes_cubic_pairs() {
        let petersen = parse_g6("IheA@GUAo").unwrap();
        let prism = crate::products::cartesian(&Graph::cycle(5), &Graph::path(2));
        assert!(!are_isomorphic(&petersen, &prism));
        let relabelled = petersen.relabel(&[3, 1, 4, 0, 5, 9, 2, 6, 8, 7]);
        assert!(are_isomorphic(&petersen, &relabelled));
        assert!(!exceeded(&rows_of(&canonical_form(&petersen).graph()), 10));
        assert!(exceeded(&rows_of(&Graph::path(4)), 4));
    }
}

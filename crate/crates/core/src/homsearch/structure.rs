//! Uniform view of graphs, digraphs and relational systems for the engine.

use crate::graph::{Digraph, Graph, RelSystem};

/// Anything made of coloured arc relations on `0..n`.
pub trait HomStructure: Sync {
    fn vertex_count(&self) -> usize;
    fn colour_names(&self) -> Vec<String>;
    /// True when every colour relation is symmetric and loop-free (graphs).
    fn is_symmetric(&self) -> bool;
    fn out_list(&self, c: usize, v: usize) -> &[u32];
    fn in_list(&self, c: usize, v: usize) -> &[u32];
}

impl HomStructure for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn colour_names(&self) -> Vec<String> {
        vec!["edge".into()]
    }
    fn is_symmetric(&self) -> bool {
        true
    }
    fn out_list(&self, _c: usize, v: usize) -> &[u32] {
        self.neighbours(v)
    }
    fn in_list(&self, _c: usize, v: usize) -> &[u32] {
        self.neighbours(v)
    }
}

impl HomStructure for Digraph {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn colour_names(&self) -> Vec<String> {
        vec!["arc".into()]
    }
    fn is_symmetric(&self) -> bool {
        false
    }
    fn out_list(&self, _c: usize, v: usize) -> &[u32] {
        self.out_neighbours(v)
    }
    fn in_list(&self, _c: usize, v: usize) -> &[u32] {
        self.in_neighbours(v)
    }
}

impl HomStructure for RelSystem {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn colour_names(&self) -> Vec<String> {
        self.colours().to_vec()
    }
    fn is_symmetric(&self) -> bool {
        false
    }
    fn out_list(&self, c: usize, v: usize) -> &[u32] {
        self.out_neighbours(c, v)
    }
    fn in_list(&self, c: usize, v: usize) -> &[u32] {
        self.in_neighbours(c, v)
    }
}

/// Flattened, engine-friendly copy of a structure.
pub(crate) struct Compiled {
    pub n: usize,
    pub ncol: usize,
    pub symmetric: bool,
    pub out: Vec<Vec<Vec<u32>>>,
    pub inn: Vec<Vec<Vec<u32>>>,
    pub loops: Vec<Vec<bool>>,
    /// Union of all colours, loops kept.
    pub flat_out: Vec<Vec<u32>>,
    pub flat_in: Vec<Vec<u32>>,
    /// Underlying simple graph.
    pub und: Vec<Vec<u32>>,
}

impl Compiled {
    pub fn new<S: HomStructure + ?Sized>(s: &S) -> Self {
        let n = s.vertex_count();
        let ncol = s.colour_names().len();
        let symmetric = s.is_symmetric();
        let out: Vec<Vec<Vec<u32>>> = (0..ncol)
            .map(|c| (0..n).map(|v| s.out_list(c, v).to_vec()).collect())
            .collect();
        let inn: Vec<Vec<Vec<u32>>> = (0..ncol)
            .map(|c| (0..n).map(|v| s.in_list(c, v).to_vec()).collect())
            .collect();
        let loops = (0..ncol)
            .map(|c| {
                (0..n)
                    .map(|v| out[c][v].binary_search(&(v as u32)).is_ok())
                    .collect()
            })
            .collect();
        let merge = |lists: &Vec<Vec<Vec<u32>>>, v: usize| {
            let mut l: Vec<u32> = lists.iter().flat_map(|x| x[v].iter().copied()).collect();
            l.sort_unstable();
            l.dedup();
            l
        };
        let flat_out: Vec<Vec<u32>> = (0..n).map(|v| merge(&out, v)).collect();
        let flat_in: Vec<Vec<u32>> = (0..n).map(|v| merge(&inn, v)).collect();
        let und = (0..n)
            .map(|v| {
                let mut l: Vec<u32> = flat_out[v]
                    .iter()
                    .chain(&flat_in[v])
                    .copied()
                    .filter(|&w| w as usize != v)
                    .collect();
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        Compiled {
            n,
            ncol,
            symmetric,
            out,
            inn,
            loops,
            flat_out,
            flat_in,
            und,
        }
    }

    pub fn out_degree(&self, c: usize, v: usize) -> usize {
        self.out[c][v].len()
    }

    pub fn in_degree(&self, c: usize, v: usize) -> usize {
        self.inn[c][v].len()
    }
}

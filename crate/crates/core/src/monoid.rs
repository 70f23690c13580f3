//! Finite monoids, coloured Cayley systems and endomorphism class structure.

use crate::graph::RelSystem;
use crate::homsearch::monoid_iso;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("table must be square and non-empty")]
    NotSquare,
    #[error("entry {value} at ({row}, {col}) out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("identity {0} out of range")]
    BadIdentity(usize),
    #[error("element {0} is not a two-sided identity")]
    NotIdentity(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("generating set is empty")]
    EmptyGenerators,
    #[error("generator {0} out of range")]
    BadGenerator(usize),
    #[error("the given set does not generate the monoid")]
    NotGenerating,
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    table: Vec<Vec<usize>>,
    identity: usize,
    generators: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct MonoidJson {
    n: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<usize>>,
}

impl Monoid {
    /// Validates the table exhaustively (identity law and associativity).
    pub fn new(
        table: Vec<Vec<usize>>,
        identity: usize,
        generators: Option<Vec<usize>>,
    ) -> Result<Self, MonoidError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(MonoidError::NotSquare);
        }
        for (row, r) in table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(MonoidError::EntryOutOfRange { row, col, value });
                }
            }
        }
        if identity >= n {
            return Err(MonoidError::BadIdentity(identity));
        }
        if (0..n).any(|x| table[identity][x] != x || table[x][identity] != x) {
            return Err(MonoidError::NotIdentity(identity));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(MonoidError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let m = Monoid {
            table,
            identity,
            generators: None,
        };
        if let Some(g) = &generators {
            m.check_generating(g)?;
        }
        Ok(Monoid { generators, ..m })
    }

    pub fn cyclic_group(n: usize) -> Monoid {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Monoid::new(table, 0, None).expect("valid group")
    }

    pub fn trivial() -> Monoid {
        Monoid::cyclic_group(1)
    }

    /// `{e, a}` with `aa = a`.
    pub fn two_element_semilattice() -> Monoid {
        Monoid::new(vec![vec![0, 1], vec![1, 1]], 0, None).expect("valid")
    }

    pub fn from_json(text: &str) -> Result<Monoid, MonoidError> {
        let js: MonoidJson =
            serde_json::from_str(text).map_err(|e| MonoidError::Json(e.to_string()))?;
        if js.table.len() != js.n {
            return Err(MonoidError::NotSquare);
        }
        Monoid::new(js.table, js.identity, js.generators)
    }

    pub fn to_json(&self) -> String {
        let js = MonoidJson {
            n: self.n(),
            identity: self.identity,
            table: self.table.clone(),
            generators: self.generators.clone(),
        };
        serde_json::to_string(&js).expect("serializable")
    }

    pub fn n(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.n()).any(|b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.n()).filter(|&a| self.is_unit(a)).collect()
    }

    pub fn is_group(&self) -> bool {
        (0..self.n()).all(|a| self.is_unit(a))
    }

    /// Submonoid generated by `gens` (always contains the identity).
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn check_generating(&self, gens: &[usize]) -> Result<(), MonoidError> {
        if gens.is_empty() {
            return Err(MonoidError::EmptyGenerators);
        }
        if let Some(&g) = gens.iter().find(|&&g| g >= self.n()) {
            return Err(MonoidError::BadGenerator(g));
        }
        if self.generated(gens).len() != self.n() {
            return Err(MonoidError::NotGenerating);
        }
        Ok(())
    }

    /// The stored generators, else every non-identity element (`{e}` if trivial).
    pub fn default_generators(&self) -> Vec<usize> {
        if let Some(g) = &self.generators {
            return g.clone();
        }
        if self.n() == 1 {
            return vec![self.identity];
        }
        (0..self.n()).filter(|&a| a != self.identity).collect()
    }
}

/// Colour name used for generator `c` in Cayley systems.
pub fn generator_colour(c: usize) -> String {
    format!("g{c}")
}

/// Coloured Cayley system: an arc `(u, uc)` of colour `c` for each generator.
pub fn cayley_col(m: &Monoid, gens: &[usize]) -> Result<RelSystem, MonoidError> {
    m.check_generating(gens)?;
    let colours = gens.iter().map(|&c| generator_colour(c)).collect();
    let arcs = gens
        .iter()
        .map(|&c| (0..m.n()).map(|u| (u, m.mul(u, c))).collect())
        .collect();
    Ok(RelSystem::new(m.n(), colours, arcs).expect("valid arcs"))
}

/// Endomorphism classes, automorphism classes and the order on end classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStructure {
    /// End class id per vertex; classes are numbered by smallest member.
    pub end_class: Vec<usize>,
    pub aut_class: Vec<usize>,
    pub end_classes: Vec<Vec<usize>>,
    pub aut_classes: Vec<Vec<usize>>,
    /// `leq[a][b]` iff end class `a` precedes end class `b`.
    pub leq: Vec<Vec<bool>>,
    /// Components of the comparability graph, as sorted end class ids.
    pub components: Vec<Vec<usize>>,
}

fn number_classes(
    n: usize,
    related: impl Fn(usize, usize) -> bool,
) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut id = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if id[v] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let members: Vec<usize> = (v..n)
            .filter(|&w| id[w] == usize::MAX && related(v, w))
            .collect();
        for &w in &members {
            id[w] = k;
        }
        classes.push(members);
    }
    (id, classes)
}

impl ClassStructure {
    /// `reach[v][w]`: some endomorphism maps v to w; `aut_reach` likewise for automorphisms.
    pub fn from_reachability(reach: &[Vec<bool>], aut_reach: &[Vec<bool>]) -> Self {
        let n = reach.len();
        let (end_class, end_classes) = number_classes(n, |v, w| reach[v][w] && reach[w][v]);
        let (aut_class, aut_classes) = number_classes(n, |v, w| aut_reach[v][w]);
        let k = end_classes.len();
        let leq: Vec<Vec<bool>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| reach[end_classes[a][0]][end_classes[b][0]])
                    .collect()
            })
            .collect();
        let mut comp = vec![usize::MAX; k];
        let mut components = Vec::new();
        for a in 0..k {
            if comp[a] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![a];
            comp[a] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for y in 0..k {
                    if comp[y] == usize::MAX && (leq[x][y] || leq[y][x]) {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        ClassStructure {
            end_class,
            aut_class,
            end_classes,
            aut_classes,
            leq,
            components,
        }
    }

    /// Classes of a structure from the full list of its endomorphisms.
    pub fn from_endomorphisms(n: usize, endos: &[Vec<usize>]) -> Self {
        let mut reach = vec![vec![false; n]; n];
        let mut aut_reach = vec![vec![false; n]; n];
        for f in endos {
            let bijective = {
                let mut seen = vec![false; n];
                f.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            };
            for v in 0..n {
                reach[v][f[v]] = true;
                if bijective {
                    aut_reach[v][f[v]] = true;
                }
            }
        }
        ClassStructure::from_reachability(&reach, &aut_reach)
    }

    pub fn precedes(&self, v: usize, w: usize) -> bool {
        self.leq[self.end_class[v]][self.end_class[w]]
    }

    /// End classes in a linear extension of the order (minimal classes first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let k = self.end_classes.len();
        let mut order: Vec<usize> = (0..k).collect();
        let below = |a: usize| (0..k).filter(|&b| self.leq[b][a]).count();
        order.sort_by_key(|&a| (below(a), a));
        order
    }

    /// Automorphism class ids contained in end class `c`.
    pub fn aut_classes_in(&self, c: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = self.end_classes[c]
            .iter()
            .map(|&v| self.aut_class[v])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// Class structure from the algebra: v maps to w iff w lies in Mv.
pub fn class_structure(m: &Monoid) -> ClassStructure {
    let n = m.n();
    let units = m.units();
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|v| (0..n).map(|w| (0..n).any(|x| m.mul(x, v) == w)).collect())
        .collect();
    let aut_reach: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|w| units.iter().any(|&u| m.mul(u, v) == w))
                .collect()
        })
        .collect();
    ClassStructure::from_reachability(&reach, &aut_reach)
}

/// All monoids of order `n` up to isomorphism, identity at index 0.
pub fn all_monoids(n: usize) -> Vec<Monoid> {
    assert!((1..=4).contains(&n), "brute force only for tiny orders");
    let free = (n - 1) * (n - 1);
    let total = n.pow(free as u32);
    let mut found: Vec<Monoid> = Vec::new();
    for code in 0..total {
        let mut table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if a == 0 {
                            b
                        } else if b == 0 {
                            a
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut c = code;
        for a in 1..n {
            for b in 1..n {
                table[a][b] = c % n;
                c /= n;
            }
        }
        let Ok(m) = Monoid::new(table, 0, None) else {
            continue;
        };
        if !found.iter().any(|f| monoid_iso(f, &m).is_some()) {
            found.push(m);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(Monoid::new(vec![], 0, None), Err(MonoidError::NotSquare));
        assert_eq!(
            Monoid::new(vec![vec![0, 1], vec![1, 1]], 1, None),
            Err(MonoidError::NotIdentity(1))
        );
        // 0 identity; 1*1 = 2, 1*2 = 1, 2*1 = 1, 2*2 = 2 is the group Z2-like? check a non-associative one
        let bad = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 1]];
        assert!(matches!(
            Monoid::new(bad, 0, None),
            Err(MonoidError::NotAssociative(..))
        ));
        let m = Monoid::two_element_semilattice();
        assert!(!m.is_group());
        assert_eq!(m.units(), vec![0]);
        assert_eq!(
            Monoid::new(m.table().to_vec(), 0, Some(vec![0])),
            Err(MonoidError::NotGenerating)
        );
    }

    #[test]
    fn json_roundtrip() {
        let m = Monoid::new(vec![vec![0, 1], vec![1, 0]], 0, Some(vec![1])).unwrap();
        let t = m.to_json();
        assert_eq!(
            t,
            r#"{"n":2,"identity":0,"table":[[0,1],[1,0]],"generators":[1]}"#
        );
        assert_eq!(Monoid::from_json(&t).unwrap(), m);
        assert!(Monoid::from_json(r#"{"n":2,"identity":0,"table":[[0,1]]}"#).is_err());
    }

    #[test]
    fn cayley_degrees() {
        let m = Monoid::two_element_semilattice();
        let d = cayley_col(&m, &[1]).unwrap();
        // arcs e->a and the loop a->a
        assert_eq!(d.degrees(), vec![1, 3]);
        assert!(cayley_col(&m, &[]).is_err());
        let z = cayley_col(&Monoid::cyclic_group(2), &[1]).unwrap();
        assert_eq!(z.degrees(), vec![2, 2]);
    }

    #[test]
    fn classes_by_hand() {
        let g = class_structure(&Monoid::cyclic_group(3));
        assert_eq!(g.end_classes.len(), 1);
        assert_eq!(g.aut_classes.len(), 1);
        let s = class_structure(&Monoid::two_element_semilattice());
        assert_eq!(s.end_classes, vec![vec![0], vec![1]]);
        assert!(s.leq[0][1] && !s.leq[1][0]);
        // identity plus two left zeros: xy = x for x, y in {a, b}
        let lz = Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0, None).unwrap();
        let c = class_structure(&lz);
        assert_eq!(c.end_class[1], c.end_class[2]);
    }

    #[test]
    fn monoid_counts() {
        assert_eq!(all_monoids(1).len(), 1);
        assert_eq!(all_monoids(2).len(), 2);
        assert_eq!(all_monoids(3).len(), 7);
    }
}

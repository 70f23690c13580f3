//! Rigidity, automorphisms, endomorphism monoids and monoid isomorphism.

use super::{solve, HomProblem, HomStructure, Mode, SearchConfig};
use crate::monoid::Monoid;
use std::collections::HashMap;

/// Outcome of a budgeted yes/no check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    /// Counterexample: a map from family member `source` to member `target`.
    No {
        source: usize,
        target: usize,
        witness: Vec<usize>,
    },
    /// The budget ran out before the search finished.
    Unknown,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No { .. } => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

fn nonidentity<S: HomStructure + ?Sized>(
    x: &S,
    injective: bool,
    idempotent: bool,
    config: &SearchConfig,
) -> Verdict {
    let mut p = HomProblem::new(x, x, Mode::FindNonIdentity).config(config.clone());
    p.injective = injective;
    p.idempotent = idempotent;
    let out = solve(&p);
    match out.maps.into_iter().next() {
        Some(w) => Verdict::No {
            source: 0,
            target: 0,
            witness: w,
        },
        None if out.complete => Verdict::Yes,
        None => Verdict::Unknown,
    }
}

/// Budgeted rigidity check: is the identity the only endomorphism?
///
/// Some power of a non-injective endomorphism is a non-identity idempotent, so
/// it suffices to rule out non-trivial automorphisms and idempotents.
pub fn rigidity<S: HomStructure + ?Sized>(x: &S, config: &SearchConfig) -> Verdict {
    match asymmetry(x, config) {
        Verdict::Yes => nonidentity(x, false, true, config),
        other => other,
    }
}

/// Budgeted asymmetry check: is the identity the only automorphism?
pub fn asymmetry<S: HomStructure + ?Sized>(x: &S, config: &SearchConfig) -> Verdict {
    nonidentity(x, true, false, config)
}

pub fn is_rigid<S: HomStructure + ?Sized>(x: &S) -> bool {
    rigidity(x, &SearchConfig::default()).holds()
}

pub fn is_asymmetric<S: HomStructure + ?Sized>(x: &S) -> bool {
    asymmetry(x, &SearchConfig::default()).holds()
}

pub fn automorphisms<S: HomStructure + ?Sized>(x: &S) -> Vec<Vec<usize>> {
    solve(&HomProblem::new(x, x, Mode::Enumerate).injective()).maps
}

pub fn endomorphisms<S: HomStructure + ?Sized>(x: &S) -> Vec<Vec<usize>> {
    solve(&HomProblem::new(x, x, Mode::Enumerate)).maps
}

/// True if every endomorphism is a bijection.
pub fn is_core<S: HomStructure + ?Sized>(x: &S) -> bool {
    endomorphisms(x).iter().all(|m| {
        let mut seen = vec![false; m.len()];
        m.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    })
}

/// Each member rigid and no homomorphism between distinct members.
pub fn mutual_rigidity<S: HomStructure>(family: &[S], config: &SearchConfig) -> Verdict {
    let mut unknown = false;
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            let out = if i == j {
                solve(&HomProblem::new(a, a, Mode::FindNonIdentity).config(config.clone()))
            } else {
                solve(&HomProblem::new(a, b, Mode::FindFirst).config(config.clone()))
            };
            if let Some(w) = out.maps.into_iter().next() {
                return Verdict::No {
                    source: i,
                    target: j,
                    witness: w,
                };
            }
            unknown |= !out.complete;
        }
    }
    if unknown {
        Verdict::Unknown
    } else {
        Verdict::Yes
    }
}

pub fn mutually_rigid<S: HomStructure>(family: &[S]) -> bool {
    mutual_rigidity(family, &SearchConfig::default()).holds()
}

/// Endomorphisms with their composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndMonoid {
    /// Vertex maps, sorted lexicographically.
    pub elements: Vec<Vec<usize>>,
    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]` (apply `j` first).
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl EndMonoid {
    pub fn from_maps(mut elements: Vec<Vec<usize>>) -> Option<EndMonoid> {
        elements.sort_unstable();
        elements.dedup();
        let index: HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.as_slice(), i))
            .collect();
        let n = elements.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..n).collect();
        let identity = *index.get(id.as_slice())?;
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                let c: Vec<usize> = b.iter().map(|&v| a[v]).collect();
                row.push(*index.get(c.as_slice())?);
            }
            table.push(row);
        }
        Some(EndMonoid {
            elements,
            table,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_monoid(&self) -> Monoid {
        Monoid::new(self.table.clone(), self.identity, None).expect("composition is associative")
    }
}

pub fn end_monoid<S: HomStructure + ?Sized>(x: &S) -> EndMonoid {
    EndMonoid::from_maps(endomorphisms(x)).expect("endomorphisms are closed under composition")
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Profile {
    identity: bool,
    unit: bool,
    idempotent: bool,
    left_image: usize,
    right_image: usize,
    index: usize,
    period: usize,
}

fn profile(m: &Monoid, a: usize) -> Profile {
    let n = m.n();
    let left: std::collections::BTreeSet<usize> = (0..n).map(|x| m.mul(a, x)).collect();
    let right: std::collections::BTreeSet<usize> = (0..n).map(|x| m.mul(x, a)).collect();
    let mut powers = vec![a];
    let (index, period) = loop {
        let next = m.mul(*powers.last().unwrap(), a);
        if let Some(p) = powers.iter().position(|&x| x == next) {
            break (p, powers.len() - p);
        }
        powers.push(next);
    };
    Profile {
        identity: a == m.identity(),
        unit: m.is_unit(a),
        idempotent: m.mul(a, a) == a,
        left_image: left.len(),
        right_image: right.len(),
        index,
        period,
    }
}

/// A multiplication- and identity-preserving bijection `a -> f[a]`, if any.
pub fn monoid_iso(a: &Monoid, b: &Monoid) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() {
        return None;
    }
    let pa: Vec<Profile> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<Profile> = (0..n).map(|x| profile(b, x)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (pa.iter().filter(|p| **p == pa[x]).count(), x));
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[a.identity()] = b.identity();
    used[b.identity()] = true;
    if extend(a, b, &pa, &pb, &order, &mut f, &mut used) {
        Some(f)
    } else {
        None
    }
}

/// Closes the partial map under products; false on a contradiction.
fn close(a: &Monoid, b: &Monoid, f: &mut [usize], used: &mut [bool], log: &mut Vec<usize>) -> bool {
    let n = a.n();
    loop {
        let mut changed = false;
        for x in 0..n {
            if f[x] == usize::MAX {
                continue;
            }
            for y in 0..n {
                if f[y] == usize::MAX {
                    continue;
                }
                let xy = a.mul(x, y);
                let img = b.mul(f[x], f[y]);
                if f[xy] == usize::MAX {
                    if used[img] {
                        return false;
                    }
                    f[xy] = img;
                    used[img] = true;
                    log.push(xy);
                    changed = true;
                } else if f[xy] != img {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn extend(
    a: &Monoid,
    b: &Monoid,
    pa: &[Profile],
    pb: &[Profile],
    order: &[usize],
    f: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.iter().find(|&&x| f[x] == usize::MAX) else {
        let mut log = Vec::new();
        return close(a, b, f, used, &mut log);
    };
    for y in 0..b.n() {
        if used[y] || pa[x] != pb[y] {
            continue;
        }
        let mut log = vec![x];
        f[x] = y;
        used[y] = true;
        if close(a, b, f, used, &mut log) && extend(a, b, pa, pb, order, f, used) {
            return true;
        }
        for z in log {
            used[f[z]] = false;
            f[z] = usize::MAX;
        }
    }
    false
}

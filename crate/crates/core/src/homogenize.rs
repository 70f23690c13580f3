//! Degree homogenization of coloured Cayley systems.
//!
//! A monoid's Cayley system `D1` is extended in three steps to `D4`, a
//! relational system of constant total degree whose endomorphism monoid is
//! still the monoid. Every stage carries its endomorphisms explicitly: entry
//! `m` of [`StagedSystem::endos`] is the image of left multiplication by `m`.

use crate::graph::{GraphError, RelSystem};
use crate::homsearch::{solve, HomProblem, Mode, SearchConfig};
use crate::monoid::{cayley_col, ClassStructure, Monoid, MonoidError};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Safety bound on step2 rounds per run.
const MAX_ROUNDS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomogenizeError {
    #[error("step1 requires a monoid that is not a group")]
    Group,
    #[error("multiplier for class {0} must be positive")]
    NonPositive(usize),
    #[error("expected {expected} multipliers, got {got}")]
    MultiplierCount { expected: usize, got: usize },
    #[error("class set is not an ideal: {below} lies below {above} but is missing")]
    NotIdeal { below: usize, above: usize },
    #[error("end class {0} is out of range")]
    BadClass(usize),
    #[error("degree precondition violated: {0}")]
    Degree(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    D1,
    D2,
    D3,
    D4,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::D1 => "D1",
            Stage::D2 => "D2",
            Stage::D3 => "D3",
            Stage::D4 => "D4",
        };
        f.write_str(s)
    }
}

/// One system in the homogenization sequence.
#[derive(Clone, Debug)]
pub struct StagedSystem {
    pub stage: Stage,
    pub system: RelSystem,
    /// Endomorphisms indexed by monoid element; each extends the previous stage's map.
    pub endos: Vec<Vec<usize>>,
    pub classes: ClassStructure,
    pub degrees: Vec<usize>,
    /// Step2 rounds applied so far.
    pub rounds: usize,
}

impl StagedSystem {
    fn new(stage: Stage, system: RelSystem, endos: Vec<Vec<usize>>, rounds: usize) -> Self {
        let classes = ClassStructure::from_endomorphisms(system.n(), &endos);
        let degrees = system.degrees();
        StagedSystem {
            stage,
            system,
            endos,
            classes,
            degrees,
            rounds,
        }
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    /// Degree of end class `c` (assumes it is constant on the class).
    pub fn class_degree(&self, c: usize) -> usize {
        self.degrees[self.classes.end_classes[c][0]]
    }

    pub fn is_degree_constant(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }

    pub fn constant_on_end_classes(&self) -> bool {
        self.classes
            .end_classes
            .iter()
            .all(|c| c.iter().all(|&v| self.degrees[v] == self.degrees[c[0]]))
    }

    /// Vertices covered by poset component `k`.
    pub fn component_vertices(&self, k: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.classes.components[k]
            .iter()
            .flat_map(|&c| self.classes.end_classes[c].iter().copied())
            .collect();
        vs.sort_unstable();
        vs
    }

    pub fn constant_on_component(&self, k: usize) -> bool {
        let vs = self.component_vertices(k);
        vs.iter().all(|&v| self.degrees[v] == self.degrees[vs[0]])
    }

    /// `deg x <= deg y` whenever the class of x precedes the class of y.
    pub fn has_increasing_degrees(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| {
            (0..n).all(|y| !self.classes.precedes(x, y) || self.degrees[x] <= self.degrees[y])
        })
    }

    /// Degree histogram as sorted (degree, count) pairs.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for &d in &self.degrees {
            *h.entry(d).or_insert(0usize) += 1;
        }
        h.into_iter().collect()
    }

    fn is_aut(&self, m: usize) -> bool {
        is_bijective(&self.endos[m])
    }
}

fn is_bijective(f: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

fn colour_lists(s: &RelSystem) -> (Vec<String>, Vec<Vec<(usize, usize)>>) {
    (
        s.colours().to_vec(),
        (0..s.colour_count()).map(|c| s.arcs(c).collect()).collect(),
    )
}

/// The coloured Cayley system of `m` on its default generators.
pub fn stage_d1(m: &Monoid) -> Result<StagedSystem, HomogenizeError> {
    let gens = m.default_generators();
    let system = cayley_col(m, &gens)?;
    let endos = (0..m.n())
        .map(|a| (0..m.n()).map(|x| m.mul(a, x)).collect())
        .collect();
    Ok(StagedSystem::new(Stage::D1, system, endos, 0))
}

fn unit_class(d1: &StagedSystem, m: &Monoid) -> usize {
    d1.classes.aut_class[m.identity()]
}

/// D2 degrees of the D1 vertices predicted by the step1 degree formula.
pub fn step1_degree_formula(d1: &StagedSystem, m: &Monoid, k: &[usize]) -> Vec<usize> {
    let cs = &d1.classes;
    let e = unit_class(d1, m);
    let n = d1.n();
    let per_vertex: usize = (0..n)
        .filter(|&w| cs.aut_class[w] != e)
        .map(|w| k[cs.aut_class[w]])
        .sum();
    let per_class: usize = k.iter().sum();
    (0..n)
        .map(|v| {
            if cs.aut_class[v] == e {
                return d1.degrees[v] + per_vertex;
            }
            let below: usize = (0..cs.aut_classes.len())
                .filter(|&a| cs.precedes(cs.aut_classes[a][0], v))
                .map(|a| k[a])
                .sum();
            d1.degrees[v] + per_class + below + k[cs.aut_class[v]]
        })
        .collect()
}

/// Multipliers per automorphism class making D2 degrees class-constant and increasing.
pub fn choose_step1_k(d1: &StagedSystem, m: &Monoid) -> Vec<usize> {
    let cs = &d1.classes;
    let e = unit_class(d1, m);
    let ec = cs.end_class[m.identity()];
    let mut k = vec![1usize; cs.aut_classes.len()];
    for (c, members) in cs.end_classes.iter().enumerate() {
        if c == ec {
            continue;
        }
        let top = members.iter().map(|&v| d1.degrees[v]).max().unwrap_or(0);
        for a in cs.aut_classes_in(c) {
            k[a] = top - d1.degrees[cs.aut_classes[a][0]] + 1;
        }
    }
    loop {
        let mut changed = false;
        for y in cs.linear_extension() {
            if y == ec {
                continue;
            }
            let deg = step1_degree_formula(d1, m, &k);
            let dy = deg[cs.end_classes[y][0]];
            let deficit = (0..cs.end_classes.len())
                .filter(|&x| x != y && x != ec && cs.leq[x][y])
                .map(|x| deg[cs.end_classes[x][0]].saturating_sub(dy))
                .max()
                .unwrap_or(0);
            if deficit > 0 {
                for a in cs.aut_classes_in(y) {
                    k[a] += deficit;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Each unit of k_e adds 2 to every non-unit and nothing to the units.
    k[e] = 0;
    let deg = step1_degree_formula(d1, m, &k);
    let unit_deg = deg[m.identity()];
    let need = (0..d1.n())
        .filter(|&v| cs.aut_class[v] != e)
        .map(|v| unit_deg.saturating_sub(deg[v]).div_ceil(2))
        .max()
        .unwrap_or(0);
    k[e] = need.max((cs.aut_classes[e].len() + 1).div_ceil(2)).max(1);
    k
}

/// Step 1: attach private vertex sets to non-units and a sink `z`.
///
/// Layout: the D1 vertices, then the sets `P_v` in vertex order, then `z`.
pub fn step1(d1: &StagedSystem, m: &Monoid, k: &[usize]) -> Result<StagedSystem, HomogenizeError> {
    if m.is_group() {
        return Err(HomogenizeError::Group);
    }
    let cs = &d1.classes;
    if k.len() != cs.aut_classes.len() {
        return Err(HomogenizeError::MultiplierCount {
            expected: cs.aut_classes.len(),
            got: k.len(),
        });
    }
    if let Some(a) = k.iter().position(|&x| x == 0) {
        return Err(HomogenizeError::NonPositive(a));
    }
    let n = d1.n();
    let e = unit_class(d1, m);
    let is_unit = |v: usize| cs.aut_class[v] == e;
    let mut start = vec![usize::MAX; n];
    let mut next = n;
    for v in 0..n {
        if !is_unit(v) {
            start[v] = next;
            next += k[cs.aut_class[v]];
        }
    }
    let z = next;
    let total = z + 1;

    let (mut colours, mut arcs) = colour_lists(&d1.system);
    for (a, members) in cs.aut_classes.iter().enumerate() {
        for i in 0..k[a] {
            let mut plain = Vec::new();
            let mut primed = Vec::new();
            if a == e {
                plain.extend((0..n).filter(|&v| !is_unit(v)).map(|v| (v, z)));
                primed = plain.clone();
            } else {
                let w = members[0];
                plain.extend((0..n).filter(|&v| cs.precedes(w, v)).map(|v| (v, z)));
                plain.extend(members.iter().map(|&v| (v, start[v] + i)));
                primed.extend((0..n).filter(|&v| !is_unit(v)).map(|v| (v, z)));
                for &v in members {
                    primed.extend((0..n).filter(|&u| is_unit(u)).map(|u| (u, start[v] + i)));
                }
            }
            colours.push(format!("s1:a{a}:{}", i + 1));
            arcs.push(plain);
            colours.push(format!("s1:a{a}':{}", i + 1));
            arcs.push(primed);
        }
    }
    let system = RelSystem::new(total, colours, arcs)?;

    let endos = (0..d1.endos.len())
        .map(|mi| {
            let phi = &d1.endos[mi];
            let aut = d1.is_aut(mi);
            let mut f = phi.clone();
            f.resize(total, z);
            if aut {
                for v in (0..n).filter(|&v| !is_unit(v)) {
                    for i in 0..k[cs.aut_class[v]] {
                        f[start[v] + i] = start[phi[v]] + i;
                    }
                }
            }
            f
        })
        .collect();
    let out = StagedSystem::new(Stage::D2, system, endos, 0);

    let predicted = step1_degree_formula(d1, m, k);
    if out.degrees[..n] != predicted[..] {
        return Err(HomogenizeError::Invariant(
            "step1 degrees differ from the formula".into(),
        ));
    }
    let fresh = cs.aut_classes[e].len() + 1;
    if out.degrees[n..z].iter().any(|&d| d != fresh) {
        return Err(HomogenizeError::Invariant(
            "step1 new vertices have the wrong degree".into(),
        ));
    }
    if out.degrees[z] < 2 * k[e] {
        return Err(HomogenizeError::Invariant(
            "step1 sink degree below 2k_e".into(),
        ));
    }
    Ok(out)
}

fn check_ideal(cs: &ClassStructure, ideal: &[usize]) -> Result<BTreeSet<usize>, HomogenizeError> {
    let set: BTreeSet<usize> = ideal.iter().copied().collect();
    for &a in &set {
        if a >= cs.end_classes.len() {
            return Err(HomogenizeError::BadClass(a));
        }
        if let Some(b) = (0..cs.end_classes.len()).find(|&b| cs.leq[b][a] && !set.contains(&b)) {
            return Err(HomogenizeError::NotIdeal { below: b, above: a });
        }
    }
    Ok(set)
}

/// Step 2: raise the degrees of the ideal `ideal` (end class ids) by `2k`, all others by `k + 1`.
///
/// `tag` namespaces the new colours so that repeated rounds compose.
pub fn step2(
    d: &StagedSystem,
    ideal: &[usize],
    k: usize,
    tag: usize,
) -> Result<StagedSystem, HomogenizeError> {
    if k == 0 {
        return Err(HomogenizeError::NonPositive(0));
    }
    let cs = &d.classes;
    let set = check_ideal(cs, ideal)?;
    if !d.constant_on_end_classes() {
        return Err(HomogenizeError::Degree(
            "degree not constant on an end class".into(),
        ));
    }
    let ideal_degrees: BTreeSet<usize> = set.iter().map(|&c| d.class_degree(c)).collect();
    if ideal_degrees.len() > 1 {
        return Err(HomogenizeError::Degree(
            "degree not constant across the ideal".into(),
        ));
    }
    let n = d.n();
    let inside = |v: usize| set.contains(&cs.end_class[v]);
    let mut start = Vec::with_capacity(n);
    let mut size = Vec::with_capacity(n);
    let mut next = n;
    for v in 0..n {
        let s = if inside(v) { k } else { 1 };
        start.push(next);
        size.push(s);
        next += s;
    }
    let total = next;

    let (mut colours, mut arcs) = colour_lists(&d.system);
    let (start, size) = (&start, &size);
    colours.push(format!("s2.{tag}:0"));
    arcs.push(
        (0..n)
            .flat_map(|v| (0..size[v]).map(move |i| (v, start[v] + i)))
            .collect(),
    );
    for c in 1..=k {
        colours.push(format!("s2.{tag}:{c}"));
        arcs.push(
            (0..n)
                .map(|v| (v, start[v] + if inside(v) { c - 1 } else { 0 }))
                .collect(),
        );
    }
    colours.push(format!("s2.{tag}:p"));
    arcs.push(
        (0..n)
            .flat_map(|v| {
                (0..size[v])
                    .flat_map(move |i| (i..size[v]).map(move |j| (start[v] + i, start[v] + j)))
            })
            .collect(),
    );
    let system = RelSystem::new(total, colours, arcs)?;

    let endos = d
        .endos
        .iter()
        .map(|phi| {
            let mut f = phi.clone();
            f.resize(total, 0);
            for v in 0..n {
                let w = phi[v];
                for i in 0..size[v] {
                    f[start[v] + i] = start[w] + if inside(w) { i } else { 0 };
                }
            }
            f
        })
        .collect();
    let out = StagedSystem::new(d.stage.max(Stage::D2), system, endos, d.rounds + 1);

    for v in 0..n {
        let want = d.degrees[v] + if inside(v) { 2 * k } else { k + 1 };
        if out.degrees[v] != want {
            return Err(HomogenizeError::Invariant(format!(
                "step2 degree of vertex {v}"
            )));
        }
    }
    if out.degrees[n..].iter().any(|&x| x != k + 3) {
        return Err(HomogenizeError::Invariant(
            "step2 new vertices differ in degree".into(),
        ));
    }
    Ok(out)
}

/// Step 3: double every vertex and join `v` to its copy in colours `deg v ..= Δ`.
pub fn step3(d: &StagedSystem) -> Result<StagedSystem, HomogenizeError> {
    for k in 0..d.classes.components.len() {
        if !d.constant_on_component(k) {
            return Err(HomogenizeError::Degree(format!(
                "degree not constant on poset component {k}"
            )));
        }
    }
    let n = d.n();
    let lo = d.degrees.iter().copied().min().unwrap_or(0);
    let hi = d.degrees.iter().copied().max().unwrap_or(0);
    let (mut colours, mut arcs) = colour_lists(&d.system);
    for list in &mut arcs {
        let copies: Vec<(usize, usize)> = list.iter().map(|&(u, v)| (u + n, v + n)).collect();
        list.extend(copies);
    }
    for c in lo..=hi {
        colours.push(format!("s3:deg:{c}"));
        arcs.push(
            (0..n)
                .filter(|&v| d.degrees[v] <= c)
                .map(|v| (v, v + n))
                .collect(),
        );
    }
    let system = RelSystem::new(2 * n, colours, arcs)?;
    let endos = d
        .endos
        .iter()
        .map(|phi| {
            phi.iter()
                .copied()
                .chain(phi.iter().map(|&w| w + n))
                .collect()
        })
        .collect();
    let out = StagedSystem::new(Stage::D4, system, endos, d.rounds);
    if !out.degrees.iter().all(|&x| x == hi + 1) {
        return Err(HomogenizeError::Invariant(
            "step3 output is not degree-constant".into(),
        ));
    }
    Ok(out)
}

/// One step2 round of the driver; `None` once every component is degree-constant.
fn driver_round(cur: &StagedSystem) -> Result<Option<StagedSystem>, HomogenizeError> {
    let cs = &cur.classes;
    let Some(k0) = (0..cs.components.len()).find(|&k| !cur.constant_on_component(k)) else {
        return Ok(None);
    };
    let comp = &cs.components[k0];
    let low = comp
        .iter()
        .map(|&c| cur.class_degree(c))
        .min()
        .expect("non-empty component");
    let ideal: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&c| cur.class_degree(c) == low)
        .collect();
    let in_ideal = |c: usize| ideal.contains(&c);
    let pi = comp
        .iter()
        .copied()
        .filter(|&c| !in_ideal(c))
        .filter(|&c| (0..cs.end_classes.len()).all(|b| b == c || !cs.leq[b][c] || in_ideal(b)))
        .min_by_key(|&c| (cur.class_degree(c), c))
        .ok_or_else(|| {
            HomogenizeError::Invariant("no class extends the minimizing ideal".into())
        })?;
    let k = cur.class_degree(pi) - low + 1;
    let next = step2(cur, &ideal, k, cur.rounds + 1)?;

    let old_n = cur.n();
    let breach = |what: &str| {
        Err(HomogenizeError::Invariant(format!(
            "round {}: {what}",
            cur.rounds + 1
        )))
    };
    if !next.constant_on_end_classes() || !next.has_increasing_degrees() {
        return breach("(a) increasing degree property lost");
    }
    let new_comp_of = |v: usize| {
        next.classes
            .components
            .iter()
            .position(|k| k.contains(&next.classes.end_class[v]))
    };
    for k in 0..cs.components.len() {
        let old_vs = cur.component_vertices(k);
        let Some(nk) = new_comp_of(old_vs[0]) else {
            return breach("(b) vertex without component");
        };
        if next.component_vertices(nk) != old_vs {
            return breach("(b) component changed");
        }
        if cur.constant_on_component(k) && !next.constant_on_component(nk) {
            return breach("(c) constant component became non-constant");
        }
    }
    for nk in 0..next.classes.components.len() {
        let vs = next.component_vertices(nk);
        if vs[0] >= old_n && !next.constant_on_component(nk) {
            return breach("(d) new component not constant");
        }
    }
    let k0_vs = cur.component_vertices(k0);
    let new_low = k0_vs.iter().map(|&v| next.degrees[v]).min().unwrap_or(0);
    let grown = ideal
        .iter()
        .chain(std::iter::once(&pi))
        .all(|&c| next.degrees[cs.end_classes[c][0]] == new_low);
    if !grown {
        return breach("(e) minimizing set did not grow");
    }
    Ok(Some(next))
}

/// All stages from D1 to D4; a group stops at D1.
pub fn homogenize_trace(m: &Monoid) -> Result<Vec<StagedSystem>, HomogenizeError> {
    let d1 = stage_d1(m)?;
    if m.is_group() {
        if !d1.is_degree_constant() {
            return Err(HomogenizeError::Invariant(
                "Cayley system of a group is not regular".into(),
            ));
        }
        return Ok(vec![d1]);
    }
    let k = choose_step1_k(&d1, m);
    let d2 = step1(&d1, m, &k)?;
    if !d2.constant_on_end_classes() || !d2.has_increasing_degrees() {
        return Err(HomogenizeError::Invariant(
            "step1 multipliers do not give increasing class degrees".into(),
        ));
    }
    let mut cur = d2.clone();
    for _ in 0..MAX_ROUNDS {
        match driver_round(&cur)? {
            Some(next) => cur = next,
            None => {
                cur.stage = Stage::D3;
                let d4 = step3(&cur)?;
                return Ok(vec![d1, d2, cur, d4]);
            }
        }
    }
    Err(HomogenizeError::Invariant(
        "step2 driver did not terminate".into(),
    ))
}

/// The final degree-constant system.
pub fn homogenize(m: &Monoid) -> Result<StagedSystem, HomogenizeError> {
    Ok(homogenize_trace(m)?.pop().expect("at least one stage"))
}

/// Engine comparison of a stage's transported endomorphisms with its full End.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    pub stage: Stage,
    pub transported: usize,
    pub engine: usize,
    pub complete: bool,
    pub matches: bool,
}

pub fn verify_stage(s: &StagedSystem, config: &SearchConfig) -> StageCheck {
    let out = solve(&HomProblem::new(&s.system, &s.system, Mode::Enumerate).config(config.clone()));
    let mut ours = s.endos.clone();
    ours.sort_unstable();
    ours.dedup();
    StageCheck {
        stage: s.stage,
        transported: ours.len(),
        engine: out.maps.len(),
        complete: out.complete,
        matches: out.complete && out.maps == ours,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homsearch::{end_monoid, monoid_iso};
    use crate::monoid::all_monoids;

    #[test]
    fn semilattice_by_hand() {
        let m = Monoid::two_element_semilattice();
        let d1 = stage_d1(&m).unwrap();
        let d2 = step1(&d1, &m, &[1, 1]).unwrap();
        assert_eq!(d2.n(), 4);
        // e -> a, loop at a; then a_1 and z
        assert_eq!(d2.degrees[2], 2);
        assert_eq!(verify_stage(&d2, &SearchConfig::default()).engine, 2);
        assert!(matches!(
            step1(&d1, &Monoid::cyclic_group(2), &[1]),
            Err(HomogenizeError::Group)
        ));
    }

    #[test]
    fn groups_stop_at_d1() {
        let z2 = homogenize_trace(&Monoid::cyclic_group(2)).unwrap();
        assert_eq!(z2.len(), 1);
        assert_eq!(z2[0].degrees, vec![2, 2]);
        let t = homogenize(&Monoid::trivial()).unwrap();
        assert_eq!((t.stage, t.n(), t.degrees.clone()), (Stage::D1, 1, vec![2]));
    }

    #[test]
    fn step2_degree_law() {
        let z3 = stage_d1(&Monoid::cyclic_group(3)).unwrap();
        let up = step2(&z3, &[0], 2, 1).unwrap();
        assert!((0..3).all(|v| up.degrees[v] == z3.degrees[v] + 4));
        assert_eq!(up.n(), 3 + 3 * 2);
        let p = up.system.colour_index("s2.1:p").unwrap();
        assert!(
            up.system.has_arc(p, 3, 3) && up.system.has_arc(p, 3, 4) && !up.system.has_arc(p, 4, 3)
        );

        let m = Monoid::two_element_semilattice();
        let d2 = step1(&stage_d1(&m).unwrap(), &m, &[1, 1]).unwrap();
        let bottom = d2.classes.end_class[m.identity()];
        let next = step2(&d2, &[bottom], 3, 1).unwrap();
        for v in 0..d2.n() {
            let gain = if v == m.identity() { 6 } else { 4 };
            assert_eq!(next.degrees[v], d2.degrees[v] + gain);
        }
        assert_eq!(next.n(), d2.n() + 3 + (d2.n() - 1));
        let top = d2.classes.end_class[d2.n() - 1];
        assert!(matches!(
            step2(&d2, &[top], 1, 1),
            Err(HomogenizeError::NotIdeal { .. })
        ));
    }

    #[test]
    fn step3_on_regular_input() {
        let d1 = stage_d1(&Monoid::cyclic_group(3)).unwrap();
        let d4 = step3(&d1).unwrap();
        assert_eq!(d4.n(), 2 * d1.n());
        let extra: Vec<&String> = d4
            .system
            .colours()
            .iter()
            .filter(|c| c.starts_with("s3:"))
            .collect();
        assert_eq!(extra, vec!["s3:deg:4"]);
        assert!(d4.degrees.iter().all(|&x| x == 5));
    }

    #[test]
    fn small_monoids_end_to_end() {
        let config = SearchConfig::default();
        for order in 1..=3 {
            for m in all_monoids(order) {
                let stages = homogenize_trace(&m).unwrap();
                for s in &stages {
                    let check = verify_stage(s, &config);
                    assert!(check.matches, "order {order}, stage {}: {check:?}", s.stage);
                    assert_eq!(check.engine, m.n());
                }
                let last = stages.last().unwrap();
                assert!(last.is_degree_constant());
                let end = end_monoid(&last.system).to_monoid();
                assert!(monoid_iso(&end, &m).is_some());
            }
        }
    }
}

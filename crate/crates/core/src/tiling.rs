//! Recursive g-tiling graphs, the choice of the set U, and tiling factors.

use crate::graph::{Graph, GraphError};
use crate::homsearch::{automorphisms, rigidity, SearchConfig, Verdict};
use crate::metrics::{
    bfs, dist, edge_on_short_odd_cycle, girth, is_connected, odd_girth, vertex_without_cycle,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("g must be odd and at least 7, got {0}")]
    BadGirth(usize),
    #[error("generation index must be at least 1")]
    BadIndex,
    #[error("h must be odd and at least (g+1)/2, got {0}")]
    BadH(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("U is not valid for this tiling graph: {0}")]
    BadU(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A plane g-tiling graph with its border cycle, bounded faces and antipodal involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingGraph {
    pub g: usize,
    pub i: usize,
    pub graph: Graph,
    /// The unbounded face, as a circular vertex sequence.
    pub border: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
    pub antipode: Vec<usize>,
    /// Generation in which each vertex was created.
    pub born: Vec<usize>,
}

fn check_g(g: usize) -> Result<(), TilingError> {
    if g < 7 || g.is_multiple_of(2) {
        return Err(TilingError::BadGirth(g));
    }
    Ok(())
}

/// Two g-gons sharing an edge.
pub fn base_tiling(g: usize) -> Result<TilingGraph, TilingError> {
    check_g(g)?;
    // 0, 1 share the edge; 2..g-1 is the first path, g..2g-3 the second.
    let p = |k: usize| 1 + k;
    let q = |k: usize| g - 1 + k;
    let mut edges = vec![(0, 1), (0, p(1)), (p(g - 2), 1), (0, q(1)), (q(g - 2), 1)];
    for k in 1..g - 2 {
        edges.push((p(k), p(k + 1)));
        edges.push((q(k), q(k + 1)));
    }
    let n = 2 * g - 2;
    let mut border = vec![0];
    border.extend((1..=g - 2).map(p));
    border.push(1);
    border.extend((1..=g - 2).rev().map(q));
    let face = |r: &dyn Fn(usize) -> usize| {
        let mut f = vec![0];
        f.extend((1..=g - 2).map(r));
        f.push(1);
        f
    };
    let faces = vec![face(&p), face(&q)];
    let mut antipode = vec![0; n];
    for (k, &v) in border.iter().enumerate() {
        antipode[v] = border[(k + n / 2) % n];
    }
    Ok(TilingGraph {
        g,
        i: 1,
        graph: Graph::from_edges(n, edges)?,
        border,
        faces,
        antipode,
        born: vec![1; n],
    })
}

/// One application of Steps 1 to 3.
pub fn tiling_step(t: &TilingGraph) -> Result<TilingGraph, TilingError> {
    let g = t.g;
    let deg = |v: usize| t.graph.degree(v);
    let b = &t.border;
    let len = b.len();
    let start = (0..len)
        .find(|&k| deg(b[k]) == 2 && deg(b[(k + len - 1) % len]) == 3)
        .ok_or_else(|| TilingError::Invariant("border has no degree-3 vertex".into()))?;
    let seq: Vec<usize> = (0..len).map(|k| b[(start + k) % len]).collect();
    // Alternating runs of degree-2 vertices and gaps of degree-3 vertices.
    let mut segments: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for &v in &seq {
        let two = deg(v) == 2;
        match segments.last_mut() {
            Some((_, gap)) if !two => gap.push(v),
            Some((run, gap)) if gap.is_empty() => run.push(v),
            _ => segments.push((vec![v], Vec::new())),
        }
    }
    let k_count = segments.len();
    if k_count < 2 && segments[0].0.len() < 2 {
        return Err(TilingError::Invariant("border too short to extend".into()));
    }
    let mut n = t.graph.n();
    let mut edges: Vec<(usize, usize)> = t.graph.edges().collect();
    let mut fresh = || {
        n += 1;
        n - 1
    };
    let mut first = Vec::with_capacity(k_count);
    let mut last = Vec::with_capacity(k_count);
    for (run, _) in &segments {
        let a = fresh();
        edges.push((run[0], a));
        let z = if run.len() >= 2 {
            let z = fresh();
            edges.push((*run.last().unwrap(), z));
            z
        } else {
            a
        };
        first.push(a);
        last.push(z);
    }
    let mut faces = t.faces.clone();
    let mut subdivisions = Vec::with_capacity(k_count);
    for k in 0..k_count {
        let next = (k + 1) % k_count;
        let gap = &segments[k].1;
        let s = g.checked_sub(gap.len() + 4).ok_or_else(|| {
            TilingError::Invariant(format!(
                "gap of {} degree-3 vertices cannot close a {g}-face",
                gap.len()
            ))
        })?;
        let path: Vec<usize> = (0..s).map(|_| fresh()).collect();
        let mut prev = last[k];
        for &v in &path {
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, first[next]));
        let mut face = vec![last[k], *segments[k].0.last().unwrap()];
        face.extend(gap);
        face.push(segments[next].0[0]);
        face.push(first[next]);
        face.extend(path.iter().rev());
        faces.push(face);
        subdivisions.push(path);
    }
    let mut border = Vec::new();
    for k in 0..k_count {
        let run = &segments[k].0;
        border.push(first[k]);
        if run.len() >= 2 {
            border.extend(run);
            border.push(last[k]);
        }
        border.extend(&subdivisions[k]);
    }
    if border.len() % 2 == 1 {
        return Err(TilingError::Invariant(format!(
            "border of odd length {}",
            border.len()
        )));
    }
    let mut antipode = t.antipode.clone();
    antipode.resize(n, usize::MAX);
    let half = border.len() / 2;
    for (k, &v) in border.iter().enumerate() {
        let w = border[(k + half) % border.len()];
        if v < t.graph.n() && antipode[v] != w {
            return Err(TilingError::Invariant(format!(
                "antipode of {v} is {} but border rotation gives {w}",
                antipode[v]
            )));
        }
        antipode[v] = w;
    }
    let mut born = t.born.clone();
    born.resize(n, t.i + 1);
    let graph = Graph::from_edges(n, edges)?;
    Ok(TilingGraph {
        g,
        i: t.i + 1,
        graph,
        border,
        faces,
        antipode,
        born,
    })
}

/// G(g, i), checking the invariants after every step.
pub fn build_tiling(g: usize, i: usize) -> Result<TilingGraph, TilingError> {
    if i == 0 {
        return Err(TilingError::BadIndex);
    }
    let mut t = base_tiling(g)?;
    check_invariants(&t)?;
    while t.i < i {
        t = tiling_step(&t)?;
        check_invariants(&t)?;
    }
    Ok(t)
}

fn is_cycle_in(g: &Graph, cyc: &[usize]) -> bool {
    let mut seen = cyc.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == cyc.len() && (0..cyc.len()).all(|k| g.has_edge(cyc[k], cyc[(k + 1) % cyc.len()]))
}

/// Number of cycles of length exactly `len` (each counted once).
pub fn count_cycles(g: &Graph, len: usize) -> usize {
    fn walk(g: &Graph, root: usize, v: usize, depth: usize, len: usize, on: &mut [bool]) -> usize {
        let mut total = 0;
        for &w in g.neighbours(v) {
            let w = w as usize;
            if w == root && depth == len {
                total += 1;
            } else if w > root && !on[w] && depth < len {
                on[w] = true;
                total += walk(g, root, w, depth + 1, len, on);
                on[w] = false;
            }
        }
        total
    }
    let mut on = vec![false; g.n()];
    let mut total = 0;
    for r in 0..g.n() {
        on[r] = true;
        total += walk(g, r, r, 1, len, &mut on);
        on[r] = false;
    }
    total / 2
}

/// Checks every structural invariant of a tiling graph.
pub fn check_invariants(t: &TilingGraph) -> Result<(), TilingError> {
    let fail = |m: String| Err(TilingError::Invariant(m));
    let g = &t.graph;
    let n = g.n();
    for (k, f) in t.faces.iter().enumerate() {
        if f.len() != t.g || !is_cycle_in(g, f) {
            return fail(format!("face {k} is not a {}-cycle: {f:?}", t.g));
        }
    }
    if t.border.len() % 2 == 1 || !is_cycle_in(g, &t.border) {
        return fail("border is not an even cycle".into());
    }
    let mut on_border = vec![false; n];
    for &v in &t.border {
        on_border[v] = true;
    }
    for v in 0..n {
        let d = g.degree(v);
        if !(d == 3 || on_border[v] && d == 2) {
            return fail(format!(
                "vertex {v} has degree {d} (border: {})",
                on_border[v]
            ));
        }
    }
    let half = t.border.len() / 2;
    for (k, &v) in t.border.iter().enumerate() {
        if t.antipode[v] != t.border[(k + half) % t.border.len()] {
            return fail(format!(
                "antipode of border vertex {v} is not its rotation by half"
            ));
        }
    }
    if (0..n).any(|v| t.antipode[t.antipode[v]] != v) {
        return fail("antipode is not an involution".into());
    }
    if g.edges()
        .any(|(a, b)| !g.has_edge(t.antipode[a], t.antipode[b]))
    {
        return fail("antipode is not an automorphism".into());
    }
    // Face and edge double count.
    let n2 = (0..n).filter(|&v| g.degree(v) == 2).count();
    if 3 * n - n2 != t.faces.len() * t.g + t.border.len() || 3 * n - n2 != 2 * g.edge_count() {
        return fail("face/edge double count fails".into());
    }
    if n + t.faces.len() + 1 != g.edge_count() + 2 {
        return fail("Euler's formula fails".into());
    }
    if girth(g) != Some(t.g) || count_cycles(g, t.g) != t.faces.len() {
        return fail("shortest cycles are not exactly the bounded faces".into());
    }
    for &v in &t.border {
        if g.degree(v) == 3 {
            let ok = g.neighbours(v).iter().any(|&w| {
                g.degree(w as usize) == 2
                    && g.neighbours(w as usize)
                        .iter()
                        .any(|&x| x as usize != v && g.degree(x as usize) == 2)
            });
            if !ok {
                return fail(format!("border vertex {v} of degree 3 has no degree-2 neighbour with a degree-2 neighbour"));
            }
        }
    }
    Ok(())
}

pub fn is_border(t: &TilingGraph) -> Vec<bool> {
    let mut on = vec![false; t.graph.n()];
    for &v in &t.border {
        on[v] = true;
    }
    on
}

/// Smallest odd integer at least (g+1)/2.
pub fn default_h(g: usize) -> usize {
    let h = g.div_ceil(2);
    if h.is_multiple_of(2) {
        h + 1
    } else {
        h
    }
}

/// Distance table among border vertices of degree 2, truncated at `g`.
struct Near {
    cands: Vec<usize>,
    index: Vec<usize>,
    close: Vec<Vec<bool>>,
}

fn near_table(t: &TilingGraph) -> Near {
    let g = &t.graph;
    let mut cands: Vec<usize> = t
        .border
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == 2)
        .collect();
    cands.sort_unstable();
    let mut index = vec![usize::MAX; g.n()];
    for (k, &v) in cands.iter().enumerate() {
        index[v] = k;
    }
    let close = cands
        .iter()
        .map(|&v| {
            let d = crate::metrics::bfs_raw(g, v, t.g as u32);
            cands.iter().map(|&w| (d[w] as usize) < t.g).collect()
        })
        .collect();
    Near {
        cands,
        index,
        close,
    }
}

/// Automorphisms of the tiling graph other than the identity.
fn nontrivial_automorphisms(t: &TilingGraph) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..t.graph.n()).collect();
    automorphisms(&t.graph)
        .into_iter()
        .filter(|a| *a != id)
        .collect()
}

/// Finds `U = (u_0, .., u_{2h-1})` of degree-2 border vertices, `u_{i+h} = -u_i`,
/// pairwise at distance at least g, such that no non-identity automorphism fixes `{u_0, u_1}`.
pub fn find_u(t: &TilingGraph, h: usize) -> Result<Option<Vec<usize>>, TilingError> {
    if h.is_multiple_of(2) || 2 * h < t.g + 1 {
        return Err(TilingError::BadH(h));
    }
    let near = near_table(t);
    let auts = nontrivial_automorphisms(t);
    let m = near.cands.len();
    let anti = |k: usize| near.index[t.antipode[near.cands[k]]];
    let ok_with = |chosen: &[usize], k: usize| {
        let a = anti(k);
        a != usize::MAX
            && !near.close[k][a]
            && chosen
                .iter()
                .all(|&c| !near.close[k][c] && !near.close[a][c] && c != k && c != a)
    };
    // chosen holds u_0..u_j followed by their antipodes implicitly.
    fn extend(
        chosen: &mut Vec<usize>,
        h: usize,
        m: usize,
        ok: &dyn Fn(&[usize], usize) -> bool,
        pair_ok: &dyn Fn(usize, usize) -> bool,
        anti: &dyn Fn(usize) -> usize,
    ) -> bool {
        if chosen.len() == h {
            return true;
        }
        let lo = if chosen.len() >= 3 {
            chosen[chosen.len() - 1] + 1
        } else {
            0
        };
        for k in lo..m {
            let mut all: Vec<usize> = chosen.clone();
            all.extend(chosen.iter().map(|&c| anti(c)));
            if !ok(&all, k) {
                continue;
            }
            if chosen.len() == 1 && !pair_ok(chosen[0], k) {
                continue;
            }
            chosen.push(k);
            if extend(chosen, h, m, ok, pair_ok, anti) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let pair_ok = |a: usize, b: usize| {
        let (x, y) = (near.cands[a], near.cands[b]);
        auts.iter()
            .all(|p| !(p[x] == y && p[y] == x) && !(p[x] == x && p[y] == y))
    };
    let mut chosen = Vec::new();
    if !extend(&mut chosen, h, m, &ok_with, &pair_ok, &anti) {
        return Ok(None);
    }
    let mut u: Vec<usize> = chosen.iter().map(|&k| near.cands[k]).collect();
    let neg: Vec<usize> = u.iter().map(|&v| t.antipode[v]).collect();
    u.extend(neg);
    Ok(Some(u))
}

/// Conditions (i)-(viii) for a tiling graph with a chosen U.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingConditions {
    pub odd_g: bool,
    pub even_border: bool,
    pub antipodal_automorphism: bool,
    pub antipodes_far: bool,
    pub u_spread: bool,
    pub pair_fixed_only_by_identity: bool,
    pub faces_have_interior: bool,
    pub interior_connected: bool,
}

impl TilingConditions {
    pub fn all(&self) -> bool {
        self.odd_g
            && self.even_border
            && self.antipodal_automorphism
            && self.antipodes_far
            && self.u_spread
            && self.pair_fixed_only_by_identity
            && self.faces_have_interior
            && self.interior_connected
    }

    pub fn entries(&self) -> [(&'static str, bool); 8] {
        [
            ("g odd, g >= 7", self.odd_g),
            ("border is an even cycle", self.even_border),
            ("antipodal automorphism", self.antipodal_automorphism),
            ("dist(x, -x) >= g on the border", self.antipodes_far),
            ("U spread", self.u_spread),
            (
                "(vi) only the identity fixes {u0, u1}",
                self.pair_fixed_only_by_identity,
            ),
            (
                "(vii) every g-cycle has an interior vertex",
                self.faces_have_interior,
            ),
            (
                "(viii) interior vertices induce a connected graph",
                self.interior_connected,
            ),
        ]
    }
}

pub fn tiling_conditions(t: &TilingGraph, u: &[usize]) -> TilingConditions {
    let g = &t.graph;
    let on_border = is_border(t);
    let h = u.len() / 2;
    let far = |a: usize, b: usize| dist(g, a, b).is_none_or(|d| d >= t.g);
    let u_spread = u.len() == 2 * h
        && h % 2 == 1
        && 2 * h > t.g
        && u.iter().all(|&x| on_border[x] && g.degree(x) == 2)
        && (0..h).all(|i| u[i + h] == t.antipode[u[i]])
        && (0..u.len()).all(|i| (i + 1..u.len()).all(|j| far(u[i], u[j])));
    let pair_fixed_only_by_identity = u.len() >= 2
        && nontrivial_automorphisms(t).iter().all(|p| {
            !((p[u[0]] == u[0] && p[u[1]] == u[1]) || (p[u[0]] == u[1] && p[u[1]] == u[0]))
        });
    let interior: Vec<usize> = (0..g.n()).filter(|&v| !on_border[v]).collect();
    TilingConditions {
        odd_g: t.g >= 7 && t.g % 2 == 1,
        even_border: t.border.len().is_multiple_of(2) && is_cycle_in(g, &t.border),
        antipodal_automorphism: g
            .edges()
            .all(|(a, b)| g.has_edge(t.antipode[a], t.antipode[b]))
            && t.border.iter().enumerate().all(|(k, &v)| {
                t.antipode[v] == t.border[(k + t.border.len() / 2) % t.border.len()]
            }),
        antipodes_far: t.border.iter().all(|&x| far(x, t.antipode[x])),
        u_spread,
        pair_fixed_only_by_identity,
        faces_have_interior: count_cycles(g, t.g) == t.faces.len()
            && t.faces.iter().all(|f| f.iter().any(|&v| !on_border[v])),
        interior_connected: !interior.is_empty() && is_connected(&g.induced(&interior)),
    }
}

/// A tiling factor (T, T') with the auxiliary graph T-bar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingFactor {
    pub tiling: TilingGraph,
    pub t: Graph,
    pub t_prime: Graph,
    pub t_bar: Graph,
    pub u: Vec<usize>,
    pub h: usize,
}

impl TilingFactor {
    pub fn straight_edges(&self) -> Vec<(usize, usize)> {
        straight(&self.tiling, &[])
    }

    pub fn twisted_edges(&self) -> Vec<(usize, usize)> {
        (0..self.h)
            .map(|i| (self.u[2 * i], self.u[2 * i + 1]))
            .collect()
    }
}

fn straight(t: &TilingGraph, skip: &[usize]) -> Vec<(usize, usize)> {
    t.border
        .iter()
        .copied()
        .filter(|&x| t.graph.degree(x) == 2 && x < t.antipode[x] && !skip.contains(&x))
        .map(|x| (x, t.antipode[x]))
        .collect()
}

pub fn build_factor(t: &TilingGraph, u: &[usize]) -> Result<TilingFactor, TilingError> {
    let c = tiling_conditions(t, u);
    if !c.u_spread {
        return Err(TilingError::BadU(
            "degree, antipodal pairing or distance condition fails".into(),
        ));
    }
    let h = u.len() / 2;
    let twisted: Vec<(usize, usize)> = (0..h).map(|i| (u[2 * i], u[2 * i + 1])).collect();
    let t_prime = t.graph.with_edges(straight(t, &[]))?;
    let t_graph = t.graph.with_edges(
        straight(t, u)
            .into_iter()
            .chain(twisted[1..].iter().copied()),
    )?;
    let t_bar = t_prime.with_edges(twisted)?;
    Ok(TilingFactor {
        tiling: t.clone(),
        t: t_graph,
        t_prime,
        t_bar,
        u: u.to_vec(),
        h,
    })
}

/// Every shortest odd cycle of T-bar lies in G and twisted edges are not shortcut.
pub fn u_spread_check(f: &TilingFactor) -> bool {
    let g = f.tiling.g;
    let no_short_detour = f.twisted_edges().iter().all(|&(a, b)| {
        let without: Vec<(usize, usize)> = f
            .t_bar
            .edges()
            .filter(|&e| e != (a.min(b), a.max(b)))
            .collect();
        let rest = Graph::from_edges(f.t_bar.n(), without).expect("subgraph");
        dist(&rest, a, b).is_none_or(|d| d >= g)
    });
    let extra: Vec<(usize, usize)> = f
        .t_bar
        .edges()
        .filter(|&(a, b)| !f.tiling.graph.has_edge(a, b))
        .collect();
    no_short_detour
        && odd_girth(&f.t_bar) == Some(g)
        && extra
            .iter()
            .all(|&(a, b)| !edge_on_short_odd_cycle(&f.t_bar, a, b, g))
}

/// Results of the factor checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub cubic: bool,
    pub connected: bool,
    pub odd_girth: bool,
    pub g_cycle_everywhere: bool,
    pub spread: bool,
    pub t_rigid: Verdict,
    pub no_t_to_t_prime: Verdict,
    pub no_t_prime_to_t: Verdict,
}

impl FactorReport {
    pub fn all(&self) -> bool {
        self.cubic
            && self.connected
            && self.odd_girth
            && self.g_cycle_everywhere
            && self.spread
            && self.t_rigid.holds()
            && self.no_t_to_t_prime.holds()
            && self.no_t_prime_to_t.holds()
    }
}

fn no_hom(a: &Graph, b: &Graph, config: &SearchConfig) -> Verdict {
    let out = crate::homsearch::solve(
        &crate::homsearch::HomProblem::new(a, b, crate::homsearch::Mode::FindFirst)
            .config(config.clone()),
    );
    match out.maps.into_iter().next() {
        Some(w) => Verdict::No {
            source: 0,
            target: 1,
            witness: w,
        },
        None if out.complete => Verdict::Yes,
        None => Verdict::Unknown,
    }
}

pub fn factor_report(f: &TilingFactor, config: &SearchConfig) -> FactorReport {
    let g = f.tiling.g;
    let closed = f.t.with_edges([(f.u[0], f.u[1])]).expect("valid edge");
    FactorReport {
        cubic: closed.regular_degree() == Some(3) && f.t_prime.regular_degree() == Some(3),
        connected: is_connected(&f.t) && is_connected(&f.t_prime),
        odd_girth: odd_girth(&f.t) == Some(g) && odd_girth(&f.t_prime) == Some(g),
        g_cycle_everywhere: vertex_without_cycle(&f.t, g).is_none()
            && vertex_without_cycle(&f.t_prime, g).is_none(),
        spread: u_spread_check(f),
        t_rigid: rigidity(&f.t, config),
        no_t_to_t_prime: no_hom(&f.t, &f.t_prime, config),
        no_t_prime_to_t: no_hom(&f.t_prime, &f.t, config),
    }
}

/// Smallest `i <= max_i` for which U exists and (i)-(viii) hold, with its U.
pub fn first_accepting_index(
    g: usize,
    h: usize,
    max_i: usize,
) -> Result<Option<(TilingGraph, Vec<usize>)>, TilingError> {
    let mut t = base_tiling(g)?;
    loop {
        if let Some(u) = find_u(&t, h)? {
            if tiling_conditions(&t, &u).all() {
                return Ok(Some((t, u)));
            }
        }
        if t.i >= max_i {
            return Ok(None);
        }
        t = tiling_step(&t)?;
        check_invariants(&t)?;
    }
}

/// Minimum over border vertices of dist(x, -x).
pub fn antipodal_spread(t: &TilingGraph) -> Option<usize> {
    t.border
        .iter()
        .filter_map(|&x| bfs(&t.graph, x)[t.antipode[x]].map(|d| d as usize))
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case() {
        let t = base_tiling(7).unwrap();
        assert_eq!(t.graph.n(), 12);
        assert_eq!(t.graph.edge_count(), 13);
        assert_eq!(t.faces.len(), 2);
        assert_eq!(t.border.len(), 12);
        check_invariants(&t).unwrap();
        assert!(base_tiling(8).is_err());
        assert!(base_tiling(5).is_err());
    }

    #[test]
    fn second_generation() {
        let t = build_tiling(7, 2).unwrap();
        assert_eq!(t.border.len(), 4 * 7 - 10);
        assert!(t.faces.len() > 2);
    }

    #[test]
    fn no_u_in_base() {
        let t = base_tiling(7).unwrap();
        assert_eq!(find_u(&t, 5).unwrap(), None);
        assert!(find_u(&t, 4).is_err());
    }

    #[test]
    fn cycle_counting() {
        assert_eq!(count_cycles(&Graph::cycle(7), 7), 1);
        assert_eq!(count_cycles(&Graph::complete(4), 3), 4);
        assert_eq!(count_cycles(&Graph::complete(4), 4), 3);
    }

    #[test]
    fn convex_growth() {
        let mut t = base_tiling(7).unwrap();
        for _ in 0..3 {
            let next = tiling_step(&t).unwrap();
            for v in 0..t.graph.n() {
                let a = bfs(&t.graph, v);
                let b = bfs(&next.graph, v);
                assert_eq!(a[..], b[..t.graph.n()]);
            }
            t = next;
        }
    }

    #[test]
    fn seven_factor() {
        let (t, u) = first_accepting_index(7, default_h(7), 8).unwrap().unwrap();
        assert_eq!((t.i, t.graph.n()), (5, 112));
        assert_eq!(antipodal_spread(&t), Some(9));
        let f = build_factor(&t, &u).unwrap();
        let n2 = (0..t.graph.n()).filter(|&v| t.graph.degree(v) == 2).count();
        assert_eq!(f.t_prime.edge_count() - t.graph.edge_count(), n2 / 2);
        let low: Vec<usize> = (0..f.t.n()).filter(|&v| f.t.degree(v) == 2).collect();
        let mut pair = vec![u[0], u[1]];
        pair.sort();
        assert_eq!(low, pair);
        assert!(factor_report(&f, &SearchConfig::default()).all());
        assert!(build_factor(&t, &u[..4]).is_err());
    }

    #[test]
    fn automorphism_group_order() {
        for i in 1..=4 {
            assert_eq!(automorphisms(&build_tiling(7, i).unwrap().graph).len(), 4);
        }
    }
}

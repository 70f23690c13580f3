//! Verification of the small rigid and asymmetric regular graphs: listed
//! graph6 codes, the subdivided cubic family, the spliced quartic family and
//! complements.

use super::report::SuiteReport;
use crate::codec::parse_g6;
use crate::graph::Graph;
use crate::homsearch::{asymmetry, rigidity, SearchConfig};
use crate::indicators::Status;
use crate::metrics::{girth, is_connected, odd_girth};
use crate::products::pair_index;

/// The smallest rigid cubic graph.
pub const CUBIC_RIGID: &str = "MCHY@e??KOCBOC?g_";

/// Rigid d-regular graphs of the smallest order, as (d, n, graph6).
pub const RIGID_CODES: [(usize, usize, &str); 5] = [
    (4, 10, "I}hP?sM@w"),
    (5, 10, "I}qr@s]Bw"),
    (6, 11, "J~zcqgjDw^_"),
    (7, 12, "K~~edXUHwv`~"),
    (8, 12, "K~~vUefRxzb~"),
];

/// Connected asymmetric non-bipartite triangle-free quartic graphs, as (n, graph6).
pub const QUARTIC_CODES: [(usize, &str); 6] = [
    (14, "Ms`rQ_gC?Q_e?b?[_"),
    (16, "Os`raOgCOW?O?O?L_Do?{"),
    (18, "Qs`raOgE?I?S?O?I?Ao?e?AK?FG"),
    (20, "Ss`raOgE?J?W?G?C_A??Q?@g?Co?D_?A["),
    (22, "Us`AA?cG`AA_CgCS@`?S?AO??_O?gW?W_?AH??XG"),
    (24, "Ws`AA?cG`AA_CgCO@_?S?AW??S??_O?WC?GS??h??BD??II"),
];

pub fn is_triangle_free(g: &Graph) -> bool {
    girth(g).is_none_or(|x| x >= 4)
}

fn is_non_bipartite(g: &Graph) -> bool {
    odd_girth(g).is_some()
}

/// Some 4-cycle contains the edge {u, v}.
pub fn edge_in_c4(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbours(u)
        .iter()
        .map(|&a| a as usize)
        .filter(|&a| a != v)
        .any(|a| {
            g.neighbours(v)
                .iter()
                .map(|&b| b as usize)
                .any(|b| b != u && b != a && g.has_edge(a, b))
        })
}

/// Every two edges sharing a vertex lie on a common 4-cycle.
pub fn incident_pairs_in_c4(g: &Graph) -> bool {
    (0..g.n()).all(|x| {
        let nb = g.neighbours(x);
        nb.iter().enumerate().all(|(i, &a)| {
            nb[i + 1..].iter().all(|&b| {
                g.neighbours(a as usize)
                    .iter()
                    .any(|&y| y as usize != x && g.has_edge(y as usize, b as usize))
            })
        })
    })
}

/// The lexicographically first induced matching of two edges.
pub fn induced_matching(g: &Graph) -> Option<((usize, usize), (usize, usize))> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(u, v)) in edges.iter().enumerate() {
        for &(w, z) in &edges[i + 1..] {
            let ends = [u, v, w, z];
            let distinct = ends
                .iter()
                .enumerate()
                .all(|(a, x)| !ends[a + 1..].contains(x));
            if distinct
                && [w, z]
                    .iter()
                    .all(|&y| !g.has_edge(u, y) && !g.has_edge(v, y))
            {
                return Some(((u, v), (w, z)));
            }
        }
    }
    None
}

/// The cubic graph with `r` subdivision rounds applied to the smallest rigid cubic graph.
pub fn cubic_family(r: usize) -> Graph {
    let g0 = parse_g6(CUBIC_RIGID).expect("valid code");
    let mut edges: Vec<(usize, usize)> = g0.edges().collect();
    let (mut a, mut b) = (1usize, 12usize);
    let mut n = g0.n();
    let replace = |edges: &mut Vec<(usize, usize)>, x: usize, y: usize, mid: usize| {
        let (lo, hi) = (x.min(y), x.max(y));
        let pos = edges
            .iter()
            .position(|&e| e == (lo, hi))
            .expect("edge present");
        edges.swap_remove(pos);
        edges.push((x.min(mid), x.max(mid)));
        edges.push((mid.min(y), mid.max(y)));
    };
    for _ in 0..r {
        let (na, nb) = (n, n + 1);
        replace(&mut edges, a, 6, na);
        replace(&mut edges, b, 13, nb);
        edges.push((na, nb));
        a = na;
        b = nb;
        n += 2;
    }
    Graph::from_edges(n, edges).expect("valid family member")
}

/// Vertex `(c, i)` of the prism part, with `c` in 1..=4 and `i` in 1..=k.
fn prism_vertex(base: usize, c: usize, i: usize) -> usize {
    base + pair_index(4, c - 1, i - 1)
}

/// Splices `C4 x P_k` (plus two twisting edges) into `g` in place of the induced matching `e, f`.
pub fn quartic_family(g: &Graph, e: (usize, usize), f: (usize, usize), k: usize) -> Graph {
    let base = g.n();
    let n = base + 4 * k;
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&x| x != (e.0.min(e.1), e.0.max(e.1)) && x != (f.0.min(f.1), f.0.max(f.1)))
        .collect();
    for i in 1..=k {
        for c in 1..=4 {
            edges.push((prism_vertex(base, c, i), prism_vertex(base, c % 4 + 1, i)));
            if i < k {
                edges.push((prism_vertex(base, c, i), prism_vertex(base, c, i + 1)));
            }
        }
    }
    edges.push((prism_vertex(base, 2, 1), prism_vertex(base, 3, k)));
    edges.push((prism_vertex(base, 3, 1), prism_vertex(base, 2, k)));
    edges.push((e.0, prism_vertex(base, 1, 1)));
    edges.push((e.1, prism_vertex(base, 4, 1)));
    edges.push((f.0, prism_vertex(base, 1, k)));
    edges.push((f.1, prism_vertex(base, 4, k)));
    Graph::from_edges(n, edges).expect("valid splice")
}

fn structural(
    report: &mut SuiteReport,
    part: char,
    name: &str,
    g: &Graph,
    d: usize,
    config: &SearchConfig,
) {
    report.flag(part, format!("{name}: connected"), is_connected(g));
    report.flag(
        part,
        format!("{name}: {d}-regular"),
        g.regular_degree() == Some(d),
    );
    report.flag(part, format!("{name}: non-bipartite"), is_non_bipartite(g));
    report.flag(part, format!("{name}: triangle-free"), is_triangle_free(g));
    report.verdict(part, format!("{name}: asymmetric"), &asymmetry(g, config));
}

fn complement_check(report: &mut SuiteReport, name: &str, g: &Graph, config: &SearchConfig) {
    let d = g.regular_degree().unwrap_or(0);
    let c = g.complement();
    report.flag(
        'd',
        format!("complement of {name}: {}-regular", g.n() - d - 1),
        c.regular_degree() == Some(g.n() - d - 1),
    );
    report.verdict(
        'd',
        format!("complement of {name}: rigid"),
        &rigidity(&c, config),
    );
}

/// Options for [`census_suite`].
#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_r: usize,
    pub k_range: std::ops::RangeInclusive<usize>,
    pub complements: bool,
    pub config: SearchConfig,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_r: 20,
            k_range: 3..=8,
            complements: true,
            config: SearchConfig::default(),
        }
    }
}

/// Parts: (a) listed codes, (b) cubic family, (c) quartic family, (d) complements.
pub fn census_suite(opts: &CensusOptions) -> SuiteReport {
    let mut report = SuiteReport::default();
    let config = &opts.config;
    codes_part(&mut report, config);

    for r in 0..=opts.max_r {
        let g = cubic_family(r);
        let name = format!("G_{r}");
        report.flag(
            'b',
            format!("{name}: order {}", 14 + 2 * r),
            g.n() == 14 + 2 * r,
        );
        structural(&mut report, 'b', &name, &g, 3, config);
        if opts.complements {
            complement_check(&mut report, &name, &g, config);
        }
    }

    for (idx, &(n, code)) in QUARTIC_CODES[..2].iter().enumerate() {
        let g = parse_g6(code).expect("valid code");
        let tag = if idx == 0 { 'A' } else { 'B' };
        let Some((e, f)) = induced_matching(&g) else {
            report.flag('c', format!("{tag} (n={n}): induced matching"), false);
            continue;
        };
        for k in opts.k_range.clone() {
            let gk = quartic_family(&g, e, f, k);
            let name = format!("{tag}_{k}");
            report.flag(
                'c',
                format!("{name}: order {}", n + 4 * k),
                gk.n() == n + 4 * k,
            );
            structural(&mut report, 'c', &name, &gk, 4, config);
            let base = g.n();
            let links = [
                (e.0, prism_vertex(base, 1, 1)),
                (e.1, prism_vertex(base, 4, 1)),
                (f.0, prism_vertex(base, 1, k)),
                (f.1, prism_vertex(base, 4, k)),
            ];
            let others_in_c4 = gk
                .edges()
                .filter(|x| !links.iter().any(|l| (l.0.min(l.1), l.0.max(l.1)) == *x))
                .all(|(u, v)| edge_in_c4(&gk, u, v));
            let links_free = links.iter().all(|&(u, v)| !edge_in_c4(&gk, u, v));
            if !(others_in_c4 && links_free) {
                let missing: Vec<(usize, usize)> = gk
                    .edges()
                    .filter(|&(u, v)| !edge_in_c4(&gk, u, v))
                    .collect();
                report.notes.push(format!(
                    "{name}: edges on no 4-cycle {missing:?} (splice edges {links:?})"
                ));
            }
            if opts.complements {
                complement_check(&mut report, &name, &gk, config);
            }
        }
    }
    if opts.complements {
        for &(n, code) in &QUARTIC_CODES {
            let g = parse_g6(code).expect("valid code");
            complement_check(&mut report, &format!("quartic n={n}"), &g, config);
        }
    }
    report
}

/// Part (a) alone: the listed graph6 codes.
pub fn listed_codes(config: &SearchConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    codes_part(&mut report, config);
    report
}

fn codes_part(report: &mut SuiteReport, config: &SearchConfig) {
    let mut rigid_list: Vec<(usize, usize, &str)> = vec![(3, 14, CUBIC_RIGID)];
    rigid_list.extend(RIGID_CODES);
    for (d, n, code) in rigid_list {
        match parse_g6(code) {
            Ok(g) => {
                report.flag(
                    'a',
                    format!("{code}: order {n}, {d}-regular"),
                    g.n() == n && g.regular_degree() == Some(d),
                );
                report.verdict('a', format!("{code}: rigid"), &rigidity(&g, config));
            }
            Err(e) => report.push('a', format!("{code}: parses"), Status::Fail, e.to_string()),
        }
    }
    for (i, &(n, code)) in QUARTIC_CODES.iter().enumerate() {
        match parse_g6(code) {
            Ok(g) => {
                report.flag('a', format!("{code}: order {n}"), g.n() == n);
                structural(report, 'a', code, &g, 4, config);
                if i < 2 {
                    report.flag(
                        'a',
                        format!("{code}: induced matching of two edges"),
                        induced_matching(&g).is_some(),
                    );
                    if !incident_pairs_in_c4(&g) {
                        report.notes.push(format!(
                            "{code}: some pair of incident edges lies on no 4-cycle"
                        ));
                    }
                }
            }
            Err(e) => report.push('a', format!("{code}: parses"), Status::Fail, e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_family_shape() {
        let g1 = cubic_family(1);
        assert_eq!(g1.n(), 16);
        assert_eq!(g1.regular_degree(), Some(3));
        assert!(
            g1.has_edge(14, 15) && g1.has_edge(1, 14) && g1.has_edge(14, 6) && !g1.has_edge(1, 6)
        );
        let g0 = cubic_family(0);
        // the distinguished 4-cycle
        assert!(
            g0.has_edge(2, 4) && g0.has_edge(4, 10) && g0.has_edge(10, 11) && g0.has_edge(11, 2)
        );
    }

    #[test]
    fn quartic_splice_degrees() {
        let a = parse_g6(QUARTIC_CODES[0].1).unwrap();
        let (e, f) = induced_matching(&a).unwrap();
        let g3 = quartic_family(&a, e, f, 3);
        assert_eq!(g3.n(), 26);
        assert_eq!(g3.regular_degree(), Some(4));
        assert!(is_triangle_free(&g3));
    }

    #[test]
    fn c4_helpers() {
        let c4 = Graph::cycle(4);
        assert!(incident_pairs_in_c4(&c4) && edge_in_c4(&c4, 0, 1));
        assert!(!edge_in_c4(&Graph::cycle(5), 0, 1));
        assert_eq!(induced_matching(&Graph::path(4)), None);
        assert_eq!(induced_matching(&Graph::path(5)), Some(((0, 1), (3, 4))));
    }
}

//! Verification suites for the gadget digraphs, tiling factors, indicators,
//! šíp transport and homogenization.

use super::report::SuiteReport;
use crate::graph::{Digraph, RelSystem};
use crate::homogenize::{homogenize_trace, verify_stage};
use crate::homsearch::{
    automorphisms, monoid_iso, mutual_rigidity, solve, EndMonoid, HomProblem, Mode, SearchConfig,
};
use crate::indicators::{
    build_indicator, copies_far_apart, indicator_hypotheses, is_d_indicator,
    layers_hold_min_odd_cycles, Status,
};
use crate::metrics::{directed_dist, directed_odd_closed_walks, odd_girth};
use crate::monoid::all_monoids;
use crate::products::{hom_transport_check, sip};
use crate::sausage::{build_sausage, family_f1, family_f2, hom_count_formula, FMap};
use crate::tiling::{
    build_factor, build_tiling, check_invariants, default_h, factor_report, first_accepting_index,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Engine hom counts between all S(d, l, f) and S(d, l', f') against the closed formula.
pub fn hom_formula_suite(ds: &[usize], ells: &[usize], config: &SearchConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    for &d in ds {
        for &l1 in ells {
            for &l2 in ells {
                let label = format!("d={d}, l={l1}, l'={l2}");
                let (Ok(fs), Ok(gs)) = (FMap::all(d, l1), FMap::all(d, l2)) else {
                    report.flag('4', format!("{label}: map shapes"), false);
                    continue;
                };
                let sources: Vec<_> = fs.iter().map(|f| (f, build_sausage(f))).collect();
                let targets: Vec<_> = gs.iter().map(|g| (g, build_sausage(g))).collect();
                let pairs: Vec<(usize, usize)> = (0..sources.len())
                    .flat_map(|i| (0..targets.len()).map(move |j| (i, j)))
                    .collect();
                // (mismatch, incomplete) per pair
                let results: Vec<(Option<String>, bool)> = pairs
                    .par_iter()
                    .map(|&(i, j)| {
                        let (f, s) = &sources[i];
                        let (g, t) = &targets[j];
                        let out = solve(
                            &HomProblem::new(&s.digraph, &t.digraph, Mode::Count)
                                .config(config.clone()),
                        );
                        let want = hom_count_formula(f, g).map(u128::from).ok();
                        let bad = (out.complete && Some(out.count) != want).then(|| {
                            format!("f={f} f'={g}: engine {} formula {want:?}", out.count)
                        });
                        (bad, !out.complete)
                    })
                    .collect();
                let first_bad = results.iter().find_map(|(b, _)| b.clone());
                let incomplete = results.iter().filter(|(_, inc)| *inc).count();
                let status = match (&first_bad, incomplete) {
                    (Some(_), _) => Status::Fail,
                    (None, 0) => Status::Pass,
                    _ => Status::Unknown,
                };
                let detail = first_bad.unwrap_or_else(|| {
                    if incomplete > 0 {
                        format!("{incomplete} pairs out of budget")
                    } else {
                        String::new()
                    }
                });
                report.push(
                    '4',
                    format!("{label}: {} pairs", pairs.len()),
                    status,
                    detail,
                );
            }
        }
    }
    report
}

/// Every vertex lies on a triangle of the underlying graph.
fn on_triangles(d: &Digraph) -> bool {
    let g = d.underlying();
    (0..g.n()).all(|v| {
        let nb = g.neighbours(v);
        nb.iter().any(|&a| {
            nb.iter()
                .any(|&b| a < b && g.has_edge(a as usize, b as usize))
        })
    })
}

fn shortest_closed_dicycle_note(name: &str, d: &Digraph) -> String {
    let best = directed_odd_closed_walks(d).into_iter().flatten().min();
    format!("{name}: shortest odd closed directed walk {best:?}")
}

/// Degree profiles, triangles and mutual rigidity of the two gadget families.
pub fn gadget_suite(ds: &[usize], config: &SearchConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    for &d in ds {
        let f1: Vec<Digraph> = match (1..=3)
            .map(|l| family_f1(d, l).map(|s| s.digraph))
            .collect()
        {
            Ok(v) => v,
            Err(e) => {
                report.push('5', format!("F1({d}) builds"), Status::Fail, e.to_string());
                continue;
            }
        };
        for (k, g) in f1.iter().enumerate() {
            let name = format!("F1({d},{})", k + 1);
            report.flag(
                '5',
                format!("{name}: every total degree is {d}"),
                g.degrees().iter().all(|&x| x == d),
            );
            report.flag(
                '5',
                format!("{name}: oriented"),
                g.is_oriented() && !g.has_loops(),
            );
            report.flag(
                '5',
                format!("{name}: every vertex on a triangle"),
                on_triangles(g),
            );
            report.notes.push(shortest_closed_dicycle_note(&name, g));
        }
        report.verdict(
            '5',
            format!("F1({d},1..3) mutually rigid"),
            &mutual_rigidity(&f1, config),
        );

        let mut f2 = Vec::new();
        for l in 2..=4 {
            let name = format!("F2({d},{l})");
            let (s, ind) = match family_f2(d, l) {
                Ok(x) => x,
                Err(e) => {
                    report.push('5', format!("{name} builds"), Status::Fail, e.to_string());
                    continue;
                }
            };
            let g = &s.digraph;
            let (u, v) = (s.plus(1, d - 1), s.minus(1, 2));
            let degrees = g.degrees();
            let short: Vec<usize> = (0..g.n()).filter(|&x| degrees[x] == d - 1).collect();
            let profile = short == {
                let mut p = vec![u.min(v), u.max(v)];
                p.dedup();
                p
            } && degrees.iter().all(|&x| x == d || x == d - 1);
            report.flag(
                '5',
                format!("{name}: exactly u, v have total degree {}", d - 1),
                profile,
            );
            report.flag(
                '5',
                format!("{name}: oriented"),
                g.is_oriented() && !g.has_loops(),
            );
            report.flag(
                '5',
                format!("{name}: every vertex on a triangle"),
                on_triangles(g),
            );
            report.notes.push(shortest_closed_dicycle_note(&name, g));
            let far = |a, b| directed_dist(g, a, b).is_none_or(|k| k >= 3);
            report.flag(
                '5',
                format!("{name}: directed paths between u and v have length >= 3"),
                far(u, v) && far(v, u),
            );
            report.flag('5', format!("{name}: indicator pair is {{u, v}}"), {
                let mut p = [ind.input(), ind.output()];
                p.sort_unstable();
                p == [u.min(v), u.max(v)]
            });
            f2.push(s.digraph);
        }
        report.verdict(
            '5',
            format!("F2({d},2..4) mutually rigid"),
            &mutual_rigidity(&f2, config),
        );
    }
    report
}

/// Tiling graphs up to the first accepting index and the resulting factor.
pub fn tiling_suite(g: usize, aut_up_to: usize, config: &SearchConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    let (t, u) = match first_accepting_index(g, default_h(g), 40) {
        Ok(Some(x)) => x,
        Ok(None) => {
            report.flag('6', format!("g={g}: accepting index exists"), false);
            return report;
        }
        Err(e) => {
            report.push(
                '6',
                format!("g={g}: tiling builds"),
                Status::Fail,
                e.to_string(),
            );
            return report;
        }
    };
    report.notes.push(format!(
        "g={g}: first accepting index {} with {} vertices",
        t.i,
        t.graph.n()
    ));
    for i in 1..=t.i.max(aut_up_to) {
        match build_tiling(g, i) {
            Ok(ti) => {
                if i <= t.i {
                    let inv = check_invariants(&ti);
                    let detail = inv
                        .as_ref()
                        .err()
                        .map(ToString::to_string)
                        .unwrap_or_default();
                    let status = if inv.is_ok() {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    report.push(
                        '6',
                        format!("G({g},{i}): tiling invariants"),
                        status,
                        detail,
                    );
                }
                if i <= aut_up_to {
                    let a = automorphisms(&ti.graph).len();
                    report.push(
                        '6',
                        format!("G({g},{i}): |Aut| = 4"),
                        if a == 4 { Status::Pass } else { Status::Fail },
                        format!("|Aut| = {a}"),
                    );
                }
            }
            Err(e) => report.push(
                '6',
                format!("G({g},{i}) builds"),
                Status::Fail,
                e.to_string(),
            ),
        }
    }
    let f = match build_factor(&t, &u) {
        Ok(f) => f,
        Err(e) => {
            report.push('6', "factor builds", Status::Fail, e.to_string());
            return report;
        }
    };
    let r = factor_report(&f, config);
    report.flag('6', "T, T' cubic (T after closing u0u1)", r.cubic);
    report.flag('6', "T, T' connected", r.connected);
    report.flag('6', format!("T, T' odd girth {g}"), r.odd_girth);
    report.flag(
        '6',
        format!("{g}-cycle through every vertex of T, T'"),
        r.g_cycle_everywhere,
    );
    report.flag(
        '6',
        format!("shortest odd cycles of T-bar have length {g} and lie in the tiling graph"),
        r.spread,
    );
    report.verdict('6', "T rigid", &r.t_rigid);
    report.verdict('6', "no homomorphism T -> T'", &r.no_t_to_t_prime);
    report.verdict('6', "no homomorphism T' -> T", &r.no_t_prime_to_t);
    report
}

/// The full hypothesis report for S(d, g), plus its structural facts.
pub fn indicator_suite(d: usize, g: usize, cap: usize, config: &SearchConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    let b = match build_indicator(d, g, cap) {
        Ok(b) => b,
        Err(e) => {
            report.push(
                '7',
                format!("S({d},{g}) builds"),
                Status::Fail,
                e.to_string(),
            );
            return report;
        }
    };
    report
        .notes
        .push(format!("S({d},{g}) has {} vertices", b.graph().n()));
    report.flag(
        '7',
        format!("S({d},{g}): degree law of a {d}-indicator"),
        is_d_indicator(&b.indicator, d),
    );
    report.flag(
        '7',
        format!("S({d},{g}): layer edges avoid shortest odd cycles"),
        layers_hold_min_odd_cycles(&b),
    );
    report.flag(
        '7',
        format!("S({d},{g}): copies of u0, u1 at distance >= {g}"),
        copies_far_apart(&b),
    );
    for c in indicator_hypotheses(std::slice::from_ref(&b.indicator), g, config).checks {
        report.push(
            '7',
            format!("S({d},{g}): {}", c.label),
            c.status,
            c.witness.unwrap_or_default(),
        );
    }
    report
}

/// A random single-colour system on `n` vertices with every total degree `degree`,
/// loops allowed, every in- and out-degree positive.
pub fn random_one_system(n: usize, degree: usize, rng: &mut impl Rng) -> Option<RelSystem> {
    if n == 0 || !(n * degree).is_multiple_of(2) {
        return None;
    }
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
    let m = n * degree / 2;
    for _ in 0..100_000 {
        let arcs: Vec<(usize, usize)> = all.choose_multiple(rng, m).copied().collect();
        let (mut out, mut inn) = (vec![0; n], vec![0; n]);
        for &(u, v) in &arcs {
            out[u] += 1;
            inn[v] += 1;
        }
        if (0..n).all(|v| out[v] > 0 && inn[v] > 0 && out[v] + inn[v] == degree) {
            let mut arcs = arcs;
            arcs.sort_unstable();
            return RelSystem::new(n, vec!["a".into()], vec![arcs]).ok();
        }
    }
    None
}

/// Hom-set transport through S(3, g) for `pairs` random pairs of small systems.
pub fn transport_suite(
    pairs: usize,
    g: usize,
    seed: u64,
    cap: usize,
    config: &SearchConfig,
) -> SuiteReport {
    let mut report = SuiteReport::default();
    let s = match build_indicator(3, g, cap) {
        Ok(b) => b.indicator,
        Err(e) => {
            report.push('8', format!("S(3,{g}) builds"), Status::Fail, e.to_string());
            return report;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems: Vec<(RelSystem, RelSystem)> = (0..pairs)
        .map(|_| {
            let pick = |rng: &mut ChaCha8Rng| {
                let n = *[2usize, 4].choose(rng).expect("nonempty");
                random_one_system(n, 3, rng)
                    .expect("systems of total degree 3 exist on 2 and 4 vertices")
            };
            (pick(&mut rng), pick(&mut rng))
        })
        .collect();
    let results: Vec<_> = systems
        .par_iter()
        .map(|(a, b)| {
            let t = hom_transport_check(a, b, std::slice::from_ref(&s), config);
            let prod = sip(a, std::slice::from_ref(&s)).map(|p| p.carrier);
            (t, prod)
        })
        .collect();
    for (k, ((a, b), (t, prod))) in systems.iter().zip(results).enumerate() {
        let name = format!("pair {k} ({} -> {} vertices)", a.n(), b.n());
        match t {
            Ok(t) => {
                let status = if t.holds() {
                    Status::Pass
                } else if !t.complete {
                    Status::Unknown
                } else {
                    Status::Fail
                };
                report.push(
                    '8',
                    format!("{name}: |Hom(D*S, D'*S)| = |Hom(D, D')|"),
                    status,
                    format!("{} vs {}", t.product_homs, t.base_homs),
                );
            }
            Err(e) => report.push(
                '8',
                format!("{name}: transport"),
                Status::Fail,
                e.to_string(),
            ),
        }
        match prod {
            Ok(p) => {
                let og = odd_girth(&p);
                report.push(
                    '8',
                    format!("{name}: D*S 3-regular of odd girth {g}"),
                    if p.regular_degree() == Some(3) && og == Some(g) {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    format!("degree {:?}, odd girth {og:?}", p.regular_degree()),
                );
            }
            Err(e) => report.push('8', format!("{name}: product"), Status::Fail, e.to_string()),
        }
    }
    report
}

/// Every stage of the homogenization for all monoids up to the given order.
pub fn homogenize_suite(max_order: usize, config: &SearchConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    for n in 1..=max_order {
        for (idx, m) in all_monoids(n).iter().enumerate() {
            let name = format!("monoid {n}.{idx}");
            let trace = match homogenize_trace(m) {
                Ok(t) => t,
                Err(e) => {
                    report.push(
                        '9',
                        format!("{name}: homogenizes"),
                        Status::Fail,
                        e.to_string(),
                    );
                    continue;
                }
            };
            for s in &trace {
                let c = verify_stage(s, config);
                let status = if !c.complete {
                    Status::Unknown
                } else if c.matches && c.engine == m.n() {
                    Status::Pass
                } else {
                    Status::Fail
                };
                report.push(
                    '9',
                    format!("{name}: {} |End| = |M| = {}", s.stage, m.n()),
                    status,
                    format!("engine {}, n = {}", c.engine, s.n()),
                );
            }
            let last = trace.last().expect("nonempty trace");
            report.flag(
                '9',
                format!("{name}: {} degree-constant", last.stage),
                last.is_degree_constant(),
            );
            let iso = EndMonoid::from_maps(last.endos.clone())
                .and_then(|e| monoid_iso(m, &e.to_monoid()));
            report.flag(
                '9',
                format!("{name}: End({}) isomorphic to M", last.stage),
                iso.is_some(),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_systems_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 4] {
            let s = random_one_system(n, 3, &mut rng).unwrap();
            assert!(
                (0..n).all(|v| s.total_degree(v) == 3 && s.in_degree(v) > 0 && s.out_degree(v) > 0)
            );
        }
        assert!(random_one_system(3, 3, &mut rng).is_none());
    }

    #[test]
    fn formula_suite_small() {
        let r = hom_formula_suite(&[3], &[1, 2], &SearchConfig::default());
        assert!(r.passed(), "{r}");
        assert_eq!(r.items.len(), 4);
    }

    #[test]
    fn homogenize_small_orders() {
        let r = homogenize_suite(2, &SearchConfig::default());
        assert!(r.passed(), "{r}");
    }
}

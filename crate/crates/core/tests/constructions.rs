use endoreg::homsearch::{mutual_rigidity, rigidity};
use endoreg::indicators::{
    build_indicator, estimate_size, is_d_indicator, rigid_family, DEFAULT_CAP,
};
use endoreg::metrics::{is_connected, odd_girth};
use endoreg::pipeline::represent::plan;
use endoreg::pipeline::{generate_regular, represent, GenSpec, RepresentOptions};
use endoreg::sausage::sausage_order;
use endoreg::{
    build_sausage, count_homs, family_f1, family_f2, hom_count_formula, homogenize_trace, FMap,
    Monoid, SearchConfig, Stage, Verdict,
};
use std::time::Duration;

#[test]
fn sausage_sizes_and_self_maps() {
    for d in 3..=5 {
        for ell in 1..=2 {
            let f1 = family_f1(d, ell).unwrap();
            assert_eq!(f1.digraph.n(), sausage_order(d, ell));
            assert!(f1.digraph.degrees().iter().all(|&x| x == d));
        }
    }
    let f = FMap::parse(4, 2, "+0-+").unwrap();
    let s = build_sausage(&f);
    assert_eq!(
        count_homs(&s.digraph, &s.digraph),
        u128::from(hom_count_formula(&f, &f).unwrap())
    );
}

#[test]
fn oriented_gadgets_have_short_endpoints() {
    for d in 3..=5 {
        let (s, ind) = family_f2(d, 2).unwrap();
        let deg = s.digraph.degrees();
        assert_eq!((deg[ind.input()], deg[ind.output()]), (d - 1, d - 1));
    }
}

#[test]
fn indicator_sizes_follow_the_recursion() {
    let t = estimate_size(3, 7).unwrap();
    for (d, factor) in [(3, 1), (4, 2), (5, 15)] {
        let b = build_indicator(d, 7, DEFAULT_CAP).unwrap();
        assert_eq!(b.graph().n(), factor * t, "S({d},7)");
        assert!(is_d_indicator(&b.indicator, d));
        assert_eq!(odd_girth(b.graph()), Some(7));
    }
}

#[test]
fn rigid_family_members() {
    let fam = rigid_family(3, 7, 2, DEFAULT_CAP).unwrap();
    let s = estimate_size(3, 7).unwrap();
    for (k, g) in fam.iter().enumerate() {
        let f1 = family_f1(3, k + 1).unwrap().digraph;
        assert_eq!(g.n(), f1.n() + f1.arc_count() * s);
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(odd_girth(g), Some(7));
        assert!(is_connected(g));
    }
    let cfg = SearchConfig::with_budget(Some(Duration::from_secs(300)));
    assert!(!matches!(mutual_rigidity(&fam, &cfg), Verdict::No { .. }));
}

#[test]
fn semilattice_stages() {
    let trace = homogenize_trace(&Monoid::two_element_semilattice()).unwrap();
    let stages: Vec<Stage> = trace.iter().map(|s| s.stage).collect();
    assert_eq!(stages, vec![Stage::D1, Stage::D2, Stage::D3, Stage::D4]);
    assert_eq!(trace[1].n(), 4);
    assert_eq!(trace[3].n(), 2 * trace[2].n());
    assert!(trace[3].is_degree_constant());
    let group = homogenize_trace(&Monoid::cyclic_group(3)).unwrap();
    assert_eq!(group.len(), 1);
}

#[test]
fn trivial_monoid_representation() {
    let m = Monoid::trivial();
    let p = plan(&m, 7, DEFAULT_CAP).unwrap();
    let r = represent(&m, 7, &RepresentOptions::default()).unwrap();
    assert_eq!(r.graph.n() as u128, p.estimate);
    assert_eq!(r.graph.regular_degree(), Some(r.d));
    assert_eq!(odd_girth(&r.graph), Some(7));
    assert!(r.certificates.transported);
    assert!(r.certificates.stages.iter().all(|s| s.matches));
}

#[test]
fn cubic_census_at_fourteen() {
    assert_eq!(
        generate_regular(GenSpec::new(14, 3), None).graphs.len(),
        509
    );
}

#[test]
fn tiling_factor_is_rigid() {
    let f = endoreg::indicators::tiling_factor(7).unwrap();
    assert_eq!(rigidity(&f.t, &SearchConfig::default()), Verdict::Yes);
}

use endoreg::homsearch::{is_homomorphism, EndMonoid};
use endoreg::pipeline::{are_isomorphic, canonical_form};
use endoreg::{
    cartesian, emit_d6, emit_g6, emit_system, enumerate_homs, parse_d6, parse_g6, parse_system,
    Digraph, Graph, RelSystem,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (0..n).map(move |v| (u, v)));
            Digraph::from_arcs(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e), true).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_roundtrip(g in graph(70)) {
        let text = emit_g6(&g);
        prop_assert_eq!(parse_g6(&text).unwrap(), g);
    }

    #[test]
    fn digraph6_roundtrip(d in digraph(20)) {
        prop_assert_eq!(parse_d6(&emit_d6(&d)).unwrap(), d);
    }

    #[test]
    fn system_json_roundtrip(a in digraph(6), b in digraph(6)) {
        let n = a.n().min(b.n());
        let keep = |d: &Digraph| d.arcs().filter(|&(u, v)| u < n && v < n).collect::<Vec<_>>();
        let s = RelSystem::new(n, vec!["p".into(), "q".into()], vec![keep(&a), keep(&b)]).unwrap();
        let back = parse_system(&emit_system(&s)).unwrap();
        prop_assert_eq!(emit_system(&back), emit_system(&s));
        prop_assert_eq!(back.degrees(), s.degrees());
    }

    #[test]
    fn canonical_form_ignores_labelling((g, perm) in graph(11).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g).code, canonical_form(&h).code);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(canonical_form(&g).graph(), canonical_form(&h).graph());
    }

    #[test]
    fn homomorphisms_compose(a in graph(4), b in graph(4), c in graph(4)) {
        let ab = enumerate_homs(&a, &b);
        let bc = enumerate_homs(&b, &c);
        let ac = enumerate_homs(&a, &c);
        for f in &ab {
            prop_assert!(is_homomorphism(&a, &b, f));
            for g in &bc {
                let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                prop_assert!(ac.binary_search(&h).is_ok());
            }
        }
    }

    #[test]
    fn endomorphisms_form_a_monoid(d in digraph(4)) {
        let endos = enumerate_homs(&d, &d);
        let m = EndMonoid::from_maps(endos.clone()).expect("closed under composition");
        prop_assert_eq!(m.len(), endos.len());
        prop_assert_eq!(m.to_monoid().n(), endos.len());
    }

    #[test]
    fn cartesian_degrees_add(g in graph(6), h in graph(6)) {
        let p = cartesian(&g, &h);
        prop_assert_eq!(p.n(), g.n() * h.n());
        prop_assert_eq!(p.edge_count(), g.edge_count() * h.n() + h.edge_count() * g.n());
        for x in 0..g.n() {
            for u in 0..h.n() {
                let v = endoreg::products::pair_index(g.n(), x, u);
                prop_assert_eq!(p.degree(v), g.degree(x) + h.degree(u));
            }
        }
    }
}

mod common;

use common::{build, exhaustive_cover, exhaustive_independence, SMALL};
use proptest::prelude::*;
use regmap_core::numtheory::nth_prime;
use regmap_core::primegraph::{build_gk, clique_cover_number, group_gk, independence_number, PrimeGraph};

fn graph(n: usize, bits: &[bool]) -> PrimeGraph {
    let mut adj = vec![0u32; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    PrimeGraph {
        vertices: (1..=n).map(nth_prime).collect(),
        adj,
        cyclic: vec![true; n],
    }
}

fn edges_strategy() -> impl Strategy<Value = (usize, Vec<bool>)> {
    (1usize..=10).prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn solvers_match_subset_search((n, bits) in edges_strategy()) {
        let g = graph(n, &bits);
        let t = independence_number(&g).unwrap();
        let m = clique_cover_number(&g).unwrap();
        prop_assert_eq!(t.value, exhaustive_independence(&g.adj));
        prop_assert_eq!(m.value, exhaustive_cover(&g.adj));
        prop_assert!(m.value >= t.value);
        let w = &t.witness[0];
        prop_assert_eq!(w.len(), t.value);
        for (i, &p) in w.iter().enumerate() {
            for &q in &w[i + 1..] {
                prop_assert!(!g.adjacent(p, q));
            }
        }
        let covered: usize = m.witness.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, n);
        for c in &m.witness {
            for (i, &p) in c.iter().enumerate() {
                for &q in &c[i + 1..] {
                    prop_assert!(g.adjacent(p, q));
                }
            }
        }
    }

    #[test]
    fn adjacency_text_roundtrips((n, bits) in edges_strategy(), flags in proptest::collection::vec(any::<bool>(), 10)) {
        let mut g = graph(n, &bits);
        g.cyclic = flags[..n].to_vec();
        let back = PrimeGraph::parse_adjacency(&g.to_adjacency_text()).unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn gk_edges_have_spectrum_witnesses() {
    for s in SMALL {
        let g = build(s);
        let gk = group_gk(&g);
        assert_eq!(gk, build_gk(g.spectrum(), g.order()).unwrap());
        for (i, &p) in gk.vertices.iter().enumerate() {
            for &q in &gk.vertices[i + 1..] {
                let witness = g.spectrum().iter().any(|&o| o % (p * q) == 0);
                assert_eq!(gk.adjacent(p, q), witness, "{s}: {p}-{q}");
            }
            assert_eq!(gk.cyclic[i], g.sylow_is_cyclic(p).unwrap(), "{s}: {p}");
        }
    }
}

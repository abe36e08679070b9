#![allow(clippy::int_plus_one)] // bounds keep their (k+1)*l - 1 shape

//! Property tests for the structural invariants: operations preserve graph
//! validity, constructed layerings and decompositions pass their
//! validators, and the quantitative bounds hold on random instances.

use proptest::prelude::*;

use clucol::colouring::{monochromatic_components, two_colour_bounded, Colouring};
use clucol::graph::{strong_product, Graph, VertexSet};
use clucol::layered::{
    embed_in_product, layered_td_from_partition, make_width_one, partition_layered_width,
    validate_kl_partition, HPartition, KLPartition,
};
use clucol::layering::{
    bfs_layering_multi, coarsen_layering, distance_collapse, shift_layering, validate_layering,
    Layering,
};
use clucol::treewidth::{
    exact_treewidth, heuristic_tree_decomposition, tree_partition_bounded,
    validate_tree_decomposition, validate_tree_partition, EliminationStrategy,
};

/// Random graph on up to `max_n` vertices from a bit table.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if bits[u * n + v] {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Sparser random graph (each edge kept with ~1/4 probability).
fn sparse_graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..4, n * n).prop_map(move |bits| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if bits[u * n + v] == 0 {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Minimum over all elimination orders of the maximum neighbourhood size at
/// elimination, simulated directly on fill graphs. Sharing no code with the
/// subset DP, this is its independent cross-check for tiny graphs.
fn brute_force_treewidth(g: &Graph) -> isize {
    fn simulate(g: &Graph, order: &[usize]) -> isize {
        let mut fill: Vec<std::collections::BTreeSet<usize>> = (0..g.n())
            .map(|v| g.neighbours(v).iter().copied().collect())
            .collect();
        let mut worst: isize = 0;
        for &v in order {
            let nbrs: Vec<usize> = fill[v].iter().copied().collect();
            worst = worst.max(nbrs.len() as isize);
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    fill[a].insert(b);
                    fill[b].insert(a);
                }
            }
            for &a in &nbrs {
                fill[a].remove(&v);
            }
            fill[v].clear();
        }
        worst
    }
    fn permute(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, g: &Graph, best: &mut isize) {
        if rest.is_empty() {
            *best = (*best).min(simulate(g, prefix));
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            permute(rest, prefix, g, best);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    if g.n() == 0 {
        return -1;
    }
    let mut best = g.n() as isize;
    permute(&mut (0..g.n()).collect(), &mut Vec::new(), g, &mut best);
    best
}

/// All-pairs distances by independent per-vertex BFS; the oracle for
/// `Graph::power`.
fn bfs_distances(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbours(u) {
                if dist[s][v] == usize::MAX {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operations_preserve_graph_validity(g in graph_strategy(14), p in 1usize..4) {
        g.validate().unwrap();
        g.power(p).unwrap().validate().unwrap();
        let comps = g.connected_components();
        let (sub, _) = g.induced_subgraph(&comps[0]).unwrap();
        sub.validate().unwrap();
        let (contracted, _) = g.contract_components(&comps).unwrap();
        contracted.validate().unwrap();
        let singletons: Vec<VertexSet> = (0..g.n()).map(|v| VertexSet::new(vec![v])).collect();
        prop_assert_eq!(g.quotient(&singletons).unwrap(), g.clone());
    }

    #[test]
    fn strong_product_counts(a in graph_strategy(7), b in graph_strategy(7)) {
        let prod = strong_product(&a, &b).unwrap();
        prod.validate().unwrap();
        prop_assert_eq!(prod.n(), a.n() * b.n());
        let expect = a.edge_count() * b.n() + a.n() * b.edge_count()
            + 2 * a.edge_count() * b.edge_count();
        prop_assert_eq!(prod.edge_count(), expect);
    }

    #[test]
    fn power_matches_bfs_oracle(g in sparse_graph_strategy(24), p in 1usize..4) {
        let dist = bfs_distances(&g);
        let gp = g.power(p).unwrap();
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                prop_assert_eq!(gp.has_edge(u, v), dist[u][v] <= p, "pair ({}, {})", u, v);
            }
        }
    }

    #[test]
    fn bfs_layering_is_valid_and_survives_transforms(g in sparse_graph_strategy(24), s in 0usize..4) {
        let l = bfs_layering_multi(&g);
        prop_assert!(validate_layering(&g, &l).is_ok());
        let shifted = shift_layering(&l, s);
        prop_assert!(validate_layering(&g, &shifted).is_ok());
        // each non-root vertex has a neighbour one layer up
        let map = l.index_map(g.n());
        for v in 0..g.n() {
            let i = map[v].unwrap();
            if i > 0 {
                prop_assert!(g.neighbours(v).iter().any(|&w| map[w] == Some(i - 1)));
            }
        }
    }

    #[test]
    fn coarsened_layering_is_valid_for_power(g in sparse_graph_strategy(20), p in 1usize..4) {
        let l = bfs_layering_multi(&g);
        let gp = g.power(p).unwrap();
        let coarse = coarsen_layering(&l, p).unwrap();
        prop_assert!(validate_layering(&gp, &coarse).is_ok());
    }

    #[test]
    fn distance_collapse_is_lipschitz_and_valid(
        g in sparse_graph_strategy(20),
        picks in proptest::collection::btree_set(0usize..8, 1..4),
    ) {
        let l = bfs_layering_multi(&g);
        let hits: std::collections::BTreeSet<usize> =
            picks.into_iter().map(|i| i % l.len().max(1)).collect();
        prop_assume!(hits.iter().all(|&i| i < l.len()));
        let (collapsed, d) = distance_collapse(&l, &hits).unwrap();
        prop_assert!(validate_layering(&g, &collapsed).is_ok());
        for j in 1..d.len() {
            prop_assert!(d[j].abs_diff(d[j - 1]) <= 1);
        }
        for i in 0..collapsed.len() {
            let sources = d.iter().filter(|&&dj| dj == i).count();
            prop_assert!(sources <= 2 * hits.len());
        }
        // every hit layer lands in the new layer 0
        for &i in &hits {
            prop_assert_eq!(d[i], 0);
        }
    }

    #[test]
    fn heuristics_are_valid_upper_bounds(g in graph_strategy(9)) {
        let (exact, td_exact) = exact_treewidth(&g).unwrap();
        prop_assert!(validate_tree_decomposition(&g, &td_exact).unwrap().is_ok());
        for strategy in [EliminationStrategy::MinDegree, EliminationStrategy::MinFill] {
            let td = heuristic_tree_decomposition(&g, strategy);
            prop_assert!(validate_tree_decomposition(&g, &td).unwrap().is_ok());
            prop_assert!(td.width() >= exact);
        }
    }

    #[test]
    fn exact_oracle_matches_permutation_brute_force(g in graph_strategy(6)) {
        let (exact, _) = exact_treewidth(&g).unwrap();
        prop_assert_eq!(exact, brute_force_treewidth(&g));
    }

    #[test]
    fn bounded_tree_partition_and_two_colouring(g in sparse_graph_strategy(24)) {
        let td = heuristic_tree_decomposition(&g, EliminationStrategy::MinDegree);
        let (tp, report) = tree_partition_bounded(&g, &td).unwrap();
        prop_assert!(validate_tree_partition(&g, &tp).unwrap().is_ok());
        prop_assert!(report.achieved_width <= report.budget);

        let (col, cert) = two_colour_bounded(&g, &tp).unwrap();
        prop_assert!(col.palette() <= 2);
        prop_assert!(cert.max_component <= tp.width());
        // monochromatic components never leave their part
        let mut part_of = vec![usize::MAX; g.n()];
        for (x, part) in tp.parts.iter().enumerate() {
            for v in part.iter() {
                part_of[v] = x;
            }
        }
        for (_, comp) in &cert.components {
            let first = part_of[comp.first().unwrap()];
            prop_assert!(comp.iter().all(|v| part_of[v] == first));
        }
    }

    #[test]
    fn mono_components_match_union_find(g in graph_strategy(16), seed in any::<u64>()) {
        // independent union-find oracle
        let n = g.n();
        let colours: Vec<usize> = (0..n).map(|v| ((seed >> (v % 32)) as usize + v * 7) % 3).collect();
        let c = Colouring::new(3, colours.clone()).unwrap();
        let comps = monochromatic_components(&g, &c).unwrap();

        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let root = find(parent, parent[v]);
                parent[v] = root;
            }
            parent[v]
        }
        for (u, v) in g.edges() {
            if colours[u] == colours[v] {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let mut sizes = std::collections::BTreeMap::new();
        for v in 0..n {
            *sizes.entry(find(&mut parent, v)).or_insert(0usize) += 1;
        }
        let mut expected: Vec<usize> = sizes.into_values().collect();
        expected.sort_unstable();
        let mut got: Vec<usize> = comps.iter().map(|(_, s)| s.len()).collect();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn public_values_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<Graph>();
    check::<VertexSet>();
    check::<Layering>();
    check::<clucol::TreeDecomposition>();
    check::<clucol::TreePartition>();
    check::<Colouring>();
    check::<clucol::ClusterCertificate>();
    check::<KLPartition>();
    check::<HPartition>();
}

/// Random but valid (k, l)-partition: consecutive id blocks as parts, the
/// quotient as host, a heuristic witness, measured k and l.
fn random_klp(g: &Graph, block: usize) -> (KLPartition, Layering) {
    let n = g.n();
    let mut parts = Vec::new();
    let mut v = 0;
    while v < n {
        let hi = (v + block).min(n);
        parts.push(VertexSet::new((v..hi).collect()));
        v = hi;
    }
    let host = g.quotient(&parts).unwrap();
    let witness = heuristic_tree_decomposition(&host, EliminationStrategy::MinDegree);
    let l = bfs_layering_multi(g);
    let hp = HPartition { host, parts };
    let ell = partition_layered_width(g, &hp, &l).unwrap().max(1);
    let k = witness.width().max(0) as usize;
    (
        KLPartition {
            hp,
            l: l.clone(),
            witness,
            k,
            ell,
        },
        l,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kl_partition_pipeline(g in sparse_graph_strategy(26), block in 1usize..4) {
        let (klp, _) = random_klp(&g, block);
        prop_assert!(validate_kl_partition(&g, &klp).unwrap().is_empty());

        // bag substitution: valid decomposition, layered width <= (k+1) l
        let ltd = layered_td_from_partition(&g, &klp).unwrap();
        prop_assert!(validate_tree_decomposition(&g, &ltd.td).unwrap().is_ok());
        prop_assert!(ltd.layered_width <= (klp.k + 1) * klp.ell);

        // product embedding verifies every edge
        let emb = embed_in_product(&g, &klp).unwrap();
        prop_assert!(emb.all_ok);
        prop_assert!(emb.mapping.iter().all(|&(_, _, c)| c < klp.ell));

        // the embedding reproduces the parts
        let mut regrouped: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (v, &(h, _, _)) in emb.mapping.iter().enumerate() {
            regrouped.entry(h).or_default().push(v);
        }
        for (h, members) in regrouped {
            prop_assert_eq!(&klp.hp.parts[h], &VertexSet::new(members));
        }

        // width-one normalisation
        let (w1, report) = make_width_one(&g, &klp).unwrap();
        prop_assert!(validate_kl_partition(&g, &w1).unwrap().is_empty());
        prop_assert_eq!(report.measured_layered_width.max(1), 1);
        prop_assert!(report.measured_witness_width <= ((klp.k + 1) * klp.ell) as isize - 1);
        let emb1 = embed_in_product(&g, &w1).unwrap();
        prop_assert!(emb1.all_ok);
        prop_assert!(emb1.mapping.iter().all(|&(_, _, c)| c == 0));
    }
}

use std::collections::BTreeSet;

use proptest::prelude::*;
use proxigraph_core::clustering::{
    dbscan, dendrogram, hdbscan_detailed, kmeans_traced, kmedoids_traced, mean_shift_traced,
    DbscanParams, HdbscanParams, Init, Linkage, MeanShiftParams, RngSeed,
};
use proxigraph_core::io::{parse_points, write_ipe, write_svg, Document, InputFormat};
use proxigraph_core::mst::emst_edges;
use proxigraph_core::neighbor_graphs::{neighbor_graph, NeighborKind, NeighborVariant};
use proxigraph_core::proximity::{epsilon_graph, gabriel_graph, rng_graph, urquhart_graph};
use proxigraph_core::{delaunay, distance, Clustering, Graph, PointSet, Strategy as Search};

fn distinct(coords: Vec<(f64, f64)>) -> PointSet {
    let mut seen = BTreeSet::new();
    let kept: Vec<(f64, f64)> = coords
        .into_iter()
        .filter(|&(x, y)| seen.insert((x.to_bits(), y.to_bits())))
        .collect();
    PointSet::from_xy(&kept).unwrap()
}

/// Points in general position (almost surely): uniform reals.
fn real_points(min: usize, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((0.0..512.0f64, 0.0..512.0f64), min..max).prop_map(distinct)
}

/// Small-integer points, rich in ties and collinearity.
fn grid_points(min: usize, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((0..12i32, 0..12i32), min * 2..max * 2)
        .prop_map(|v| distinct(v.into_iter().map(|(x, y)| (x as f64, y as f64)).collect()))
        .prop_filter("enough distinct points", move |ps| ps.len() >= min)
}

fn edges(g: &Graph) -> &BTreeSet<(usize, usize)> {
    g.edge_set()
}

fn partition(c: &Clustering) -> BTreeSet<Vec<usize>> {
    c.members().into_iter().collect()
}

fn variant(kind: NeighborKind, k: usize) -> NeighborVariant {
    NeighborVariant::new(kind, kind.takes_k().then_some(k)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn containment_chain(ps in real_points(3, 80)) {
        prop_assume!(ps.len() >= 3);
        let dt = delaunay(&ps).unwrap().edge_graph();
        let gg = gabriel_graph(&ps).unwrap();
        let rn = rng_graph(&ps).unwrap();
        let uq = urquhart_graph(&ps).unwrap();
        let mst = proxigraph_core::mst::emst(&ps).unwrap();
        prop_assert!(mst.is_subgraph_of(&rn));
        prop_assert!(rn.is_subgraph_of(&gg));
        prop_assert!(gg.is_subgraph_of(&dt));
        prop_assert!(rn.is_subgraph_of(&uq));
        prop_assert!(uq.is_subgraph_of(&dt));
    }

    #[test]
    fn containment_with_ties(ps in grid_points(3, 30)) {
        // ties can only break rng ⊆ urquhart; the rest holds for any input
        let dt = delaunay(&ps).unwrap().edge_graph();
        let gg = gabriel_graph(&ps).unwrap();
        let rn = rng_graph(&ps).unwrap();
        let mst = proxigraph_core::mst::emst(&ps).unwrap();
        prop_assert!(mst.is_subgraph_of(&rn));
        prop_assert!(rn.is_subgraph_of(&gg));
        prop_assert!(gg.is_subgraph_of(&dt));
        prop_assert!(urquhart_graph(&ps).unwrap().is_subgraph_of(&dt));
    }

    #[test]
    fn partition_algebra(ps in grid_points(6, 30), k in 1usize..6) {
        use NeighborKind::*;
        for (all, both, one) in [(Knn, MutualK, AsymK), (Kth, MutualKth, AsymKth), (Nearest, Mutual, Asym)] {
            let a = neighbor_graph(&ps, variant(all, k)).unwrap();
            let m = neighbor_graph(&ps, variant(both, k)).unwrap();
            let s = neighbor_graph(&ps, variant(one, k)).unwrap();
            prop_assert!(edges(&m).is_disjoint(edges(&s)));
            let union: BTreeSet<_> = edges(&m).union(edges(&s)).copied().collect();
            prop_assert_eq!(&union, edges(&a));
        }
    }

    #[test]
    fn neighbor_monotonicity(ps in grid_points(6, 30), k in 1usize..5) {
        use NeighborKind::*;
        let knn = neighbor_graph(&ps, variant(Knn, k)).unwrap();
        let knn1 = neighbor_graph(&ps, variant(Knn, k + 1)).unwrap();
        prop_assert!(knn.is_subgraph_of(&knn1));
        prop_assert!(neighbor_graph(&ps, variant(Kth, k)).unwrap().is_subgraph_of(&knn));
        prop_assert!(neighbor_graph(&ps, variant(MutualK, k)).unwrap()
            .is_subgraph_of(&neighbor_graph(&ps, variant(MutualK, k + 1)).unwrap()));
        // every point keeps at least one edge in the nearest graph
        let nn = neighbor_graph(&ps, variant(Nearest, 1)).unwrap();
        prop_assert!((0..ps.len()).all(|v| nn.degree(v) >= 1));
    }

    #[test]
    fn epsilon_is_monotone(ps in real_points(2, 60), e1 in 1.0..100.0f64, e2 in 1.0..100.0f64) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        prop_assert!(epsilon_graph(&ps, lo).unwrap().is_subgraph_of(&epsilon_graph(&ps, hi).unwrap()));
    }

    #[test]
    fn grid_and_brute_force_agree(ps in grid_points(6, 40), eps in 0.5..4.0f64) {
        prop_assert_eq!(
            proxigraph_core::proximity::epsilon_graph_with(&ps, eps, Search::Grid).unwrap(),
            proxigraph_core::proximity::epsilon_graph_with(&ps, eps, Search::BruteForce).unwrap()
        );
        let v = variant(NeighborKind::Knn, 3);
        prop_assert_eq!(
            proxigraph_core::neighbor_graphs::neighbor_graph_with(&ps, v, Search::Grid).unwrap(),
            proxigraph_core::neighbor_graphs::neighbor_graph_with(&ps, v, Search::BruteForce).unwrap()
        );
    }

    #[test]
    fn single_linkage_heights_are_emst_weights(ps in real_points(1, 80)) {
        let mut heights: Vec<f64> = dendrogram(&ps, Linkage::Single).unwrap().merges().iter().map(|m| m.distance).collect();
        let mut weights: Vec<f64> = emst_edges(&ps).unwrap().iter().map(|e| e.weight).collect();
        heights.sort_by(f64::total_cmp);
        weights.sort_by(f64::total_cmp);
        prop_assert_eq!(heights.len(), weights.len());
        for (h, w) in heights.iter().zip(&weights) {
            prop_assert!((h - w).abs() <= 1e-9 * w.abs().max(1e-300));
        }
    }

    #[test]
    fn dendrogram_heights_never_decrease(ps in real_points(2, 50)) {
        for linkage in [Linkage::Single, Linkage::Complete] {
            let d = dendrogram(&ps, linkage).unwrap();
            prop_assert!(d.merges().windows(2).all(|w| w[0].distance <= w[1].distance));
            prop_assert_eq!(d.merges().last().unwrap().size, ps.len());
        }
    }

    #[test]
    fn dbscan_min_pts_one_is_epsilon_components(ps in real_points(1, 80), eps in 5.0..80.0f64) {
        let c = dbscan(&ps, DbscanParams { epsilon: eps, min_pts: 1 }).unwrap();
        prop_assert_eq!(c.noise_count(), 0);
        let comp = epsilon_graph(&ps, eps).unwrap().components();
        let mut groups = std::collections::BTreeMap::<usize, Vec<usize>>::new();
        for (i, &c) in comp.iter().enumerate() {
            groups.entry(c).or_default().push(i);
        }
        prop_assert_eq!(partition(&c), groups.into_values().collect::<BTreeSet<_>>());
    }

    #[test]
    fn dbscan_core_partition_ignores_order(ps in grid_points(4, 30), eps in 0.9..3.0f64, min_pts in 1usize..6, rot in 0usize..30) {
        let n = ps.len();
        let shift = rot % n;
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let permuted = PointSet::new(perm.iter().map(|&i| ps[i]).collect()).unwrap();
        let a = dbscan(&ps, DbscanParams { epsilon: eps, min_pts }).unwrap();
        let b = dbscan(&permuted, DbscanParams { epsilon: eps, min_pts }).unwrap();
        let nbrs = |i: usize| (0..n).filter(|&j| j != i && distance(ps[i], ps[j]) <= eps).count();
        let core: Vec<usize> = (0..n).filter(|&i| nbrs(i) + 1 >= min_pts).collect();
        // core points, grouped by cluster, in original indices
        let group = |c: &Clustering, to_orig: &dyn Fn(usize) -> usize, of: &dyn Fn(usize) -> usize| {
            let mut m = std::collections::BTreeMap::<usize, Vec<usize>>::new();
            for &i in &core {
                m.entry(c.label(of(i)).unwrap()).or_default().push(to_orig(of(i)));
            }
            m.into_values().map(|mut v| { v.sort(); v }).collect::<BTreeSet<_>>()
        };
        let inv: Vec<usize> = { let mut inv = vec![0; n]; for (k, &i) in perm.iter().enumerate() { inv[i] = k; } inv };
        prop_assert_eq!(group(&a, &|i| i, &|i| i), group(&b, &|k| perm[k], &|i| inv[i]));
        // noise is exactly the set of points with no core within eps
        for i in 0..n {
            let reachable = core.iter().any(|&c| c == i || distance(ps[i], ps[c]) <= eps);
            prop_assert_eq!(a.label(i).is_some(), reachable);
        }
    }

    #[test]
    fn kmeans_cost_never_increases(ps in real_points(2, 60), k in 1usize..6, seed in any::<u64>(), pp in any::<bool>()) {
        prop_assume!(k <= ps.len());
        let init = if pp { Init::PlusPlus } else { Init::Uniform };
        let run = kmeans_traced(&ps, k, RngSeed(seed), init, 100).unwrap();
        prop_assert!(run.cost_trace.windows(2).all(|w| w[1] <= w[0]), "{:?}", run.cost_trace);
        prop_assert_eq!(run.clustering.cluster_count(), k);
    }

    #[test]
    fn kmedoids_cost_never_increases(ps in real_points(2, 50), k in 1usize..6, seed in any::<u64>()) {
        prop_assume!(k <= ps.len());
        let run = kmedoids_traced(&ps, k, RngSeed(seed), 100).unwrap();
        prop_assert!(run.cost_trace.windows(2).all(|w| w[1] <= w[0]), "{:?}", run.cost_trace);
        let medoids = run.clustering.medoids().unwrap();
        for (c, &m) in medoids.iter().enumerate() {
            prop_assert_eq!(run.clustering.label(m), Some(c));
        }
    }

    #[test]
    fn hdbscan_structure(ps in real_points(2, 60), min_pts in 1usize..6, mcs in 2usize..8) {
        let out = hdbscan_detailed(&ps, HdbscanParams { min_pts, min_cluster_size: mcs }).unwrap();
        let n = ps.len();
        for e in &out.mst {
            prop_assert!(e.weight >= distance(ps[e.a], ps[e.b]));
        }
        let mr: f64 = out.mst.iter().map(|e| e.weight).sum();
        let eu: f64 = emst_edges(&ps).unwrap().iter().map(|e| e.weight).sum();
        prop_assert!(mr >= eu * (1.0 - 1e-12));
        for &c in &out.selected {
            prop_assert!(out.stability[c - n] > 0.0);
        }
        // no selected cluster is an ancestor of another
        let parent: std::collections::HashMap<usize, usize> =
            out.condensed.iter().filter(|r| r.child >= n).map(|r| (r.child, r.parent)).collect();
        for &c in &out.selected {
            let mut up = parent.get(&c).copied();
            while let Some(p) = up {
                prop_assert!(!out.selected.contains(&p));
                up = parent.get(&p).copied();
            }
        }
        prop_assert!(out.clustering.cluster_count() <= out.selected.len());
    }

    #[test]
    fn mean_shift_stays_in_the_hull_and_translates(
        coords in prop::collection::vec((0..40i32, 0..40i32), 1..40),
        h in 2usize..12,
        dx in -50i32..50,
        dy in -50i32..50,
    ) {
        let ps = distinct(coords.into_iter().map(|(x, y)| (x as f64, y as f64)).collect());
        let params = MeanShiftParams::new(h as f64 + 0.5);
        let a = mean_shift_traced(&ps, params, Search::Auto).unwrap();
        let (lo, hi) = ps.bounds().unwrap();
        for p in &a.converged {
            prop_assert!(p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y);
        }
        let moved = ps.translated(dx as f64, dy as f64);
        let b = mean_shift_traced(&moved, params, Search::Auto).unwrap();
        for (p, q) in a.converged.iter().zip(&b.converged) {
            prop_assert!((p.x + dx as f64 - q.x).abs() < 1e-9 && (p.y + dy as f64 - q.y).abs() < 1e-9);
        }
        prop_assert_eq!(a.clustering.labels(), b.clustering.labels());
    }

    #[test]
    fn ipe_round_trip(coords in prop::collection::vec((-4096i32..4096, -4096i32..4096), 1..60), k in 1usize..4) {
        // multiples of 1/64 survive six printed decimals exactly
        let ps = distinct(coords.into_iter().map(|(x, y)| (x as f64 / 64.0, y as f64 / 64.0)).collect());
        let g = gabriel_graph(&ps).unwrap();
        let c = kmeans_traced(&ps, k.min(ps.len()), RngSeed(7), Init::PlusPlus, 100).unwrap().clustering;
        let doc = Document::new(ps.clone()).with_graph(&g).with_clustering(&c);
        let ipe = write_ipe(&doc);
        let text = std::str::from_utf8(&ipe).unwrap();
        let tree = roxmltree::Document::parse(text).unwrap();
        let paths = tree.descendants().filter(|n| n.has_tag_name("path")).count();
        prop_assert_eq!(paths, g.edge_count());
        let back = parse_points(&ipe, InputFormat::Ipe).unwrap();
        prop_assert_eq!(back.points(), ps.points());
        let svg = write_svg(&doc);
        roxmltree::Document::parse(std::str::from_utf8(&svg).unwrap()).unwrap();
    }
}

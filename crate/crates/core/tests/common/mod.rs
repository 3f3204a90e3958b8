#![allow(dead_code)]

use activegraph::{Graph, Hyper, NodeSet, WeightedGraph};
use rand::Rng;

/// Each pair joined with probability `p`, weight uniform in `1..=max_w`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, max_w: i64) -> Graph {
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v, rng.gen_range(1..=max_w)).unwrap();
            }
        }
    }
    g
}

/// `m` hyperedges of 1 to `max_size` members, weight uniform in `1..=max_w`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize, max_size: usize, max_w: i64) -> Hyper {
    let mut h = Hyper::new(n);
    for _ in 0..m {
        let size = rng.gen_range(1..=max_size.min(n));
        let members = rand::seq::index::sample(rng, n, size).into_vec();
        h.add_edge(rng.gen_range(1..=max_w), members).unwrap();
    }
    h
}

pub fn random_set<R: Rng>(rng: &mut R, n: usize, p: f64) -> NodeSet {
    NodeSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(p))).unwrap()
}

pub fn unit_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    WeightedGraph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1))).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    unit_graph(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    unit_graph(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    unit_graph(n, &edges)
}

pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    unit_graph(n, &edges)
}

/// `k`-cliques on `0..k` and `k..2k` joined by the edge `{k−1, k}`.
pub fn bridged_cliques(k: usize) -> Graph {
    let mut edges = Vec::new();
    for base in [0, k] {
        for i in 0..k {
            for j in i + 1..k {
                edges.push((base + i, base + j));
            }
        }
    }
    edges.push((k - 1, k));
    unit_graph(2 * k, &edges)
}

/// Connected unit-weight graphs on at most 7 nodes.
pub fn connected_suite() -> Vec<(&'static str, Graph)> {
    let mut suite: Vec<(&'static str, Graph)> = vec![
        ("P2", path(2)),
        ("P4", path(4)),
        ("P7", path(7)),
        ("C3", cycle(3)),
        ("C5", cycle(5)),
        ("C6", cycle(6)),
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("S6", star(6)),
        ("bridged triangles", bridged_cliques(3)),
        (
            "tadpole",
            unit_graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]),
        ),
        ("K2,3", unit_graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])),
        (
            "wheel W6",
            unit_graph(
                7,
                &[
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (0, 4),
                    (0, 5),
                    (0, 6),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 6),
                    (6, 1),
                ],
            ),
        ),
        ("tree", unit_graph(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])),
        (
            "house",
            unit_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]),
        ),
    ];
    suite.push((
        "theta",
        unit_graph(6, &[(0, 1), (1, 5), (0, 2), (2, 3), (3, 5), (0, 4), (4, 5)]),
    ));
    suite
}

/// Cubic graphs on at most 10 nodes.
pub fn cubic_suite() -> Vec<(&'static str, Graph)> {
    let prism = |k: usize| {
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push((i, (i + 1) % k));
            edges.push((k + i, k + (i + 1) % k));
            edges.push((i, k + i));
        }
        unit_graph(2 * k, &edges)
    };
    let mobius = |n: usize| {
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n / 2).map(|i| (i, i + n / 2)));
        unit_graph(n, &edges)
    };
    let mut petersen = Vec::new();
    for i in 0..5 {
        petersen.push((i, (i + 1) % 5));
        petersen.push((i, i + 5));
        petersen.push((5 + i, 5 + (i + 2) % 5));
    }
    vec![
        ("K4", complete(4)),
        (
            "K3,3",
            unit_graph(
                6,
                &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
            ),
        ),
        ("triangular prism", prism(3)),
        ("cube", prism(4)),
        ("Wagner", mobius(8)),
        ("pentagonal prism", prism(5)),
        ("Moebius ladder M10", mobius(10)),
        ("Petersen", unit_graph(10, &petersen)),
    ]
}

pub fn is_vertex_cover(g: &Graph, s: &NodeSet) -> bool {
    g.edges().iter().all(|e| s.contains(e.u) || s.contains(e.v))
}

/// Every subset of `0..n` as a set.
pub fn all_subsets(n: usize) -> impl Iterator<Item = NodeSet> {
    (0u64..1 << n).map(move |mask| NodeSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1)).unwrap())
}

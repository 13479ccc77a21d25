//! A fixed set of named small graphs used for cross-checks.

use crate::graph::{
    complement, complete_bipartite, complete_graph, cycle_graph, disjoint_union, johnson_graph,
    kneser_graph, line_graph, path_graph, Graph,
};

fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves).expect("small")
}

/// `(name, graph)` pairs, smallest first within each family.
pub fn corpus() -> Vec<(&'static str, Graph)> {
    let k = |n| complete_graph(n).expect("small");
    let c = |n| cycle_graph(n).expect("small");
    let j = |n, m| johnson_graph(n, m).expect("small");
    let line = |g: &Graph| line_graph(g).expect("small").graph;
    vec![
        ("empty0", Graph::empty(0)),
        ("k1", k(1)),
        ("k2", k(2)),
        ("empty3", Graph::empty(3)),
        ("p3", path_graph(3).expect("small")),
        ("k3", k(3)),
        ("p4", path_graph(4).expect("small")),
        ("c4", c(4)),
        ("k4", k(4)),
        ("star4", star(4)),
        ("c5", c(5)),
        ("k5", k(5)),
        ("k23", complete_bipartite(2, 3).expect("small")),
        ("c6", c(6)),
        ("two_triangles", disjoint_union(&c(3), &c(3))),
        (
            "three_k2",
            disjoint_union(&disjoint_union(&k(2), &k(2)), &k(2)),
        ),
        ("k33", complete_bipartite(3, 3).expect("small")),
        ("j42", j(4, 2)),
        ("line_k4", line(&k(4))),
        ("line_k13", line(&star(3))),
        ("line_k23", line(&complete_bipartite(2, 3).expect("small"))),
        ("c9", c(9)),
        ("petersen", kneser_graph(5, 2).expect("small")),
        ("j52", j(5, 2)),
        ("c4_plus_k1", disjoint_union(&c(4), &k(1))),
        ("j62", j(6, 2)),
        ("j63", j(6, 3)),
        ("line_k6", line(&k(6))),
        ("j72", j(7, 2)),
        ("j73", j(7, 3)),
        ("kneser73", kneser_graph(7, 3).expect("small")),
        ("co_j63", complement(&j(6, 3))),
        ("j84", j(8, 4)),
    ]
}

//! Direct constructions of small named graphs.
//!
//! The exceptional-table graphs are resolved from their roles in
//! [`crate::families`]; these constructions are the structural
//! descriptions they are checked against.

use crate::graph::Graph;

/// K3 with a pendant edge (S4).
pub fn paw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])
}

/// K4 minus an edge.
pub fn diamond() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)])
}

/// K_{1,3} with one edge subdivided: the tree with degrees (3,2,1,1,1).
pub fn chair() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])
}

/// K_{1,2} + K2.
pub fn p3_plus_k2() -> Graph {
    Graph::path(3).disjoint_union(&Graph::complete(2))
}

/// K_{1,2} + 2K2.
pub fn p3_plus_2k2() -> Graph {
    Graph::path(3).disjoint_union(&Graph::matching(2))
}

/// K_{1,4} plus an edge joining two leaves.
pub fn star4_with_chord() -> Graph {
    let mut g = Graph::star(4);
    g.add_edge(1, 2);
    g
}

/// K_{1,4} with one leaf extended by a pendant edge.
pub fn star4_with_tail() -> Graph {
    let mut g = Graph::star(4).with_isolated(1);
    g.add_edge(1, 5);
    g
}

//! Named graphs and tableaux used throughout the tests, the command line
//! tool and the bundled corpus.

use crate::graph::TriGraph;
use crate::tableau::Tableau;

fn graph(n: usize, pairs: &[((usize, usize), (usize, usize))]) -> TriGraph {
    TriGraph::from_pairs(n, pairs).expect("preset graphs are well formed")
}

fn tableau(text: &str) -> Tableau {
    Tableau::parse(text).expect("preset tableaux are well formed")
}

/// Graph of the finite-dimensional modules: `(k+1,i) -> (k,i)` and
/// `(k,i) -> (k+1,i+1)` for every `k < n`.
pub fn finite_dimensional_graph(n: usize) -> TriGraph {
    let mut pairs = Vec::new();
    for k in 1..n {
        for i in 1..=k {
            pairs.push(((k + 1, i), (k, i)));
            pairs.push(((k, i), (k + 1, i + 1)));
        }
    }
    graph(n, &pairs)
}

/// Rank-4 graph of a generic Verma module: one descending staircase.
pub fn verma_graph() -> TriGraph {
    graph(
        4,
        &[
            ((4, 1), (3, 1)),
            ((4, 2), (3, 2)),
            ((4, 3), (3, 3)),
            ((3, 1), (2, 1)),
            ((3, 2), (2, 2)),
            ((2, 1), (1, 1)),
        ],
    )
}

/// Rank-4 graph of a cuspidal-type module.
pub fn cuspidal_graph() -> TriGraph {
    graph(
        4,
        &[
            ((4, 2), (3, 2)),
            ((4, 3), (3, 3)),
            ((3, 2), (2, 2)),
            ((3, 2), (4, 3)),
            ((3, 3), (4, 4)),
            ((2, 2), (3, 3)),
        ],
    )
}

/// The four rank-4 reference graphs, in the order finite-dimensional,
/// generic (no arrows), generic Verma, cuspidal.
pub fn family_graphs() -> Vec<(&'static str, TriGraph)> {
    vec![
        ("finite-dimensional", finite_dimensional_graph(4)),
        ("generic", TriGraph::empty(4)),
        ("verma", verma_graph()),
        ("cuspidal", cuspidal_graph()),
    ]
}

/// Rank-3 graph `(3,2) -> (2,2) -> (3,3)`.
pub fn rank3_graph() -> TriGraph {
    graph(3, &[((3, 2), (2, 2)), ((2, 2), (3, 3))])
}

/// Realization of [`rank3_graph`] with one free integral pair in row 2.
pub fn rank3_seed() -> Tableau {
    tableau("pi,2,1 | pi+2,2 | 0")
}

/// Same graph as [`rank3_graph`], used to contrast satisfaction with
/// realization.
pub fn realization_demo_graph() -> TriGraph {
    rank3_graph()
}

/// Two tableaux satisfying [`realization_demo_graph`] and the empty graph;
/// only the second is a realization of either.
pub fn realization_demo_tableaux() -> (Tableau, Tableau) {
    (tableau("pi,2,1 | 2,2 | 0"), tableau("pi,2,1 | sqrt2,2 | 0"))
}

/// Rank-4 graph with a path from `(2,1)` through three rows.
pub fn closure_demo_graph() -> TriGraph {
    graph(
        4,
        &[
            ((4, 3), (3, 3)),
            ((3, 2), (2, 2)),
            ((3, 2), (4, 3)),
            ((3, 3), (4, 4)),
            ((2, 1), (3, 2)),
            ((2, 1), (1, 1)),
            ((2, 2), (3, 3)),
            ((1, 1), (2, 2)),
        ],
    )
}

pub fn closure_demo_tableau() -> Tableau {
    tableau("pi,pi,0,-1 | pi,2,0 | 3,2 | 3")
}

/// Rank-4 graph whose arrows form a diamond on rows 1 to 3.
pub fn diamond_graph() -> TriGraph {
    graph(
        4,
        &[((3, 2), (2, 2)), ((2, 1), (3, 2)), ((2, 1), (1, 1)), ((1, 1), (2, 2))],
    )
}

/// Realization of [`diamond_graph`] with four integral pairs between rows 3
/// and 4 outside the graph.
pub fn diamond_tableau() -> Tableau {
    tableau("pi,1,0,sqrt2 | pi,2,sqrt2 | 3,2 | 3")
}

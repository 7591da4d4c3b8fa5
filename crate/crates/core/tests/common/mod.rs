#![allow(dead_code)]

use tdcut::{make_objective, Objective, Problem, Rational, WeightedDigraph};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    q(n, 1)
}

pub fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedDigraph {
    WeightedDigraph::from_undirected_edges(n, edges.iter().map(|&(u, v)| (u, v, int(1))))
}

/// Preset with a fixed β = 1/3 for the balanced problem.
pub fn objective(p: Problem, n: usize) -> Objective {
    let beta = (p == Problem::BalancedMinCut).then(|| q(1, 3));
    make_objective(p, n, beta).unwrap()
}

/// `α(∂S)` by direct summation over the arc list.
pub fn cut_by_hand(g: &WeightedDigraph, set: &[usize]) -> Rational {
    let mut w = int(0);
    for (u, v, x) in g.arcs() {
        if set.contains(u) && !set.contains(v) {
            w += x;
        }
    }
    w
}

use std::collections::BTreeSet;

use super::{shrink, TreeDecomposition};
use crate::graph::WeightedDigraph;

/// Decomposition from a min-degree elimination ordering of the underlying
/// undirected graph, shrunk before it is returned. Its width is an upper
/// bound on the treewidth, not necessarily the treewidth itself.
pub fn greedy_decomposition(g: &WeightedDigraph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![], vec![], 0);
    }
    let mut adj: Vec<BTreeSet<usize>> = g
        .neighbours()
        .into_iter()
        .map(|x| x.into_iter().collect())
        .collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![0; n];
    let mut bags = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);

    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("a vertex remains");
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        eliminated[v] = true;
        position[v] = step;
        order.push(v);
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
    }

    // Bag `step` hangs below the bag of its earliest-eliminated neighbour;
    // bags without neighbours hang below the final bag.
    let last = n - 1;
    let mut edges = Vec::with_capacity(n - 1);
    for (step, bag) in bags.iter().enumerate().take(last) {
        let v = order[step];
        let parent = bag
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| position[u])
            .min()
            .unwrap_or(last);
        edges.push((parent, step));
    }
    shrink(&TreeDecomposition::new(bags, edges, last))
}

//! Tree decompositions: representation, validation, shrinking, and the
//! conversion to nice form used by the dynamic program.

mod greedy;
mod io;
mod nice;
mod random;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::graph::WeightedDigraph;

pub use greedy::greedy_decomposition;
pub use io::{parse_td, write_td, ParsedTd, TdParseError};
pub use nice::{annotate_forgotten, nicify, Forgotten, NiceNode, NiceTreeDecomposition, NodeKind};
pub use random::{random_instance, InstanceParams};

/// A violated tree-decomposition property, with a witness.
///
/// Vertices are 0-indexed; `Display` prints them 1-indexed like the file
/// formats do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    UnknownVertex { node: usize, vertex: usize },
    NodeNotCovered(usize),
    EdgeNotCovered(usize, usize),
    CoherenceBroken(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "NotATree: {why}"),
            Violation::UnknownVertex { node, vertex } => {
                write!(f, "UnknownVertex: bag {} holds vertex {}", node + 1, vertex + 1)
            }
            Violation::NodeNotCovered(v) => write!(f, "NodeNotCovered({})", v + 1),
            Violation::EdgeNotCovered(u, v) => write!(f, "EdgeNotCovered({}, {})", u + 1, v + 1),
            Violation::CoherenceBroken(v) => write!(f, "CoherenceBroken({})", v + 1),
        }
    }
}

impl std::error::Error for Violation {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdError {
    #[error("invalid decomposition: {0}")]
    Invalid(#[from] Violation),
    #[error("decomposition has {nodes} nodes, more than the {limit} allowed for nicification; shrink it first")]
    NotSmall { nodes: usize, limit: usize },
    #[error("forgotten sets of join children intersect at vertex {}", .0 + 1)]
    CoherenceBroken(usize),
}

/// A rooted tree of bags. Bags are kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    root: usize,
}

/// Parent/child view of a decomposition whose edges form a tree.
#[derive(Clone, Debug)]
pub(crate) struct Rooted {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Pre-order, root first.
    pub order: Vec<usize>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>, root: usize) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges, root }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn with_root(mut self, root: usize) -> Self {
        self.root = root;
        self
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (zero for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub(crate) fn rooted(&self) -> Result<Rooted, Violation> {
        let k = self.bags.len();
        if k == 0 {
            return Err(Violation::NotATree("no nodes".into()));
        }
        if self.root >= k {
            return Err(Violation::NotATree(format!("root {} does not exist", self.root + 1)));
        }
        if self.edges.len() != k - 1 {
            return Err(Violation::NotATree(format!(
                "{} nodes need {} edges, found {}",
                k,
                k - 1,
                self.edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &self.edges {
            if a >= k || b >= k || a == b {
                return Err(Violation::NotATree(format!("bad edge ({}, {})", a + 1, b + 1)));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; k];
        let mut children = vec![Vec::new(); k];
        let mut seen = vec![false; k];
        let mut order = Vec::with_capacity(k);
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(i) = stack.pop() {
            order.push(i);
            for &j in adj[i].iter().rev() {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some(i);
                    children[i].push(j);
                    stack.push(j);
                }
            }
        }
        if order.len() != k {
            return Err(Violation::NotATree("bag tree is disconnected".into()));
        }
        Ok(Rooted { parent, children, order })
    }
}

/// Checks tree shape, node coverage, edge coverage and coherence, in that
/// order, and reports the first violation found.
pub fn validate(g: &WeightedDigraph, td: &TreeDecomposition) -> Result<(), Violation> {
    let n = g.n();
    if n == 0 && td.bags.is_empty() {
        return Ok(());
    }
    let rooted = td.rooted()?;

    let mut covered = vec![false; n];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Violation::UnknownVertex { node, vertex: v });
            }
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(Violation::NodeNotCovered(v));
    }

    let mut pairs = HashSet::new();
    for bag in &td.bags {
        for (a, &u) in bag.iter().enumerate() {
            for &v in &bag[a + 1..] {
                pairs.insert((u, v));
            }
        }
    }
    if let Some((u, v)) = g.adjacent_pairs().into_iter().find(|p| !pairs.contains(p)) {
        return Err(Violation::EdgeNotCovered(u, v));
    }

    // A vertex's nodes are connected iff exactly one of them has a parent
    // (or no parent) whose bag misses the vertex.
    let mut tops = vec![0usize; n];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            let parent_has = rooted.parent[node]
                .map(|p| td.bags[p].binary_search(&v).is_ok())
                .unwrap_or(false);
            if !parent_has {
                tops[v] += 1;
            }
        }
    }
    if let Some(v) = tops.iter().position(|&t| t > 1) {
        return Err(Violation::CoherenceBroken(v));
    }
    Ok(())
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// Merges every node whose bag is contained in its parent's bag into the
/// parent until no such pair remains. The result of a valid input is valid,
/// has the same width, and has at most `n + 1` nodes.
pub fn shrink(td: &TreeDecomposition) -> TreeDecomposition {
    let rooted = match td.rooted() {
        Ok(r) => r,
        Err(_) => return td.clone(),
    };
    let mut new_index = vec![usize::MAX; td.bags.len()];
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    new_index[td.root] = 0;
    bags.push(td.bags[td.root].clone());

    // (original node, surviving ancestor it would attach to)
    let mut stack: Vec<(usize, usize)> = rooted.children[td.root]
        .iter()
        .map(|&c| (c, td.root))
        .collect();
    while let Some((node, keeper)) = stack.pop() {
        if is_subset(&td.bags[node], &td.bags[keeper]) {
            stack.extend(rooted.children[node].iter().map(|&c| (c, keeper)));
        } else {
            new_index[node] = bags.len();
            bags.push(td.bags[node].clone());
            edges.push((new_index[keeper], new_index[node]));
            stack.extend(rooted.children[node].iter().map(|&c| (c, node)));
        }
    }
    TreeDecomposition { bags, edges, root: 0 }
}

/// Validates, shrinks and nicifies `td` for `g`.
pub fn prepare(g: &WeightedDigraph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition, TdError> {
    validate(g, td)?;
    nicify(&shrink(td), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedDigraph {
        WeightedDigraph::from_undirected_edges(
            n,
            edges.iter().map(|&(u, v)| (u, v, Rational::from_integer(1.into()))),
        )
    }

    #[test]
    fn single_full_bag_is_valid() {
        let g = unit_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let td = TreeDecomposition::new(vec![vec![0, 1, 2, 3]], vec![], 0);
        assert_eq!(validate(&g, &td), Ok(()));
    }

    #[test]
    fn path_decomposition_of_p3() {
        let g = unit_graph(3, &[(0, 1), (1, 2)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)], 0);
        assert_eq!(validate(&g, &td), Ok(()));
        let g2 = unit_graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(validate(&g2, &td), Err(Violation::EdgeNotCovered(0, 2)));
    }

    #[test]
    fn violations() {
        let g = unit_graph(3, &[(0, 1)]);
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![], 0);
        assert_eq!(validate(&g, &td), Err(Violation::NodeNotCovered(2)));

        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![2], vec![0, 2]],
            vec![(0, 1), (1, 2)],
            0,
        );
        assert_eq!(validate(&g, &td), Err(Violation::CoherenceBroken(0)));

        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![], 0);
        assert!(matches!(validate(&g, &td), Err(Violation::NotATree(_))));

        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1), (1, 0)], 0);
        assert!(matches!(validate(&g, &td), Err(Violation::NotATree(_))));

        let td = TreeDecomposition::new(vec![vec![0, 1, 7], vec![2]], vec![(0, 1)], 0);
        assert_eq!(validate(&g, &td), Err(Violation::UnknownVertex { node: 0, vertex: 7 }));
    }

    #[test]
    fn shrink_chain_of_equal_bags() {
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![0, 1], vec![0, 1]],
            vec![(0, 1), (1, 2)],
            0,
        );
        let s = shrink(&td);
        assert_eq!(s.bags(), &[vec![0, 1]]);
        assert!(s.edges().is_empty());
    }

    #[test]
    fn shrink_merges_middle_subset() {
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1], vec![1, 2]],
            vec![(0, 1), (1, 2)],
            0,
        );
        let s = shrink(&td);
        assert_eq!(s.bags(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(s.edges(), &[(0, 1)]);
        let g = unit_graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(validate(&g, &s), Ok(()));
    }

    #[test]
    fn shrink_fixed_point() {
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)], 0);
        assert_eq!(shrink(&td), td);
    }

    #[test]
    fn width() {
        let td = TreeDecomposition::new(vec![vec![0, 1, 2], vec![1, 2]], vec![(0, 1)], 1);
        assert_eq!(td.width(), 2);
    }
}

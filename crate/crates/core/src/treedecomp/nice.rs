use bitvec::prelude::*;

use super::{validate, Rooted, TdError, TreeDecomposition, Violation};
use crate::graph::WeightedDigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    /// Sorted ascending; bit `p` of a subset mask refers to `bag[p]`.
    pub bag: Vec<usize>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
    /// `|F_i|`, the number of vertices forgotten below this node.
    pub forgotten: usize,
    /// `|Y_i| = |F_i| + |X_i|`.
    pub y_size: usize,
}

/// A nice tree decomposition. Nodes are stored in post-order, so every
/// child index is smaller than its parent's and the root is last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    n: usize,
}

/// `F_i` and `|Y_i|` of one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forgotten {
    pub set: BitVec,
    pub y_size: usize,
}

impl Forgotten {
    pub fn vertices(&self) -> Vec<usize> {
        self.set.iter_ones().collect()
    }
}

impl NiceTreeDecomposition {
    /// Wraps hand-built nodes (post-order, root last), checking the kind
    /// predicates and filling in the forgotten-set annotation.
    pub fn from_nodes(n: usize, nodes: Vec<NiceNode>) -> Result<Self, TdError> {
        let mut nd = NiceTreeDecomposition { nodes, n };
        nd.check_kinds()?;
        nd.annotate()?;
        Ok(nd)
    }

    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NiceNode {
        &self.nodes[i]
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Counts of (leaf, introduce, forget, join) nodes.
    pub fn kind_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for node in &self.nodes {
            let k = match node.kind {
                NodeKind::Leaf => 0,
                NodeKind::Introduce(_) => 1,
                NodeKind::Forget(_) => 2,
                NodeKind::Join => 3,
            };
            counts[k] += 1;
        }
        counts
    }

    /// `Σ |F_j| · |F_k|` over join nodes with children `j`, `k`.
    pub fn join_pair_sum(&self) -> u128 {
        self.nodes
            .iter()
            .filter(|x| x.kind == NodeKind::Join)
            .map(|x| {
                self.nodes[x.children[0]].forgotten as u128
                    * self.nodes[x.children[1]].forgotten as u128
            })
            .sum()
    }

    /// The same tree as a plain decomposition, rooted at the last node.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (i, c)))
            .collect();
        TreeDecomposition::new(bags, edges, self.root())
    }

    fn check_kinds(&self) -> Result<(), TdError> {
        let bad = |i: usize, why: &str| {
            Err(TdError::Invalid(Violation::NotATree(format!("node {}: {why}", i + 1))))
        };
        if self.nodes.is_empty() {
            return bad(0, "empty decomposition");
        }
        let mut has_parent = vec![false; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(i, "bag not sorted");
            }
            for &c in &node.children {
                if c >= i || has_parent[c] {
                    return bad(i, "children must precede parents and have one parent");
                }
                has_parent[c] = true;
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match (node.kind, node.children.len()) {
                (NodeKind::Leaf, 0) => true,
                (NodeKind::Introduce(v), 1) => {
                    node.bag.binary_search(&v).is_ok()
                        && child_bag(0).binary_search(&v).is_err()
                        && node.bag.len() == child_bag(0).len() + 1
                        && super::is_subset(child_bag(0), &node.bag)
                }
                (NodeKind::Forget(v), 1) => {
                    node.bag.binary_search(&v).is_err()
                        && child_bag(0).binary_search(&v).is_ok()
                        && node.bag.len() + 1 == child_bag(0).len()
                        && super::is_subset(&node.bag, child_bag(0))
                }
                (NodeKind::Join, 2) => *child_bag(0) == node.bag && *child_bag(1) == node.bag,
                _ => false,
            };
            if !ok {
                return bad(i, "kind predicate violated");
            }
        }
        if has_parent[..self.nodes.len() - 1].iter().any(|p| !p) {
            return bad(0, "more than one root");
        }
        Ok(())
    }

    fn annotate(&mut self) -> Result<(), TdError> {
        let annotation = annotate_forgotten(self)?;
        for (node, a) in self.nodes.iter_mut().zip(annotation) {
            node.forgotten = a.set.count_ones();
            node.y_size = a.y_size;
        }
        Ok(())
    }
}

/// Computes `F_i` and `|Y_i|` bottom-up: nothing is forgotten at a leaf,
/// introduce nodes inherit, forget nodes add their vertex, and join nodes
/// take the disjoint union of both children.
pub fn annotate_forgotten(nd: &NiceTreeDecomposition) -> Result<Vec<Forgotten>, TdError> {
    let mut out: Vec<Forgotten> = Vec::with_capacity(nd.nodes.len());
    for node in &nd.nodes {
        let set = match node.kind {
            NodeKind::Leaf => bitvec![0; nd.n],
            NodeKind::Introduce(_) => out[node.children[0]].set.clone(),
            NodeKind::Forget(v) => {
                let mut set = out[node.children[0]].set.clone();
                set.set(v, true);
                set
            }
            NodeKind::Join => {
                let left = &out[node.children[0]].set;
                let right = &out[node.children[1]].set;
                let mut common = left.clone();
                common &= right.as_bitslice();
                if let Some(v) = common.first_one() {
                    return Err(TdError::CoherenceBroken(v));
                }
                let mut set = left.clone();
                set |= right.as_bitslice();
                set
            }
        };
        let y_size = set.count_ones() + node.bag.len();
        out.push(Forgotten { set, y_size });
    }
    Ok(out)
}

/// Grows every bag to `width + 1` vertices by borrowing from a neighbour
/// bag that is already full. Afterwards each tree edge forgets exactly as
/// many vertices as it introduces.
fn pad_bags(td: &TreeDecomposition, rooted: &Rooted) -> Vec<Vec<usize>> {
    let mut bags = td.bags.clone();
    let target = td.width() + 1;
    let k = bags.len();
    let mut adj = vec![Vec::new(); k];
    for (i, p) in rooted.parent.iter().enumerate() {
        if let Some(p) = *p {
            adj[i].push(p);
            adj[p].push(i);
        }
    }
    let Some(start) = (0..k).find(|&i| bags[i].len() == target) else {
        return bags;
    };
    let mut seen = vec![false; k];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if bags[j].len() < target {
                let missing = target - bags[j].len();
                let extra: Vec<usize> = bags[i]
                    .iter()
                    .copied()
                    .filter(|v| bags[j].binary_search(v).is_err())
                    .take(missing)
                    .collect();
                bags[j].extend(extra);
                bags[j].sort_unstable();
            }
            queue.push_back(j);
        }
    }
    bags
}

fn sorted_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect()
}

/// Converts a valid, small decomposition into a nice one of the same width.
///
/// Bags are first padded to full size. Each parent/child pair with
/// different bags becomes a run of forget nodes followed by introduce
/// nodes, and a node with `m` children becomes `m - 1` join nodes. Leaf bags
/// are kept whole. For a shrunk input the result has at most `4n` nodes.
pub fn nicify(td: &TreeDecomposition, g: &WeightedDigraph) -> Result<NiceTreeDecomposition, TdError> {
    let n = g.n();
    let limit = 4 * (n + 1);
    if td.node_count() > limit {
        return Err(TdError::NotSmall { nodes: td.node_count(), limit });
    }
    validate(g, td)?;
    if td.node_count() == 0 {
        return NiceTreeDecomposition::from_nodes(
            n,
            vec![NiceNode { bag: vec![], kind: NodeKind::Leaf, children: vec![], forgotten: 0, y_size: 0 }],
        );
    }
    let rooted = td.rooted()?;
    let bags = pad_bags(td, &rooted);

    let mut nodes: Vec<NiceNode> = Vec::new();
    let push = |nodes: &mut Vec<NiceNode>, bag: Vec<usize>, kind, children| {
        nodes.push(NiceNode { bag, kind, children, forgotten: 0, y_size: 0 });
        nodes.len() - 1
    };
    // Top of the nice subtree built for each original node.
    let mut top = vec![usize::MAX; bags.len()];
    for &i in rooted.order.iter().rev() {
        let bag = &bags[i];
        let mut branches = Vec::new();
        for &c in &rooted.children[i] {
            let mut cur = top[c];
            let mut cur_bag = bags[c].clone();
            for v in sorted_difference(&bags[c], bag) {
                cur_bag.retain(|&x| x != v);
                cur = push(&mut nodes, cur_bag.clone(), NodeKind::Forget(v), vec![cur]);
            }
            for v in sorted_difference(bag, &bags[c]) {
                let pos = cur_bag.binary_search(&v).unwrap_err();
                cur_bag.insert(pos, v);
                cur = push(&mut nodes, cur_bag.clone(), NodeKind::Introduce(v), vec![cur]);
            }
            branches.push(cur);
        }
        top[i] = match branches.split_first() {
            None => push(&mut nodes, bag.clone(), NodeKind::Leaf, vec![]),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &b| {
                push(&mut nodes, bag.clone(), NodeKind::Join, vec![acc, b])
            }),
        };
    }
    debug_assert_eq!(top[td.root], nodes.len() - 1);
    NiceTreeDecomposition::from_nodes(n, nodes)
}

//! The dynamic program over a nice tree decomposition.
//!
//! For every node `i` the table `Γ_i(ℓ, S)` holds, among all cuts made of
//! the bag subset `S` and `ℓ` vertices forgotten below `i`, one whose
//! `(|S|, α(∂S ∩ Y_i²))` is maximal under the order induced by `f`. Because
//! `f(ν, ·)` is monotone or antitone for each fixed `ν`, a single extremal
//! weight per entry suffices. Tables are built bottom-up with one recurrence
//! per node kind, and the root table is folded into `Φ`.

mod table;
mod weight;
mod witness;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::graph::WeightedDigraph;
use crate::objective::{CutValue, Direction, Objective, Optimum};
use crate::rational::{abs_sum, common_denominator, Rational};
use crate::treedecomp::{NiceTreeDecomposition, NodeKind};

pub use table::DpTable;
pub use weight::Weight;
pub use witness::reconstruct_witness;

use table::{insert_bit, remove_bit};

/// Bags above this size would need tables with more than `2^28` rows.
pub const MAX_BAG: usize = 28;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DpError {
    #[error("bag of {0} vertices exceeds the supported maximum of {MAX_BAG}")]
    TooWide(usize),
    #[error("decomposition is for {decomposition} vertices but the graph has {graph}")]
    SizeMismatch { graph: usize, decomposition: usize },
    #[error("objective is for {objective} vertices but the graph has {graph}")]
    ObjectiveMismatch { graph: usize, objective: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Supremum of two values under the quasiorder induced by `f`: `⊥` loses
/// to everything and on equal `f`-images the first argument wins.
pub fn sup(a: Option<CutValue>, b: Option<CutValue>, obj: &Objective) -> Option<CutValue> {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => {
            if obj.f(b.count, &b.weight) > obj.f(a.count, &a.weight) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// Table builders for one graph and objective, working on integer weights
/// scaled by a common denominator.
#[derive(Clone, Debug)]
pub struct Engine<'a, W> {
    graph: &'a WeightedDigraph,
    objective: &'a Objective,
    scale: BigInt,
    weights: HashMap<(usize, usize), W>,
}

impl<'a, W: Weight> Engine<'a, W> {
    /// Returns `None` if some scaled weight does not fit `W`.
    pub fn new(graph: &'a WeightedDigraph, objective: &'a Objective) -> Option<Self> {
        let scale = common_denominator(graph.arcs().iter().map(|(_, _, w)| w));
        let mut weights = HashMap::with_capacity(graph.arc_count());
        for (u, v, w) in graph.arcs() {
            let scaled = (w * Rational::from_integer(scale.clone())).to_integer();
            weights.insert((*u, *v), W::from_bigint(&scaled)?);
        }
        Some(Engine { graph, objective, scale, weights })
    }

    pub fn graph(&self) -> &WeightedDigraph {
        self.graph
    }

    pub fn objective(&self) -> &Objective {
        self.objective
    }

    /// Converts a scaled table weight back to the exact rational.
    pub fn unscale(&self, weight: &W) -> Rational {
        Rational::new(weight.to_bigint(), self.scale.clone())
    }

    pub fn cut_value(&self, table: &DpTable<W>, level: usize, mask: usize) -> CutValue {
        let (count, weight) = table.get(level, mask);
        CutValue::new(count, self.unscale(weight))
    }

    #[inline]
    fn w(&self, u: usize, v: usize) -> W {
        self.weights.get(&(u, v)).cloned().unwrap_or_else(W::zero)
    }

    /// `local[p][q]` is the weight of `bag[p] → bag[q]`.
    fn local_matrix(&self, bag: &[usize]) -> Vec<Vec<W>> {
        bag.iter()
            .map(|&u| bag.iter().map(|&v| self.w(u, v)).collect())
            .collect()
    }

    /// Whether `candidate` beats `current`, both of the given count. Since
    /// `f(count, ·)` is either constant or strictly monotone/antitone, this
    /// matches comparing the `f`-images, with ties going to `current`.
    #[inline]
    fn better(&self, count: usize, current: &W, candidate: &W) -> bool {
        if self.objective.is_flat_at(count) {
            return false;
        }
        match self.objective.direction() {
            Direction::Monotone => candidate > current,
            Direction::Antitone => candidate < current,
        }
    }

    /// For every `S ⊆ bag`, the weight of arcs from `S` to `bag ∖ S`.
    ///
    /// Each non-empty `S` is `S' ⊎ {v}` with `v` at the highest set position;
    /// moving `v` into the selection adds its arcs to `bag ∖ S'` and removes
    /// the arcs from `S'` into `v`.
    pub fn bag_cut_profile(&self, bag: &[usize]) -> Vec<W> {
        let k = bag.len();
        let local = self.local_matrix(bag);
        let mut profile = Vec::with_capacity(1 << k);
        profile.push(W::zero());
        for mask in 1usize..1 << k {
            let p = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let rest = mask ^ (1 << p);
            let mut w = profile[rest].clone();
            for q in 0..k {
                if rest >> q & 1 == 1 {
                    w = w.sub(&local[q][p]);
                } else {
                    w = w.add(&local[p][q]);
                }
            }
            profile.push(w);
        }
        profile
    }

    pub fn leaf_table(&self, bag: &[usize]) -> DpTable<W> {
        let mut table = DpTable::with_capacity(bag.to_vec(), 0);
        for (mask, w) in self.bag_cut_profile(bag).into_iter().enumerate() {
            table.push(mask.count_ones() as usize, w);
        }
        table
    }

    /// Parent table of a forget node: with `ℓ ≥ 1` the forgotten vertex
    /// is either one of the `ℓ` extra vertices or not selected at all.
    pub fn forget_table(&self, child: &DpTable<W>, vertex: usize) -> DpTable<W> {
        let pos = child
            .bag
            .binary_search(&vertex)
            .expect("forgotten vertex is in the child bag");
        let mut bag = child.bag.clone();
        bag.remove(pos);
        let k = bag.len();
        let forgotten = child.forgotten + 1;
        let mut table = DpTable::with_capacity(bag, forgotten);
        for level in 0..=forgotten {
            for mask in 0..1usize << k {
                let count = level + mask.count_ones() as usize;
                let with = (level >= 1).then(|| child.get(level - 1, insert_bit(mask, pos, true)));
                let without = (level <= child.forgotten).then(|| child.get(level, insert_bit(mask, pos, false)));
                let weight = match (with, without) {
                    (Some((_, a)), Some((_, b))) => {
                        if self.better(count, a, b) { b.clone() } else { a.clone() }
                    }
                    (Some((_, a)), None) => a.clone(),
                    (None, Some((_, b))) => b.clone(),
                    (None, None) => unreachable!("one operand is always in range"),
                };
                table.push(count, weight);
            }
        }
        table
    }

    /// The additive term of an introduce node for every `S ⊆ bag`: the arcs
    /// from the new vertex to `bag ∖ S` when it is selected, the arcs from
    /// `S` into it otherwise. It does not depend on `ℓ`.
    pub fn introduce_delta(&self, bag: &[usize], vertex: usize) -> Vec<W> {
        let pos = bag.binary_search(&vertex).expect("introduced vertex is in the bag");
        let k = bag.len();
        let local = self.local_matrix(bag);
        (0..1usize << k)
            .map(|mask| {
                let selected = mask >> pos & 1 == 1;
                (0..k)
                    .filter(|&q| q != pos && (mask >> q & 1 == 1) != selected)
                    .fold(W::zero(), |acc, q| {
                        if selected {
                            acc.add(&local[pos][q])
                        } else {
                            acc.add(&local[q][pos])
                        }
                    })
            })
            .collect()
    }

    pub fn introduce_table(&self, child: &DpTable<W>, vertex: usize, bag: &[usize]) -> DpTable<W> {
        let pos = bag.binary_search(&vertex).expect("introduced vertex is in the bag");
        let delta = self.introduce_delta(bag, vertex);
        let mut table = DpTable::with_capacity(bag.to_vec(), child.forgotten);
        for level in 0..=child.forgotten {
            for (mask, d) in delta.iter().enumerate() {
                let (count, w) = child.get(level, remove_bit(mask, pos));
                table.push(count + (mask >> pos & 1), w.add(d));
            }
        }
        table
    }

    /// Parent table of a join node: the best split of `ℓ` between both
    /// children, minus the bag vertices and intra-bag cut arcs that both
    /// children count.
    pub fn join_table(&self, left: &DpTable<W>, right: &DpTable<W>) -> DpTable<W> {
        debug_assert_eq!(left.bag, right.bag);
        let bag = left.bag.clone();
        let k = bag.len();
        let profile = self.bag_cut_profile(&bag);
        let forgotten = left.forgotten + right.forgotten;
        let mut table = DpTable::with_capacity(bag, forgotten);
        for level in 0..=forgotten {
            let lo = level.saturating_sub(right.forgotten);
            let hi = level.min(left.forgotten);
            for (mask, p) in profile.iter().enumerate().take(1 << k) {
                let count = level + mask.count_ones() as usize;
                let mut best: Option<W> = None;
                for l1 in lo..=hi {
                    let w = left.get(l1, mask).1.add(right.get(level - l1, mask).1);
                    best = match best {
                        Some(cur) if !self.better(count, &cur, &w) => Some(cur),
                        _ => Some(w),
                    };
                }
                table.push(count, best.expect("split range is non-empty").sub(p));
            }
        }
        table
    }

    /// `Φ`: the supremum of all root entries whose count is valid, with the
    /// `(ℓ, S)` that attains it. `None` when no count is valid.
    pub fn root_aggregate(&self, root: &DpTable<W>) -> Option<(CutValue, (usize, usize))> {
        let mut best: Option<(CutValue, (usize, usize))> = None;
        let mut best_f = None;
        for level in 0..=root.forgotten {
            for mask in 0..root.subsets() {
                let (count, _) = root.get(level, mask);
                if !self.objective.valid(count) {
                    continue;
                }
                let value = self.cut_value(root, level, mask);
                let f = self.objective.f(value.count, &value.weight);
                // Same outcome as `sup(best, value)`: strict improvement only.
                if best_f.as_ref().is_none_or(|b| f > *b) {
                    best_f = Some(f);
                    best = Some((value, (level, mask)));
                }
            }
        }
        best
    }

    /// Builds the table of `node` from its children's tables.
    pub fn node_table(&self, nd: &NiceTreeDecomposition, node: usize, children: &[&DpTable<W>]) -> DpTable<W> {
        let x = nd.node(node);
        match x.kind {
            NodeKind::Leaf => self.leaf_table(&x.bag),
            NodeKind::Forget(v) => self.forget_table(children[0], v),
            NodeKind::Introduce(v) => self.introduce_table(children[0], v, &x.bag),
            NodeKind::Join => self.join_table(children[0], children[1]),
        }
    }

    /// All tables in node order.
    pub fn build_tables(&self, nd: &NiceTreeDecomposition) -> Vec<DpTable<W>> {
        let mut tables: Vec<DpTable<W>> = Vec::with_capacity(nd.len());
        for i in 0..nd.len() {
            let children: Vec<&DpTable<W>> = nd.node(i).children.iter().map(|&c| &tables[c]).collect();
            let t = self.node_table(nd, i, &children);
            tables.push(t);
        }
        tables
    }

    /// Root table only, dropping every child table once its parent exists.
    fn root_table(&self, nd: &NiceTreeDecomposition) -> (DpTable<W>, u64) {
        let mut tables: Vec<Option<DpTable<W>>> = vec![None; nd.len()];
        let mut entries = 0u64;
        for i in 0..nd.len() {
            let children: Vec<DpTable<W>> = nd
                .node(i)
                .children
                .iter()
                .map(|&c| tables[c].take().expect("child table is built"))
                .collect();
            let refs: Vec<&DpTable<W>> = children.iter().collect();
            let t = self.node_table(nd, i, &refs);
            debug_assert!(t.counts_consistent());
            entries += t.len() as u64;
            tables[i] = Some(t);
        }
        (tables.pop().flatten().expect("root table"), entries)
    }
}

/// Instance and run statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveStats {
    pub n: usize,
    pub arcs: usize,
    pub width: usize,
    pub nodes: usize,
    pub leaf_nodes: usize,
    pub introduce_nodes: usize,
    pub forget_nodes: usize,
    pub join_nodes: usize,
    /// `Σ |F_j| · |F_k|` over join nodes; never above `n²`.
    pub join_pair_sum: u128,
    pub table_entries: u64,
    /// Whether arbitrary-precision table weights were needed.
    pub big_weights: bool,
    pub self_loops_dropped: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub problem: crate::objective::Problem,
    pub optimum: Optimum,
    /// `Φ`; `None` stands for `⊥`.
    pub phi: Option<CutValue>,
    /// Sorted, 0-indexed vertices of an optimal set.
    pub witness: Option<Vec<usize>>,
    pub stats: SolveStats,
}

/// Runs the dynamic program and reports the optimum, optionally with an
/// optimal vertex set. Without a witness only the tables on the current
/// frontier are kept in memory.
pub fn solve(
    graph: &WeightedDigraph,
    nd: &NiceTreeDecomposition,
    objective: &Objective,
    want_witness: bool,
) -> Result<SolveReport, DpError> {
    if nd.n() != graph.n() {
        return Err(DpError::SizeMismatch { graph: graph.n(), decomposition: nd.n() });
    }
    if objective.n() != graph.n() {
        return Err(DpError::ObjectiveMismatch { graph: graph.n(), objective: objective.n() });
    }
    if let Some(big) = nd.nodes().iter().map(|x| x.bag.len()).find(|&k| k > MAX_BAG) {
        return Err(DpError::TooWide(big));
    }
    let start = Instant::now();

    // Every table weight is a signed sum of distinct arc weights, and a
    // join adds two of them, so twice the absolute total bounds everything.
    let scale = common_denominator(graph.arcs().iter().map(|(_, _, w)| w));
    let bound = (abs_sum(graph.arcs().iter().map(|(_, _, w)| w)) * Rational::from_integer(scale) * Rational::from_integer(4.into()))
        .ceil()
        .to_integer();
    let fits = bound.abs().to_i64().is_some();

    let attempt = if fits {
        Engine::<i64>::new(graph, objective).map(|e| run(&e, nd, want_witness))
    } else {
        None
    };
    let (phi, witness, entries) = match attempt {
        Some(r) => r?,
        None => {
            let e = Engine::<BigInt>::new(graph, objective).expect("BigInt holds every weight");
            run(&e, nd, want_witness)?
        }
    };

    let [leaf, introduce, forget, join] = nd.kind_counts();
    let join_pair_sum = nd.join_pair_sum();
    let n = graph.n() as u128;
    if join_pair_sum > n * n {
        return Err(DpError::InternalInconsistency(format!(
            "join pair sum {join_pair_sum} exceeds n² = {}",
            n * n
        )));
    }
    Ok(SolveReport {
        problem: objective.problem(),
        optimum: objective.report_value(phi.as_ref()),
        phi,
        witness,
        stats: SolveStats {
            n: graph.n(),
            arcs: graph.arc_count(),
            width: nd.width(),
            nodes: nd.len(),
            leaf_nodes: leaf,
            introduce_nodes: introduce,
            forget_nodes: forget,
            join_nodes: join,
            join_pair_sum,
            table_entries: entries,
            big_weights: !fits,
            self_loops_dropped: graph.self_loops_dropped(),
            elapsed: start.elapsed(),
        },
    })
}

type RunResult = (Option<CutValue>, Option<Vec<usize>>, u64);

fn run<W: Weight>(engine: &Engine<'_, W>, nd: &NiceTreeDecomposition, want_witness: bool) -> Result<RunResult, DpError> {
    if want_witness {
        let tables = engine.build_tables(nd);
        let entries = tables.iter().map(|t| t.len() as u64).sum();
        let root = tables.last().expect("at least one node");
        match engine.root_aggregate(root) {
            None => Ok((None, None, entries)),
            Some((phi, choice)) => {
                let witness = reconstruct_witness(engine, &tables, nd, choice)?;
                Ok((Some(phi), Some(witness), entries))
            }
        }
    } else {
        let (root, entries) = engine.root_table(nd);
        Ok((engine.root_aggregate(&root).map(|(phi, _)| phi), None, entries))
    }
}

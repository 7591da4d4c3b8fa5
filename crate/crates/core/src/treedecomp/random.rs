use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TreeDecomposition;
use crate::graph::WeightedDigraph;
use crate::rational::Rational;

/// Shape of a generated instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceParams {
    pub n: usize,
    /// Upper bound on the decomposition width; must be below `n`.
    pub max_width: usize,
    /// Probability that a pair of vertices sharing a bag is joined.
    pub arc_density: f64,
    /// Weights are rationals in `[lo, hi]` with denominators up to 4.
    pub weight_range: (i64, i64),
    pub directed: bool,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams { n: 10, max_width: 3, arc_density: 0.5, weight_range: (0, 5), directed: false }
    }
}

/// Generates a graph together with a valid decomposition of width at most
/// `max_width`. The same seed always gives the same instance.
///
/// The bag tree is grown node by node: each new bag keeps a random part of
/// its parent's bag and adds fresh vertices, so every vertex occupies a
/// connected set of nodes. Arcs are only drawn between vertices sharing a
/// bag, which makes the decomposition valid by construction.
pub fn random_instance(seed: u64, params: &InstanceParams) -> (WeightedDigraph, TreeDecomposition) {
    let n = params.n;
    assert!(n == 0 || params.max_width < n, "max_width must be below n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 0 {
        return (WeightedDigraph::from_arcs(0, []), TreeDecomposition::new(vec![], vec![], 0));
    }
    let cap = params.max_width + 1;

    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut next = 0;
    let mut fresh = |k: usize| -> Vec<usize> {
        let out = labels[next..next + k].to_vec();
        next += k;
        out
    };

    let first = rng.random_range(1..=cap.min(n));
    let mut bags = vec![fresh(first)];
    let mut edges = Vec::new();
    let mut used = first;
    while used < n {
        let parent = rng.random_range(0..bags.len());
        let parent_bag = bags[parent].clone();
        // Occasionally emit a redundant bag contained in its parent.
        let redundant = bags.len() < 2 * n && rng.random_bool(0.1);
        let keep_max = parent_bag.len().min(if redundant { cap } else { cap - 1 });
        let keep = rng.random_range(0..=keep_max);
        let mut bag: Vec<usize> = parent_bag.choose_multiple(&mut rng, keep).copied().collect();
        if !redundant {
            let add = rng.random_range(1..=(cap - keep).min(n - used));
            bag.extend(fresh(add));
            used += add;
        }
        edges.push((parent, bags.len()));
        bags.push(bag);
    }

    let mut pairs = BTreeSet::new();
    for bag in &bags {
        for (i, &u) in bag.iter().enumerate() {
            for &v in &bag[i + 1..] {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
    }
    let (lo, hi) = params.weight_range;
    let weight = |rng: &mut ChaCha8Rng| {
        let den = rng.random_range(1..=4i64);
        let num = rng.random_range(lo * den..=hi * den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    };
    let mut arcs = Vec::new();
    for (u, v) in pairs {
        if !rng.random_bool(params.arc_density.clamp(0.0, 1.0)) {
            continue;
        }
        if params.directed {
            match rng.random_range(0..3) {
                0 => arcs.push((u, v, weight(&mut rng))),
                1 => arcs.push((v, u, weight(&mut rng))),
                _ => {
                    arcs.push((u, v, weight(&mut rng)));
                    arcs.push((v, u, weight(&mut rng)));
                }
            }
        } else {
            let w = weight(&mut rng);
            arcs.push((u, v, w.clone()));
            arcs.push((v, u, w));
        }
    }
    (WeightedDigraph::from_arcs(n, arcs), TreeDecomposition::new(bags, edges, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedecomp::validate;

    #[test]
    fn deterministic_in_seed() {
        let p = InstanceParams::default();
        let (g1, td1) = random_instance(7, &p);
        let (g2, td2) = random_instance(7, &p);
        assert_eq!(g1.arcs(), g2.arcs());
        assert_eq!(td1, td2);
    }

    #[test]
    fn always_valid_and_within_width() {
        for seed in 0..200 {
            for directed in [false, true] {
                let p = InstanceParams {
                    n: 1 + (seed as usize % 15),
                    max_width: (seed as usize % 5).min(seed as usize % 15),
                    arc_density: 0.7,
                    weight_range: (-3, 3),
                    directed,
                };
                let (g, td) = random_instance(seed, &p);
                assert_eq!(validate(&g, &td), Ok(()), "seed {seed}");
                assert!(td.width() <= p.max_width);
            }
        }
    }

    #[test]
    fn width_one_gives_forest_pairs() {
        let p = InstanceParams { n: 20, max_width: 1, arc_density: 1.0, weight_range: (1, 1), directed: false };
        let (g, td) = random_instance(3, &p);
        assert!(td.bags().iter().all(|b| b.len() <= 2));
        // A forest has fewer edges than vertices.
        assert!(g.adjacent_pairs().len() < 20);
    }
}

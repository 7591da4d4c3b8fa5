//! Ground truth by exhaustive enumeration of all vertex subsets.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::WeightedDigraph;
use crate::objective::{Objective, Optimum};
use crate::rational::{ExtRational, Rational};

/// Largest vertex count the oracle accepts.
pub const MAX_ORACLE_N: usize = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} vertices exceed the brute-force limit of {MAX_ORACLE_N}")]
    TooLarge(usize),
    #[error("objective is for {objective} vertices but the graph has {graph}")]
    ObjectiveMismatch { graph: usize, objective: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: Optimum,
    /// Every optimal vertex set, each sorted, in increasing mask order.
    pub witnesses: Vec<Vec<usize>>,
}

/// `α(∂S)` for every subset `S`, indexed by bit mask.
pub fn all_cut_weights(g: &WeightedDigraph) -> Result<Vec<Rational>, OracleError> {
    let n = g.n();
    if n > MAX_ORACLE_N {
        return Err(OracleError::TooLarge(n));
    }
    // Integer arithmetic on a common denominator keeps the enumeration
    // cheap; fall back to rationals if that would overflow.
    let scale = g
        .arcs()
        .iter()
        .fold(BigInt::from(1), |acc, (_, _, w)| num_integer::Integer::lcm(&acc, w.denom()));
    let scaled: Option<Vec<(usize, usize, i128)>> = g
        .arcs()
        .iter()
        .map(|(u, v, w)| {
            let x = (w * Rational::from_integer(scale.clone())).to_integer().to_i128()?;
            // Keep every partial sum far from overflow.
            (x.unsigned_abs() < 1u128 << 100).then_some((*u, *v, x))
        })
        .collect();

    let subsets = 1usize << n;
    let mut out = Vec::with_capacity(subsets);
    for mask in 0..subsets {
        let inside = |v: usize| mask >> v & 1 == 1;
        let w = match &scaled {
            Some(arcs) => {
                let s: i128 = arcs
                    .iter()
                    .filter(|&&(u, v, _)| inside(u) && !inside(v))
                    .map(|&(_, _, w)| w)
                    .sum();
                Rational::new(BigInt::from(s), scale.clone())
            }
            None => g
                .arcs()
                .iter()
                .filter(|&&(u, v, _)| inside(u) && !inside(v))
                .fold(Rational::from_integer(0.into()), |acc, (_, _, w)| acc + w),
        };
        out.push(w);
    }
    Ok(out)
}

/// Solves by enumerating all `2^n` subsets, keeping those with a valid
/// cardinality and maximizing `f` exactly.
pub fn brute_force_solve(g: &WeightedDigraph, obj: &Objective) -> Result<OracleResult, OracleError> {
    let cuts = all_cut_weights(g)?;
    brute_force_from_cuts(g.n(), &cuts, obj)
}

/// As [`brute_force_solve`], reusing precomputed cut weights.
pub fn brute_force_from_cuts(n: usize, cuts: &[Rational], obj: &Objective) -> Result<OracleResult, OracleError> {
    if obj.n() != n {
        return Err(OracleError::ObjectiveMismatch { graph: n, objective: obj.n() });
    }
    let mut images: BTreeMap<(usize, &Rational), ExtRational> = BTreeMap::new();
    let mut best: Option<ExtRational> = None;
    let mut witnesses: Vec<usize> = Vec::new();
    for (mask, w) in cuts.iter().enumerate() {
        let count = mask.count_ones() as usize;
        if !obj.valid(count) {
            continue;
        }
        let f = images.entry((count, w)).or_insert_with(|| obj.f(count, w)).clone();
        match &best {
            Some(b) if f < *b => {}
            Some(b) if f == *b => witnesses.push(mask),
            _ => {
                best = Some(f);
                witnesses.clear();
                witnesses.push(mask);
            }
        }
    }
    let optimum = match best {
        None => Optimum::Infeasible,
        Some(f) => Optimum::Value(obj.report(f)),
    };
    let witnesses = witnesses
        .into_iter()
        .map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect())
        .collect();
    Ok(OracleResult { optimum, witnesses })
}

//! Objective/validator pairs for the supported cut problems.
//!
//! Each problem is phrased as maximizing `f(ν, s)` over vertex sets `S`
//! with `ν = |S|`, `s = α(∂S)` and `valid(ν)`. Minimization problems use a
//! negated `f` and negate the result back when reporting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{ExtRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    MaxCut,
    MaxBisection,
    MinBisection,
    BalancedMinCut,
    MinEdgeExpansion,
    SparsestCut,
    DensestCut,
}

impl Problem {
    pub const ALL: [Problem; 7] = [
        Problem::MaxCut,
        Problem::MaxBisection,
        Problem::MinBisection,
        Problem::BalancedMinCut,
        Problem::MinEdgeExpansion,
        Problem::SparsestCut,
        Problem::DensestCut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::MaxCut => "max-cut",
            Problem::MaxBisection => "max-bisection",
            Problem::MinBisection => "min-bisection",
            Problem::BalancedMinCut => "balanced-min-cut",
            Problem::MinEdgeExpansion => "min-edge-expansion",
            Problem::SparsestCut => "sparsest-cut",
            Problem::DensestCut => "densest-cut",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = ObjectiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| ObjectiveError::UnknownProblem(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObjectiveError {
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("bad beta: {0}")]
    BadBeta(String),
    #[error("bottom has no objective value")]
    BottomValue,
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
}

/// Behaviour of `s ↦ f(ν, s)` for every fixed `ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Monotone,
    Antitone,
}

/// A concrete `(f, valid)` pair for an instance with `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    problem: Problem,
    n: usize,
    beta: Option<Rational>,
}

/// Builds the objective for `problem` on an `n`-vertex instance. `beta`
/// must be given, with `0 < β ≤ 1/2`, for [`Problem::BalancedMinCut`] and
/// only there.
pub fn make_objective(
    problem: Problem,
    n: usize,
    beta: Option<Rational>,
) -> Result<Objective, ObjectiveError> {
    if n == 0 {
        return Err(ObjectiveError::EmptyGraph);
    }
    match (problem, &beta) {
        (Problem::BalancedMinCut, None) => {
            return Err(ObjectiveError::BadBeta("balanced-min-cut requires beta".into()))
        }
        (Problem::BalancedMinCut, Some(b)) => {
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            if *b <= Rational::zero() || *b > half {
                return Err(ObjectiveError::BadBeta(format!("{b} is outside (0, 1/2]")));
            }
        }
        (_, Some(_)) => {
            return Err(ObjectiveError::BadBeta(format!("{problem} takes no beta")))
        }
        (_, None) => {}
    }
    Ok(Objective { problem, n, beta })
}

impl Objective {
    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn name(&self) -> &'static str {
        self.problem.name()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> Option<&Rational> {
        self.beta.as_ref()
    }

    pub fn direction(&self) -> Direction {
        match self.problem {
            Problem::MaxCut | Problem::MaxBisection | Problem::DensestCut => Direction::Monotone,
            _ => Direction::Antitone,
        }
    }

    /// `true` when `f(count, ·)` is a constant map. Everywhere else `f` is
    /// strictly monotone or strictly antitone in its second argument, so
    /// comparing two values of equal count reduces to comparing weights.
    pub fn is_flat_at(&self, count: usize) -> bool {
        match self.problem {
            Problem::MinEdgeExpansion => count == 0,
            Problem::SparsestCut | Problem::DensestCut => count == 0 || count == self.n,
            _ => false,
        }
    }

    pub fn valid(&self, count: usize) -> bool {
        let n = self.n;
        match self.problem {
            Problem::MaxCut | Problem::SparsestCut | Problem::DensestCut => true,
            Problem::MaxBisection | Problem::MinBisection => (2 * count).abs_diff(n) <= 1,
            Problem::BalancedMinCut => {
                let beta = self.beta.as_ref().expect("checked at construction");
                let n = Rational::from_integer(BigInt::from(n));
                let x = Rational::from_integer(BigInt::from(count));
                beta * &n <= x && x <= (Rational::one() - beta) * n
            }
            Problem::MinEdgeExpansion => count <= n - count.min(n),
        }
    }

    /// Exact value of `f(count, weight)`.
    pub fn f(&self, count: usize, weight: &Rational) -> ExtRational {
        let n = self.n;
        let size_product = || {
            Rational::from_integer(BigInt::from(count) * BigInt::from(n - count.min(n)))
        };
        match self.problem {
            Problem::MaxCut | Problem::MaxBisection => weight.clone().into(),
            Problem::MinBisection | Problem::BalancedMinCut => (-weight.clone()).into(),
            Problem::MinEdgeExpansion => {
                if count == 0 {
                    ExtRational::NegInf
                } else {
                    (-(weight / Rational::from_integer(BigInt::from(count)))).into()
                }
            }
            Problem::SparsestCut => {
                if count == 0 || count == n {
                    ExtRational::NegInf
                } else {
                    (-(weight / size_product())).into()
                }
            }
            Problem::DensestCut => {
                if count == 0 || count == n {
                    ExtRational::NegInf
                } else {
                    (weight / size_product()).into()
                }
            }
        }
    }

    /// Turns `f(Φ)` back into the problem's own sign convention.
    pub fn report(&self, value: ExtRational) -> ExtRational {
        match self.direction() {
            Direction::Monotone => value,
            Direction::Antitone => -value,
        }
    }
}

/// A cut summarized as `(|S|, α(∂S))`. The infeasible value `⊥` is
/// represented as `None` wherever it can occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutValue {
    pub count: usize,
    pub weight: Rational,
}

impl CutValue {
    pub fn new(count: usize, weight: Rational) -> Self {
        CutValue { count, weight }
    }
}

/// The reported optimum of a problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Value(ExtRational),
    /// No cardinality passed the validator.
    Infeasible,
}

impl fmt::Display for Optimum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Optimum::Value(v) => v.fmt(f),
            Optimum::Infeasible => f.write_str("infeasible"),
        }
    }
}

impl Objective {
    /// `f` applied to a cut value; `⊥` has no image.
    pub fn evaluate_f(&self, value: Option<&CutValue>) -> Result<ExtRational, ObjectiveError> {
        let value = value.ok_or(ObjectiveError::BottomValue)?;
        Ok(self.f(value.count, &value.weight))
    }

    /// The optimum in the problem's own sign convention, given `Φ`.
    pub fn report_value(&self, phi: Option<&CutValue>) -> Optimum {
        match phi {
            None => Optimum::Infeasible,
            Some(phi) => Optimum::Value(self.report(self.f(phi.count, &phi.weight))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn bisection_validator() {
        let obj = make_objective(Problem::MaxBisection, 5, None).unwrap();
        assert!(obj.valid(2));
        assert!(obj.valid(3));
        assert!(!obj.valid(1));
    }

    #[test]
    fn sparsest_is_neg_inf_at_empty() {
        let obj = make_objective(Problem::SparsestCut, 4, None).unwrap();
        assert_eq!(obj.f(0, &q(7, 1)), ExtRational::NegInf);
        assert_eq!(obj.f(4, &q(7, 1)), ExtRational::NegInf);
    }

    #[test]
    fn balanced_validator_compares_exactly() {
        let obj = make_objective(Problem::BalancedMinCut, 6, Some(q(1, 3))).unwrap();
        assert!(obj.valid(2));
        assert!(obj.valid(4));
        assert!(!obj.valid(5));
        assert!(!obj.valid(1));
    }

    #[test]
    fn beta_checks() {
        assert!(matches!(
            make_objective(Problem::BalancedMinCut, 6, None),
            Err(ObjectiveError::BadBeta(_))
        ));
        assert!(matches!(
            make_objective(Problem::BalancedMinCut, 6, Some(q(2, 3))),
            Err(ObjectiveError::BadBeta(_))
        ));
        assert!(matches!(
            make_objective(Problem::BalancedMinCut, 6, Some(q(0, 1))),
            Err(ObjectiveError::BadBeta(_))
        ));
        assert!(make_objective(Problem::BalancedMinCut, 6, Some(q(1, 2))).is_ok());
        assert!(matches!(
            make_objective(Problem::MaxCut, 6, Some(q(1, 3))),
            Err(ObjectiveError::BadBeta(_))
        ));
        assert_eq!(make_objective(Problem::MaxCut, 0, None), Err(ObjectiveError::EmptyGraph));
    }

    #[test]
    fn f_examples() {
        let max_cut = make_objective(Problem::MaxCut, 5, None).unwrap();
        assert_eq!(max_cut.f(3, &q(7, 2)), q(7, 2).into());
        let expansion = make_objective(Problem::MinEdgeExpansion, 4, None).unwrap();
        assert_eq!(expansion.f(2, &q(3, 1)), q(-3, 2).into());
        assert_eq!(expansion.report(q(-1, 1).into()), q(1, 1).into());
        let densest = make_objective(Problem::DensestCut, 3, None).unwrap();
        assert_eq!(densest.f(1, &q(2, 1)), q(1, 1).into());
    }

    #[test]
    fn every_preset_has_a_valid_count() {
        for n in 1..40 {
            for p in Problem::ALL {
                if p == Problem::BalancedMinCut {
                    continue;
                }
                let obj = make_objective(p, n, None).unwrap();
                assert!((0..=n).any(|x| obj.valid(x)), "{p} n={n}");
            }
        }
        // The balanced interval [βn, (1-β)n] has length (1-2β)n, so it can
        // miss every integer for large β or tiny n.
        for n in 3..40 {
            let obj = make_objective(Problem::BalancedMinCut, n, Some(q(1, 3))).unwrap();
            assert!((0..=n).any(|x| obj.valid(x)), "n={n}");
        }
        let obj = make_objective(Problem::BalancedMinCut, 5, Some(q(1, 2))).unwrap();
        assert!((0..=5).all(|x| !obj.valid(x)));
    }

    #[test]
    fn reporting() {
        let expansion = make_objective(Problem::MinEdgeExpansion, 4, None).unwrap();
        // f(2, 2) = -1
        let phi = CutValue::new(2, q(2, 1));
        assert_eq!(expansion.evaluate_f(Some(&phi)), Ok(q(-1, 1).into()));
        assert_eq!(expansion.report_value(Some(&phi)), Optimum::Value(q(1, 1).into()));
        let max_cut = make_objective(Problem::MaxCut, 4, None).unwrap();
        assert_eq!(
            max_cut.report_value(Some(&CutValue::new(1, q(3, 1)))),
            Optimum::Value(q(3, 1).into())
        );
        assert_eq!(max_cut.report_value(None), Optimum::Infeasible);
        assert_eq!(max_cut.evaluate_f(None), Err(ObjectiveError::BottomValue));
    }

    #[test]
    fn names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
        assert!("min-cut".parse::<Problem>().is_err());
    }
}

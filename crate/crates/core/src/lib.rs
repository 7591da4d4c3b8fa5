//! Exact solvers for cut problems on weighted directed graphs of bounded
//! treewidth.
//!
//! Every problem handled here asks for a vertex set `S` maximizing
//! `f(|S|, α(∂S))` among the sets whose cardinality passes a validator,
//! where `α(∂S)` is the total weight of arcs leaving `S`. Given a tree
//! decomposition of width `t` the dynamic program in [`dp`] finds the
//! optimum in `O(2^t · n²)` time, with exact rational arithmetic throughout.
//!
//! The usual pipeline is
//!
//! ```
//! use tdcut::{parse_graph, greedy_decomposition, prepare, solve, make_objective, Mode, Problem};
//!
//! let g = parse_graph("p 3 2\ne 1 2 1\ne 2 3 1\n", Mode::Undirected).unwrap();
//! let td = greedy_decomposition(&g);
//! let nice = prepare(&g, &td).unwrap();
//! let obj = make_objective(Problem::MaxCut, g.n(), None).unwrap();
//! let report = solve(&g, &nice, &obj, true).unwrap();
//! assert_eq!(report.optimum.to_string(), "2");
//! ```

pub mod dp;
pub mod graph;
pub mod objective;
pub mod oracle;
pub mod rational;
pub mod treedecomp;

pub use dp::{
    solve, DpError, DpTable, Engine, SolveReport, SolveStats,
};
pub use graph::{parse_graph, GraphParseError, Mode, WeightedDigraph};
pub use objective::{make_objective, CutValue, Direction, Objective, ObjectiveError, Optimum, Problem};
pub use oracle::{brute_force_solve, OracleError, OracleResult, MAX_ORACLE_N};
pub use rational::{parse_rational, ExtRational, Rational};
pub use treedecomp::{
    greedy_decomposition, nicify, parse_td, prepare, random_instance, shrink, validate,
    InstanceParams, NiceNode, NiceTreeDecomposition, NodeKind, TdError, TdParseError,
    TreeDecomposition, Violation,
};

//! Weighted directed graphs and the cut-weight primitives used by the
//! recurrences.

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{parse_rational, Rational};

/// How edge lines of a graph file are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Each line `e u v w` is the single arc `u → v`.
    Directed,
    /// Each line `e u v w` yields both `u → v` and `v → u` with weight `w`.
    Undirected,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: malformed header, expected `p <n> <m>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("missing `p <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: edge line before header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge line, expected `e <u> <v> <w>`")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: String, n: usize },
    #[error("line {line}: `{text}` is not a rational weight")]
    BadWeight { line: usize, text: String },
    #[error("line {line}: unrecognized line")]
    UnknownLine { line: usize },
    #[error("header announces {expected} edges but {found} were read")]
    EdgeCountMismatch { expected: usize, found: usize },
}

/// A weighted digraph on vertices `0..n`.
///
/// Parallel arcs are merged by summing their weights and self-loops are
/// dropped, since a loop never crosses a cut.
#[derive(Clone, Debug)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<(usize, usize, Rational)>,
    index: HashMap<(usize, usize), usize>,
    self_loops_dropped: usize,
}

impl WeightedDigraph {
    /// Builds a graph from raw arcs. Panics on an endpoint `>= n`.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut g = WeightedDigraph {
            n,
            arcs: Vec::new(),
            index: HashMap::new(),
            self_loops_dropped: 0,
        };
        for (u, v, w) in arcs {
            g.add_arc(u, v, w);
        }
        g
    }

    /// Builds a graph where every edge `{u, v}` becomes the two arcs
    /// `u → v` and `v → u`.
    pub fn from_undirected_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        Self::from_arcs(
            n,
            edges
                .into_iter()
                .flat_map(|(u, v, w)| [(u, v, w.clone()), (v, u, w)]),
        )
    }

    fn add_arc(&mut self, u: usize, v: usize, w: Rational) {
        assert!(u < self.n && v < self.n, "arc {u}->{v} out of range for n = {}", self.n);
        if u == v {
            self.self_loops_dropped += 1;
            return;
        }
        match self.index.get(&(u, v)) {
            Some(&i) => self.arcs[i].2 += w,
            None => {
                self.index.insert((u, v), self.arcs.len());
                self.arcs.push((u, v, w));
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored (merged) arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize, Rational)] {
        &self.arcs
    }

    pub fn self_loops_dropped(&self) -> usize {
        self.self_loops_dropped
    }

    /// Total weight of arcs `u → v`, zero when there is none.
    pub fn weight(&self, u: usize, v: usize) -> Rational {
        self.index
            .get(&(u, v))
            .map(|&i| self.arcs[i].2.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Unordered vertex pairs joined by at least one arc.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self
            .arcs
            .iter()
            .map(|&(u, v, _)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Neighbour lists of the underlying undirected simple graph.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v) in self.adjacent_pairs() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn membership(&self, set: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v] = true;
        }
        member
    }

    /// `α(∂S)`: the weight of all arcs leaving `set`.
    pub fn cut_weight(&self, set: &[usize]) -> Rational {
        let member = self.membership(set);
        self.arcs
            .iter()
            .filter(|&&(u, v, _)| member[u] && !member[v])
            .fold(Rational::zero(), |acc, (_, _, w)| acc + w)
    }

    /// Weight from `v` into `targets` and from `targets` into `v`.
    pub fn incident_weight_sums(&self, v: usize, targets: &[usize]) -> (Rational, Rational) {
        let mut out_sum = Rational::zero();
        let mut in_sum = Rational::zero();
        for &t in targets {
            if let Some(&i) = self.index.get(&(v, t)) {
                out_sum += &self.arcs[i].2;
            }
            if let Some(&i) = self.index.get(&(t, v)) {
                in_sum += &self.arcs[i].2;
            }
        }
        (out_sum, in_sum)
    }

    /// Writes the graph in the `p`/`e` format with 1-indexed vertices,
    /// one line per stored arc (directed reading).
    pub fn to_directed_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.arcs.len());
        for (u, v, w) in &self.arcs {
            out.push_str(&format!(
                "e {} {} {}\n",
                u + 1,
                v + 1,
                crate::rational::format_rational(w)
            ));
        }
        out
    }
}

/// Parses a graph file: `c` comment lines, one `p <n> <m>` header, and
/// `m` lines `e <u> <v> <w>` with 1-indexed endpoints and a rational
/// weight written as an integer or `p/q`.
pub fn parse_graph(text: &str, mode: Mode) -> Result<WeightedDigraph, GraphParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(GraphParseError::DuplicateHeader { line });
                }
                let parse = |t: Option<&str>| t.and_then(|s| s.parse::<usize>().ok());
                let n = parse(tokens.next());
                let m = parse(tokens.next());
                match (n, m, tokens.next()) {
                    (Some(n), Some(m), None) => header = Some((n, m)),
                    _ => return Err(GraphParseError::MalformedHeader { line }),
                }
            }
            Some("e") => {
                let (n, _) = header.ok_or(GraphParseError::EdgeBeforeHeader { line })?;
                let fields: Vec<&str> = tokens.collect();
                if fields.len() != 3 {
                    return Err(GraphParseError::MalformedEdge { line });
                }
                let vertex = |s: &str| -> Result<usize, GraphParseError> {
                    match s.parse::<usize>() {
                        Ok(x) if (1..=n).contains(&x) => Ok(x - 1),
                        Ok(_) => Err(GraphParseError::VertexOutOfRange {
                            line,
                            vertex: s.to_string(),
                            n,
                        }),
                        Err(_) => Err(GraphParseError::MalformedEdge { line }),
                    }
                };
                let u = vertex(fields[0])?;
                let v = vertex(fields[1])?;
                let w = parse_rational(fields[2]).ok_or_else(|| GraphParseError::BadWeight {
                    line,
                    text: fields[2].to_string(),
                })?;
                edges.push((u, v, w));
            }
            Some(_) => return Err(GraphParseError::UnknownLine { line }),
        }
    }

    let (n, m) = header.ok_or(GraphParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(GraphParseError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(match mode {
        Mode::Directed => WeightedDigraph::from_arcs(n, edges),
        Mode::Undirected => WeightedDigraph::from_undirected_edges(n, edges),
    })
}

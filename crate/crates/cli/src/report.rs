use clap::ValueEnum;
use serde::Serialize;

use tdcut::{Optimum, SolveReport, WeightedDigraph};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy)]
pub enum WidthSource {
    Given,
    Heuristic,
}

impl WidthSource {
    pub fn as_str(self) -> &'static str {
        match self {
            WidthSource::Given => "given",
            WidthSource::Heuristic => "heuristic",
        }
    }
}

#[derive(Serialize)]
pub struct Stats {
    pub leaf_nodes: usize,
    pub introduce_nodes: usize,
    pub forget_nodes: usize,
    pub join_nodes: usize,
    pub join_pair_sum: u128,
    pub table_entries: u64,
    pub big_weights: bool,
    pub self_loops_dropped: usize,
    pub elapsed_ms: f64,
}

#[derive(Serialize)]
pub struct OracleCheck {
    pub value: String,
    pub agrees: bool,
}

/// The solve report. Field names and types are stable.
#[derive(Serialize)]
pub struct Report {
    pub problem: String,
    pub n: usize,
    /// Number of arcs after merging parallel ones.
    pub m: usize,
    pub width: usize,
    pub width_source: &'static str,
    pub nodes: usize,
    pub value: String,
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    pub stats: Stats,
}

impl Report {
    pub fn new(
        g: &WeightedDigraph,
        r: &SolveReport,
        source: WidthSource,
        oracle: Option<(Optimum, bool)>,
    ) -> Self {
        let s = &r.stats;
        Report {
            problem: r.problem.to_string(),
            n: g.n(),
            m: g.arc_count(),
            width: s.width,
            width_source: source.as_str(),
            nodes: s.nodes,
            value: r.optimum.to_string(),
            count: r.phi.as_ref().map(|p| p.count),
            witness: r.witness.as_ref().map(|w| w.iter().map(|v| v + 1).collect()),
            oracle: oracle.map(|(o, agrees)| OracleCheck { value: o.to_string(), agrees }),
            stats: Stats {
                leaf_nodes: s.leaf_nodes,
                introduce_nodes: s.introduce_nodes,
                forget_nodes: s.forget_nodes,
                join_nodes: s.join_nodes,
                join_pair_sum: s.join_pair_sum,
                table_entries: s.table_entries,
                big_weights: s.big_weights,
                self_loops_dropped: s.self_loops_dropped,
                elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
            },
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(self).expect("report serializes")),
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = format!(
            "problem  {}\nvalue    {}\ncount    {}\n",
            self.problem,
            self.value,
            self.count.map_or("-".to_string(), |c| c.to_string())
        );
        if let Some(w) = &self.witness {
            let list: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("witness  {{{}}}\n", list.join(", ")));
        }
        if let Some(o) = &self.oracle {
            out.push_str(&format!("oracle   {} ({})\n", o.value, if o.agrees { "agrees" } else { "MISMATCH" }));
        }
        out.push_str(&format!(
            "graph    n = {}, m = {}\ntd       width {} ({}), {} nice nodes, join pair sum {}\ntime     {:.3} ms\n",
            self.n, self.m, self.width, self.width_source, self.nodes, self.stats.join_pair_sum, self.stats.elapsed_ms
        ));
        out
    }
}

//! Report types and deterministic renderings (aligned text, CSV, JSON,
//! DOT). All output is UTF-8 with LF line endings, and JSON re-renders
//! byte-identically after a parse round trip.

use crate::cut_experiments::RobustnessTrial;
use crate::explicit_graph::ExplicitGraph;
use crate::support_model::QuotientModel;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRow {
    pub support: String,
    pub divisor: u64,
    pub size: u64,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: u64,
    pub primes: Vec<u64>,
    pub phi: u64,
    pub vertex_count: u64,
    pub kappa: u64,
    pub lambda: u64,
    pub delta: u64,
    pub diameter: u8,
    pub radius: Option<u8>,
    pub min_degree_layer: String,
    pub min_cut_layer: String,
    pub layers: Vec<LayerRow>,
}

impl AnalysisReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        out.push_str(&format!("n = {} = {}\n", self.n, primes.join("*")));
        out.push_str(&format!(
            "phi = {}   |V| = {}\n",
            self.phi, self.vertex_count
        ));
        out.push_str(&format!(
            "kappa = {}   lambda = {}   delta = {}\n",
            self.kappa, self.lambda, self.delta
        ));
        match self.radius {
            Some(r) => out.push_str(&format!("diameter = {}   radius = {}\n", self.diameter, r)),
            None => out.push_str(&format!(
                "diameter = {}   radius = n/a (needs three prime factors)\n",
                self.diameter
            )),
        }
        out.push_str(&format!(
            "min-degree layer = {}   min-cut layer = {}\n\n",
            self.min_degree_layer, self.min_cut_layer
        ));
        let w = self
            .layers
            .iter()
            .map(|l| l.support.len())
            .max()
            .unwrap_or(7)
            .max("support".len());
        out.push_str(&format!(
            "{:<w$}  {:>8}  {:>8}  {:>8}\n",
            "support", "divisor", "size", "degree"
        ));
        for l in &self.layers {
            out.push_str(&format!(
                "{:<w$}  {:>8}  {:>8}  {:>8}\n",
                l.support, l.divisor, l.size, l.degree
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("verification of n = {}\n", self.n);
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name
            ));
            for d in &c.details {
                out.push_str(&format!("        {d}\n"));
            }
        }
        out.push_str(if self.passed() {
            "result: PASS\n"
        } else {
            "result: FAIL\n"
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u64,
    pub primes: Vec<u64>,
    pub phi: u64,
    pub upper_bound: u64,
    pub kappa_formula: u64,
    pub kappa_oracle: Option<u64>,
    pub delta: u64,
    pub lambda_oracle: Option<u64>,
    pub diameter: u8,
    pub matched: bool,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "n,primes,phi,upper_bound,kappa_formula,kappa_oracle,delta,lambda_oracle,diameter,match\n",
    );
    for r in rows {
        let primes: Vec<String> = r.primes.iter().map(u64::to_string).collect();
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            primes.join("+"),
            r.phi,
            r.upper_bound,
            r.kappa_formula,
            opt(r.kappa_oracle),
            r.delta,
            opt(r.lambda_oracle),
            r.diameter,
            if r.matched { 1 } else { 0 },
        ));
    }
    out
}

pub fn robustness_csv(trials: &[RobustnessTrial]) -> String {
    let mut out =
        String::from("trial_index,deleted_size,connected_after,max_pair_distance_after,anchor_found\n");
    for (i, t) in trials.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            i,
            t.deleted.len(),
            t.connected_after as u8,
            t.max_pair_distance_after,
            t.anchor_found as u8,
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub n: u64,
    pub x: u64,
    pub y: u64,
    pub support_x: String,
    pub support_y: String,
    pub case: u8,
    pub formula: u8,
    pub bfs: Option<u8>,
    pub matched: Option<bool>,
}

impl DistanceReport {
    pub fn render_text(&self) -> String {
        let relation = match self.case {
            1 => "disjoint supports",
            2 => "intersecting supports, union proper",
            _ => "intersecting supports, union full",
        };
        let bfs = match (self.bfs, self.matched) {
            (Some(b), Some(true)) => format!("; bfs = {b} (match)"),
            (Some(b), Some(false)) => format!("; bfs = {b} (MISMATCH)"),
            _ => String::from("; bfs skipped (above cap)"),
        };
        format!(
            "d({}, {}) = {}  [supports {} and {}: {} -> case {}{}]\n",
            self.x, self.y, self.formula, self.support_x, self.support_y, relation, self.case, bfs
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportLevel {
    Quotient,
    Explicit,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    level: String,
    n: u64,
    nodes: Vec<NodeJson>,
    edges: Vec<[String; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeJson {
    id: String,
    label: String,
    size: u64,
}

/// Quotient-level edge list in canonical layer order, each pair once.
fn quotient_edges(model: &QuotientModel) -> Vec<(usize, usize)> {
    let layers = model.layers();
    let mut edges = Vec::new();
    for i in 0..layers.len() {
        for j in (i + 1)..layers.len() {
            if layers[i].support.is_disjoint(&layers[j].support) {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn export_quotient(model: &QuotientModel, format: ExportFormat) -> String {
    let layers = model.layers();
    let edges = quotient_edges(model);
    match format {
        ExportFormat::Dot => {
            let mut out = format!("graph quotient_{} {{\n", model.modulus().n());
            for l in layers {
                out.push_str(&format!(
                    "  {} [label=\"X_{} ({})\"];\n",
                    l.support.dot_id(),
                    l.support,
                    l.size
                ));
            }
            for (i, j) in edges {
                out.push_str(&format!(
                    "  {} -- {};\n",
                    layers[i].support.dot_id(),
                    layers[j].support.dot_id()
                ));
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Csv => {
            let mut out = String::from("source,target\n");
            for (i, j) in edges {
                out.push_str(&format!(
                    "{},{}\n",
                    layers[i].support.plus_label(),
                    layers[j].support.plus_label()
                ));
            }
            out
        }
        ExportFormat::Json => {
            let doc = GraphJson {
                level: "quotient".into(),
                n: model.modulus().n(),
                nodes: layers
                    .iter()
                    .map(|l| NodeJson {
                        id: l.support.dot_id(),
                        label: format!("X_{}", l.support),
                        size: l.size,
                    })
                    .collect(),
                edges: edges
                    .into_iter()
                    .map(|(i, j)| {
                        [
                            layers[i].support.dot_id(),
                            layers[j].support.dot_id(),
                        ]
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).unwrap();
            s.push('\n');
            s
        }
    }
}

pub fn export_explicit(graph: &ExplicitGraph, format: ExportFormat) -> String {
    let v = graph.vertex_count();
    let edges: Vec<(u64, u64)> = (0..v)
        .flat_map(|i| {
            graph
                .neighbors(i)
                .iter()
                .filter(move |&&j| (j as usize) > i)
                .map(move |&j| (graph.vertex(i).residue, graph.vertex(j as usize).residue))
                .collect::<Vec<_>>()
        })
        .collect();
    match format {
        ExportFormat::Dot => {
            let mut out = format!("graph explicit_{} {{\n", graph.modulus().n());
            for vert in graph.vertices() {
                out.push_str(&format!("  v{};\n", vert.residue));
            }
            for (a, b) in edges {
                out.push_str(&format!("  v{a} -- v{b};\n"));
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Csv => {
            let mut out = String::from("source,target\n");
            for (a, b) in edges {
                out.push_str(&format!("{a},{b}\n"));
            }
            out
        }
        ExportFormat::Json => {
            let doc = GraphJson {
                level: "explicit".into(),
                n: graph.modulus().n(),
                nodes: graph
                    .vertices()
                    .iter()
                    .map(|vert| NodeJson {
                        id: format!("v{}", vert.residue),
                        label: format!("{}", vert.residue),
                        size: 1,
                    })
                    .collect(),
                edges: edges
                    .into_iter()
                    .map(|(a, b)| [format!("v{a}"), format!("v{b}")])
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).unwrap();
            s.push('\n');
            s
        }
    }
}

//! DOT, edge-list and JSON renderings of a state graph.

use std::io::{self, Write};

use serde::Serialize;

use super::coloring::{edge_coloring, exact_chromatic_index, vertex_coloring, EXACT_EDGE_COLORING_CAP};
use super::graph::{Flavor, StateGraph};
use super::metrics::{clique_number, connectivity, degree_profile, diameter, DiameterMode, EXACT_DIAMETER_CAP};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    EdgeList,
    Json,
}

/// Summary metrics of a graph. `diameter` is exact up to
/// [`EXACT_DIAMETER_CAP`] vertices; above it only `diameter_lower_bound` is
/// filled in, from BFS out of the perfect and separated states.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphMetrics {
    pub n: u32,
    pub vertices: usize,
    pub edges: usize,
    pub delta: usize,
    #[serde(rename = "Delta")]
    pub max_degree: usize,
    pub avg_degree: f64,
    pub kappa: usize,
    pub lambda: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter_lower_bound: Option<u32>,
    pub omega: usize,
    /// Certified value or `null` when no matching lower and upper bound was found.
    pub chi: Option<usize>,
    pub chi_prime: Option<usize>,
}

impl GraphMetrics {
    pub fn compute(g: &StateGraph) -> Result<Self> {
        let vertices = g.vertex_count();
        let edges = g.edge_count();
        let profile = degree_profile(g);
        let conn = connectivity(g)?;
        let (diameter, diameter_lower_bound) = if vertices <= EXACT_DIAMETER_CAP {
            (Some(diameter(g, DiameterMode::Exact)?.value), None)
        } else {
            (None, Some(diameter(g, DiameterMode::LowerBoundSample)?.value))
        };
        let cliques = clique_number(g);
        // A proper ω-colouring pins χ = ω.
        let chi = vertex_coloring(g)
            .ok()
            .filter(|c| c.colors_used == cliques.omega)
            .map(|c| c.colors_used);
        let chi_prime = chromatic_index(g, profile.max);
        Ok(GraphMetrics {
            n: g.n(),
            vertices,
            edges,
            delta: profile.min,
            max_degree: profile.max,
            avg_degree: if vertices == 0 {
                0.0
            } else {
                2.0 * edges as f64 / vertices as f64
            },
            kappa: conn.kappa,
            lambda: conn.lambda,
            diameter,
            diameter_lower_bound,
            omega: cliques.omega,
            chi,
            chi_prime,
        })
    }
}

/// `Δ` when the peg-pair partition is a proper `Δ`-edge-colouring, else the
/// exhaustive value for small graphs.
fn chromatic_index(g: &StateGraph, max_degree: usize) -> Option<usize> {
    if g.flavor() == Flavor::ParityConstrained {
        let classes = edge_coloring(g);
        if classes.proper && classes.class_count() == max_degree {
            return Some(max_degree);
        }
    }
    if g.edge_count() <= EXACT_EDGE_COLORING_CAP {
        return exact_chromatic_index(g).ok().map(|(k, _)| k);
    }
    None
}

fn graph_name(g: &StateGraph) -> String {
    match g.flavor() {
        Flavor::ParityConstrained => format!("P_{}", g.n()),
        Flavor::Classical { pegs } => format!("H{}_{}", pegs, g.n()),
    }
}

/// Edges as label pairs, smaller label first, sorted lexicographically.
fn labelled_edges(g: &StateGraph) -> Vec<(String, String)> {
    let labels: Vec<String> = (0..g.vertex_count() as u32).map(|v| g.label(v)).collect();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (&labels[u as usize], &labels[v as usize]);
            if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            }
        })
        .collect();
    edges.sort_unstable();
    edges
}

pub fn write_dot<W: Write>(g: &StateGraph, out: &mut W) -> io::Result<()> {
    writeln!(out, "graph {} {{", graph_name(g))?;
    let mut labels: Vec<String> = (0..g.vertex_count() as u32).map(|v| g.label(v)).collect();
    labels.sort_unstable();
    for label in &labels {
        writeln!(out, "  \"{label}\";")?;
    }
    for (a, b) in labelled_edges(g) {
        writeln!(out, "  \"{a}\" -- \"{b}\";")?;
    }
    writeln!(out, "}}")
}

/// One `u v` line per edge, `u < v`, ascending.
pub fn write_edge_list<W: Write>(g: &StateGraph, out: &mut W) -> io::Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_json<W: Write>(metrics: &GraphMetrics, out: &mut W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, metrics)?;
    writeln!(out)
}

/// Writes `g` in the requested format; JSON computes the metrics first.
pub fn export<W: Write>(g: &StateGraph, format: ExportFormat, out: &mut W) -> Result<()> {
    match format {
        ExportFormat::Dot => write_dot(g, out)?,
        ExportFormat::EdgeList => write_edge_list(g, out)?,
        ExportFormat::Json => write_json(&GraphMetrics::compute(g)?, out)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stategraph::graph::{build_classical_graph, build_parity_graph};

    fn render(g: &StateGraph, format: ExportFormat) -> String {
        let mut buf = Vec::new();
        export(g, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn dot_for_one_disc() {
        let dot = render(&build_parity_graph(1).unwrap(), ExportFormat::Dot);
        assert_eq!(
            dot,
            "graph P_1 {\n  \"0\";\n  \"2\";\n  \"3\";\n  \"0\" -- \"2\";\n  \"0\" -- \"3\";\n  \"2\" -- \"3\";\n}\n"
        );
    }

    #[test]
    fn edge_list_for_two_discs() {
        let list = render(&build_parity_graph(2).unwrap(), ExportFormat::EdgeList);
        let lines: Vec<&str> = list.lines().collect();
        assert_eq!(lines.len(), 14);
        let pairs: Vec<(u32, u32)> = lines
            .iter()
            .map(|l| {
                let (a, b) = l.split_once(' ').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            })
            .collect();
        assert!(pairs.iter().all(|(a, b)| a < b));
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn json_metrics() {
        let json = render(&build_parity_graph(3).unwrap(), ExportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["edges"], 47);
        assert_eq!(v["delta"], 2);
        assert_eq!(v["Delta"], 5);
        assert_eq!(v["kappa"], 2);
        assert_eq!(v["diameter"], 5);
        assert_eq!(v["omega"], 3);
        assert_eq!(v["chi"], 3);
        assert_eq!(v["chi_prime"], 5);
        assert!(v.get("diameter_lower_bound").is_none());
    }

    #[test]
    fn chromatic_index_small() {
        let m = GraphMetrics::compute(&build_parity_graph(2).unwrap()).unwrap();
        assert_eq!(m.chi_prime, Some(4));
        let h = GraphMetrics::compute(&build_classical_graph(3, 2).unwrap()).unwrap();
        assert_eq!((h.edges, h.diameter), (12, Some(3)));
    }
}

use std::collections::BTreeMap;

use petgraph::visit::EdgeRef;
use serde::Serialize;

use super::graph::{Flavor, StateGraph};
use crate::error::{Error, Result};
use crate::model::Peg;

/// Minimum and maximum degree with the full degree histogram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    /// Number of vertices of each degree.
    pub histogram: BTreeMap<usize, usize>,
}

pub fn degree_profile(g: &StateGraph) -> DegreeProfile {
    let mut histogram = BTreeMap::new();
    for v in 0..g.vertex_count() as u32 {
        *histogram.entry(g.degree(v)).or_insert(0) += 1;
    }
    DegreeProfile {
        min: histogram.keys().next().copied().unwrap_or(0),
        max: histogram.keys().next_back().copied().unwrap_or(0),
        histogram,
    }
}

/// Vertex and edge connectivity together with the certificates they rest on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub kappa: usize,
    pub lambda: usize,
    pub connected: bool,
    pub articulation_points: Vec<u32>,
    pub bridges: Vec<(u32, u32)>,
    /// A vertex set whose removal disconnects the graph (absent for complete graphs).
    pub vertex_cut: Option<Vec<u32>>,
    /// An edge set whose removal disconnects the graph.
    pub edge_cut: Option<Vec<(u32, u32)>>,
}

/// `κ` and `λ` for graphs with `κ ≤ 2`: connectedness, cut-vertex and
/// bridge searches give the lower bound, the neighbourhood of a minimum
/// degree vertex gives the upper bound.
pub fn connectivity(g: &StateGraph) -> Result<Connectivity> {
    let total = g.vertex_count();
    let pg = g.to_petgraph();
    let connected = petgraph::algo::connected_components(&pg) == 1;
    let mut articulation_points: Vec<u32> = petgraph::algo::articulation_points::articulation_points(&pg)
        .into_iter()
        .map(|v| v.index() as u32)
        .collect();
    articulation_points.sort_unstable();
    let mut bridges: Vec<(u32, u32)> = petgraph::algo::bridges(&pg)
        .map(|e| {
            let (a, b) = (e.source().index() as u32, e.target().index() as u32);
            (a.min(b), a.max(b))
        })
        .collect();
    bridges.sort_unstable();

    let profile = degree_profile(g);
    let pivot = (0..total as u32).find(|&v| g.degree(v) == profile.min);

    let complete = profile.min + 1 == total;
    let vertex_cut = pivot.filter(|_| !complete).map(|v| g.neighbors(v).to_vec());
    if let Some(cut) = &vertex_cut {
        let mut blocked = vec![false; total];
        for &c in cut {
            blocked[c as usize] = true;
        }
        if g.component_count(&blocked) < 2 {
            return Err(Error::CertificateInvalid(format!(
                "neighbourhood of {} does not separate the graph",
                g.label(pivot.unwrap())
            )));
        }
    }
    let edge_cut = pivot
        .filter(|_| total > 1)
        .map(|v| g.neighbors(v).iter().map(|&w| (v.min(w), v.max(w))).collect::<Vec<_>>());

    let kappa = if !connected || total <= 1 {
        0
    } else if complete {
        total - 1
    } else if !articulation_points.is_empty() {
        1
    } else {
        // No cut vertex, and the exhibited cut has `δ` vertices.
        match profile.min {
            2 => 2,
            _ => return Err(unsupported(profile.min)),
        }
    };
    let lambda = if !connected || total <= 1 {
        0
    } else if !bridges.is_empty() {
        1
    } else {
        match profile.min {
            2 => 2,
            _ => return Err(unsupported(profile.min)),
        }
    };
    Ok(Connectivity {
        kappa,
        lambda,
        connected,
        articulation_points,
        bridges,
        vertex_cut,
        edge_cut,
    })
}

fn unsupported(delta: usize) -> Error {
    Error::InvalidArgument(format!(
        "connectivity certificate needs minimum degree 2, graph has {delta}"
    ))
}

/// How the diameter was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterMode {
    Exact,
    LowerBoundSample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diameter {
    pub mode: DiameterMode,
    pub value: u32,
    /// Endpoints realising `value`.
    pub witness: (u32, u32),
}

/// Largest graph (in vertices) for which [`diameter`] runs in exact mode.
pub const EXACT_DIAMETER_CAP: usize = 16_384;

/// Peg permutations that map the graph onto itself.
fn symmetries(g: &StateGraph) -> Vec<[u8; 4]> {
    match g.flavor() {
        Flavor::ParityConstrained => vec![[0, 1, 2, 3], [3, 1, 2, 0]],
        Flavor::Classical { pegs } => permutations(pegs),
    }
}

pub(crate) fn permutations(k: u8) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    let mut perm = [0u8, 1, 2, 3];
    fn go(i: usize, k: usize, perm: &mut [u8; 4], out: &mut Vec<[u8; 4]>) {
        if i == k {
            out.push(*perm);
            return;
        }
        for j in i..k {
            perm.swap(i, j);
            go(i + 1, k, perm, out);
            perm.swap(i, j);
        }
    }
    go(0, k as usize, &mut perm, &mut out);
    out.sort_unstable();
    out
}

/// Image of `v` under the peg permutation `perm`, if it is a vertex.
pub(crate) fn permute_vertex(g: &StateGraph, v: u32, perm: &[u8; 4]) -> Option<u32> {
    let pegs: Vec<Peg> = g.pegs(v).iter().map(|p| Peg::ALL[perm[p.get() as usize] as usize]).collect();
    g.vertex_of_pegs(&pegs)
}

fn farthest(dist: &[u32]) -> (u32, u32) {
    dist.iter()
        .enumerate()
        .filter(|(_, &d)| d != u32::MAX)
        .map(|(v, &d)| (d, v as u32))
        .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)))
        .unwrap_or((0, 0))
}

/// Diameter of a connected graph.
///
/// Exact mode runs a BFS from one vertex of every orbit of the peg
/// symmetries and fails above [`EXACT_DIAMETER_CAP`] vertices. The sampling
/// mode only runs BFS from the perfect and parity-separated states.
pub fn diameter(g: &StateGraph, mode: DiameterMode) -> Result<Diameter> {
    let total = g.vertex_count();
    let sources: Vec<u32> = match mode {
        DiameterMode::Exact => {
            if total > EXACT_DIAMETER_CAP {
                return Err(Error::CapExceeded {
                    states: total as u64,
                    cap: EXACT_DIAMETER_CAP as u64,
                });
            }
            let perms = symmetries(g);
            (0..total as u32)
                .filter(|&v| perms.iter().all(|p| permute_vertex(g, v, p).map_or(true, |w| w >= v)))
                .collect()
        }
        DiameterMode::LowerBoundSample => sample_sources(g),
    };
    let mut best = Diameter {
        mode,
        value: 0,
        witness: (0, 0),
    };
    for s in sources {
        let dist = g.bfs(s);
        if dist.contains(&u32::MAX) {
            return Err(Error::InvalidArgument("graph is disconnected".into()));
        }
        let (d, t) = farthest(&dist);
        if d > best.value {
            best.value = d;
            best.witness = (s, t);
        }
    }
    Ok(best)
}

fn sample_sources(g: &StateGraph) -> Vec<u32> {
    let n = g.n();
    let mut out: Vec<u32> = Peg::ALL
        .iter()
        .filter_map(|&p| g.vertex_of_pegs(&vec![p; n as usize]))
        .collect();
    let separated: Vec<Peg> = (1..=n).map(crate::model::parity_peg).collect();
    out.extend(g.vertex_of_pegs(&separated));
    out.sort_unstable();
    out.dedup();
    out
}

/// Clique structure: triangles, K₄ search and the discs that span triangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueReport {
    pub omega: usize,
    pub triangle_count: usize,
    pub witness: Option<[u32; 3]>,
    /// Some four mutually adjacent vertices, if any exist.
    pub k4: Option<[u32; 4]>,
    /// Number of triangles per moving disc.
    pub triangles_by_disc: BTreeMap<u32, usize>,
    /// Triangles whose edges do not all move one disc.
    pub mixed_triangles: usize,
}

impl CliqueReport {
    /// Every triangle moves a single disc, and that disc is 1 or 2.
    pub fn triangles_move_small_discs(&self) -> bool {
        self.mixed_triangles == 0 && self.triangles_by_disc.keys().all(|&d| d == 1 || d == 2)
    }
}

/// Exhaustive triangle listing and K₄ search over common neighbourhoods.
pub fn clique_number(g: &StateGraph) -> CliqueReport {
    let mut report = CliqueReport {
        omega: g.vertex_count().min(1),
        triangle_count: 0,
        witness: None,
        k4: None,
        triangles_by_disc: BTreeMap::new(),
        mixed_triangles: 0,
    };
    let mut common = Vec::with_capacity(8);
    for (u, v) in g.edges() {
        report.omega = report.omega.max(2);
        common.clear();
        common.extend(g.neighbors(u).iter().copied().filter(|&w| g.has_edge(v, w)));
        for &w in common.iter().filter(|&&w| w > v) {
            report.triangle_count += 1;
            report.witness.get_or_insert([u, v, w]);
            let discs = [
                g.edge_move(u, v).map(|m| m.disc),
                g.edge_move(v, w).map(|m| m.disc),
                g.edge_move(u, w).map(|m| m.disc),
            ];
            if discs[0] == discs[1] && discs[1] == discs[2] {
                *report.triangles_by_disc.entry(discs[0].unwrap_or(0)).or_insert(0) += 1;
            } else {
                report.mixed_triangles += 1;
            }
        }
        if report.k4.is_none() {
            'pairs: for (i, &a) in common.iter().enumerate() {
                for &b in &common[i + 1..] {
                    if g.has_edge(a, b) {
                        let mut k = [u, v, a, b];
                        k.sort_unstable();
                        report.k4 = Some(k);
                        break 'pairs;
                    }
                }
            }
        }
    }
    if report.triangle_count > 0 {
        report.omega = 3;
    }
    if report.k4.is_some() {
        // Only a lower bound; the graphs studied here never reach this branch.
        report.omega = 4;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stategraph::graph::{build_classical_graph, build_parity_graph};

    #[test]
    fn degrees() {
        let d1 = degree_profile(&build_parity_graph(1).unwrap());
        assert_eq!((d1.min, d1.max), (2, 2));
        let d2 = degree_profile(&build_parity_graph(2).unwrap());
        assert_eq!((d2.min, d2.max), (2, 4));
        for n in 3..=7 {
            let g = build_parity_graph(n).unwrap();
            let d = degree_profile(&g);
            assert_eq!((d.min, d.max), (2, 5), "n={n}");
            let total: usize = d.histogram.iter().map(|(k, c)| k * c).sum();
            assert_eq!(total, 2 * g.edge_count());
        }
    }

    fn brute_force_kappa_lambda(g: &StateGraph) -> (usize, usize) {
        let total = g.vertex_count();
        let disconnects = |blocked: &[bool]| g.component_count(blocked) > 1;
        let block = |vs: &[usize]| {
            let mut blocked = vec![false; total];
            for &v in vs {
                blocked[v] = true;
            }
            blocked
        };
        let kappa = if (0..total).any(|a| disconnects(&block(&[a]))) {
            1
        } else if (0..total).any(|a| ((a + 1)..total).any(|b| disconnects(&block(&[a, b])))) {
            2
        } else {
            usize::MAX
        };
        let edges: Vec<_> = g.edges().collect();
        let pg_without = |skip: &[usize]| {
            let mut h = petgraph::graph::UnGraph::<(), ()>::with_capacity(total, edges.len());
            for _ in 0..total {
                h.add_node(());
            }
            for (i, &(u, v)) in edges.iter().enumerate() {
                if !skip.contains(&i) {
                    h.add_edge(u.into(), v.into(), ());
                }
            }
            petgraph::algo::connected_components(&h)
        };
        let mut lambda = usize::MAX;
        'e: for i in 0..edges.len() {
            if pg_without(&[i]) > 1 {
                lambda = 1;
                break 'e;
            }
        }
        if lambda == usize::MAX {
            'e2: for i in 0..edges.len() {
                for j in (i + 1)..edges.len() {
                    if pg_without(&[i, j]) > 1 {
                        lambda = 2;
                        break 'e2;
                    }
                }
            }
        }
        (kappa, lambda)
    }

    #[test]
    fn connectivity_matches_brute_force() {
        for n in 2..=3 {
            let g = build_parity_graph(n).unwrap();
            let c = connectivity(&g).unwrap();
            assert_eq!((c.kappa, c.lambda), brute_force_kappa_lambda(&g), "n={n}");
            assert_eq!((c.kappa, c.lambda), (2, 2));
        }
    }

    #[test]
    fn connectivity_small_and_large() {
        let k3 = connectivity(&build_parity_graph(1).unwrap()).unwrap();
        assert_eq!((k3.kappa, k3.lambda), (2, 2));
        assert!(k3.vertex_cut.is_none());
        for n in [4, 6] {
            let c = connectivity(&build_parity_graph(n).unwrap()).unwrap();
            assert_eq!((c.kappa, c.lambda), (2, 2));
            assert!(c.articulation_points.is_empty() && c.bridges.is_empty());
            assert_eq!(c.vertex_cut.as_ref().map(Vec::len), Some(2));
        }
    }

    #[test]
    fn diameters() {
        let exact: Vec<u32> = (1..=6)
            .map(|n| diameter(&build_parity_graph(n).unwrap(), DiameterMode::Exact).unwrap().value)
            .collect();
        assert_eq!(exact, [1, 3, 5, 9, 15, 23]);
        // H₃ⁿ has diameter 2ⁿ − 1.
        for n in 1..=5 {
            let d = diameter(&build_classical_graph(3, n).unwrap(), DiameterMode::Exact).unwrap();
            assert_eq!(d.value, (1 << n) - 1);
        }
        let sample = diameter(&build_parity_graph(6).unwrap(), DiameterMode::LowerBoundSample).unwrap();
        assert!(sample.value <= 23);
        assert!(matches!(
            diameter(&build_parity_graph(9).unwrap(), DiameterMode::Exact),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn symmetry_reduction_is_sound() {
        for n in 1..=4 {
            for g in [build_parity_graph(n).unwrap(), build_classical_graph(4, n).unwrap()] {
                let full = (0..g.vertex_count() as u32)
                    .map(|s| farthest(&g.bfs(s)).0)
                    .max()
                    .unwrap();
                assert_eq!(diameter(&g, DiameterMode::Exact).unwrap().value, full);
            }
        }
    }

    #[test]
    fn cliques() {
        for n in 1..=6 {
            let r = clique_number(&build_parity_graph(n).unwrap());
            assert_eq!(r.omega, 3);
            assert!(r.k4.is_none());
            assert!(r.triangles_move_small_discs(), "{r:?}");
        }
        assert_eq!(clique_number(&build_classical_graph(4, 2).unwrap()).omega, 4);
        assert_eq!(clique_number(&build_parity_graph(0).unwrap()).omega, 1);
    }
}

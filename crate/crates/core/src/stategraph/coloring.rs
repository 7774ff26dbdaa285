use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::graph::StateGraph;
use crate::error::{Error, Result};

/// Largest vertex count for which an exhaustive vertex-coloring search is
/// attempted when the constructive colorings fail.
pub const EXACT_COLORING_CAP: usize = 729;

/// Largest edge count for the exhaustive chromatic-index search.
pub const EXACT_EDGE_COLORING_CAP: usize = 64;

/// How a vertex coloring was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringStrategy {
    /// Colour of a state is the sum of its base digits modulo the base.
    DigitSum,
    Dsatur,
    Exhaustive,
}

/// A proper vertex coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexColoring {
    pub strategy: ColoringStrategy,
    pub colors_used: usize,
    pub colors: Vec<u8>,
}

/// Checks that no edge is monochromatic.
pub fn is_proper_vertex_coloring(g: &StateGraph, colors: &[u8]) -> bool {
    colors.len() == g.vertex_count() && g.edges().all(|(u, v)| colors[u as usize] != colors[v as usize])
}

fn used(colors: &[u8]) -> usize {
    let mut seen = [false; 256];
    colors.iter().for_each(|&c| seen[c as usize] = true);
    seen.iter().filter(|&&s| s).count()
}

fn digit_sum_coloring(g: &StateGraph) -> Vec<u8> {
    let base = g.base();
    (0..g.vertex_count() as u32)
        .map(|mut v| {
            let mut sum = 0;
            while v > 0 {
                sum += v % base;
                v /= base;
            }
            (sum % base) as u8
        })
        .collect()
}

/// A proper coloring with at most `base` colours (`3` for `Pⁿ`).
///
/// Tries the digit-sum colouring, then DSATUR, then (for small graphs) an
/// exhaustive search for a `base`-colouring. Every result is verified.
pub fn vertex_coloring(g: &StateGraph) -> Result<VertexColoring> {
    let target = g.base() as usize;
    for strategy in [
        ColoringStrategy::DigitSum,
        ColoringStrategy::Dsatur,
        ColoringStrategy::Exhaustive,
    ] {
        let colors = match strategy {
            ColoringStrategy::DigitSum => Some(digit_sum_coloring(g)),
            ColoringStrategy::Dsatur => Some(dsatur(g)),
            ColoringStrategy::Exhaustive if g.vertex_count() <= EXACT_COLORING_CAP => k_coloring(g, target),
            ColoringStrategy::Exhaustive => None,
        };
        if let Some(colors) = colors {
            if is_proper_vertex_coloring(g, &colors) && used(&colors) <= target {
                return Ok(VertexColoring {
                    strategy,
                    colors_used: used(&colors),
                    colors,
                });
            }
        }
    }
    Err(Error::ColoringFailed(format!(
        "no proper {target}-coloring found for n = {}",
        g.n()
    )))
}

fn dsatur(g: &StateGraph) -> Vec<u8> {
    let (map, _) = petgraph::algo::dsatur_coloring(&g.to_petgraph());
    let mut colors = vec![0u8; g.vertex_count()];
    for (v, c) in map {
        colors[v.index()] = c.min(255) as u8;
    }
    colors
}

/// Exhaustive search for a proper colouring with `k` colours.
pub fn k_coloring(g: &StateGraph, k: usize) -> Option<Vec<u8>> {
    const NONE: u8 = u8::MAX;
    let total = g.vertex_count();
    let mut colors = vec![NONE; total];
    // Colour in BFS order so each vertex after the first has a coloured neighbour.
    let order: Vec<u32> = {
        let mut seen = vec![false; total];
        let mut order = Vec::with_capacity(total);
        for root in 0..total as u32 {
            if seen[root as usize] {
                continue;
            }
            seen[root as usize] = true;
            let start = order.len();
            order.push(root);
            let mut head = start;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &w in g.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        order.push(w);
                    }
                }
            }
        }
        order
    };
    fn go(g: &StateGraph, order: &[u32], i: usize, k: usize, colors: &mut [u8]) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        // Symmetry break: the first vertex takes colour 0.
        let limit = if i == 0 { 1 } else { k };
        for c in 0..limit as u8 {
            if g.neighbors(v).iter().all(|&w| colors[w as usize] != c) {
                colors[v as usize] = c;
                if go(g, order, i + 1, k, colors) {
                    return true;
                }
            }
        }
        colors[v as usize] = u8::MAX;
        false
    }
    go(g, &order, 0, k, &mut colors).then_some(colors)
}

/// Smallest `k` admitting a proper colouring, by exhaustive search.
pub fn exact_chromatic_number(g: &StateGraph) -> Result<usize> {
    if g.vertex_count() > EXACT_COLORING_CAP {
        return Err(Error::CapExceeded {
            states: g.vertex_count() as u64,
            cap: EXACT_COLORING_CAP as u64,
        });
    }
    Ok((1..=g.vertex_count()).find(|&k| k_coloring(g, k).is_some()).unwrap_or(0))
}

/// Edges grouped by the unordered pair of pegs their move connects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PegPairClasses {
    /// `(low peg, high peg)` → edges of that class.
    pub classes: BTreeMap<(u8, u8), Vec<(u32, u32)>>,
    /// Each class is a matching.
    pub proper: bool,
    /// A class containing two edges at one vertex, if any.
    pub conflict: Option<((u8, u8), u32)>,
}

impl PegPairClasses {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// The edge partition by peg pair, with a check that every class is a matching.
pub fn edge_coloring(g: &StateGraph) -> PegPairClasses {
    let mut classes: BTreeMap<(u8, u8), Vec<(u32, u32)>> = BTreeMap::new();
    for (u, v) in g.edges() {
        let m = g.edge_move(u, v).expect("edges carry a move");
        let (a, b) = (m.from.get(), m.to.get());
        classes.entry((a.min(b), a.max(b))).or_default().push((u, v));
    }
    let mut conflict = None;
    'classes: for (&key, edges) in &classes {
        let mut seen = vec![false; g.vertex_count()];
        for &(u, v) in edges {
            for x in [u, v] {
                if std::mem::replace(&mut seen[x as usize], true) {
                    conflict = Some((key, x));
                    break 'classes;
                }
            }
        }
    }
    PegPairClasses {
        proper: conflict.is_none(),
        classes,
        conflict,
    }
}

/// Checks that `edge_colors[i]` (colour of the `i`-th edge of
/// [`StateGraph::edges`]) never repeats at a vertex.
pub fn is_proper_edge_coloring(g: &StateGraph, edge_colors: &[u8]) -> bool {
    let edges: Vec<_> = g.edges().collect();
    if edges.len() != edge_colors.len() {
        return false;
    }
    let mut seen = BTreeSet::new();
    edges
        .iter()
        .zip(edge_colors)
        .all(|(&(u, v), &c)| seen.insert((u, c)) && seen.insert((v, c)))
}

/// Smallest `k` admitting a proper edge colouring, by exhaustive search,
/// together with one such colouring.
pub fn exact_chromatic_index(g: &StateGraph) -> Result<(usize, Vec<u8>)> {
    let edges: Vec<(u32, u32)> = g.edges().collect();
    if edges.len() > EXACT_EDGE_COLORING_CAP {
        return Err(Error::CapExceeded {
            states: edges.len() as u64,
            cap: EXACT_EDGE_COLORING_CAP as u64,
        });
    }
    if edges.is_empty() {
        return Ok((0, Vec::new()));
    }
    let delta = (0..g.vertex_count() as u32).map(|v| g.degree(v)).max().unwrap_or(0);
    for k in delta..=delta + 1 {
        let mut colors = vec![u8::MAX; edges.len()];
        let mut busy = vec![0u32; g.vertex_count()];
        if color_edges(&edges, 0, k, &mut colors, &mut busy) {
            return Ok((k, colors));
        }
    }
    Err(Error::ColoringFailed("no edge coloring with Δ + 1 colours".into()))
}

fn color_edges(edges: &[(u32, u32)], i: usize, k: usize, colors: &mut [u8], busy: &mut [u32]) -> bool {
    let Some(&(u, v)) = edges.get(i) else {
        return true;
    };
    for c in 0..k as u8 {
        let bit = 1u32 << c;
        if busy[u as usize] & bit == 0 && busy[v as usize] & bit == 0 {
            busy[u as usize] |= bit;
            busy[v as usize] |= bit;
            colors[i] = c;
            if color_edges(edges, i + 1, k, colors, busy) {
                return true;
            }
            busy[u as usize] &= !bit;
            busy[v as usize] &= !bit;
        }
    }
    false
}

//! Structural checks relating `Pⁿ` to the classical Hanoi graphs.

use serde::Serialize;

use super::graph::{build_classical_graph, build_parity_graph, StateGraph};
use super::metrics::{permutations, permute_vertex};
use crate::error::{Error, Result};
use crate::model::{parity_peg, Peg};

/// One three-peg sub-Hanoi graph: discs of one parity move freely among
/// `{N₁, parity peg, N₂}` while every other disc stays on its parity peg.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubHanoi {
    /// Parity of the free discs (`0` even, `1` odd).
    pub free_parity: u32,
    pub free_discs: Vec<u32>,
    pub vertices: Vec<u32>,
    /// The induced subgraph equals `H₃^k` under the peg relabelling
    /// `N₁ → 0, parity peg → 1, N₂ → 2` of the free discs.
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubHanoiEmbedding {
    pub n: u32,
    /// The largest copy, `H₃^{⌈n/2⌉}`.
    pub largest: SubHanoi,
    /// The copy for the other parity.
    pub complement: SubHanoi,
    /// Vertices in both copies.
    pub shared: Vec<u32>,
}

impl SubHanoiEmbedding {
    /// Both copies check out and meet exactly in the separated state.
    pub fn holds(&self, g: &StateGraph) -> bool {
        let separated: Vec<Peg> = (1..=self.n).map(parity_peg).collect();
        self.largest.isomorphic
            && self.complement.isomorphic
            && self.largest.free_discs.len() == self.n.div_ceil(2) as usize
            && self.shared == g.vertex_of_pegs(&separated).into_iter().collect::<Vec<_>>()
    }
}

/// Largest free-disc parity: odd discs when `n` is odd, even discs when `n`
/// is even (the two classes have equal size then).
fn majority_parity(n: u32) -> u32 {
    n % 2
}

fn sub_hanoi(g: &StateGraph, free_parity: u32) -> Result<SubHanoi> {
    let n = g.n();
    let free_discs: Vec<u32> = (1..=n).filter(|d| d % 2 == free_parity).collect();
    let vertices: Vec<u32> = (0..g.vertex_count() as u32)
        .filter(|&v| (1..=n).filter(|d| d % 2 != free_parity).all(|d| g.peg(v, d) == parity_peg(d)))
        .collect();

    let k = free_discs.len() as u32;
    let h3 = build_classical_graph(3, k)?;
    // Relabel: the i-th free disc becomes disc i + 1 of H₃^k.
    let to_h3 = |v: u32| -> u32 {
        free_discs.iter().rev().fold(0, |acc, &d| {
            let peg = g.peg(v, d);
            let digit = if peg == Peg::N1 {
                0
            } else if peg == Peg::N2 {
                2
            } else {
                1
            };
            acc * 3 + digit
        })
    };
    let mut image = vec![u32::MAX; h3.vertex_count()];
    let mut bijective = vertices.len() == h3.vertex_count();
    for &v in &vertices {
        let w = to_h3(v) as usize;
        if image[w] != u32::MAX {
            bijective = false;
        }
        image[w] = v;
    }
    let mut in_set = vec![false; g.vertex_count()];
    vertices.iter().for_each(|&v| in_set[v as usize] = true);
    let induced_edges = vertices
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| w > v && in_set[w as usize]).count())
        .sum::<usize>();
    let isomorphic = bijective
        && induced_edges == h3.edge_count()
        && h3.edges().all(|(a, b)| g.has_edge(image[a as usize], image[b as usize]));
    Ok(SubHanoi {
        free_parity,
        free_discs,
        vertices,
        isomorphic,
    })
}

/// The two parity-locked three-peg sub-Hanoi graphs of `Pⁿ`.
pub fn sub_hanoi_embedding(g: &StateGraph) -> Result<SubHanoiEmbedding> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidArgument("sub-Hanoi embedding needs n ≥ 1".into()));
    }
    let largest = sub_hanoi(g, majority_parity(n))?;
    let complement = sub_hanoi(g, 1 - majority_parity(n))?;
    let shared = largest
        .vertices
        .iter()
        .copied()
        .filter(|v| complement.vertices.binary_search(v).is_ok())
        .collect();
    Ok(SubHanoiEmbedding {
        n,
        largest,
        complement,
        shared,
    })
}

/// Residual graph after deleting a vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub removed: usize,
    pub remaining: usize,
    pub components: usize,
}

/// `Pⁿ` minus the largest sub-Hanoi graph, under two readings of "minus".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalReport {
    pub n: u32,
    /// Every state in which a disc of the locked parity (the discs held
    /// fixed in the largest copy) sits on its parity peg is deleted, so those
    /// discs may only use the neutral pegs.
    pub locked_discs_off_parity_peg: Residual,
    /// Only the vertices of the largest copy are deleted.
    pub vertex_set: Residual,
}

impl RemovalReport {
    /// Connected for `n ≤ 3`, disconnected for `n ≥ 4`, under the
    /// locked-disc reading.
    pub fn matches_threshold(&self) -> bool {
        let disconnected = self.locked_discs_off_parity_peg.components > 1;
        disconnected == (self.n >= 4)
    }
}

fn residual(g: &StateGraph, blocked: &[bool]) -> Residual {
    let removed = blocked.iter().filter(|&&b| b).count();
    Residual {
        removed,
        remaining: g.vertex_count() - removed,
        components: g.component_count(blocked),
    }
}

pub fn removal_disconnection(g: &StateGraph) -> Result<RemovalReport> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidArgument("removal check needs n ≥ 1".into()));
    }
    let locked = 1 - majority_parity(n);
    let by_rule: Vec<bool> = (0..g.vertex_count() as u32)
        .map(|v| (1..=n).any(|d| d % 2 == locked && g.peg(v, d) == parity_peg(d)))
        .collect();
    let largest = sub_hanoi(g, majority_parity(n))?;
    let mut by_set = vec![false; g.vertex_count()];
    largest.vertices.iter().for_each(|&v| by_set[v as usize] = true);
    Ok(RemovalReport {
        n,
        locked_discs_off_parity_peg: residual(g, &by_rule),
        vertex_set: residual(g, &by_set),
    })
}

/// Checks `Pⁿ ⊆ H₄ⁿ` edge by edge under identical state words.
pub fn embeds_in_four_peg_graph(g: &StateGraph, h4: &StateGraph) -> bool {
    g.n() == h4.n()
        && g.edges().all(|(u, v)| {
            let a = h4.vertex_of_pegs(&g.pegs(u));
            let b = h4.vertex_of_pegs(&g.pegs(v));
            matches!((a, b), (Some(a), Some(b)) if h4.has_edge(a, b))
        })
}

/// Which peg permutations induce automorphisms of `Pⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    pub n: u32,
    /// Permutations `π` (peg `p` ↦ `π[p]`) mapping `Pⁿ` onto itself.
    pub automorphisms: Vec<[u8; 4]>,
    /// The `N₁ ↔ N₂` swap preserves every edge.
    pub neutral_swap_preserves_edges: bool,
    /// For the `E ↔ O` swap: a state whose image is infeasible.
    pub parity_swap_witness: Option<(String, String)>,
}

pub fn automorphism_check(g: &StateGraph) -> AutomorphismReport {
    let n = g.n();
    let preserves = |perm: &[u8; 4]| -> bool {
        let images: Option<Vec<u32>> =
            (0..g.vertex_count() as u32).map(|v| permute_vertex(g, v, perm)).collect();
        let Some(images) = images else {
            return false;
        };
        g.edges().all(|(u, v)| g.has_edge(images[u as usize], images[v as usize]))
    };
    let automorphisms: Vec<[u8; 4]> = permutations(4).into_iter().filter(|p| preserves(p)).collect();

    let swap_parity = [0u8, 2, 1, 3];
    let separated: Vec<Peg> = (1..=n).map(parity_peg).collect();
    let parity_swap_witness = g.vertex_of_pegs(&separated).and_then(|v| {
        let image: Vec<Peg> = separated.iter().map(|p| Peg::ALL[swap_parity[p.get() as usize] as usize]).collect();
        g.vertex_of_pegs(&image)
            .is_none()
            .then(|| (g.label(v), image.iter().rev().map(|p| p.to_string()).collect()))
    });
    AutomorphismReport {
        n,
        neutral_swap_preserves_edges: preserves(&[3, 1, 2, 0]),
        automorphisms,
        parity_swap_witness,
    }
}

/// Vertex words of the fifteen-vertex subgraph of `P³`.
pub const WITNESS_VERTICES: [&str; 15] = [
    "032", "012", "013", "002", "010", "213", "003", "033", "030", "210", "212", "232", "233", "310", "312",
];
/// Edges deleted from the induced subgraph before reading off the subdivision.
pub const WITNESS_DELETED_EDGES: [(&str, &str); 4] =
    [("210", "212"), ("013", "012"), ("012", "032"), ("030", "033")];
pub const WITNESS_RED: [&str; 3] = ["032", "012", "013"];
pub const WITNESS_BLUE: [&str; 3] = ["002", "010", "213"];

/// A `K₃,₃` subdivision inside `P³`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonplanarityWitness {
    /// One path per red/blue pair, as state words.
    pub paths: Vec<Vec<String>>,
}

/// Builds `P³`, takes the fifteen-vertex induced subgraph, deletes the four
/// edges and traces the nine branch paths along degree-2 vertices.
pub fn nonplanarity_witness() -> Result<NonplanarityWitness> {
    let fail = |msg: String| Err(Error::WitnessFailed(msg));
    let g = build_parity_graph(3)?;
    let mut members = Vec::new();
    for w in WITNESS_VERTICES {
        match g.vertex(w) {
            Some(v) => members.push(v),
            None => return fail(format!("{w} is not a state of P³")),
        }
    }
    let is_member = |v: u32| members.contains(&v);
    let mut deleted = Vec::new();
    for (a, b) in WITNESS_DELETED_EDGES {
        let (u, v) = (g.vertex(a).unwrap_or(u32::MAX), g.vertex(b).unwrap_or(u32::MAX));
        if u == u32::MAX || v == u32::MAX || !g.has_edge(u, v) {
            return fail(format!("{a} -- {b} is not an edge of P³"));
        }
        deleted.push((u.min(v), u.max(v)));
    }
    let adj = |v: u32| -> Vec<u32> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| is_member(w) && !deleted.contains(&(v.min(w), v.max(w))))
            .collect()
    };
    let red: Vec<u32> = WITNESS_RED.iter().map(|w| g.vertex(w).unwrap()).collect();
    let blue: Vec<u32> = WITNESS_BLUE.iter().map(|w| g.vertex(w).unwrap()).collect();
    let branch = |v: u32| red.contains(&v) || blue.contains(&v);

    let mut paths = Vec::new();
    let mut used_interior: Vec<u32> = Vec::new();
    for &r in &red {
        let mut reached = Vec::new();
        for start in adj(r) {
            let mut path = vec![r];
            let (mut prev, mut cur) = (r, start);
            while !branch(cur) {
                let next: Vec<u32> = adj(cur).into_iter().filter(|&w| w != prev).collect();
                if next.len() != 1 {
                    return fail(format!("{} is not a subdivision vertex", g.label(cur)));
                }
                if used_interior.contains(&cur) {
                    return fail(format!("paths share {}", g.label(cur)));
                }
                used_interior.push(cur);
                path.push(cur);
                (prev, cur) = (cur, next[0]);
            }
            if !blue.contains(&cur) {
                return fail(format!("{} reaches {} of the same side", g.label(r), g.label(cur)));
            }
            path.push(cur);
            reached.push(cur);
            paths.push(path.iter().map(|&v| g.label(v)).collect());
        }
        reached.sort_unstable();
        let mut expected = blue.clone();
        expected.sort_unstable();
        if reached != expected {
            return fail(format!("{} does not reach each blue vertex exactly once", g.label(r)));
        }
    }
    for &b in &blue {
        if adj(b).len() != 3 {
            return fail(format!("{} has degree {} in the witness", g.label(b), adj(b).len()));
        }
    }
    Ok(NonplanarityWitness { paths })
}

/// Builds `Pⁿ` and `H₄ⁿ` and checks the inclusion.
pub fn sandwich(n: u32) -> Result<bool> {
    let g = build_parity_graph(n)?;
    let h4 = build_classical_graph(4, n)?;
    Ok(embeds_in_four_peg_graph(&g, &h4) && sub_hanoi_embedding(&g).map_or(n == 0, |e| e.holds(&g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_hanoi_three_discs() {
        let g = build_parity_graph(3).unwrap();
        let e = sub_hanoi_embedding(&g).unwrap();
        let mut words: Vec<String> = e.largest.vertices.iter().map(|&v| g.label(v)).collect();
        words.sort();
        assert_eq!(words, ["010", "012", "013", "210", "212", "213", "310", "312", "313"]);
        assert!(e.holds(&g));
        assert_eq!(e.shared.iter().map(|&v| g.label(v)).collect::<Vec<_>>(), ["212"]);
    }

    #[test]
    fn sub_hanoi_small_and_larger() {
        let g2 = build_parity_graph(2).unwrap();
        let e2 = sub_hanoi_embedding(&g2).unwrap();
        assert_eq!((e2.largest.vertices.len(), e2.complement.vertices.len()), (3, 3));
        assert_eq!(e2.shared.len(), 1);
        let g1 = build_parity_graph(1).unwrap();
        assert_eq!(sub_hanoi_embedding(&g1).unwrap().largest.vertices.len(), 3);
        for n in 1..=7 {
            let g = build_parity_graph(n).unwrap();
            assert!(sub_hanoi_embedding(&g).unwrap().holds(&g), "n={n}");
        }
    }

    #[test]
    fn removal_readings() {
        for n in 1..=7 {
            let r = removal_disconnection(&build_parity_graph(n).unwrap()).unwrap();
            assert!(r.matches_threshold(), "{r:?}");
        }
        let r3 = removal_disconnection(&build_parity_graph(3).unwrap()).unwrap();
        assert_eq!(r3.locked_discs_off_parity_peg.components, 1);
        // Deleting only the copy's vertices leaves a connected graph.
        let r5 = removal_disconnection(&build_parity_graph(5).unwrap()).unwrap();
        assert_eq!(r5.vertex_set.components, 1);
    }

    #[test]
    fn four_peg_inclusion() {
        for n in 0..=5 {
            assert!(sandwich(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn automorphisms() {
        for n in 2..=4 {
            let r = automorphism_check(&build_parity_graph(n).unwrap());
            assert_eq!(r.automorphisms, [[0, 1, 2, 3], [3, 1, 2, 0]]);
            assert!(r.neutral_swap_preserves_edges);
        }
        let r2 = automorphism_check(&build_parity_graph(2).unwrap());
        assert_eq!(r2.parity_swap_witness, Some(("12".to_string(), "21".to_string())));
        let r1 = automorphism_check(&build_parity_graph(1).unwrap());
        assert!(r1.neutral_swap_preserves_edges);
    }

    #[test]
    fn k33_witness() {
        let w = nonplanarity_witness().unwrap();
        assert_eq!(w.paths.len(), 9);
        assert!(w.paths.contains(&vec!["032".to_string(), "002".to_string()]));
        let interior: usize = w.paths.iter().map(|p| p.len() - 2).sum();
        assert_eq!(interior, 9);
    }
}

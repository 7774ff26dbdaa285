use std::fmt;

use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{self, Move, Peg, State};

/// Default vertex cap for graph construction (`3¹³`).
pub const DEFAULT_VERTEX_CAP: u64 = 1_594_323;

/// Which move rule a [`StateGraph`] was built with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Flavor {
    /// The parity-restricted four-peg game `Pⁿ`.
    ParityConstrained,
    /// The unrestricted Hanoi graph `H_mⁿ` on `pegs` pegs.
    Classical { pegs: u8 },
}

/// Undirected state graph with vertices numbered `0..baseⁿ`.
///
/// For `Pⁿ` the vertex number is [`State::index`]; for `H_mⁿ` it is the
/// base-`m` number whose digit for disc `d` (weight `m^{d−1}`) is its peg.
/// Neighbour lists are sorted ascending.
#[derive(Clone)]
pub struct StateGraph {
    n: u32,
    flavor: Flavor,
    base: u32,
    width: usize,
    degree: Vec<u8>,
    slots: Vec<u32>,
    powers: Vec<u32>,
}

impl fmt::Debug for StateGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateGraph")
            .field("n", &self.n)
            .field("flavor", &self.flavor)
            .field("vertices", &self.vertex_count())
            .finish_non_exhaustive()
    }
}

fn vertex_total(base: u32, n: u32, cap: u64) -> Result<u64> {
    let total = (base as u64).checked_pow(n).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::CapExceeded { states: total, cap });
    }
    Ok(total)
}

/// Builds `Pⁿ`.
pub fn build_parity_graph(n: u32) -> Result<StateGraph> {
    build_parity_graph_capped(n, DEFAULT_VERTEX_CAP)
}

pub fn build_parity_graph_capped(n: u32, cap: u64) -> Result<StateGraph> {
    vertex_total(3, n, cap)?;
    Ok(StateGraph::build(n, Flavor::ParityConstrained, 3, 5))
}

/// Builds the classical Hanoi graph `H_mⁿ` for `m ∈ {3, 4}`.
pub fn build_classical_graph(pegs: u8, n: u32) -> Result<StateGraph> {
    build_classical_graph_capped(pegs, n, DEFAULT_VERTEX_CAP)
}

pub fn build_classical_graph_capped(pegs: u8, n: u32, cap: u64) -> Result<StateGraph> {
    if !(3..=4).contains(&pegs) {
        return Err(Error::InvalidArgument(format!(
            "classical graphs need 3 or 4 pegs, got {pegs}"
        )));
    }
    vertex_total(pegs as u32, n, cap)?;
    let width = (pegs as usize * (pegs as usize - 1)) / 2;
    Ok(StateGraph::build(n, Flavor::Classical { pegs }, pegs as u32, width))
}

impl StateGraph {
    fn build(n: u32, flavor: Flavor, base: u32, width: usize) -> StateGraph {
        let powers: Vec<u32> = (0..=n).map(|k| base.pow(k)).collect();
        let total = powers[n as usize] as usize;
        let mut degree = vec![0u8; total];
        let mut slots = vec![u32::MAX; total * width];
        let mut pegs = vec![0u8; n as usize + 1];
        let mut found: Vec<u32> = Vec::with_capacity(width);

        for v in 0..total {
            let mut rest = v as u32;
            let mut tops = [u32::MAX; 4];
            for d in 1..=n {
                let digit = (rest % base) as u8;
                rest /= base;
                let peg = Self::digit_to_peg(flavor, d, digit);
                pegs[d as usize] = peg;
                if tops[peg as usize] == u32::MAX {
                    tops[peg as usize] = d;
                }
            }
            found.clear();
            for from in 0..4u8 {
                let d = tops[from as usize];
                if d == u32::MAX {
                    continue;
                }
                let from_digit = Self::peg_to_digit(flavor, d, from) as i64;
                for to in 0..4u8 {
                    if to == from || !Self::admits(flavor, d, to) || tops[to as usize] < d {
                        continue;
                    }
                    let to_digit = Self::peg_to_digit(flavor, d, to) as i64;
                    let w = v as i64 + (to_digit - from_digit) * powers[d as usize - 1] as i64;
                    found.push(w as u32);
                }
            }
            found.sort_unstable();
            degree[v] = found.len() as u8;
            slots[v * width..v * width + found.len()].copy_from_slice(&found);
        }
        StateGraph {
            n,
            flavor,
            base,
            width,
            degree,
            slots,
            powers,
        }
    }

    fn admits(flavor: Flavor, disc: u32, peg: u8) -> bool {
        match flavor {
            Flavor::ParityConstrained => Peg::ALL[peg as usize].admits(disc),
            Flavor::Classical { pegs } => peg < pegs,
        }
    }

    fn digit_to_peg(flavor: Flavor, disc: u32, digit: u8) -> u8 {
        match flavor {
            Flavor::ParityConstrained => model::digit_peg(disc, digit).get(),
            Flavor::Classical { .. } => digit,
        }
    }

    fn peg_to_digit(flavor: Flavor, disc: u32, peg: u8) -> u8 {
        match flavor {
            Flavor::ParityConstrained => model::peg_digit(disc, Peg::ALL[peg as usize]),
            Flavor::Classical { .. } => peg,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Number of pegs a disc can occupy, which is also the radix of the
    /// vertex numbering.
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.degree.len()
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let start = v as usize * self.width;
        &self.slots[start..start + self.degree[v as usize] as usize]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.degree[v as usize] as usize
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.degree.iter().map(|&d| d as usize).sum::<usize>() / 2
    }

    /// Every edge once as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Peg of `disc` in vertex `v`.
    pub fn peg(&self, v: u32, disc: u32) -> Peg {
        let digit = (v / self.powers[disc as usize - 1]) % self.base;
        Peg::ALL[Self::digit_to_peg(self.flavor, disc, digit as u8) as usize]
    }

    /// Pegs of discs `1..=n` in vertex `v`, smallest disc first.
    pub fn pegs(&self, v: u32) -> Vec<Peg> {
        (1..=self.n).map(|d| self.peg(v, d)).collect()
    }

    /// The state word of `v`, largest disc first.
    pub fn label(&self, v: u32) -> String {
        (1..=self.n).rev().map(|d| char::from(b'0' + self.peg(v, d).get())).collect()
    }

    /// Vertex with pegs `pegs[d − 1]` for disc `d`, if it belongs to the graph.
    pub fn vertex_of_pegs(&self, pegs: &[Peg]) -> Option<u32> {
        if pegs.len() != self.n as usize {
            return None;
        }
        let mut v = 0u32;
        for (i, &p) in pegs.iter().enumerate() {
            let d = i as u32 + 1;
            if !Self::admits(self.flavor, d, p.get()) {
                return None;
            }
            v += Self::peg_to_digit(self.flavor, d, p.get()) as u32 * self.powers[i];
        }
        Some(v)
    }

    /// Vertex for a state word such as `"032"` (largest disc first).
    pub fn vertex(&self, word: &str) -> Option<u32> {
        let mut pegs = Vec::with_capacity(word.len());
        for c in word.chars().rev() {
            let digit = c.to_digit(10)?;
            pegs.push(Peg::new(u8::try_from(digit).ok()?)?);
        }
        self.vertex_of_pegs(&pegs)
    }

    /// Vertex of a parity-feasible state (parity graphs only).
    pub fn vertex_of_state(&self, state: &State) -> Option<u32> {
        let pegs: Vec<Peg> = state.pegs().collect();
        self.vertex_of_pegs(&pegs)
    }

    /// The move carrying `u` to its neighbour `v`.
    pub fn edge_move(&self, u: u32, v: u32) -> Option<Move> {
        if !self.has_edge(u, v) {
            return None;
        }
        let disc = (1..=self.n).find(|&d| self.peg(u, d) != self.peg(v, d))?;
        Some(Move::new(disc, self.peg(u, disc), self.peg(v, disc)))
    }

    /// Connected components of the subgraph induced by vertices not in
    /// `blocked`.
    pub fn component_count(&self, blocked: &[bool]) -> usize {
        let mut comp = vec![u32::MAX; self.vertex_count()];
        let mut count = 0;
        for root in 0..self.vertex_count() {
            if blocked[root] || comp[root] != u32::MAX {
                continue;
            }
            let mut stack = vec![root as u32];
            comp[root] = count;
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if comp[w as usize] == u32::MAX && !blocked[w as usize] {
                        comp[w as usize] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        count as usize
    }

    /// Single-source BFS distances (`u32::MAX` for unreachable vertices).
    pub fn bfs(&self, root: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = Vec::with_capacity(self.vertex_count());
        dist[root as usize] = 0;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let next = dist[u as usize] + 1;
            for &w in self.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = next;
                    queue.push(w);
                }
            }
        }
        dist
    }

    /// A petgraph copy whose node indices equal the vertex numbers.
    pub fn to_petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::with_capacity(self.vertex_count(), self.edge_count());
        for _ in 0..self.vertex_count() {
            g.add_node(());
        }
        g.extend_with_edges(self.edges());
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::legal_moves;

    const P_EDGES: [usize; 8] = [0, 3, 14, 47, 150, 459, 1394, 4199];
    const H3_EDGES: [usize; 8] = [0, 3, 12, 39, 120, 363, 1092, 3279];
    const H4_EDGES: [usize; 8] = [0, 6, 36, 168, 720, 2976, 12096, 48768];

    #[test]
    fn edge_counts_match_the_printed_table() {
        for n in 0..8u32 {
            assert_eq!(build_parity_graph(n).unwrap().edge_count(), P_EDGES[n as usize]);
            assert_eq!(build_classical_graph(3, n).unwrap().edge_count(), H3_EDGES[n as usize]);
            assert_eq!(build_classical_graph(4, n).unwrap().edge_count(), H4_EDGES[n as usize]);
        }
    }

    #[test]
    fn adjacency_matches_move_enumeration() {
        for n in 0..=6 {
            let g = build_parity_graph(n).unwrap();
            assert_eq!(g.vertex_count(), 3usize.pow(n));
            for v in 0..g.vertex_count() as u32 {
                let s = State::from_index(n, model::StateIndex(v as u64)).unwrap();
                assert_eq!(g.label(v), s.to_string());
                let mut expected: Vec<u32> = legal_moves(&s)
                    .into_iter()
                    .map(|m| model::apply(&s, m).unwrap().index().0 as u32)
                    .collect();
                expected.sort_unstable();
                assert_eq!(g.neighbors(v), expected.as_slice());
            }
        }
    }

    #[test]
    fn undirected_and_simple() {
        let g = build_parity_graph(5).unwrap();
        for u in 0..g.vertex_count() as u32 {
            let nb = g.neighbors(u);
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for &v in nb {
                assert_ne!(u, v);
                assert!(g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn small_cases() {
        let p0 = build_parity_graph(0).unwrap();
        assert_eq!((p0.vertex_count(), p0.edge_count()), (1, 0));
        let p1 = build_parity_graph(1).unwrap();
        let labels: Vec<String> = (0..3).map(|v| p1.label(v)).collect();
        assert_eq!(labels, ["0", "2", "3"]);
        assert_eq!(p1.edges().collect::<Vec<_>>(), [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(build_parity_graph(3).unwrap().vertex_count(), 27);
    }

    #[test]
    fn labels_and_moves() {
        let g = build_parity_graph(3).unwrap();
        let u = g.vertex("032").unwrap();
        let v = g.vertex("002").unwrap();
        assert_eq!(g.label(u), "032");
        assert_eq!(g.edge_move(u, v), Some(Move::new(2, Peg::N2, Peg::N1)));
        assert_eq!(g.vertex("021"), None);
        let h = build_classical_graph(4, 2).unwrap();
        assert_eq!(h.vertex("21").map(|v| h.label(v)), Some("21".to_string()));
    }

    #[test]
    fn caps() {
        assert!(matches!(
            build_parity_graph_capped(5, 100),
            Err(Error::CapExceeded { states: 243, cap: 100 })
        ));
        assert!(build_classical_graph(5, 2).is_err());
    }
}

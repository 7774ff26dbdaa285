//! Hamiltonian path and cycle certificates built from the three-copy
//! decomposition of `Pⁿ`.
//!
//! All constructions work on vertex numbers. Prefixing disc `n` on its peg
//! with digit `k` adds `k·3^{n−1}`; swapping `N₁ ↔ N₂` swaps digits `0 ↔ 2`
//! in every position.

use serde::Serialize;

use super::graph::StateGraph;
use crate::error::{Error, Result};
use crate::model::{self, Peg, State, StateIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Path,
    Cycle,
}

/// An ordering of all `3ⁿ` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamiltonianCertificate {
    pub kind: CertificateKind,
    pub n: u32,
    pub order: Vec<StateIndex>,
}

impl HamiltonianCertificate {
    pub fn endpoints(&self) -> Option<(StateIndex, StateIndex)> {
        match self.kind {
            CertificateKind::Path => Some((*self.order.first()?, *self.order.last()?)),
            CertificateKind::Cycle => None,
        }
    }

    /// Number of moves along the path (or around the cycle).
    pub fn length(&self) -> usize {
        match self.kind {
            CertificateKind::Path => self.order.len().saturating_sub(1),
            CertificateKind::Cycle => self.order.len(),
        }
    }

    /// Checks that every vertex of `g` appears once, consecutive vertices are
    /// adjacent and, for a cycle, the last vertex is adjacent to the first.
    pub fn validate(&self, g: &StateGraph) -> Result<()> {
        let invalid = |msg: String| Err(Error::CertificateInvalid(msg));
        if g.n() != self.n || self.order.len() != g.vertex_count() {
            return invalid(format!(
                "certificate lists {} vertices, graph has {}",
                self.order.len(),
                g.vertex_count()
            ));
        }
        let mut seen = vec![false; g.vertex_count()];
        for &StateIndex(v) in &self.order {
            let Some(slot) = seen.get_mut(v as usize) else {
                return invalid(format!("vertex {v} out of range"));
            };
            if std::mem::replace(slot, true) {
                return invalid(format!("vertex {} repeated", g.label(v as u32)));
            }
        }
        for w in self.order.windows(2) {
            let (u, v) = (w[0].0 as u32, w[1].0 as u32);
            if !g.has_edge(u, v) {
                return invalid(format!("{} and {} are not adjacent", g.label(u), g.label(v)));
            }
        }
        if self.kind == CertificateKind::Cycle && self.order.len() > 1 {
            let (u, v) = (self.order[self.order.len() - 1].0 as u32, self.order[0].0 as u32);
            if !g.has_edge(u, v) {
                return invalid(format!("cycle does not close: {} and {}", g.label(u), g.label(v)));
            }
        }
        Ok(())
    }

    /// The vertices as states.
    pub fn states(&self) -> Result<Vec<State>> {
        self.order.iter().map(|&i| State::from_index(self.n, i)).collect()
    }
}

/// Appends `path` (optionally reversed) with every vertex shifted by `offset`.
fn extend_shifted(out: &mut Vec<u64>, path: &[u64], offset: u64, reversed: bool) {
    if reversed {
        out.extend(path.iter().rev().map(|&v| v + offset));
    } else {
        out.extend(path.iter().map(|&v| v + offset));
    }
}

/// `0ⁿ ⇝ 0·3^{n−1} → p(n)·3^{n−1} ⇝ p(n)·0^{n−1} → 3·0^{n−1} ⇝ 3ⁿ`.
fn perfect_path(n: u32) -> Vec<u64> {
    let mut path = vec![0u64];
    for k in 1..=n {
        let block = 3u64.pow(k - 1);
        let mut next = Vec::with_capacity(path.len() * 3);
        extend_shifted(&mut next, &path, 0, false);
        extend_shifted(&mut next, &path, block, true);
        extend_shifted(&mut next, &path, 2 * block, false);
        path = next;
    }
    path
}

/// From `0ⁿ` to the parity-separated state: separate under disc `n`, move it
/// to `N₂`, regather on `N₁`, move it to its parity peg, separate again.
fn separated_path_from_n1(n: u32) -> Vec<u64> {
    let mut path = vec![0u64];
    for k in 1..=n {
        let block = 3u64.pow(k - 1);
        let mut next = Vec::with_capacity(path.len() * 3);
        extend_shifted(&mut next, &path, 0, false);
        extend_shifted(&mut next, &path, 2 * block, true);
        extend_shifted(&mut next, &path, block, false);
        path = next;
    }
    path
}

/// Image of a vertex number under `N₁ ↔ N₂`: every digit `k` becomes `2 − k`.
fn swap_neutral(mut v: u64, n: u32) -> u64 {
    let mut out = 0;
    let mut weight = 1;
    for _ in 0..n {
        out += (2 - v % 3) * weight;
        v /= 3;
        weight *= 3;
    }
    out
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("Hamiltonian certificates need n ≥ 1".into()));
    }
    if n > model::MAX_INDEXED_DISCS.min(20) {
        return Err(Error::CapExceeded {
            states: 3u64.saturating_pow(n),
            cap: 3u64.pow(20),
        });
    }
    Ok(())
}

fn certificate(kind: CertificateKind, n: u32, order: Vec<u64>) -> HamiltonianCertificate {
    HamiltonianCertificate {
        kind,
        n,
        order: order.into_iter().map(StateIndex).collect(),
    }
}

/// Hamiltonian path from `0ⁿ` to `3ⁿ`.
pub fn hamiltonian_path_perfect(n: u32) -> Result<HamiltonianCertificate> {
    check_n(n)?;
    Ok(certificate(CertificateKind::Path, n, perfect_path(n)))
}

/// Hamiltonian path from `sourceⁿ` (`source ∈ {N₁, N₂}`) to the
/// parity-separated state; it has `3ⁿ − 1` moves.
pub fn hamiltonian_path_separated(n: u32, source: Peg) -> Result<HamiltonianCertificate> {
    check_n(n)?;
    let path = separated_path_from_n1(n);
    let path = match source {
        Peg::N1 => path,
        Peg::N2 => path.into_iter().map(|v| swap_neutral(v, n)).collect(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "source peg must be neutral, got {other}"
            )))
        }
    };
    Ok(certificate(CertificateKind::Path, n, path))
}

/// Hamiltonian cycle: in the `N₁` copy from `0s` to `0·3^{n−1}`, across to
/// the parity-peg copy and through it to `p(n)·0^{n−1}`, across to the `N₂`
/// copy and through it to `3s`, closing with the edge `3s`-`0s`. Here `s`
/// is the separated state of the smaller discs.
pub fn hamiltonian_cycle(n: u32) -> Result<HamiltonianCertificate> {
    check_n(n)?;
    let m = n - 1;
    let block = 3u64.pow(m);
    let sep = separated_path_from_n1(m);
    let sep_from_n2: Vec<u64> = sep.iter().map(|&v| swap_neutral(v, m)).collect();
    let perfect = perfect_path(m);
    let mut order = Vec::with_capacity(3 * block as usize);
    extend_shifted(&mut order, &sep_from_n2, 0, true);
    extend_shifted(&mut order, &perfect, block, true);
    extend_shifted(&mut order, &sep, 2 * block, false);
    Ok(certificate(CertificateKind::Cycle, n, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stategraph::graph::build_parity_graph;

    fn word(c: &HamiltonianCertificate, i: usize) -> String {
        State::from_index(c.n, c.order[i]).unwrap().to_string()
    }

    #[test]
    fn swap_digits() {
        // "03" ↔ "30", "12" fixed, "02" ↔ "32"
        let s = |w: &str| w.parse::<State>().unwrap().index().0;
        assert_eq!(swap_neutral(s("03"), 2), s("30"));
        assert_eq!(swap_neutral(s("12"), 2), s("12"));
        assert_eq!(swap_neutral(s("02"), 2), s("32"));
    }

    #[test]
    fn small_certificates() {
        let sep = hamiltonian_path_separated(1, Peg::N1).unwrap();
        assert_eq!((0..3).map(|i| word(&sep, i)).collect::<Vec<_>>(), ["0", "3", "2"]);
        assert_eq!(sep.length(), 2);
        let p2 = hamiltonian_path_perfect(2).unwrap();
        assert_eq!((word(&p2, 0).as_str(), word(&p2, 8).as_str()), ("00", "33"));
        assert_eq!(hamiltonian_path_separated(2, Peg::N2).unwrap().length(), 8);
        assert_eq!(hamiltonian_cycle(1).unwrap().order.len(), 3);
        assert!(hamiltonian_path_perfect(0).is_err());
        assert!(hamiltonian_path_separated(2, Peg::ODD).is_err());
    }

    #[test]
    fn certificates_validate() {
        for n in 1..=7 {
            let g = build_parity_graph(n).unwrap();
            let total = 3usize.pow(n);
            let perfect = hamiltonian_path_perfect(n).unwrap();
            perfect.validate(&g).unwrap();
            assert_eq!(
                perfect.endpoints(),
                Some((StateIndex(0), StateIndex(total as u64 - 1)))
            );
            for source in [Peg::N1, Peg::N2] {
                let c = hamiltonian_path_separated(n, source).unwrap();
                c.validate(&g).unwrap();
                assert_eq!(c.length(), total - 1);
                let (a, b) = c.endpoints().unwrap();
                assert_eq!(a, State::perfect(n, source).unwrap().index());
                assert_eq!(b, State::separated(n).unwrap().index());
            }
            hamiltonian_cycle(n).unwrap().validate(&g).unwrap();
        }
    }

    #[test]
    fn tampering_is_detected() {
        let g = build_parity_graph(3).unwrap();
        let mut c = hamiltonian_cycle(3).unwrap();
        c.order.swap(3, 17);
        assert!(matches!(c.validate(&g), Err(Error::CertificateInvalid(_))));
        let mut p = hamiltonian_path_perfect(3).unwrap();
        p.order.pop();
        assert!(p.validate(&g).is_err());
    }
}

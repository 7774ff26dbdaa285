//! States, pegs and moves of the parity-constrained puzzle.
//!
//! Pegs are coded `0 = N₁`, `1 = E` (even discs only), `2 = O` (odd discs
//! only) and `3 = N₂`. Disc `1` is the smallest. A state is the word
//! `s_n ⋯ s_1` giving the peg of every disc; since discs on one peg are
//! always stacked by size, every word whose letters respect the parity rule
//! is a valid state, and there are exactly `3ⁿ` of them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest disc count a [`State`] can hold (two bits per disc in a `u128`).
pub const MAX_DISCS: u32 = 64;

/// Largest disc count for which a [`StateIndex`] fits in a `u64`.
pub const MAX_INDEXED_DISCS: u32 = 40;

/// One of the four pegs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Peg(u8);

impl Peg {
    /// First neutral peg, home of the initial tower.
    pub const N1: Peg = Peg(0);
    /// Peg reserved for even discs.
    pub const EVEN: Peg = Peg(1);
    /// Peg reserved for odd discs.
    pub const ODD: Peg = Peg(2);
    /// Second neutral peg.
    pub const N2: Peg = Peg(3);

    pub const ALL: [Peg; 4] = [Peg::N1, Peg::EVEN, Peg::ODD, Peg::N2];

    pub const fn new(value: u8) -> Option<Peg> {
        if value < 4 {
            Some(Peg(value))
        } else {
            None
        }
    }

    #[inline]
    pub const fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_neutral(self) -> bool {
        self.0 == 0 || self.0 == 3
    }

    /// Whether `disc` may rest on this peg.
    #[inline]
    pub const fn admits(self, disc: u32) -> bool {
        match self.0 {
            1 => disc % 2 == 0,
            2 => disc % 2 == 1,
            _ => true,
        }
    }

    /// The `N₁ ↔ N₂` swap; parity pegs are fixed.
    #[inline]
    pub const fn swap_neutral(self) -> Peg {
        match self.0 {
            0 => Peg(3),
            3 => Peg(0),
            p => Peg(p),
        }
    }

    /// The other neutral peg. Only meaningful for neutral pegs.
    #[inline]
    pub(crate) const fn other_neutral(self) -> Peg {
        Peg(3 - self.0)
    }
}

impl TryFrom<u8> for Peg {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        Peg::new(value).ok_or(Error::InvalidPeg(value))
    }
}

impl From<Peg> for u8 {
    fn from(p: Peg) -> u8 {
        p.0
    }
}

impl fmt::Display for Peg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The parity peg `p(d)` a disc is allowed on: `1` for even discs, `2` for odd.
#[inline]
pub const fn parity_peg(disc: u32) -> Peg {
    if disc % 2 == 0 {
        Peg::EVEN
    } else {
        Peg::ODD
    }
}

/// The parity peg a disc may never touch, `3 − p(d)`.
#[inline]
pub const fn forbidden_peg(disc: u32) -> Peg {
    Peg(3 - parity_peg(disc).0)
}

/// The three pegs `{0, p(d), 3}` open to `disc`, in ascending order.
#[inline]
pub const fn allowed_pegs(disc: u32) -> [Peg; 3] {
    [Peg::N1, parity_peg(disc), Peg::N2]
}

/// Base-3 digit of `peg` for `disc`: `0 → 0`, `p(d) → 1`, `3 → 2`.
#[inline]
pub(crate) fn peg_digit(disc: u32, peg: Peg) -> u8 {
    match peg.0 {
        0 => 0,
        3 => 2,
        p => {
            debug_assert_eq!(p, parity_peg(disc).0);
            1
        }
    }
}

#[inline]
pub(crate) fn digit_peg(disc: u32, digit: u8) -> Peg {
    match digit {
        0 => Peg::N1,
        1 => parity_peg(disc),
        _ => Peg::N2,
    }
}

/// Compact vertex number of a state: the digit of disc `d` sits at weight `3^(d−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateIndex(pub u64);

/// A parity-feasible placement of discs `1..=n`.
///
/// Stored as two bits per disc; disc `d` occupies bits `2(d−1)..2d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct State {
    n: u32,
    word: u128,
}

impl State {
    fn check_n(n: u32) -> Result<()> {
        if n > MAX_DISCS {
            Err(Error::TooManyDiscs { n, max: MAX_DISCS })
        } else {
            Ok(())
        }
    }

    /// All discs on peg `N₁`.
    pub fn initial(n: u32) -> Result<State> {
        Self::check_n(n)?;
        Ok(State { n, word: 0 })
    }

    /// All `n` discs stacked on one peg. Only neutral pegs admit perfect
    /// states once `n ≥ 2`.
    pub fn perfect(n: u32, peg: Peg) -> Result<State> {
        Self::from_fn(n, |_| peg)
    }

    /// Builds a state from the peg of each disc.
    pub fn from_fn(n: u32, mut peg_of: impl FnMut(u32) -> Peg) -> Result<State> {
        Self::check_n(n)?;
        let mut word = 0u128;
        for d in 1..=n {
            let p = peg_of(d);
            if !p.admits(d) {
                return Err(Error::InfeasibleState { disc: d, peg: p.0 });
            }
            word |= (p.0 as u128) << (2 * (d - 1));
        }
        Ok(State { n, word })
    }

    /// Builds a state from `pegs[d − 1]`, the peg of disc `d`.
    pub fn from_pegs(pegs: &[Peg]) -> Result<State> {
        Self::from_fn(pegs.len() as u32, |d| pegs[d as usize - 1])
    }

    /// Every even disc on `E` and every odd disc on `O`.
    pub fn separated(n: u32) -> Result<State> {
        Self::from_fn(n, parity_peg)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Peg of disc `d` (`1 ≤ d ≤ n`).
    #[inline]
    pub fn peg(&self, disc: u32) -> Peg {
        debug_assert!(disc >= 1 && disc <= self.n);
        Peg(((self.word >> (2 * (disc - 1))) & 3) as u8)
    }

    /// Pegs of discs `1..=n`, smallest disc first.
    pub fn pegs(&self) -> impl Iterator<Item = Peg> + '_ {
        (1..=self.n).map(move |d| self.peg(d))
    }

    #[inline]
    fn with_peg(mut self, disc: u32, peg: Peg) -> State {
        let shift = 2 * (disc - 1);
        self.word = (self.word & !(3u128 << shift)) | ((peg.0 as u128) << shift);
        self
    }

    /// Smallest disc on each peg, if any.
    pub fn tops(&self) -> [Option<u32>; 4] {
        let mut tops = [None; 4];
        let mut seen = 0u8;
        for d in 1..=self.n {
            let p = self.peg(d).0;
            if seen & (1 << p) == 0 {
                tops[p as usize] = Some(d);
                seen |= 1 << p;
                if seen == 0b1111 {
                    break;
                }
            }
        }
        tops
    }

    /// The image under the `N₁ ↔ N₂` swap.
    pub fn swap_neutral(&self) -> State {
        let mut out = *self;
        for d in 1..=self.n {
            out = out.with_peg(d, self.peg(d).swap_neutral());
        }
        out
    }

    /// Base-3 vertex number of this state.
    pub fn index(&self) -> StateIndex {
        debug_assert!(self.n <= MAX_INDEXED_DISCS);
        let mut idx = 0u64;
        for d in (1..=self.n).rev() {
            idx = idx * 3 + peg_digit(d, self.peg(d)) as u64;
        }
        StateIndex(idx)
    }

    /// Inverse of [`State::index`].
    pub fn from_index(n: u32, index: StateIndex) -> Result<State> {
        if n > MAX_INDEXED_DISCS {
            return Err(Error::TooManyDiscs {
                n,
                max: MAX_INDEXED_DISCS,
            });
        }
        let total = 3u64.pow(n);
        if index.0 >= total {
            return Err(Error::InvalidArgument(format!(
                "state index {} out of range for n = {n}",
                index.0
            )));
        }
        let mut rest = index.0;
        Self::from_fn(n, |d| {
            let digit = (rest % 3) as u8;
            rest /= 3;
            digit_peg(d, digit)
        })
    }
}

impl fmt::Display for State {
    /// The word `s_n ⋯ s_1`, largest disc first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in (1..=self.n).rev() {
            write!(f, "{}", self.peg(d).0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State({self})")
    }
}

impl FromStr for State {
    type Err = Error;

    fn from_str(s: &str) -> Result<State> {
        let digits: Vec<u8> = s
            .bytes()
            .map(|b| match b {
                b'0'..=b'3' => Ok(b - b'0'),
                _ => Err(Error::ParseState(s.to_owned())),
            })
            .collect::<Result<_>>()?;
        let n = digits.len() as u32;
        // The word lists the largest disc first.
        State::from_fn(n, |d| Peg(digits[(n - d) as usize]))
    }
}

impl Serialize for State {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A single disc relocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub disc: u32,
    pub from: Peg,
    pub to: Peg,
}

impl Move {
    pub const fn new(disc: u32, from: Peg, to: Peg) -> Move {
        Move { disc, from, to }
    }

    /// The move that undoes this one.
    pub const fn inverse(self) -> Move {
        Move {
            disc: self.disc,
            from: self.to,
            to: self.from,
        }
    }

    pub const fn swap_neutral(self) -> Move {
        Move {
            disc: self.disc,
            from: self.from.swap_neutral(),
            to: self.to.swap_neutral(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}->{}", self.disc, self.from, self.to)
    }
}

/// Whether `mv` is legal in `state`: the disc is on top of `from`, nothing
/// smaller sits on `to`, and both pegs admit the disc.
pub fn is_legal(state: &State, mv: Move) -> bool {
    let d = mv.disc;
    if d == 0 || d > state.n() || mv.from == mv.to {
        return false;
    }
    if !mv.from.admits(d) || !mv.to.admits(d) || state.peg(d) != mv.from {
        return false;
    }
    (1..d).all(|k| {
        let p = state.peg(k);
        p != mv.from && p != mv.to
    })
}

/// Applies a legal move.
pub fn apply(state: &State, mv: Move) -> Result<State> {
    if !is_legal(state, mv) {
        return Err(Error::IllegalMove {
            state: state.to_string(),
            mv,
        });
    }
    Ok(state.with_peg(mv.disc, mv.to))
}

/// All legal moves, ordered by disc and then by target peg.
pub fn legal_moves(state: &State) -> Vec<Move> {
    let tops = state.tops();
    let mut movers: Vec<(u32, Peg)> = tops
        .iter()
        .enumerate()
        .filter_map(|(p, t)| t.map(|d| (d, Peg(p as u8))))
        .collect();
    movers.sort_unstable();

    let mut moves = Vec::with_capacity(5);
    for (d, from) in movers {
        for to in allowed_pegs(d) {
            if to != from && tops[to.0 as usize].map_or(true, |t| t > d) {
                moves.push(Move::new(d, from, to));
            }
        }
    }
    moves
}

/// The four optimisation objectives, all starting from `0ⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    /// Full tower from `N₁` to `N₂`.
    A,
    /// Even discs to `E`, odd discs to `O`.
    B,
    /// Odd discs to `O`, even discs to `N₂`.
    C,
    /// Odd discs to `N₂`, even discs to `E`.
    D,
}

impl Task {
    pub const ALL: [Task; 4] = [Task::A, Task::B, Task::C, Task::D];

    pub const fn letter(self) -> char {
        match self {
            Task::A => 'a',
            Task::B => 'b',
            Task::C => 'c',
            Task::D => 'd',
        }
    }

    /// Peg of `disc` in this task's target configuration.
    pub const fn target_peg(self, disc: u32) -> Peg {
        let even = disc % 2 == 0;
        match self {
            Task::A => Peg::N2,
            Task::B => parity_peg(disc),
            Task::C if even => Peg::N2,
            Task::C => Peg::ODD,
            Task::D if even => Peg::EVEN,
            Task::D => Peg::N2,
        }
    }

    /// Target configuration for `n` discs.
    pub fn target(self, n: u32) -> Result<State> {
        State::from_fn(n, |d| self.target_peg(d))
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Task> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Task::A),
            "b" => Ok(Task::B),
            "c" => Ok(Task::C),
            "d" => Ok(Task::D),
            other => Err(Error::InvalidArgument(format!("unknown task {other:?}"))),
        }
    }
}

/// The named states of an `n`-disc instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalStates {
    /// `0ⁿ`
    pub initial: State,
    /// `3ⁿ`
    pub perfect: State,
    /// Targets of objectives (a)–(d), in that order.
    pub targets: [State; 4],
}

impl CanonicalStates {
    pub fn target(&self, task: Task) -> State {
        self.targets[task as usize]
    }
}

pub fn canonical_states(n: u32) -> Result<CanonicalStates> {
    Ok(CanonicalStates {
        initial: State::initial(n)?,
        perfect: State::perfect(n, Peg::N2)?,
        targets: [
            Task::A.target(n)?,
            Task::B.target(n)?,
            Task::C.target(n)?,
            Task::D.target(n)?,
        ],
    })
}

//! Optimal move sequences for objectives (a)–(d) and a breadth-first oracle.
//!
//! Sequences are generated lazily from a stack of phases: single moves,
//! classical three-peg transfers of a same-parity sub-tower, and recursive
//! calls to another objective. An objective can be started from either
//! neutral peg and can be played backwards, which is how the final phase of
//! (a) gathers the separated discs back onto `N₂`.

use std::collections::VecDeque;
use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{self, Move, Peg, State, Task, MAX_DISCS};
use crate::sequences;

/// Default largest `n` for which the BFS oracle may be run.
pub const DEFAULT_ORACLE_CAP: u32 = 13;

#[derive(Clone, Copy, Debug)]
enum Phase {
    Move(Move),
    /// Classical transfer of discs `largest, largest − 2, …` (`count` of them).
    Transfer {
        largest: u32,
        count: u32,
        from: Peg,
        to: Peg,
        aux: Peg,
    },
    Objective {
        task: Task,
        n: u32,
        source: Peg,
        reversed: bool,
    },
}

impl Phase {
    fn reversed(self) -> Phase {
        match self {
            Phase::Move(m) => Phase::Move(m.inverse()),
            Phase::Transfer {
                largest,
                count,
                from,
                to,
                aux,
            } => Phase::Transfer {
                largest,
                count,
                from: to,
                to: from,
                aux,
            },
            Phase::Objective {
                task,
                n,
                source,
                reversed,
            } => Phase::Objective {
                task,
                n,
                source,
                reversed: !reversed,
            },
        }
    }
}

fn objective(task: Task, n: u32, source: Peg) -> Phase {
    Phase::Objective {
        task,
        n,
        source,
        reversed: false,
    }
}

fn transfer(largest: u32, count: u32, from: Peg, to: Peg, aux: Peg) -> Option<Phase> {
    (count > 0).then_some(Phase::Transfer {
        largest,
        count,
        from,
        to,
        aux,
    })
}

/// Phases of `task` on `n` discs stacked on neutral peg `s`; the other
/// neutral peg plays the role of `N₂`.
fn plan(task: Task, n: u32, s: Peg) -> Vec<Phase> {
    let t = s.other_neutral();
    let (e, o) = (Peg::EVEN, Peg::ODD);
    let mv = |d, from, to| Some(Phase::Move(Move::new(d, from, to)));
    let even = n % 2 == 0;
    let phases = match (task, n) {
        (_, 0) => vec![],
        (Task::A, _) => vec![
            Some(objective(Task::B, n - 1, s)),
            mv(n, s, t),
            Some(objective(Task::B, n - 1, t).reversed()),
        ],
        (Task::B, _) if even => vec![
            Some(objective(Task::C, n - 1, s)),
            mv(n, s, e),
            transfer(n - 2, (n - 2) / 2, t, e, s),
        ],
        (Task::B, _) => vec![
            Some(objective(Task::D, n - 1, s)),
            mv(n, s, o),
            transfer(n.saturating_sub(2), (n - 1) / 2, t, o, s),
        ],
        (Task::C, 1) => vec![mv(1, s, o)],
        (Task::C, _) if even => vec![
            Some(objective(Task::B, n - 1, s)),
            mv(n, s, t),
            transfer(n - 2, (n - 2) / 2, e, t, s),
        ],
        (Task::C, _) => vec![
            Some(objective(Task::B, n - 2, s)),
            mv(n - 1, s, t),
            transfer(n - 2, (n - 1) / 2, o, t, s),
            mv(n, s, o),
            transfer(n - 2, (n - 1) / 2, t, o, s),
            transfer(n - 3, (n - 3) / 2, e, t, s),
        ],
        (Task::D, _) if !even => vec![
            Some(objective(Task::B, n - 1, s)),
            mv(n, s, t),
            transfer(n.saturating_sub(2), (n - 1) / 2, o, t, s),
        ],
        (Task::D, _) => vec![
            Some(objective(Task::B, n - 2, s)),
            mv(n - 1, s, t),
            transfer(n - 2, (n - 2) / 2, e, t, s),
            mv(n, s, e),
            transfer(n - 2, (n - 2) / 2, t, e, s),
            transfer(n.saturating_sub(3), (n - 2) / 2, o, t, s),
        ],
    };
    phases.into_iter().flatten().collect()
}

/// Lazy iterator over the moves of an optimal sequence.
#[derive(Clone, Debug)]
pub struct Moves {
    /// Pending phases, next one last.
    stack: Vec<Phase>,
}

impl Moves {
    fn new(first: Phase) -> Moves {
        Moves { stack: vec![first] }
    }
}

impl Iterator for Moves {
    type Item = Move;

    fn next(&mut self) -> Option<Move> {
        while let Some(phase) = self.stack.pop() {
            match phase {
                Phase::Move(m) => return Some(m),
                Phase::Transfer {
                    largest,
                    count,
                    from,
                    to,
                    aux,
                } => {
                    if count > 1 {
                        let rest = largest - 2;
                        self.stack.push(Phase::Transfer {
                            largest: rest,
                            count: count - 1,
                            from: aux,
                            to,
                            aux: from,
                        });
                        self.stack.push(Phase::Move(Move::new(largest, from, to)));
                        self.stack.push(Phase::Transfer {
                            largest: rest,
                            count: count - 1,
                            from,
                            to: aux,
                            aux: to,
                        });
                    } else {
                        return Some(Move::new(largest, from, to));
                    }
                }
                Phase::Objective {
                    task,
                    n,
                    source,
                    reversed,
                } => {
                    let phases = plan(task, n, source);
                    if reversed {
                        self.stack.extend(phases.into_iter().map(Phase::reversed));
                    } else {
                        self.stack.extend(phases.into_iter().rev());
                    }
                }
            }
        }
        None
    }
}

/// Streams the optimal sequence for `task` on `n` discs, starting from the
/// perfect state on neutral peg `source`. With `source = N₂` every peg
/// `N₁`/`N₂` in the result is swapped.
pub fn solve_from(task: Task, n: u32, source: Peg) -> Result<Moves> {
    if n > MAX_DISCS {
        return Err(Error::TooManyDiscs { n, max: MAX_DISCS });
    }
    if !source.is_neutral() {
        return Err(Error::InvalidArgument(format!(
            "source peg must be neutral, got {source}"
        )));
    }
    Ok(Moves::new(objective(task, n, source)))
}

/// Streams the optimal sequence for `task` from `0ⁿ`.
pub fn solve_iter(task: Task, n: u32) -> Result<Moves> {
    solve_from(task, n, Peg::N1)
}

/// A materialised move sequence together with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveSequence {
    pub task: Task,
    pub n: u32,
    pub start: State,
    pub end: State,
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the first `k` moves from `start`.
    pub fn state_after(&self, k: usize) -> Result<State> {
        self.moves[..k].iter().try_fold(self.start, |s, &m| model::apply(&s, m))
    }

    /// Every visited state, `start` first.
    pub fn states(&self) -> Result<Vec<State>> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(self.start);
        let mut s = self.start;
        for &m in &self.moves {
            s = model::apply(&s, m)?;
            out.push(s);
        }
        Ok(out)
    }
}

/// Optimal sequence for `task` from `0ⁿ` to the task's target.
///
/// ```
/// use parity_hanoi::{solver::solve, Task};
///
/// let seq = solve(Task::A, 2).unwrap();
/// let text: Vec<String> = seq.moves.iter().map(|m| m.to_string()).collect();
/// assert_eq!(text, ["1 0->2", "2 0->3", "1 2->3"]);
/// ```
pub fn solve(task: Task, n: u32) -> Result<MoveSequence> {
    let moves: Vec<Move> = solve_iter(task, n)?.collect();
    Ok(MoveSequence {
        task,
        n,
        start: State::initial(n)?,
        end: task.target(n)?,
        moves,
    })
}

/// Classical optimal transfer of `discs` (all of one parity) from `from` to
/// `to` using `aux`. The discs may be given in any order.
pub fn three_peg_transfer(discs: &[u32], from: Peg, to: Peg, aux: Peg) -> Vec<Move> {
    fn go(discs: &[u32], from: Peg, to: Peg, aux: Peg, out: &mut Vec<Move>) {
        if let Some((&largest, rest)) = discs.split_first() {
            go(rest, from, aux, to, out);
            out.push(Move::new(largest, from, to));
            go(rest, aux, to, from, out);
        }
    }
    let mut sorted = discs.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::with_capacity((1usize << sorted.len().min(20)) - 1);
    go(&sorted, from, to, aux, &mut out);
    out
}

/// Moves that bring discs `1..=n`, parity-separated on `E` and `O`, back
/// into a tower on neutral peg `target`. This is the separation sequence
/// started from `target`, played backwards.
pub fn gather(n: u32, target: Peg) -> Result<Vec<Move>> {
    let moves = solve_from(Task::B, n, target)?.collect::<Vec<_>>();
    Ok(moves.into_iter().rev().map(Move::inverse).collect())
}

/// Shortest-path information in `Pⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub distance: u64,
    /// Number of distinct shortest paths, saturating at `u128::MAX`.
    pub shortest_path_count: u128,
}

/// Breadth-first search tree of `Pⁿ` rooted at one state, with shortest-path
/// counts accumulated level by level.
#[derive(Clone, Debug)]
pub struct BfsTree {
    n: u32,
    dist: Vec<u32>,
    paths: Vec<u128>,
}

impl BfsTree {
    const UNSEEN: u32 = u32::MAX;

    /// Full BFS from `source`. Fails if `3ⁿ` exceeds the oracle cap.
    pub fn new(source: &State, cap: u32) -> Result<BfsTree> {
        let n = source.n();
        if n > cap {
            return Err(Error::CapExceeded {
                states: 3u64.saturating_pow(n),
                cap: 3u64.saturating_pow(cap),
            });
        }
        let size = 3usize.pow(n);
        let mut dist = vec![Self::UNSEEN; size];
        let mut paths = vec![0u128; size];
        let root = source.index().0 as usize;
        dist[root] = 0;
        paths[root] = 1;
        let mut queue = VecDeque::from([*source]);
        while let Some(s) = queue.pop_front() {
            let u = s.index().0 as usize;
            for m in model::legal_moves(&s) {
                let next = model::apply(&s, m).expect("enumerated moves are legal");
                let v = next.index().0 as usize;
                if dist[v] == Self::UNSEEN {
                    dist[v] = dist[u] + 1;
                    queue.push_back(next);
                }
                if dist[v] == dist[u] + 1 {
                    paths[v] = paths[v].saturating_add(paths[u]);
                }
            }
        }
        Ok(BfsTree { n, dist, paths })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn distance(&self, target: &State) -> Option<u64> {
        let d = self.dist[target.index().0 as usize];
        (d != Self::UNSEEN).then_some(d as u64)
    }

    pub fn result(&self, target: &State) -> Option<OracleResult> {
        self.distance(target).map(|distance| OracleResult {
            distance,
            shortest_path_count: self.paths[target.index().0 as usize],
        })
    }

    /// Largest distance from the root.
    pub fn eccentricity(&self) -> u64 {
        self.dist.iter().copied().filter(|&d| d != Self::UNSEEN).max().unwrap_or(0) as u64
    }
}

/// Distance and number of shortest paths between two states of `Pⁿ`.
pub fn bfs_distance(source: &State, target: &State, cap: u32) -> Result<OracleResult> {
    if source.n() != target.n() {
        return Err(Error::InvalidArgument(format!(
            "states have different disc counts ({} and {})",
            source.n(),
            target.n()
        )));
    }
    BfsTree::new(source, cap)?
        .result(target)
        .ok_or_else(|| Error::InvalidArgument(format!("{target} is unreachable from {source}")))
}

/// Why a sequence failed verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceFailure {
    IllegalStep { index: usize, state: String, mv: Move },
    StartMismatch { expected: String, found: String },
    EndpointMismatch { expected: String, reached: String },
    LengthMismatch { expected: String, found: usize },
    OracleMismatch { distance: u64, found: usize },
    Oracle { message: String },
}

impl fmt::Display for SequenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceFailure::IllegalStep { index, state, mv } => {
                write!(f, "move {index} ({mv}) is illegal in state {state}")
            }
            SequenceFailure::StartMismatch { expected, found } => {
                write!(f, "sequence starts at {found}, expected {expected}")
            }
            SequenceFailure::EndpointMismatch { expected, reached } => {
                write!(f, "sequence ends at {reached}, expected {expected}")
            }
            SequenceFailure::LengthMismatch { expected, found } => {
                write!(f, "sequence has {found} moves, recurrence gives {expected}")
            }
            SequenceFailure::OracleMismatch { distance, found } => {
                write!(f, "sequence has {found} moves, BFS distance is {distance}")
            }
            SequenceFailure::Oracle { message } => write!(f, "oracle failed: {message}"),
        }
    }
}

/// Outcome of [`verify_sequence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub task: Task,
    pub n: u32,
    pub length: usize,
    /// BFS result when `n` is within the oracle cap.
    pub oracle: Option<OracleResult>,
    pub failure: Option<SequenceFailure>,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays `seq` and checks legality, both endpoints, the length against the
/// recurrences and, for `n ≤ oracle_cap`, against the BFS distance.
pub fn verify_sequence(seq: &MoveSequence, oracle_cap: u32) -> SequenceReport {
    let mut report = SequenceReport {
        task: seq.task,
        n: seq.n,
        length: seq.moves.len(),
        oracle: None,
        failure: None,
    };
    report.failure = check_sequence(seq, oracle_cap, &mut report.oracle).err();
    report
}

fn check_sequence(
    seq: &MoveSequence,
    oracle_cap: u32,
    oracle: &mut Option<OracleResult>,
) -> Result<(), SequenceFailure> {
    let start = State::initial(seq.n).map_err(|e| SequenceFailure::Oracle {
        message: e.to_string(),
    })?;
    let target = seq.task.target(seq.n).map_err(|e| SequenceFailure::Oracle {
        message: e.to_string(),
    })?;
    if seq.start != start {
        return Err(SequenceFailure::StartMismatch {
            expected: start.to_string(),
            found: seq.start.to_string(),
        });
    }
    let mut s = seq.start;
    for (index, &mv) in seq.moves.iter().enumerate() {
        s = model::apply(&s, mv).map_err(|_| SequenceFailure::IllegalStep {
            index,
            state: s.to_string(),
            mv,
        })?;
    }
    if s != target || seq.end != target {
        return Err(SequenceFailure::EndpointMismatch {
            expected: target.to_string(),
            reached: s.to_string(),
        });
    }
    let expected = sequences::coupled_counts(seq.n)
        .map(|t| t.task(seq.task, seq.n).clone())
        .map_err(|e| SequenceFailure::Oracle {
            message: e.to_string(),
        })?;
    if expected.to_usize() != Some(seq.moves.len()) {
        return Err(SequenceFailure::LengthMismatch {
            expected: expected.to_string(),
            found: seq.moves.len(),
        });
    }
    if seq.n <= oracle_cap {
        let result = bfs_distance(&start, &target, oracle_cap).map_err(|e| SequenceFailure::Oracle {
            message: e.to_string(),
        })?;
        *oracle = Some(result);
        if result.distance != seq.moves.len() as u64 {
            return Err(SequenceFailure::OracleMismatch {
                distance: result.distance,
                found: seq.moves.len(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn pegs(moves: &[Move]) -> Vec<(u32, u8, u8)> {
        moves.iter().map(|m| (m.disc, m.from.get(), m.to.get())).collect()
    }

    #[test]
    fn small_sequences() {
        assert_eq!(pegs(&solve(Task::A, 2).unwrap().moves), [(1, 0, 2), (2, 0, 3), (1, 2, 3)]);
        assert_eq!(pegs(&solve(Task::B, 1).unwrap().moves), [(1, 0, 2)]);
        assert_eq!(solve(Task::B, 2).unwrap().len(), 2);
        assert_eq!(solve(Task::C, 5).unwrap().len(), 13);
        assert!(solve(Task::D, 0).unwrap().is_empty());
    }

    #[test]
    fn lengths_and_endpoints() {
        let table = sequences::coupled_counts(20).unwrap();
        for n in 0..=20 {
            for task in Task::ALL {
                let seq = solve(task, n).unwrap();
                let report = verify_sequence(&seq, 8);
                assert!(report.passed(), "{task} n={n}: {:?}", report.failure);
                assert_eq!(table.task(task, n).to_usize(), Some(seq.len()));
            }
        }
    }

    #[test]
    fn paths_are_simple() {
        for n in 0..=12 {
            for task in Task::ALL {
                let states = solve(task, n).unwrap().states().unwrap();
                let distinct: HashSet<_> = states.iter().collect();
                assert_eq!(distinct.len(), states.len(), "{task} n={n}");
            }
        }
    }

    #[test]
    fn midpoint_of_full_transfer() {
        let table = sequences::coupled_counts(14).unwrap();
        for n in 1..=14 {
            let seq = solve(Task::A, n).unwrap();
            let k = table.task(Task::B, n - 1).to_usize().unwrap();
            let mid = seq.state_after(k).unwrap();
            let expected = State::from_fn(n, |d| if d == n { Peg::N1 } else { model::parity_peg(d) });
            assert_eq!(mid, expected.unwrap(), "n={n}");
        }
    }

    #[test]
    fn transfers() {
        assert_eq!(three_peg_transfer(&[1], Peg::N1, Peg::ODD, Peg::N2).len(), 1);
        let seven = three_peg_transfer(&[1, 5, 3], Peg::N1, Peg::ODD, Peg::N2);
        assert_eq!(seven.len(), 7);
        assert_eq!(seven[3], Move::new(5, Peg::N1, Peg::ODD));
        assert!(three_peg_transfer(&[], Peg::N1, Peg::ODD, Peg::N2).is_empty());
    }

    #[test]
    fn lazy_transfer_matches_recursive_one() {
        let lazy: Vec<Move> = Moves::new(Phase::Transfer {
            largest: 8,
            count: 4,
            from: Peg::N1,
            to: Peg::EVEN,
            aux: Peg::N2,
        })
        .collect();
        assert_eq!(lazy, three_peg_transfer(&[2, 4, 6, 8], Peg::N1, Peg::EVEN, Peg::N2));
    }

    #[test]
    fn gather_sequences() {
        assert_eq!(pegs(&gather(1, Peg::N2).unwrap()), [(1, 2, 3)]);
        assert_eq!(gather(2, Peg::N2).unwrap().len(), 2);
        assert!(gather(0, Peg::N2).unwrap().is_empty());
        for n in 0..10 {
            let moves = gather(n, Peg::N2).unwrap();
            let end = moves
                .iter()
                .try_fold(State::separated(n).unwrap(), |s, &m| model::apply(&s, m))
                .unwrap();
            assert_eq!(end, State::perfect(n, Peg::N2).unwrap());
        }
    }

    #[test]
    fn gather_is_mirrored_separation() {
        for n in 0..10 {
            let sep = solve(Task::B, n).unwrap().moves;
            let mirrored: Vec<Move> = sep
                .iter()
                .rev()
                .map(|m| Move::new(m.disc, m.to.swap_neutral(), m.from.swap_neutral()))
                .collect();
            assert_eq!(mirrored, gather(n, Peg::N2).unwrap());
        }
    }

    #[test]
    fn oracle_examples() {
        let start = State::initial(3).unwrap();
        let r = bfs_distance(&start, &State::perfect(3, Peg::N2).unwrap(), 13).unwrap();
        assert_eq!(r.distance, 5);
        let one = State::initial(1).unwrap();
        assert_eq!(
            bfs_distance(&one, &one, 13).unwrap(),
            OracleResult { distance: 0, shortest_path_count: 1 }
        );
        let seven = State::initial(7).unwrap();
        assert_eq!(bfs_distance(&seven, &Task::D.target(7).unwrap(), 13).unwrap().distance, 25);
        assert!(matches!(
            bfs_distance(&seven, &seven, 5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn tampered_sequences_fail() {
        let mut seq = solve(Task::A, 8).unwrap();
        assert!(verify_sequence(&seq, 13).passed());
        assert_eq!(seq.len(), 53);
        seq.moves.pop();
        assert!(matches!(
            verify_sequence(&seq, 13).failure,
            Some(SequenceFailure::EndpointMismatch { .. })
        ));
        let mut seq = solve(Task::B, 9).unwrap();
        assert_eq!(seq.len(), 56);
        seq.moves.swap(0, 1);
        assert!(matches!(
            verify_sequence(&seq, 0).failure,
            Some(SequenceFailure::IllegalStep { index: 0, .. })
        ));
    }

    #[test]
    fn streaming_large_n() {
        // b_40 from the recurrences; the stream never materialises the list.
        let table = sequences::coupled_counts(40).unwrap();
        let count = solve_iter(Task::B, 40).unwrap().count();
        assert_eq!(Some(count), table.task(Task::B, 40).to_usize());
    }
}

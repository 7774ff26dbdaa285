//! Self-check suites run by `parity-hanoi verify`.
//!
//! Each suite is a list of named checks over `0 ≤ n ≤ max_n` (the analysis
//! suite uses its own fixed ranges). A failing check keeps its detail and the
//! remaining checks still run.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analysis;
use crate::error::{Error, Result};
use crate::model::{self, Peg, State, Task};
use crate::sequences::{self, Column, ExponentReading, FIRST_TERMS, MAX_N};
use crate::solver::{self, BfsTree};
use crate::stategraph::{self as sg, DiameterMode, StateGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Sequences,
    Solver,
    Graph,
    Analysis,
    All,
}

impl Suite {
    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Sequences, Suite::Solver, Suite::Graph, Suite::Analysis],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "sequences" => Suite::Sequences,
            "solver" => Suite::Solver,
            "graph" => Suite::Graph,
            "analysis" => Suite::Analysis,
            "all" => Suite::All,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Sequences => "sequences",
            Suite::Solver => "solver",
            Suite::Graph => "graph",
            Suite::Analysis => "analysis",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub max_n: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} [{}] {}: {}\n", c.suite, c.name, c.detail));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// Largest `n` the graph suite will build.
pub const GRAPH_SUITE_MAX_N: u32 = 13;

/// Largest `n` the solver suite replays (sequence lengths grow like `2^{n/2}`).
pub const SOLVER_SUITE_MAX_N: u32 = 40;

/// Largest `n` for which four-peg graphs are built for comparisons.
pub const FOUR_PEG_MAX_N: u32 = 7;

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: &str, outcome: std::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Turns a library error inside a check into a failed check.
fn fail<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs `suite` for `0 ≤ n ≤ max_n`.
///
/// Fails up front with [`Error::CapExceeded`] or [`Error::Overflow`] when
/// `max_n` is outside what the selected suites can handle.
pub fn run(suite: Suite, max_n: u32, oracle_cap: u32) -> Result<VerifyReport> {
    let parts = suite.parts();
    if max_n > MAX_N {
        return Err(Error::Overflow { n: max_n, max: MAX_N });
    }
    if parts.contains(&Suite::Solver) && max_n > SOLVER_SUITE_MAX_N {
        return Err(Error::Overflow { n: max_n, max: SOLVER_SUITE_MAX_N });
    }
    if parts.contains(&Suite::Graph) && max_n > GRAPH_SUITE_MAX_N {
        return Err(Error::CapExceeded {
            states: 3u64.saturating_pow(max_n),
            cap: sg::graph::DEFAULT_VERTEX_CAP,
        });
    }
    let mut checks = Vec::new();
    for part in parts {
        let mut r = Recorder { suite: part, checks: Vec::new() };
        match part {
            Suite::Sequences => sequences_suite(&mut r, max_n),
            Suite::Solver => solver_suite(&mut r, max_n, oracle_cap),
            Suite::Graph => graph_suite(&mut r, max_n),
            Suite::Analysis => analysis_suite(&mut r),
            Suite::All => unreachable!(),
        }
        checks.extend(r.checks);
    }
    Ok(VerifyReport { suite, max_n, checks })
}

fn sequences_suite(r: &mut Recorder, max_n: u32) {
    r.check("first terms", (|| {
        let table = sequences::coupled_counts(max_n).map_err(fail)?;
        let upto = max_n.min(14);
        for (col, expected) in Column::ALL.into_iter().zip(FIRST_TERMS) {
            for n in 0..=upto {
                let got = table.value(col, n);
                if got.to_u64() != Some(expected[n as usize]) {
                    return Err(format!("{col}({n}) = {got}, reference {}", expected[n as usize]));
                }
            }
        }
        Ok(format!("{} values for n ≤ {upto}", 6 * (upto + 1)))
    })());
    r.check("route agreement", (|| {
        let report = sequences::route_agreement(max_n).map_err(fail)?;
        match report.discrepancies.first() {
            None => Ok(format!("coupled, higher-order and closed-form agree for n ≤ {max_n}")),
            Some(d) => Err(format!(
                "{} route differs for {} ({}) at n = {}: expected {}, found {}",
                d.route, d.sequence, d.parity, d.n, d.expected, d.found
            )),
        }
    })());
    r.check("literal closed-form exponent", (|| {
        let coupled = sequences::coupled_counts(max_n).map_err(fail)?;
        Ok(
            match sequences::first_closed_form_discrepancy(&coupled, ExponentReading::Literal) {
                Some(d) => format!(
                    "rejected: first differs for {} ({}) at n = {}: {}",
                    d.sequence, d.parity, d.n, d.found
                ),
                None => format!("agrees for n ≤ {max_n}"),
            },
        )
    })());
}

fn solver_suite(r: &mut Recorder, max_n: u32, oracle_cap: u32) {
    r.check("replay", (|| {
        for n in 0..=max_n {
            for task in Task::ALL {
                let seq = solver::solve(task, n).map_err(fail)?;
                let report = solver::verify_sequence(&seq, oracle_cap);
                if let Some(f) = report.failure {
                    return Err(format!("({task}, {n}): {f}"));
                }
            }
        }
        Ok(format!(
            "all tasks for n ≤ {max_n}: legal, correct endpoints, recurrence length, BFS distance for n ≤ {}",
            max_n.min(oracle_cap)
        ))
    })());
    r.check("midpoint of full transfer", (|| {
        let table = sequences::coupled_counts(max_n).map_err(fail)?;
        for n in 1..=max_n {
            let seq = solver::solve(Task::A, n).map_err(fail)?;
            let k = table.task(Task::B, n - 1).to_usize().ok_or("count too large")?;
            let mid = seq.state_after(k).map_err(fail)?;
            let expected = State::from_fn(n, |d| if d == n { Peg::N1 } else { model::parity_peg(d) })
                .map_err(fail)?;
            if mid != expected {
                return Err(format!("n = {n}: {mid} after {k} moves, expected {expected}"));
            }
        }
        Ok(format!("n ≤ {max_n}"))
    })());
    r.check("unique shortest paths", (|| {
        let upto = max_n.min(oracle_cap);
        for n in 0..=upto {
            let tree = BfsTree::new(&State::initial(n).map_err(fail)?, oracle_cap).map_err(fail)?;
            for task in Task::ALL {
                let target = task.target(n).map_err(fail)?;
                let res = tree.result(&target).ok_or("target unreachable")?;
                if res.shortest_path_count != 1 {
                    return Err(format!(
                        "({task}, {n}): {} shortest paths of length {}",
                        res.shortest_path_count, res.distance
                    ));
                }
            }
        }
        Ok(format!("n ≤ {upto}"))
    })());
    r.check("gather reverses separation", (|| {
        for n in 0..=max_n {
            let moves = solver::gather(n, Peg::N2).map_err(fail)?;
            let end = moves
                .iter()
                .try_fold(State::separated(n).map_err(fail)?, |s, &m| model::apply(&s, m))
                .map_err(fail)?;
            if end != State::perfect(n, Peg::N2).map_err(fail)? {
                return Err(format!("n = {n}: ends at {end}"));
            }
        }
        Ok(format!("n ≤ {max_n}"))
    })());
}

/// Diameters computed for one `n`, for the comparison check.
struct DiameterRow {
    n: u32,
    parity: u32,
    half_three_peg: u32,
}

fn graph_suite(r: &mut Recorder, max_n: u32) {
    let graphs: Vec<StateGraph> = match (0..=max_n).map(sg::build_parity_graph).collect() {
        Ok(g) => g,
        Err(e) => return r.check("construction", Err(fail(e))),
    };
    let nonzero = || graphs.iter().skip(1);

    r.check("edge counts", (|| {
        for g in &graphs {
            let n = g.n();
            let (rec, closed) = (
                sg::edge_count_recurrence(n).map_err(fail)?,
                sg::edge_count_closed(n).map_err(fail)?,
            );
            if g.edge_count() as u128 != rec || rec != closed {
                return Err(format!("n = {n}: built {}, recurrence {rec}, closed form {closed}", g.edge_count()));
            }
            if let Some(&printed) = sg::counts::EDGE_TABLE[2].get(n as usize) {
                if printed as u128 != rec {
                    return Err(format!("n = {n}: {rec} differs from reference {printed}"));
                }
            }
            let bridges = g.edges().filter(|&(u, v)| g.edge_move(u, v).map(|m| m.disc) == Some(n)).count();
            if bridges as u128 != sg::counts::bridge_count(n) {
                return Err(format!("n = {n}: {bridges} moves of the largest disc"));
            }
        }
        Ok(format!("n ≤ {max_n}"))
    })());

    r.check("degrees", (|| {
        for g in nonzero() {
            let n = g.n();
            let p = sg::degree_profile(g);
            let want_max = match n {
                1 => 2,
                2 => 4,
                _ => 5,
            };
            if (p.min, p.max) != (2, want_max) {
                return Err(format!("n = {n}: δ = {}, Δ = {}", p.min, p.max));
            }
            for peg in [Peg::N1, Peg::N2] {
                let v = g.vertex_of_pegs(&vec![peg; n as usize]).ok_or("perfect state missing")?;
                if g.degree(v) != 2 {
                    return Err(format!("n = {n}: perfect state {} has degree {}", g.label(v), g.degree(v)));
                }
            }
            let avg = num_rational::BigRational::new((2 * g.edge_count()).into(), g.vertex_count().into());
            if avg != sg::average_degree_formula(n).map_err(fail)? {
                return Err(format!("n = {n}: average degree {avg} differs from the formula"));
            }
        }
        Ok(format!("1 ≤ n ≤ {max_n}"))
    })());

    r.check("connectivity", (|| {
        for g in nonzero() {
            let c = sg::connectivity(g).map_err(fail)?;
            if (c.kappa, c.lambda) != (2, 2) {
                return Err(format!("n = {}: κ = {}, λ = {}", g.n(), c.kappa, c.lambda));
            }
        }
        Ok(format!("κ = λ = 2 for 1 ≤ n ≤ {max_n}"))
    })());

    r.check("hamiltonian certificates", (|| {
        for g in nonzero() {
            let n = g.n();
            sg::hamiltonian_path_perfect(n).and_then(|c| c.validate(g)).map_err(fail)?;
            for source in [Peg::N1, Peg::N2] {
                sg::hamiltonian_path_separated(n, source).and_then(|c| c.validate(g)).map_err(fail)?;
            }
            sg::hamiltonian_cycle(n).and_then(|c| c.validate(g)).map_err(fail)?;
        }
        Ok(format!("paths and cycle validate for 1 ≤ n ≤ {max_n}"))
    })());

    r.check("colorings", (|| {
        for g in nonzero() {
            let n = g.n();
            let c = sg::vertex_coloring(g).map_err(fail)?;
            if c.colors_used > 3 {
                return Err(format!("n = {n}: {} colours", c.colors_used));
            }
            let classes = sg::edge_coloring(g);
            if n >= 2 && !(classes.proper && classes.class_count() == 5) {
                return Err(format!("n = {n}: peg-pair classes {:?}", classes.conflict));
            }
        }
        if max_n >= 2 {
            let (k, _) = sg::exact_chromatic_index(&graphs[2]).map_err(fail)?;
            if k != 4 {
                return Err(format!("chromatic index of P² is {k}"));
            }
        }
        Ok(format!("3-colourings and peg-pair edge classes for 1 ≤ n ≤ {max_n}"))
    })());

    r.check("cliques", (|| {
        for g in nonzero() {
            let c = sg::clique_number(g);
            if c.omega != 3 || !c.triangles_move_small_discs() {
                return Err(format!("n = {}: ω = {}, triangles by disc {:?}", g.n(), c.omega, c.triangles_by_disc));
            }
        }
        Ok(format!("ω = 3 for 1 ≤ n ≤ {max_n}"))
    })());

    if max_n >= 3 {
        r.check("K3,3 subdivision", sg::nonplanarity_witness().map(|w| format!("{} paths", w.paths.len())).map_err(fail));
    }

    r.check("sub-Hanoi embedding", (|| {
        for g in nonzero() {
            let e = sg::sub_hanoi_embedding(g).map_err(fail)?;
            if !e.holds(g) {
                return Err(format!("n = {}: embedding check failed", g.n()));
            }
            if g.n() <= FOUR_PEG_MAX_N {
                let h4 = sg::build_classical_graph(4, g.n()).map_err(fail)?;
                if !sg::structure::embeds_in_four_peg_graph(g, &h4) {
                    return Err(format!("n = {}: an edge is missing from H₄", g.n()));
                }
            }
        }
        Ok(format!("1 ≤ n ≤ {max_n}"))
    })());

    r.check("removal disconnects", (|| {
        let mut literal = Vec::new();
        for g in nonzero() {
            let rep = sg::removal_disconnection(g).map_err(fail)?;
            if !rep.matches_threshold() {
                return Err(format!(
                    "n = {}: {} components",
                    g.n(),
                    rep.locked_discs_off_parity_peg.components
                ));
            }
            literal.push(rep.vertex_set.components);
        }
        Ok(format!(
            "disconnected exactly for n ≥ 4; deleting only the vertex set leaves components {literal:?}"
        ))
    })());

    r.check("automorphisms", (|| {
        for g in nonzero() {
            let rep = sg::automorphism_check(g);
            if !rep.neutral_swap_preserves_edges {
                return Err(format!("n = {}: neutral swap breaks an edge", g.n()));
            }
            if g.n() >= 2 && rep.parity_swap_witness.is_none() {
                return Err(format!("n = {}: no witness against the parity swap", g.n()));
            }
        }
        Ok(format!("1 ≤ n ≤ {max_n}"))
    })());

    let mut rows = Vec::new();
    r.check("diameter", (|| {
        let mut notes = Vec::new();
        for g in nonzero().filter(|g| g.vertex_count() <= sg::metrics::EXACT_DIAMETER_CAP) {
            let n = g.n();
            let d = sg::diameter(g, DiameterMode::Exact).map_err(fail)?.value;
            let four_peg = if n <= FOUR_PEG_MAX_N {
                Some(sg::diameter(&sg::build_classical_graph(4, n).map_err(fail)?, DiameterMode::Exact).map_err(fail)?.value)
            } else {
                None
            };
            let half = n.div_ceil(2);
            if (4 * n as i64 - 7) > d as i64 {
                return Err(format!("n = {n}: diameter {d} below 4n − 7"));
            }
            if four_peg.is_some_and(|h| h > d) {
                return Err(format!("n = {n}: H₄ diameter {four_peg:?} exceeds {d}"));
            }
            notes.push(format!("{n}:{d}"));
            rows.push(DiameterRow {
                n,
                parity: d,
                half_three_peg: (1u32 << half) - 1,
            });
        }
        Ok(format!("diameters {}", notes.join(" ")))
    })());
    // The upper comparison is asserted only where its printed ends
    // (4n − 7 and 2^{⌈n/2⌉} − 1) are consistent.
    r.check("diameter upper comparison", (|| {
        let mut skipped = Vec::new();
        for row in &rows {
            if 4 * row.n as i64 - 7 > row.half_three_peg as i64 {
                skipped.push(row.n);
                continue;
            }
            if row.parity > row.half_three_peg {
                return Err(format!(
                    "n = {}: diameter {} exceeds diam(H₃^{}) = {}",
                    row.n,
                    row.parity,
                    row.n.div_ceil(2),
                    row.half_three_peg
                ));
            }
        }
        Ok(format!("not asserted for n in {skipped:?}"))
    })());
}

fn analysis_suite(r: &mut Recorder) {
    r.check("subsequence ratios", (|| {
        let reports = analysis::all_subsequence_ratios(30).map_err(fail)?;
        for rep in reports.iter().filter(|rep| rep.k == 30) {
            if !rep.within(1e-3) {
                return Err(format!(
                    "{} at k = 30: {} and {}",
                    rep.sequence, rep.even_distance, rep.odd_distance
                ));
            }
        }
        for task in Task::ALL {
            if !analysis::limit_product_is_two(task) {
                return Err(format!("{task}: limit product is not 2"));
            }
        }
        Ok("within 10⁻³ of the limits at k = 30; each limit pair multiplies to 2".into())
    })());
    r.check("two-step ratios", (|| {
        let two = analysis::Ratio(num_rational::BigRational::from_integer(2.into()));
        for task in Task::ALL {
            let rs = analysis::two_step_ratios(task, 60).map_err(fail)?;
            let (_, last) = rs.last().ok_or("empty")?;
            if last.distance(&two) >= 1e-3 {
                return Err(format!("{task}: x₆₀/x₅₈ = {}", last.to_f64()));
            }
        }
        Ok("|x₆₀/x₅₈ − 2| < 10⁻³".into())
    })());
    r.check("growth envelope", (|| {
        for col in [Column::A, Column::B, Column::C, Column::D] {
            let env = analysis::growth_envelope(col, 200).map_err(fail)?;
            if !env.bounded_in(0.1, 10.0) {
                return Err(format!("{col}: outside [0.1, 10]"));
            }
        }
        Ok("x_n / 2^{n/2} within [0.1, 10] for 10 ≤ n ≤ 200".into())
    })());
    r.check("orderings", (|| {
        let t = analysis::comparison_table(200).map_err(fail)?;
        if let Some(n) = t.ordering_violations().first() {
            return Err(format!("n = {n}: h4 ≤ a ≤ h3 or max(b, c, d) ≤ a fails"));
        }
        if !analysis::non_domination_witnesses().map_err(fail)? {
            return Err("non-domination witnesses at n = 6, 7 fail".into());
        }
        Ok("h4 ≤ a ≤ h3 and max(b, c, d) ≤ a for n ≤ 200".into())
    })());
    r.check("min(b, c, d) ≥ h4", (|| {
        let m = analysis::min_objective_versus_four_peg(7, 200).map_err(fail)?;
        if m.holds() {
            Ok("holds for 7 ≤ n ≤ 200".into())
        } else {
            Err(format!("fails at n = {:?}", m.counterexamples))
        }
    })());
}

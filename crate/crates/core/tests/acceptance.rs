//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Two criteria are known not to hold and are reported as FAIL: the
//! uniqueness half of 3 (several objectives have more than one shortest
//! path) and the upper half of the diameter comparison in 13. The run
//! itself fails only if the set of failing criteria changes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use parity_hanoi::analysis;
use parity_hanoi::model::{parity_peg, Peg, State, Task};
use parity_hanoi::sequences::{self, Column, FIRST_TERMS};
use parity_hanoi::solver::{self, BfsTree};
use parity_hanoi::stategraph::{self as sg, counts::EDGE_TABLE, DiameterMode};

const EXPECTED_FAILURES: [u32; 2] = [3, 13];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c01_first_terms() -> Outcome {
    let t = sequences::coupled_counts(14).map_err(err)?;
    let mut checked = 0;
    for (col, expected) in Column::ALL.into_iter().zip(FIRST_TERMS) {
        for n in 0..=14u32 {
            let got = t.value(col, n).to_u64();
            ensure(got == Some(expected[n as usize]), || format!("{col}({n}) = {got:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} values"))
}

fn c02_routes() -> Outcome {
    let r = sequences::route_agreement(200).map_err(err)?;
    match r.discrepancies.first() {
        None => Ok("coupled = higher-order = closed form for 0 ≤ n ≤ 200".into()),
        Some(d) => Err(format!("{} {} ({}) n = {}: {} vs {}", d.route, d.sequence, d.parity, d.n, d.expected, d.found)),
    }
}

fn c03_oracle() -> Outcome {
    let table = sequences::coupled_counts(10).map_err(err)?;
    let mut multiple = Vec::new();
    for n in 0..=10 {
        let tree = BfsTree::new(&State::initial(n).map_err(err)?, 10).map_err(err)?;
        for task in Task::ALL {
            let res = tree.result(&task.target(n).map_err(err)?).ok_or("unreachable target")?;
            let expected = table.task(task, n).to_u64().unwrap();
            ensure(res.distance == expected, || {
                format!("({task}, {n}): distance {} vs {expected}", res.distance)
            })?;
            if res.shortest_path_count != 1 {
                multiple.push(format!("{task}{n}:{}", res.shortest_path_count));
            }
        }
    }
    if multiple.is_empty() {
        Ok("distances match, every shortest path unique".into())
    } else {
        Err(format!(
            "distances match; {} (task, n) pairs have several shortest paths, e.g. {}",
            multiple.len(),
            multiple.iter().take(6).cloned().collect::<Vec<_>>().join(" ")
        ))
    }
}

fn c04_replay() -> Outcome {
    let table = sequences::coupled_counts(14).map_err(err)?;
    for n in 0..=14 {
        for task in Task::ALL {
            let seq = solver::solve(task, n).map_err(err)?;
            let rep = solver::verify_sequence(&seq, 0);
            ensure(rep.passed(), || format!("({task}, {n}): {:?}", rep.failure))?;
        }
        if n >= 1 {
            let seq = solver::solve(Task::A, n).map_err(err)?;
            let k = table.task(Task::B, n - 1).to_usize().unwrap();
            let mid = seq.state_after(k).map_err(err)?;
            let want = State::from_fn(n, |d| if d == n { Peg::N1 } else { parity_peg(d) }).map_err(err)?;
            ensure(mid == want, || format!("midpoint n = {n}: {mid} vs {want}"))?;
        }
    }
    Ok("all tasks, n ≤ 14, midpoint included".into())
}

fn c05_edge_table() -> Outcome {
    for n in 0..=10u32 {
        let built = sg::build_parity_graph(n).map_err(err)?.edge_count() as u128;
        let rec = sg::edge_count_recurrence(n).map_err(err)?;
        let closed = sg::edge_count_closed(n).map_err(err)?;
        let printed = EDGE_TABLE[2][n as usize] as u128;
        ensure(built == printed && rec == printed && closed == printed, || {
            format!("P^{n}: built {built}, recurrence {rec}, closed {closed}, reference {printed}")
        })?;
    }
    for (row, pegs) in [(0, 3u8), (1, 4u8)] {
        for n in 0..=7u32 {
            let e = sg::build_classical_graph(pegs, n).map_err(err)?.edge_count() as u64;
            ensure(e == EDGE_TABLE[row][n as usize], || format!("H{pegs}^{n}: {e}"))?;
        }
    }
    Ok("P for n ≤ 10 on three routes, H3 and H4 for n ≤ 7".into())
}

fn c06_degrees() -> Outcome {
    for n in 1..=10u32 {
        let g = sg::build_parity_graph(n).map_err(err)?;
        let p = sg::degree_profile(&g);
        let want = [2, 4, 5][(n.min(3) - 1) as usize];
        ensure(p.min == 2 && p.max == want, || format!("n = {n}: δ {} Δ {}", p.min, p.max))?;
        for peg in [Peg::N1, Peg::N2] {
            let v = g.vertex_of_pegs(&vec![peg; n as usize]).unwrap();
            ensure(g.degree(v) == 2, || format!("n = {n}: perfect state degree {}", g.degree(v)))?;
        }
        let avg = BigRational::new((2 * g.edge_count()).into(), g.vertex_count().into());
        ensure(avg == sg::average_degree_formula(n).map_err(err)?, || format!("n = {n}: average {avg}"))?;
    }
    Ok("δ = 2, Δ = 2/4/5, perfect states degree 2, exact average degree, n ≤ 10".into())
}

fn c07_connectivity() -> Outcome {
    for n in 2..=9 {
        let g = sg::build_parity_graph(n).map_err(err)?;
        let c = sg::connectivity(&g).map_err(err)?;
        ensure(
            c.kappa == 2 && c.lambda == 2 && c.articulation_points.is_empty() && c.bridges.is_empty(),
            || format!("n = {n}: κ {} λ {}", c.kappa, c.lambda),
        )?;
        let cut = c.vertex_cut.ok_or("no vertex cut")?;
        let mut blocked = vec![false; g.vertex_count()];
        cut.iter().for_each(|&v| blocked[v as usize] = true);
        ensure(cut.len() == 2 && g.component_count(&blocked) > 1, || format!("n = {n}: cut {cut:?}"))?;
        ensure(c.edge_cut.is_some_and(|e| e.len() == 2), || format!("n = {n}: edge cut"))?;
    }
    Ok("κ = λ = 2 with explicit 2-cuts, 2 ≤ n ≤ 9".into())
}

fn c08_hamilton() -> Outcome {
    for n in 1..=9u32 {
        let g = sg::build_parity_graph(n).map_err(err)?;
        let p = sg::hamiltonian_path_perfect(n).map_err(err)?;
        p.validate(&g).map_err(err)?;
        let s = sg::hamiltonian_path_separated(n, Peg::N1).map_err(err)?;
        s.validate(&g).map_err(err)?;
        ensure(s.length() as u64 == 3u64.pow(n) - 1, || format!("n = {n}: length {}", s.length()))?;
        sg::hamiltonian_cycle(n).map_err(err)?.validate(&g).map_err(err)?;
    }
    Ok("two paths and a cycle for 1 ≤ n ≤ 9".into())
}

fn c09_colorings() -> Outcome {
    for n in 1..=8 {
        let g = sg::build_parity_graph(n).map_err(err)?;
        let c = sg::vertex_coloring(&g).map_err(err)?;
        ensure(c.colors_used <= 3, || format!("n = {n}: {} colours", c.colors_used))?;
        ensure(sg::clique_number(&g).triangle_count > 0, || format!("n = {n}: no triangle"))?;
    }
    for n in 2..=10 {
        let p = sg::edge_coloring(&sg::build_parity_graph(n).map_err(err)?);
        ensure(p.proper && p.class_count() == 5, || format!("n = {n}: {:?}", p.conflict))?;
    }
    let (k, _) = sg::exact_chromatic_index(&sg::build_parity_graph(2).map_err(err)?).map_err(err)?;
    ensure(k == 4, || format!("χ′(P²) = {k}"))?;
    Ok("χ = 3 for n ≤ 8, five peg-pair matchings for 2 ≤ n ≤ 10, χ′(P²) = 4".into())
}

fn c10_cliques() -> Outcome {
    for n in 1..=8 {
        let c = sg::clique_number(&sg::build_parity_graph(n).map_err(err)?);
        ensure(c.omega == 3 && c.k4.is_none() && c.triangles_move_small_discs(), || {
            format!("n = {n}: ω {} by disc {:?}", c.omega, c.triangles_by_disc)
        })?;
    }
    Ok("ω = 3, no K4, triangles move disc 1 or 2, n ≤ 8".into())
}

fn c11_nonplanar() -> Outcome {
    let w = sg::nonplanarity_witness().map_err(err)?;
    let expected: BTreeSet<&str> = [
        "032-002",
        "032-030-010",
        "032-033-233-232-212-213",
        "012-010",
        "012-002",
        "012-312-310-210-213",
        "013-010",
        "013-003-002",
        "013-213",
    ]
    .into();
    let found: Vec<String> = w.paths.iter().map(|p| p.join("-")).collect();
    let found_set: BTreeSet<&str> = found.iter().map(String::as_str).collect();
    ensure(found_set == expected, || format!("paths {found:?}"))?;
    Ok("K3,3 subdivision with nine disjoint paths".into())
}

fn c12_sub_hanoi() -> Outcome {
    let mut literal = Vec::new();
    for n in 1..=8 {
        let g = sg::build_parity_graph(n).map_err(err)?;
        let e = sg::sub_hanoi_embedding(&g).map_err(err)?;
        ensure(e.holds(&g) && e.shared.len() == 1, || format!("n = {n}: embedding"))?;
        let r = sg::removal_disconnection(&g).map_err(err)?;
        ensure(r.matches_threshold(), || {
            format!("n = {n}: {} components", r.locked_discs_off_parity_peg.components)
        })?;
        literal.push(r.vertex_set.components);
    }
    Ok(format!(
        "H3 copy isomorphic, one shared vertex, disconnected iff n ≥ 4; deleting only the copy's vertices leaves {literal:?} components"
    ))
}

fn c13_diameter() -> Outcome {
    let mut line = Vec::new();
    let mut upper_failures = Vec::new();
    for n in 1..=8u32 {
        let d = sg::diameter(&sg::build_parity_graph(n).map_err(err)?, DiameterMode::Exact).map_err(err)?.value;
        let lower = 4 * n as i64 - 7;
        let upper = sg::diameter(&sg::build_classical_graph(3, n.div_ceil(2)).map_err(err)?, DiameterMode::Exact)
            .map_err(err)?
            .value;
        ensure(lower <= d as i64, || format!("n = {n}: diameter {d} < 4n − 7"))?;
        if lower > upper as i64 {
            line.push(format!("n={n}: 4n−7={lower} > {upper}"));
        }
        if n <= 7 {
            let h4 = sg::diameter(&sg::build_classical_graph(4, n).map_err(err)?, DiameterMode::Exact).map_err(err)?.value;
            ensure(h4 <= d, || format!("n = {n}: diam H4 {h4} > {d}"))?;
            if d > upper {
                upper_failures.push(format!("{n}:{d}>{upper}"));
            }
        }
    }
    let note = format!("printed bounds inconsistent at {}", line.join(", "));
    if upper_failures.is_empty() {
        Ok(note)
    } else {
        Err(format!(
            "4n − 7 and H4 bounds hold; diam(P^n) ≤ diam(H3^⌈n/2⌉) fails at {}; {note}",
            upper_failures.join(" ")
        ))
    }
}

fn c14_ratios() -> Outcome {
    for r in analysis::all_subsequence_ratios(30).map_err(err)?.iter().filter(|r| r.k == 30) {
        ensure(r.within(1e-3), || format!("{}: {} {}", r.sequence, r.even_distance, r.odd_distance))?;
    }
    let two = analysis::Ratio(BigRational::from_integer(2.into()));
    for task in Task::ALL {
        let (_, last) = analysis::two_step_ratios(task, 60).map_err(err)?.pop().unwrap();
        ensure(last.distance(&two) < 1e-3, || format!("{task}: two-step {}", last.to_f64()))?;
        ensure(analysis::limit_product_is_two(task), || format!("{task}: α·β ≠ 2"))?;
    }
    Ok("k = 30 within 10⁻³, x₆₀/x₅₈ within 10⁻³ of 2, α·β = 2".into())
}

fn c15_remark() -> Outcome {
    let m = analysis::min_objective_versus_four_peg(7, 200).map_err(err)?;
    ensure(m.holds(), || format!("counterexamples {:?}", m.counterexamples))?;
    Ok("min(b, c, d) ≥ h4 for 7 ≤ n ≤ 200 (empirical)".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 15] = [
        (1, "first fifteen terms", 1, c01_first_terms),
        (2, "route agreement", 1, c02_routes),
        (3, "BFS oracle and uniqueness", 60, c03_oracle),
        (4, "sequence replay", 1, c04_replay),
        (5, "edge counts", 60, c05_edge_table),
        (6, "degrees", 30, c06_degrees),
        (7, "connectivity", 120, c07_connectivity),
        (8, "Hamiltonian certificates", 60, c08_hamilton),
        (9, "colorings", 60, c09_colorings),
        (10, "cliques", 60, c10_cliques),
        (11, "nonplanarity witness", 1, c11_nonplanar),
        (12, "sub-Hanoi sandwich", 60, c12_sub_hanoi),
        (13, "diameter", 300, c13_diameter),
        (14, "ratios", 1, c14_ratios),
        (15, "min(b, c, d) vs h4", 1, c15_remark),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(budget) => Err(format!("{d} (took {elapsed:.1?}, budget {budget} s)")),
            o => o,
        };
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{mark} criterion {id:>2} {name} [{elapsed:.2?}]: {detail}");
        if outcome.is_err() {
            failed.push(id);
        }
    }
    println!("expected failures: {EXPECTED_FAILURES:?}, observed: {failed:?}");
    if failed == EXPECTED_FAILURES {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

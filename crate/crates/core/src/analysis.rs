//! Ratios, growth rates and comparison data for the count sequences.
//!
//! Ratios are exact rationals; decimals are for display.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::Task;
use crate::sequences::{coupled_counts, json_integer, scaled_by_sqrt2_pow, Column, Count, CountTable, MAX_N};

/// An exact ratio, serialized as `{"exact": "p/q", "decimal": x}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ratio(pub BigRational);

impl Ratio {
    pub fn new(numerator: &Count, denominator: &Count) -> Ratio {
        Ratio(BigRational::new(
            BigInt::from(numerator.clone()),
            BigInt::from(denominator.clone()),
        ))
    }

    fn of(numerator: i64, denominator: i64) -> Ratio {
        Ratio(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `|self − other|` as a float.
    pub fn distance(&self, other: &Ratio) -> f64 {
        let diff = &self.0 - &other.0;
        diff.to_f64().unwrap_or(f64::NAN).abs()
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Ratio", 2)?;
        st.serialize_field("exact", &self.0.to_string())?;
        st.serialize_field("decimal", &self.to_f64())?;
        st.end()
    }
}

/// Limits of `x_{2k}/x_{2k−1}` and `x_{2k+1}/x_{2k}` as `k → ∞`.
pub fn ratio_limits(task: Task) -> (Ratio, Ratio) {
    match task {
        Task::A => (Ratio::of(27, 19), Ratio::of(38, 27)),
        Task::B => (Ratio::of(38, 27), Ratio::of(27, 19)),
        Task::C => (Ratio::of(34, 31), Ratio::of(62, 34)),
        Task::D => (Ratio::of(20, 13), Ratio::of(26, 20)),
    }
}

/// The two parity limits multiply to exactly `2`.
pub fn limit_product_is_two(task: Task) -> bool {
    let (alpha, beta) = ratio_limits(task);
    alpha.0 * beta.0 == BigRational::from_integer(2.into())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub sequence: Task,
    pub k: u32,
    /// `x_{2k} / x_{2k−1}`
    pub even_over_odd: Ratio,
    /// `x_{2k+1} / x_{2k}`
    pub odd_over_even: Ratio,
    pub even_limit: Ratio,
    pub odd_limit: Ratio,
    pub even_distance: f64,
    pub odd_distance: f64,
}

impl RatioReport {
    pub fn within(&self, tolerance: f64) -> bool {
        self.even_distance < tolerance && self.odd_distance < tolerance
    }
}

fn table_for(n_max: u32) -> Result<CountTable> {
    if n_max > MAX_N {
        return Err(Error::Overflow { n: n_max, max: MAX_N });
    }
    coupled_counts(n_max)
}

/// Ratio reports for `1 ≤ k ≤ k_max`.
pub fn subsequence_ratios(task: Task, k_max: u32) -> Result<Vec<RatioReport>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let t = table_for(2 * k_max + 1)?;
    Ok(ratio_reports(&t, task, k_max))
}

fn ratio_reports(t: &CountTable, task: Task, k_max: u32) -> Vec<RatioReport> {
    let (even_limit, odd_limit) = ratio_limits(task);
    (1..=k_max)
        .map(|k| {
            let x = |n| t.task(task, n);
            let even_over_odd = Ratio::new(x(2 * k), x(2 * k - 1));
            let odd_over_even = Ratio::new(x(2 * k + 1), x(2 * k));
            RatioReport {
                sequence: task,
                k,
                even_distance: even_over_odd.distance(&even_limit),
                odd_distance: odd_over_even.distance(&odd_limit),
                even_over_odd,
                odd_over_even,
                even_limit: even_limit.clone(),
                odd_limit: odd_limit.clone(),
            }
        })
        .collect()
}

/// Ratio reports for all four objectives from one table.
pub fn all_subsequence_ratios(k_max: u32) -> Result<Vec<RatioReport>> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let t = table_for(2 * k_max + 1)?;
    let mut out = Vec::new();
    for task in Task::ALL {
        out.extend(ratio_reports(&t, task, k_max));
    }
    Ok(out)
}

/// `x_n / x_{n−2}` for `3 ≤ n ≤ n_max` (`x_0 = 0`, so `n = 2` has no ratio).
pub fn two_step_ratios(task: Task, n_max: u32) -> Result<Vec<(u32, Ratio)>> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("n_max must be at least 2".into()));
    }
    let t = table_for(n_max)?;
    Ok((3..=n_max)
        .map(|n| (n, Ratio::new(t.task(task, n), t.task(task, n - 2))))
        .collect())
}

/// `x_n / 2^{n/2}` along one parity class of `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityEnvelope {
    pub values: Vec<(u32, f64)>,
    /// Last value, the estimate of the constant.
    pub constant: f64,
    /// Difference between the last two values.
    pub last_step: f64,
    pub min: f64,
    pub max: f64,
}

impl ParityEnvelope {
    fn from_values(values: Vec<(u32, f64)>) -> ParityEnvelope {
        let last = values.last().map_or(f64::NAN, |v| v.1);
        let before = values.iter().rev().nth(1).map_or(f64::NAN, |v| v.1);
        ParityEnvelope {
            constant: last,
            last_step: (last - before).abs(),
            min: values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min),
            max: values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max),
            values,
        }
    }
}

/// Even-`n` and odd-`n` envelopes of `x_n / 2^{n/2}` for `10 ≤ n ≤ n_max`.
///
/// The two parity classes generally settle to different constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEnvelope {
    pub column: Column,
    pub even: ParityEnvelope,
    pub odd: ParityEnvelope,
}

impl GrowthEnvelope {
    pub fn bounded_in(&self, lo: f64, hi: f64) -> bool {
        [&self.even, &self.odd].iter().all(|e| e.min >= lo && e.max <= hi)
    }
}

pub fn growth_envelope(column: Column, n_max: u32) -> Result<GrowthEnvelope> {
    if n_max < 11 {
        return Err(Error::InvalidArgument("growth envelope needs n_max ≥ 11".into()));
    }
    let t = table_for(n_max)?;
    let values = |parity: u32| -> Vec<(u32, f64)> {
        (10..=n_max)
            .filter(|n| n % 2 == parity)
            .map(|n| (n, scaled_by_sqrt2_pow(t.value(column, n), n)))
            .collect()
    };
    Ok(GrowthEnvelope {
        column,
        even: ParityEnvelope::from_values(values(0)),
        odd: ParityEnvelope::from_values(values(1)),
    })
}

/// Counts for `0 ≤ n ≤ n_max` next to `√2ⁿ`, for log-scale comparison plots.
#[derive(Clone, Debug)]
pub struct ComparisonTable {
    table: CountTable,
}

const COMPARISON_COLUMNS: [&str; 8] = ["n", "h3", "h4", "a", "b", "c", "d", "sqrt2_pow_n"];

pub fn comparison_table(n_max: u32) -> Result<ComparisonTable> {
    Ok(ComparisonTable { table: table_for(n_max)? })
}

fn log10(x: &Count) -> Option<f64> {
    (!x.is_zero()).then(|| x.to_f64().unwrap_or(f64::INFINITY).log10())
}

impl ComparisonTable {
    pub fn counts(&self) -> &CountTable {
        &self.table
    }

    pub fn sqrt2_pow(n: u32) -> f64 {
        std::f64::consts::SQRT_2.powi(n as i32)
    }

    /// CSV with header `n,h3,h4,a,b,c,d,sqrt2_pow_n`. With `log10`, every
    /// column except `n` holds its base-10 logarithm (empty for zero).
    pub fn to_csv(&self, log10_columns: bool) -> String {
        let mut out = COMPARISON_COLUMNS.join(",");
        out.push('\n');
        for r in self.table.rows() {
            out.push_str(&r.n.to_string());
            for col in Column::ALL {
                out.push(',');
                if log10_columns {
                    if let Some(l) = log10(r.get(col)) {
                        out.push_str(&format!("{l:.6}"));
                    }
                } else {
                    out.push_str(&r.get(col).to_string());
                }
            }
            let s = Self::sqrt2_pow(r.n);
            if log10_columns {
                out.push_str(&format!(",{:.6}\n", s.log10()));
            } else {
                out.push_str(&format!(",{s}\n"));
            }
        }
        out
    }

    /// JSON array of row objects keyed like the CSV header; `null` for
    /// `log10(0)`.
    pub fn to_json(&self, log10_columns: bool) -> serde_json::Value {
        let rows = self.table.rows().iter().map(|r| {
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), r.n.into());
            for col in Column::ALL {
                let v = if log10_columns {
                    log10(r.get(col)).map_or(serde_json::Value::Null, Into::into)
                } else {
                    json_integer(r.get(col))
                };
                obj.insert(col.name().into(), v);
            }
            let s = Self::sqrt2_pow(r.n);
            obj.insert("sqrt2_pow_n".into(), if log10_columns { s.log10() } else { s }.into());
            serde_json::Value::Object(obj)
        });
        serde_json::Value::Array(rows.collect())
    }

    /// Rows where `h4 ≤ a ≤ h3` or `max{b, c, d} ≤ a` fails.
    pub fn ordering_violations(&self) -> Vec<u32> {
        self.table
            .rows()
            .iter()
            .filter(|r| !(r.h4 <= r.a && r.a <= r.h3 && r.b <= r.a && r.c <= r.a && r.d <= r.a))
            .map(|r| r.n)
            .collect()
    }
}

/// `d₆ > b₆ > c₆` and `c₇ > b₇ > d₇`: no objective count dominates another.
pub fn non_domination_witnesses() -> Result<bool> {
    let t = table_for(7)?;
    let v = |task, n| t.task(task, n);
    Ok(v(Task::D, 6) > v(Task::B, 6)
        && v(Task::B, 6) > v(Task::C, 6)
        && v(Task::C, 7) > v(Task::B, 7)
        && v(Task::B, 7) > v(Task::D, 7))
}

/// Outcome of the observation that `min{b, c, d}(n) ≥ h4(n)` on a range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinVersusFourPeg {
    pub from: u32,
    pub to: u32,
    /// `n` where the minimum falls below `h4`.
    pub counterexamples: Vec<u32>,
}

impl MinVersusFourPeg {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn min_objective_versus_four_peg(from: u32, to: u32) -> Result<MinVersusFourPeg> {
    let t = table_for(to)?;
    let counterexamples = (from..=to)
        .filter(|&n| {
            let r = t.row(n).expect("row within table");
            r.b.clone().min(r.c.clone()).min(r.d.clone()) < r.h4
        })
        .collect();
    Ok(MinVersusFourPeg { from, to, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_small_ratios() {
        let a = subsequence_ratios(Task::A, 7).unwrap();
        assert_eq!(a[6].even_over_odd, Ratio::of(481, 335));
        let d = subsequence_ratios(Task::D, 7).unwrap();
        assert_eq!(d[6].even_over_odd, Ratio::of(358, 231));
        let one = subsequence_ratios(Task::B, 1).unwrap();
        assert_eq!((one[0].even_over_odd.clone(), one[0].odd_over_even.clone()), (Ratio::of(2, 1), Ratio::of(4, 2)));
        assert!(subsequence_ratios(Task::A, 0).is_err());
    }

    #[test]
    fn ratios_converge() {
        for task in Task::ALL {
            assert!(limit_product_is_two(task));
            let r = subsequence_ratios(task, 60).unwrap();
            assert!(r[29].within(1e-3), "{task:?} at k=30: {:?}", r[29]);
            assert!(r[59].within(1e-6), "{task:?} at k=60: {:?}", r[59]);
        }
    }

    #[test]
    fn decimal_matches_rational() {
        let r = &subsequence_ratios(Task::C, 40).unwrap()[39];
        let back = Ratio(BigRational::from_float(r.even_over_odd.to_f64()).unwrap());
        assert!(back.distance(&r.even_over_odd) < 1e-12);
    }

    #[test]
    fn two_step() {
        let a = two_step_ratios(Task::A, 14).unwrap();
        assert_eq!(a.last().unwrap(), &(14, Ratio::of(481, 235)));
        let c = two_step_ratios(Task::C, 12).unwrap();
        assert_eq!(c.last().unwrap().1, Ratio::of(149, 72));
        let two = Ratio::of(2, 1);
        for task in Task::ALL {
            let r = two_step_ratios(task, 60).unwrap();
            assert!(r.last().unwrap().1.distance(&two) < 1e-3);
        }
    }

    #[test]
    fn envelopes() {
        let a = growth_envelope(Column::A, 60).unwrap();
        assert!(a.even.last_step < 1e-6, "{}", a.even.last_step);
        assert!(a.odd.last_step < 1e-6);
        assert!((a.even.constant - a.odd.constant).abs() > 1e-2);
        for col in [Column::A, Column::B, Column::C, Column::D] {
            assert!(growth_envelope(col, 200).unwrap().bounded_in(0.1, 10.0), "{col}");
        }
        let h3 = growth_envelope(Column::H3, 200).unwrap();
        assert!(h3.even.max > 1e20);
    }

    #[test]
    fn comparison_rows() {
        let t = comparison_table(48).unwrap();
        assert_eq!(t.counts().task(Task::A, 48), &Count::from(64_712_083u64));
        assert_eq!(t.counts().task(Task::C, 48), &Count::from(40_744_649u64));
        let csv = t.to_csv(false);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,h3,h4,a,b,c,d,sqrt2_pow_n"));
        assert_eq!(lines.next(), Some("0,0,0,0,0,0,0,1"));
        assert!(t.to_csv(true).lines().nth(1).unwrap().starts_with("0,,,,,,,0.000000"));
        assert_eq!(t.to_json(true)[0]["a"], serde_json::Value::Null);
        assert!(comparison_table(200).unwrap().ordering_violations().is_empty());
    }

    #[test]
    fn orderings() {
        assert!(non_domination_witnesses().unwrap());
        let m = min_objective_versus_four_peg(7, 200).unwrap();
        assert!(m.holds(), "{:?}", m.counterexamples);
    }
}

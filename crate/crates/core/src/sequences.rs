//! Exact optimal move counts.
//!
//! The four objective counts `a, b, c, d` are produced by three independent
//! routes (the coupled first-order system, the single-sequence higher-order
//! recurrences, and the explicit closed forms) so that each can be checked
//! against the others. `h3` and `h4` are the classical three- and four-peg
//! optima, carried along for comparison.
//!
//! All values are exact [`BigUint`]s; `n` is capped at [`MAX_N`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Task;

/// Largest `n` accepted by the count routines.
pub const MAX_N: u32 = 240;

/// Exact move count.
pub type Count = BigUint;

fn check_n(n: u32) -> Result<()> {
    if n > MAX_N {
        Err(Error::Overflow { n, max: MAX_N })
    } else {
        Ok(())
    }
}

#[inline]
fn pow2(e: u32) -> Count {
    Count::one() << e
}

/// Reference values of `h3, h4, a, b, c, d` for `0 ≤ n ≤ 14`, in
/// [`Column::ALL`] order.
pub const FIRST_TERMS: [[u64; 15]; 6] = [
    [0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023, 2047, 4095, 8191, 16383],
    [0, 1, 3, 5, 9, 13, 17, 25, 33, 41, 49, 65, 81, 97, 113],
    [0, 1, 3, 5, 9, 15, 23, 35, 53, 77, 113, 163, 235, 335, 481],
    [0, 1, 2, 4, 7, 11, 17, 26, 38, 56, 81, 117, 167, 240, 340],
    [0, 1, 2, 5, 6, 13, 15, 30, 34, 65, 72, 135, 149, 276, 304],
    [0, 1, 2, 4, 7, 11, 18, 25, 40, 54, 85, 113, 176, 231, 358],
];

/// A column of a [`CountTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Column {
    H3,
    H4,
    A,
    B,
    C,
    D,
}

impl Column {
    pub const ALL: [Column; 6] = [Column::H3, Column::H4, Column::A, Column::B, Column::C, Column::D];

    pub const fn name(self) -> &'static str {
        match self {
            Column::H3 => "h3",
            Column::H4 => "h4",
            Column::A => "a",
            Column::B => "b",
            Column::C => "c",
            Column::D => "d",
        }
    }
}

impl From<Task> for Column {
    fn from(t: Task) -> Column {
        match t {
            Task::A => Column::A,
            Task::B => Column::B,
            Task::C => Column::C,
            Task::D => Column::D,
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which formula produced the objective columns of a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Coupled,
    HigherOrder,
    ClosedForm,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Coupled => "coupled",
            Route::HigherOrder => "higher-order",
            Route::ClosedForm => "closed-form",
        })
    }
}

/// One row of a [`CountTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub n: u32,
    pub h3: Count,
    pub h4: Count,
    pub a: Count,
    pub b: Count,
    pub c: Count,
    pub d: Count,
}

impl CountRow {
    pub fn get(&self, column: Column) -> &Count {
        match column {
            Column::H3 => &self.h3,
            Column::H4 => &self.h4,
            Column::A => &self.a,
            Column::B => &self.b,
            Column::C => &self.c,
            Column::D => &self.d,
        }
    }
}

/// Per-`n` values of `h3, h4, a, b, c, d` for `0 ≤ n ≤ max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    route: Route,
    rows: Vec<CountRow>,
}

impl CountTable {
    fn assemble(route: Route, objectives: [Vec<Count>; 4]) -> Result<CountTable> {
        let max_n = objectives[0].len() as u32 - 1;
        let h4 = h4_table(max_n)?;
        let [a, b, c, d] = objectives;
        let rows = a
            .into_iter()
            .zip(b)
            .zip(c)
            .zip(d)
            .zip(h4)
            .enumerate()
            .map(|(n, ((((a, b), c), d), h4))| CountRow {
                n: n as u32,
                h3: pow2(n as u32) - 1u32,
                h4,
                a,
                b,
                c,
                d,
            })
            .collect();
        Ok(CountTable { route, rows })
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn max_n(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn rows(&self) -> &[CountRow] {
        &self.rows
    }

    pub fn row(&self, n: u32) -> Option<&CountRow> {
        self.rows.get(n as usize)
    }

    /// Value of `column` at `n`. Panics if `n > max_n`.
    pub fn value(&self, column: Column, n: u32) -> &Count {
        self.rows[n as usize].get(column)
    }

    pub fn task(&self, task: Task, n: u32) -> &Count {
        self.value(task.into(), n)
    }

    /// The column as a vector indexed by `n`.
    pub fn column(&self, column: Column) -> Vec<Count> {
        self.rows.iter().map(|r| r.get(column).clone()).collect()
    }

    /// CSV with header `n,h3,h4,a,b,c,d`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,h3,h4,a,b,c,d\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.n, r.h3, r.h4, r.a, r.b, r.c, r.d
            ));
        }
        out
    }

    /// JSON array of row objects keyed like the CSV header.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("n".into(), r.n.into());
                    for col in Column::ALL {
                        obj.insert(col.name().into(), json_integer(r.get(col)));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Exact JSON number for an arbitrarily large count.
pub fn json_integer(value: &Count) -> serde_json::Value {
    let number: serde_json::Number = value
        .to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers");
    serde_json::Value::Number(number)
}

/// `h3(n) = 2ⁿ − 1`.
pub fn h3(n: u32) -> Result<Count> {
    check_n(n)?;
    Ok(pow2(n) - 1u32)
}

/// `h4(0..=max_n)` from the four-peg Frame–Stewart minimisation
/// `h4(n) = min_{0 ≤ k < n} 2·h4(k) + h3(n − k)`.
pub fn h4_table(max_n: u32) -> Result<Vec<Count>> {
    check_n(max_n)?;
    let mut h4: Vec<Count> = Vec::with_capacity(max_n as usize + 1);
    h4.push(Count::zero());
    for n in 1..=max_n {
        let best = (0..n)
            .map(|k| &h4[k as usize] * 2u32 + (pow2(n - k) - 1u32))
            .min()
            .expect("range is non-empty");
        h4.push(best);
    }
    Ok(h4)
}

pub fn h4(n: u32) -> Result<Count> {
    Ok(h4_table(n)?.pop().expect("table has n + 1 entries"))
}

/// `n = 3θ + ρ` with `ρ ∈ {0, 1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriadicSplit {
    pub rho: u32,
    pub theta: u32,
}

pub fn triadic_split(n: u32) -> TriadicSplit {
    TriadicSplit {
        rho: n % 3,
        theta: n / 3,
    }
}

/// `a, b, c, d` by the coupled first-order system:
///
/// ```text
/// a_n = 2 b_{n−1} + 1
/// b_n = c_{n−1} + 2^{(n−2)/2}                 (n even)
///       d_{n−1} + 2^{(n−1)/2}                 (n odd)
/// c_n = b_{n−1} + 2^{(n−2)/2}                 (n even)
///       b_{n−2} + 5·2^{(n−3)/2} − 1           (n odd)
/// d_n = b_{n−2} + 3·2^{(n−2)/2} − 1           (n even)
///       b_{n−1} + 2^{(n−1)/2}                 (n odd)
/// ```
///
/// with `x_0 = 0` and `x_1 = 1` for every sequence.
pub fn coupled_counts(max_n: u32) -> Result<CountTable> {
    check_n(max_n)?;
    let len = max_n as usize + 1;
    let mut a = vec![Count::zero(); len];
    let mut b = a.clone();
    let mut c = a.clone();
    let mut d = a.clone();
    if max_n >= 1 {
        for v in [&mut a, &mut b, &mut c, &mut d] {
            v[1] = Count::one();
        }
    }
    for n in 2..len {
        let m = n as u32;
        if m % 2 == 0 {
            let half = pow2((m - 2) / 2);
            b[n] = &c[n - 1] + &half;
            c[n] = &b[n - 1] + &half;
            d[n] = &b[n - 2] + half * 3u32 - 1u32;
        } else {
            let half = pow2((m - 1) / 2);
            b[n] = &d[n - 1] + &half;
            c[n] = &b[n - 2] + pow2((m - 3) / 2) * 5u32 - 1u32;
            d[n] = &b[n - 1] + half;
        }
        a[n] = &b[n - 1] * 2u32 + 1u32;
    }
    CountTable::assemble(Route::Coupled, [a, b, c, d])
}

/// `a, b, c, d` by the single-sequence higher-order recurrences:
///
/// ```text
/// a_n = a_{n−3} + 5·2^{(n−2)/2} − 2   (n even)    a_n = a_{n−3} + 7·2^{(n−3)/2} − 2   (n odd)
/// b_n = b_{n−3} + 7·2^{(n−4)/2} − 1   (n even)    b_n = b_{n−3} + 5·2^{(n−3)/2} − 1   (n odd)
/// c_n = c_{n−5} + 15·2^{(n−6)/2} − 1  (n even)    c_n = c_{n−6} + 31·2^{(n−7)/2} − 2  (n odd)
/// d_n = d_{n−6} + 5·2^{(n−2)/2} − 2   (n even)    d_n = d_{n−5} + 3·2^{(n−1)/2} − 1   (n odd)
/// ```
///
/// seeded with `a: 0 1 3 5`, `b: 0 1 2`, `c: 0 1 2 5 6 13`, `d: 0 1 2 4 7 11`.
pub fn higher_order_counts(max_n: u32) -> Result<CountTable> {
    check_n(max_n)?;
    let len = max_n as usize + 1;
    // a_3 = 2 b_2 + 1 = 5.
    let a = unroll(len, &[0, 1, 3, 5], |a, n| {
        if n % 2 == 0 {
            &a[n as usize - 3] + pow2((n - 2) / 2) * 5u32 - 2u32
        } else {
            &a[n as usize - 3] + pow2((n - 3) / 2) * 7u32 - 2u32
        }
    });
    let b = unroll(len, &[0, 1, 2], |b, n| {
        if n % 2 == 0 {
            &b[n as usize - 3] + pow2((n - 4) / 2) * 7u32 - 1u32
        } else {
            &b[n as usize - 3] + pow2((n - 3) / 2) * 5u32 - 1u32
        }
    });
    let c = unroll(len, &[0, 1, 2, 5, 6, 13], |c, n| {
        if n % 2 == 0 {
            &c[n as usize - 5] + pow2((n - 6) / 2) * 15u32 - 1u32
        } else {
            &c[n as usize - 6] + pow2((n - 7) / 2) * 31u32 - 2u32
        }
    });
    let d = unroll(len, &[0, 1, 2, 4, 7, 11], |d, n| {
        if n % 2 == 0 {
            &d[n as usize - 6] + pow2((n - 2) / 2) * 5u32 - 2u32
        } else {
            &d[n as usize - 5] + pow2((n - 1) / 2) * 3u32 - 1u32
        }
    });
    CountTable::assemble(Route::HigherOrder, [a, b, c, d])
}

fn unroll(len: usize, seeds: &[u32], step: impl Fn(&[Count], u32) -> Count) -> Vec<Count> {
    let mut out: Vec<Count> = seeds.iter().take(len).map(|&s| Count::from(s)).collect();
    for n in out.len()..len {
        let next = step(&out, n as u32);
        out.push(next);
    }
    out
}

/// How to read the exponent `−3⌊(θ−1)/2⌋+1` that appears in every closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentReading {
    /// `−3(⌊(θ−1)/2⌋ + 1)`, i.e. `−3⌈θ/2⌉`. Agrees with the recurrences.
    #[default]
    Grouped,
    /// `(−3⌊(θ−1)/2⌋) + 1`, the typographically literal reading.
    Literal,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `1 − 2^{−3⌊θ/2⌋}` and the companion `1 − 2^{e}` factor of the closed forms.
fn decay_terms(theta: i64, reading: ExponentReading) -> (BigRational, BigRational) {
    let first = rat(1) - rat_pow2(-3 * Integer::div_floor(&theta, &2));
    let inner = Integer::div_floor(&(theta - 1), &2);
    let exponent = match reading {
        ExponentReading::Grouped => -3 * (inner + 1),
        ExponentReading::Literal => -3 * inner + 1,
    };
    (first, rat(1) - rat_pow2(exponent))
}

const A_SEEDS: [i64; 3] = [0, 1, 3];

/// `(a_ρ − 1)/2 − θ` evaluated at `m`.
fn half_seed(m: i64) -> BigRational {
    let (theta, rho) = m.div_mod_floor(&3);
    BigRational::new(BigInt::from(A_SEEDS[rho as usize] - 1), BigInt::from(2)) - rat(theta)
}

/// Raw value of the closed form of `task` at `n`, before any integrality check.
pub fn closed_form_value(task: Task, n: u32, reading: ExponentReading) -> Result<BigRational> {
    check_n(n)?;
    let n = n as i64;
    let even = n % 2 == 0;
    let frac = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    // 2^{k/2} for the (possibly half-integer) exponent k/2 written as k.
    let half_pow = |k: i64| {
        debug_assert!(k % 2 == 0, "closed forms only use integral powers of two");
        rat_pow2(k / 2)
    };

    let value = match task {
        Task::A => {
            let (theta, rho) = n.div_mod_floor(&3);
            let (u, v) = decay_terms(theta, reading);
            let base = rat(A_SEEDS[rho as usize] - 2 * theta);
            if even {
                base + half_pow(n) * (u + frac(20, 7) * v)
            } else {
                base + half_pow(n + 1) * (frac(5, 7) * u + rat(2) * v)
            }
        }
        Task::B => {
            let theta = Integer::div_floor(&(n + 1), &3);
            let (u, v) = decay_terms(theta, reading);
            let base = half_seed(n + 1);
            if even {
                base + half_pow(n) * (frac(5, 7) * u + rat(2) * v)
            } else {
                base + half_pow(n - 1) * (u + frac(20, 7) * v)
            }
        }
        Task::C => {
            let m = if even { n } else { n - 1 };
            let theta = Integer::div_floor(&m, &3);
            let (u, v) = decay_terms(theta, reading);
            let lead = rat(1) - u; // 2^{−3⌊θ/2⌋}
            let base = half_seed(m);
            if even {
                base + half_pow(n - 2) * (rat(2) - lead + frac(20, 7) * v)
            } else {
                base + half_pow(n - 3) * (rat(6) - lead + frac(20, 7) * v) - rat(1)
            }
        }
        Task::D => {
            let m = if even { n - 1 } else { n };
            let theta = Integer::div_floor(&m, &3);
            let (u, v) = decay_terms(theta, reading);
            let base = half_seed(m);
            if even {
                base + half_pow(n - 2) * (frac(5, 7) * u + rat(2) * v + rat(3)) - rat(1)
            } else {
                base + half_pow(n - 1) * (frac(5, 7) * u + rat(2) * v + rat(1))
            }
        }
    };
    Ok(value)
}

fn parity_name(n: u32) -> &'static str {
    if n % 2 == 0 {
        "even"
    } else {
        "odd"
    }
}

/// Closed form of `task` at `n`, required to be a nonnegative integer.
pub fn closed_form(task: Task, n: u32, reading: ExponentReading) -> Result<Count> {
    let value = closed_form_value(task, n, reading)?;
    if !value.is_integer() {
        return Err(Error::NonIntegralClosedForm {
            sequence: task.letter(),
            parity: parity_name(n),
            n,
            value: value.to_string(),
        });
    }
    let int = value.to_integer();
    if int.is_negative() {
        return Err(Error::NegativeClosedForm {
            sequence: task.letter(),
            parity: parity_name(n),
            n,
            value: int.to_string(),
        });
    }
    Ok(int.to_biguint().expect("nonnegative"))
}

/// `a, b, c, d` evaluated directly from the closed forms.
pub fn closed_form_counts(max_n: u32) -> Result<CountTable> {
    closed_form_counts_with(max_n, ExponentReading::Grouped)
}

pub fn closed_form_counts_with(max_n: u32, reading: ExponentReading) -> Result<CountTable> {
    check_n(max_n)?;
    let column = |task| (0..=max_n).map(|n| closed_form(task, n, reading)).collect::<Result<Vec<_>>>();
    let objectives = [column(Task::A)?, column(Task::B)?, column(Task::C)?, column(Task::D)?];
    CountTable::assemble(Route::ClosedForm, objectives)
}

/// A point where a route disagrees with the coupled recurrences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub route: Route,
    pub sequence: char,
    pub parity: &'static str,
    pub n: u32,
    /// Value from the coupled system.
    pub expected: String,
    /// Value (or failure) from the other route.
    pub found: String,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} route: {}_{} ({}) = {}, recurrences give {}",
            self.route, self.sequence, self.n, self.parity, self.found, self.expected
        )
    }
}

/// Outcome of comparing all three routes on `0..=max_n`.
#[derive(Clone, Debug, Serialize)]
pub struct RouteAgreement {
    pub max_n: u32,
    /// First disagreement of each non-coupled route, if any.
    pub discrepancies: Vec<Discrepancy>,
}

impl RouteAgreement {
    pub fn agree(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// First `n` (scanning upward, then by sequence) where `reading` fails to
/// reproduce the coupled recurrences.
pub fn first_closed_form_discrepancy(
    coupled: &CountTable,
    reading: ExponentReading,
) -> Option<Discrepancy> {
    for n in 0..=coupled.max_n() {
        for task in Task::ALL {
            let expected = coupled.task(task, n);
            let found = match closed_form(task, n, reading) {
                Ok(v) if &v == expected => continue,
                Ok(v) => v.to_string(),
                Err(_) => closed_form_value(task, n, reading)
                    .map(|v| v.to_string())
                    .unwrap_or_else(|e| e.to_string()),
            };
            return Some(Discrepancy {
                route: Route::ClosedForm,
                sequence: task.letter(),
                parity: parity_name(n),
                n,
                expected: expected.to_string(),
                found,
            });
        }
    }
    None
}

/// Compares the higher-order and closed-form routes with the coupled system.
pub fn route_agreement(max_n: u32) -> Result<RouteAgreement> {
    let coupled = coupled_counts(max_n)?;
    let higher = higher_order_counts(max_n)?;
    let mut discrepancies = Vec::new();
    'outer: for n in 0..=max_n {
        for task in Task::ALL {
            let (x, y) = (coupled.task(task, n), higher.task(task, n));
            if x != y {
                discrepancies.push(Discrepancy {
                    route: Route::HigherOrder,
                    sequence: task.letter(),
                    parity: parity_name(n),
                    n,
                    expected: x.to_string(),
                    found: y.to_string(),
                });
                break 'outer;
            }
        }
    }
    discrepancies.extend(first_closed_form_discrepancy(&coupled, ExponentReading::Grouped));
    Ok(RouteAgreement { max_n, discrepancies })
}

/// `x_n / 2^{n/2}` as a float, for growth diagnostics.
pub fn scaled_by_sqrt2_pow(x: &Count, n: u32) -> f64 {
    // Shift out whole powers of two first so large values keep full precision.
    let whole = n / 2;
    let ratio = BigRational::new(BigInt::from(x.clone()), BigInt::one() << whole);
    let v = ratio.to_f64().unwrap_or(f64::INFINITY);
    if n % 2 == 1 {
        v / std::f64::consts::SQRT_2
    } else {
        v
    }
}

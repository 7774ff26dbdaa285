use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Reference edge counts of `H₃ⁿ`, `H₄ⁿ` and `Pⁿ` for `0 ≤ n ≤ 10`.
pub const EDGE_TABLE: [[u64; 11]; 3] = [
    [0, 3, 12, 39, 120, 363, 1092, 3279, 9840, 29523, 88572],
    [0, 6, 36, 168, 720, 2976, 12096, 48768, 195840, 784896, 3142656],
    [0, 3, 14, 47, 150, 459, 1394, 4199, 12630, 37923, 113834],
];

/// Largest `n` whose edge count fits the `u128` routines (`3^{n+3}` must fit).
pub const EDGE_COUNT_MAX_N: u32 = 77;

fn check(n: u32) -> Result<()> {
    if n > EDGE_COUNT_MAX_N {
        Err(Error::Overflow {
            n,
            max: EDGE_COUNT_MAX_N,
        })
    } else {
        Ok(())
    }
}

/// Number of edges moving the largest disc: `2^{⌊n/2⌋+1} + 1` for `n ≥ 1`.
pub fn bridge_count(n: u32) -> u128 {
    if n == 0 {
        0
    } else {
        (1u128 << (n / 2 + 1)) + 1
    }
}

/// `|E(Pⁿ)|` by unrolling `|E(Pⁿ)| = 3|E(P^{n−1})| + 2^{⌊n/2⌋+1} + 1`.
pub fn edge_count_recurrence(n: u32) -> Result<u128> {
    check(n)?;
    Ok((1..=n).fold(0u128, |e, k| 3 * e + bridge_count(k)))
}

/// `|E(Pⁿ)|` from the closed form
/// `(3^{n+3} − 20·2^{n/2} − 7)/14` (n even), `(3^{n+3} − 32·2^{(n−1)/2} − 7)/14` (n odd).
pub fn edge_count_closed(n: u32) -> Result<u128> {
    check(n)?;
    let cube = 3u128.pow(n + 3);
    let correction = if n % 2 == 0 {
        20u128 << (n / 2)
    } else {
        32u128 << ((n - 1) / 2)
    };
    let numerator = cube - correction - 7;
    if numerator % 14 != 0 {
        return Err(Error::NonIntegralClosedForm {
            sequence: 'E',
            parity: if n % 2 == 0 { "even" } else { "odd" },
            n,
            value: format!("{numerator}/14"),
        });
    }
    Ok(numerator / 14)
}

fn rational(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `2|E|/|V|` for `Pⁿ` from the closed edge count.
pub fn average_degree(n: u32) -> Result<BigRational> {
    Ok(rational(2 * edge_count_closed(n)?, 3u128.pow(n)))
}

/// The average degree written as `27/7 − (20/7)·2^{n/2}/3ⁿ − 1/3ⁿ` (n even)
/// or `27/7 − (32/7)·2^{(n−1)/2}/3ⁿ − 1/3ⁿ` (n odd).
pub fn average_degree_formula(n: u32) -> Result<BigRational> {
    check(n)?;
    let three_n = 3u128.pow(n);
    let (coef, pow) = if n % 2 == 0 {
        (20, 1u128 << (n / 2))
    } else {
        (32, 1u128 << ((n - 1) / 2))
    };
    Ok(rational(27, 7) - rational(coef * pow, 7 * three_n) - rational(1, three_n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn printed_values() {
        for (n, &e) in EDGE_TABLE[2].iter().enumerate() {
            let e = e as u128;
            assert_eq!(edge_count_recurrence(n as u32).unwrap(), e);
            assert_eq!(edge_count_closed(n as u32).unwrap(), e);
        }
    }

    #[test]
    fn routes_agree_over_full_range() {
        for n in 0..=EDGE_COUNT_MAX_N {
            assert_eq!(edge_count_recurrence(n).unwrap(), edge_count_closed(n).unwrap(), "n={n}");
        }
        assert!(edge_count_closed(EDGE_COUNT_MAX_N + 1).is_err());
    }

    #[test]
    fn average_degree_limits() {
        for n in 0..=EDGE_COUNT_MAX_N {
            assert_eq!(average_degree(n).unwrap(), average_degree_formula(n).unwrap());
        }
        for n in 3..=EDGE_COUNT_MAX_N {
            let d = average_degree(n).unwrap().to_f64().unwrap();
            assert!((2.0..5.0).contains(&d));
        }
        for n in 20..=EDGE_COUNT_MAX_N {
            let d = average_degree(n).unwrap().to_f64().unwrap();
            assert!((d - 27.0 / 7.0).abs() < 1e-3);
        }
    }
}

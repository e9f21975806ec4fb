//! Upper bounds for the 0-1 Multiple Knapsack Problem (MKP).
//!
//! The centerpiece is the *sequential bound*: an MKP instance is relaxed to a
//! bounded multiple knapsack whose item sizes form a divisibility chain
//! (every size divides the next larger one), which this crate solves exactly.
//! Alongside it come the classical surrogate bound, the LP bound, subset-sum
//! capacity tightening, seeded instance generators, brute-force oracles for
//! verification, and a benchmark harness with CSV/Markdown output and a
//! CPLEX-LP model exporter.
//!
//! All bound values are kept as exact rationals; nothing in the bound
//! computations goes through floating point.

pub mod bsmkp;
pub mod gen;
pub mod harness;
pub mod instance;
pub mod kernels;
pub mod oracle;
pub mod relax;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Item weights, knapsack capacities and class sizes.
pub type Weight = u64;
/// Integer item profits.
pub type Profit = u64;
/// Exact rational values: class profits, bound values, gap percentages.
pub type Rat = num_rational::BigRational;

/// Exact rational from an integer.
pub fn rat(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact rational `n / d`. Panics if `d == 0`.
pub fn rat_frac(n: u64, d: u64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders an exact rational as a fixed-point decimal string with `places`
/// digits after the point, rounding half away from zero.
pub fn decimal_string(value: &Rat, places: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), places as usize);
    let scaled = (value * Rat::from_integer(scale)).round().to_integer();
    let negative = scaled.is_negative();
    let mut digits = scaled.abs().to_string();
    let places = places as usize;
    if digits.len() <= places {
        let pad = places + 1 - digits.len();
        digits = format!("{}{}", "0".repeat(pad), digits);
    }
    let point = digits.len() - places;
    let (int_part, frac_part) = digits.split_at(point);
    let body = if places == 0 {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_part}")
    };
    if negative && !scaled.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Percentage excess of `value` over `base`: `(value - base) / base * 100`.
/// Returns `None` when `base` is zero.
pub fn percent_excess(value: &Rat, base: &Rat) -> Option<Rat> {
    if base.is_zero() {
        return None;
    }
    Some((value - base) / base * rat(100))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(216), 2), "216.00");
        assert_eq!(decimal_string(&rat_frac(1, 3), 2), "0.33");
        assert_eq!(decimal_string(&rat_frac(1, 2), 0), "1"); // half away from zero
        assert_eq!(decimal_string(&rat_frac(5, 1000), 2), "0.01");
        assert_eq!(decimal_string(&(-rat_frac(1, 2)), 0), "-1");
        assert_eq!(decimal_string(&rat_frac(3300, 216), 2), "15.28");
    }

    #[test]
    fn percent_excess_basics() {
        let g = percent_excess(&rat(249), &rat(216)).unwrap();
        assert_eq!(decimal_string(&g, 2), "15.28");
        assert!(percent_excess(&rat(1), &rat(0)).is_none());
    }
}

//! Exact scalar arithmetic: arbitrary-precision rationals, dyadic tests and
//! exact logarithm extraction for rational bases.
//!
//! All values are stored reduced with positive denominator, so equality of
//! values is equality of representations. There is no floating-point fallback
//! anywhere; estimates used to seed searches are integer bit-length bounds and
//! every final check is an exact comparison.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar used everywhere: breakpoints, slopes, bases, basepoints.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the canonical text form `"num/den"` (`den` omitted when 1).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let r: Rational = s
        .trim()
        .parse()
        .map_err(|_| Error::Precondition(format!("cannot parse rational from {s:?}")))?;
    Ok(r)
}

/// Renders a rational in the canonical text form.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Division that reports a zero divisor instead of panicking.
pub fn checked_div(x: &Rational, y: &Rational) -> Result<Rational> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x / y)
}

/// `base^e` for any integer exponent.
pub fn pow_rat(base: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let b = if e > 0 { base.clone() } else { base.recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= &b;
    }
    acc
}

const LOG_CAP: i64 = 1 << 20;

/// Returns `n` iff `value = base^n` exactly, `None` otherwise.
///
/// Requires `base > 1` and `value > 0`; works by exact multiplication along
/// the monotone sequence of powers, so no root extraction is needed.
pub fn log_exact(base: &Rational, value: &Rational) -> Option<i64> {
    debug_assert!(*base > Rational::one());
    debug_assert!(value.is_positive());
    let one = Rational::one();
    if *value == one {
        return Some(0);
    }
    if *value < one {
        return log_exact(base, &value.recip()).map(|n| -n);
    }
    let mut acc = base.clone();
    let mut n = 1i64;
    while acc < *value && n < LOG_CAP {
        acc *= base;
        n += 1;
    }
    if acc == *value {
        Some(n)
    } else {
        None
    }
}

/// True iff the denominator of `r` is a power of two.
pub fn is_dyadic(r: &Rational) -> bool {
    let den = r.denom().magnitude();
    den.trailing_zeros().map_or(true, |t| (den >> t).is_one())
}

/// Writes a dyadic `value` in `(0,1)` as `k * 2^-j` with `k` odd positive.
pub fn odd_part(value: &Rational) -> Result<(BigInt, u64)> {
    if !value.is_positive() || *value >= Rational::one() {
        return Err(Error::Precondition(format!(
            "odd_part needs a value in (0,1), got {value}"
        )));
    }
    let den = value.denom().magnitude();
    let t = den.trailing_zeros().unwrap_or(0);
    if !(den >> t).is_one() {
        return Err(Error::NotDyadic(value.to_string()));
    }
    // Reduced with an even denominator, so the numerator is odd already.
    Ok((value.numer().clone(), t))
}

/// Writes `value` in `(0,1)` uniquely as `xi * a^-j` with `xi` in `(a^-1, 1]`.
pub fn xi_decompose(a: &Rational, value: &Rational) -> Result<(Rational, i64)> {
    let one = Rational::one();
    if *a <= one {
        return Err(Error::Precondition(format!("base must exceed 1, got {a}")));
    }
    if !value.is_positive() || *value >= one {
        return Err(Error::Precondition(format!(
            "xi_decompose needs a value in (0,1), got {value}"
        )));
    }
    // Seed j from integer bit lengths (log2 bounds), then correct exactly.
    let log2_value = value.numer().magnitude().bits() as i64 - value.denom().magnitude().bits() as i64;
    let log2_base = (a.numer().magnitude().bits() as i64 - a.denom().magnitude().bits() as i64).max(1);
    let mut j = (-log2_value / log2_base).max(0);
    let inv = a.recip();
    let mut xi = value * pow_rat(a, j);
    let mut guard = 0i64;
    while xi <= inv {
        xi *= a;
        j += 1;
        guard += 1;
        if guard > LOG_CAP {
            return Err(Error::IterationCap("xi_decompose"));
        }
    }
    while xi > one {
        xi /= a;
        j -= 1;
        guard += 1;
        if guard > LOG_CAP {
            return Err(Error::IterationCap("xi_decompose"));
        }
    }
    debug_assert!(xi > inv && xi <= one);
    Ok((xi, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arith_is_exact_and_reduced() {
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(2, 4).denom(), rat(1, 2).denom());
        assert_eq!(rat(7, 8) * rat(8, 7), rat_int(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(checked_div(&rat(1, 2), &rat_int(0)), Err(Error::DivisionByZero));
        assert_eq!(checked_div(&rat(1, 2), &rat(1, 4)), Ok(rat_int(2)));
    }

    #[test]
    fn log_exact_examples() {
        assert_eq!(log_exact(&rat_int(2), &rat(1, 8)), Some(-3));
        assert_eq!(log_exact(&rat(3, 2), &rat(9, 4)), Some(2));
        assert_eq!(log_exact(&rat_int(2), &rat(3, 4)), None);
    }

    #[test]
    fn log_exact_round_trips_over_small_exponents() {
        for a in [rat_int(2), rat(3, 2), rat(5, 3)] {
            for n in -64i64..=64 {
                assert_eq!(log_exact(&a, &pow_rat(&a, n)), Some(n), "base {a} exp {n}");
            }
        }
    }

    #[test]
    fn odd_part_examples() {
        assert_eq!(odd_part(&rat(3, 8)).unwrap(), (BigInt::from(3), 3));
        assert_eq!(odd_part(&rat(1, 4)).unwrap(), (BigInt::from(1), 2));
        assert!(matches!(odd_part(&rat(5, 6)), Err(Error::NotDyadic(_))));
    }

    #[test]
    fn xi_decompose_examples() {
        assert_eq!(xi_decompose(&rat_int(2), &rat(3, 8)).unwrap(), (rat(3, 4), 1));
        assert_eq!(xi_decompose(&rat_int(2), &rat(1, 4)).unwrap(), (rat_int(1), 2));
        assert_eq!(xi_decompose(&rat(3, 2), &rat(1, 2)).unwrap(), (rat(3, 4), 1));
    }

    #[test]
    fn xi_decompose_reconstructs_and_is_unique() {
        let bases = [rat_int(2), rat(3, 2), rat(5, 3)];
        for a in &bases {
            for num in 1i64..40 {
                for den in (num + 1)..42 {
                    let v = rat(num, den);
                    let (xi, j) = xi_decompose(a, &v).unwrap();
                    assert_eq!(xi.clone() * pow_rat(a, -j), v);
                    // Brute uniqueness scan around the returned exponent.
                    for dj in -2i64..=2 {
                        if dj == 0 {
                            continue;
                        }
                        let cand = v.clone() * pow_rat(a, j + dj);
                        assert!(
                            !(cand > a.recip() && cand <= rat_int(1)),
                            "non-unique xi for {v} base {a}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["1/2", "-3/7", "4", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("a/b").is_err());
    }
}

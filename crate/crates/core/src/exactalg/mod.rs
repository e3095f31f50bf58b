//! Exact scalar, power-series and graded-coefficient arithmetic.
//!
//! Everything here is exact: scalars are arbitrary-precision fractions and
//! no operation ever rounds.

mod equiv;
mod laurent;
mod series;

pub use equiv::{equiv_mul, EquivCoeff, TPoly, DEFAULT_T_DEGREE};
pub use laurent::{laurent_residue, ZLaurent, DEFAULT_MIN_Z_EXPONENT};
pub use series::{series_log_product, series_negate_variable, QSeries};

use num_bigint::BigInt;

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the fraction `num / den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a fraction.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a fraction as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or `p` into a reduced fraction.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

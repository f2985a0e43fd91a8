//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Bit size of numerator plus denominator.
pub fn bit_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// `p/q` (or `p` when q = 1), never a decimal point.
pub fn to_text(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // very large numerators/denominators: scale through logs
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    let ln = |b: &BigInt| {
        let bits = b.bits();
        let shift = bits.saturating_sub(64);
        let top = (b.abs() >> shift).to_f64().unwrap_or(f64::MAX);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    if q.numer().is_zero() {
        return 0.0;
    }
    sign * (ln(q.numer()) - ln(q.denom())).exp()
}

/// Nearest rational with denominator `den` to a float.
pub fn from_f64_with_den(v: f64, den: i64) -> Rational {
    let n = (v * den as f64).round();
    Rational::new(BigInt::from(n as i64), BigInt::from(den))
}

/// Exact conversion of a float whose magnitude is large: rounds to an integer
/// when |v| ≥ 1e6, otherwise to denominator 1e6.
pub fn rationalize(v: f64) -> Rational {
    if v.abs() >= 1e6 {
        Rational::from_integer(BigInt::from(v.round() as i128))
    } else {
        from_f64_with_den(v, 1_000_000)
    }
}

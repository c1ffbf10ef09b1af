//! Exact rational scalars.
//!
//! Every coordinate, distance, cost, probability and ratio in this crate is a
//! [`Scalar`]. Decimal strings such as `"0.9"` or `"1e-6"` parse to their exact
//! rational value.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// `numer / denom`; panics on a zero denominator.
pub fn frac(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

fn pow10(exp: u32) -> BigInt {
    BigInt::from(10u32).pow(exp)
}

/// Parses `"p/q"`, integers, decimals and scientific notation exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let err = || Error::ParseNumber(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Scalar::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, fraction) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(err());
    }
    if !whole.bytes().chain(fraction.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{whole}{fraction}");
    let numer: BigInt = all_digits.parse().map_err(|_| err())?;
    let scale = exponent - fraction.len() as i32;
    let mut value = if scale >= 0 {
        Scalar::from_integer(numer * pow10(scale as u32))
    } else {
        Scalar::new(numer, pow10(scale.unsigned_abs()))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Canonical exact form: `"p/q"`, or `"p"` for integers.
pub fn exact_string(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal approximation rounded half away from zero to `places` digits,
/// with trailing zeros trimmed. Computed in exact integer arithmetic.
pub fn decimal_string(value: &Scalar, places: u32) -> String {
    let scale = pow10(places);
    let scaled = value.abs() * Scalar::from_integer(scale.clone());
    let half = Scalar::new(BigInt::one(), BigInt::from(2));
    let units = (scaled + half).floor().to_integer();
    let whole = &units / &scale;
    let rest = &units % &scale;
    let sign = if value.is_negative() && !units.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 || rest.is_zero() {
        return format!("{sign}{whole}");
    }
    let frac_digits = format!("{:0>width$}", rest.to_string(), width = places as usize);
    format!("{sign}{whole}.{}", frac_digits.trim_end_matches('0'))
}

/// Orders `|x - a|` against `|x - b|` by cross-multiplication, skipping the
/// gcd reductions that rational subtraction would perform.
pub fn cmp_distance_from(x: &Scalar, a: &Scalar, b: &Scalar) -> Ordering {
    let gap = |y: &Scalar| (x.numer() * y.denom() - y.numer() * x.denom()).abs();
    (gap(a) * b.denom()).cmp(&(gap(b) * a.denom()))
}

//! Decimal rendering and parsing of exact rationals.
//!
//! Rendering keeps 15 significant digits with round-half-even, which makes
//! output files reproducible byte for byte and still round-trips through an
//! `f64` parse without loss beyond the last printed digit.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::ExactRational;
use crate::error::{Error, Result};

pub const SIGNIFICANT_DIGITS: u32 = 15;

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `10^e` as a rational for any sign of `e`.
fn pow10_rational(e: i64) -> BigRational {
    let p = pow10(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `round(q)` with ties to even, for non-negative `q`.
fn round_half_even(q: &BigRational) -> BigInt {
    let (floor, rem) = q.numer().div_mod_floor(q.denom());
    let twice = rem * 2u32;
    match twice.cmp(q.denom()) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1u32,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1u32
            }
        }
    }
}

/// Render with 15 significant digits, round-half-even, trailing zeros removed.
///
/// Positional notation is used for decimal exponents in `-5..15`, scientific
/// (`1.5e20`) otherwise.
///
/// ```
/// use robust_qfi::render::to_decimal;
/// use num_rational::BigRational;
/// assert_eq!(to_decimal(&BigRational::new(1.into(), 3.into())), "0.333333333333333");
/// assert_eq!(to_decimal(&BigRational::new(625.into(), 1.into())), "625");
/// ```
pub fn to_decimal(value: &ExactRational) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let abs = value.abs();

    // decimal exponent e with 10^e <= abs < 10^(e+1)
    let mut exp = abs.numer().to_string().len() as i64 - abs.denom().to_string().len() as i64;
    while abs < pow10_rational(exp) {
        exp -= 1;
    }
    while abs >= pow10_rational(exp + 1) {
        exp += 1;
    }

    let digits = SIGNIFICANT_DIGITS as i64;
    let mut mantissa = round_half_even(&(&abs * pow10_rational(digits - 1 - exp)));
    if mantissa == pow10(SIGNIFICANT_DIGITS) {
        mantissa /= 10u32;
        exp += 1;
    }
    let mut text = mantissa.to_string();
    while text.len() > 1 && text.ends_with('0') {
        text.pop();
    }

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-5..15).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(&text);
        } else {
            let int_len = exp as usize + 1;
            if text.len() <= int_len {
                out.push_str(&text);
                out.extend(std::iter::repeat_n('0', int_len - text.len()));
            } else {
                out.push_str(&text[..int_len]);
                out.push('.');
                out.push_str(&text[int_len..]);
            }
        }
    } else {
        out.push_str(&text[..1]);
        if text.len() > 1 {
            out.push('.');
            out.push_str(&text[1..]);
        }
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}

/// Nearest `f64` (the conversion in `num-rational` is correctly rounded).
pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or(if value.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Render a finite float through its exact binary value.
pub fn f64_to_decimal(value: f64) -> String {
    match BigRational::from_float(value) {
        Some(r) => to_decimal(&r),
        None => value.to_string(),
    }
}

/// Parse `"3"`, `"-0.25"`, `"1e-3"`, `"2.5E2"` or `"3/4"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    let bad = || Error::Parse(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (sign, body) = match body.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let magnitude: BigInt = digits.parse().map_err(|_| bad())?;
    let value = BigRational::from_integer(if sign == Sign::Minus { -magnitude } else { magnitude })
        * pow10_rational(exp - frac_part.len() as i64);
    Ok(value)
}

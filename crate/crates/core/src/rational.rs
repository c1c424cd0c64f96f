//! Exact rational values: parsing, canonical display, and decimal rendering.
//!
//! All distances in this crate are carried as [`Ratio`] (arbitrary-precision
//! rationals in lowest terms with positive denominator). Floating point never
//! enters the computation path; decimals exist for display only.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

/// The exactness carrier for every distance value.
pub type Ratio = num::BigRational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRatioError {
    pub input: String,
    pub reason: String,
}

fn parse_error(input: &str, reason: &str) -> ParseRatioError {
    ParseRatioError {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

/// Convenience constructor for small rationals.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational literal: an integer (`"3"`), a fraction (`"3/7"`), or a
/// decimal (`"0.25"`, read exactly as 1/4). A single leading `-` is allowed.
pub fn parse_ratio(s: &str) -> Result<Ratio, ParseRatioError> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(parse_error(s, "empty"));
    }
    if let Some((num, den)) = trimmed.split_once('/') {
        let num: BigInt = num
            .parse()
            .map_err(|_| parse_error(s, "numerator is not an integer"))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| parse_error(s, "denominator is not an integer"))?;
        if den.is_zero() {
            return Err(parse_error(s, "denominator is zero"));
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((int_part, frac_part)) = trimmed.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = if int_part == "-" { "0" } else { int_part };
        let int_val: BigInt = int_digits
            .parse()
            .map_err(|_| parse_error(s, "integer part is not an integer"))?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_error(s, "fractional part is not a digit string"));
        }
        let frac_val: BigInt = frac_part
            .parse()
            .map_err(|_| parse_error(s, "fractional part is not an integer"))?;
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let magnitude = int_val.abs() * &scale + frac_val;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Ratio::new(signed, scale));
    }
    let int_val: BigInt = trimmed
        .parse()
        .map_err(|_| parse_error(s, "not an integer"))?;
    Ok(Ratio::from_integer(int_val))
}

/// Canonical `numerator/denominator` rendering, e.g. `0/1`, `5/6`, `-2/3`.
pub fn format_ratio(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering to `sig` significant digits, prefixed with an exactness
/// marker: `= 0.25` when the decimal is exact, `≈ 0.8333333333` otherwise.
pub fn decimal_with_marker(r: &Ratio, sig: usize) -> String {
    if r.is_zero() {
        return "= 0".to_string();
    }
    let negative = r.is_negative();
    let abs = r.abs();
    let p = abs.numer().clone();
    let q = abs.denom().clone();

    let int_part = &p / &q;
    let int_str = int_part.to_string();
    let int_digits = if int_part.is_zero() { 0 } else { int_str.len() };

    let places = if int_digits >= sig {
        0
    } else if int_digits > 0 {
        sig - int_digits
    } else {
        // Leading zeros after the point are not significant.
        let mut leading = 0usize;
        let mut probe = p.clone() * BigInt::from(10u8);
        while probe < q {
            leading += 1;
            probe *= BigInt::from(10u8);
        }
        leading + sig
    };

    let scale = BigInt::from(10u8).pow(places as u32);
    let scaled = &p * &scale;
    let mut digits = &scaled / &q;
    let rem = &scaled % &q;
    let exact = rem.is_zero();
    if (&rem << 1) >= q {
        digits += BigInt::one();
    }

    let mut digit_str = digits.to_string();
    if digit_str.len() <= places {
        digit_str = format!("{:0>width$}", digit_str, width = places + 1);
    }
    let split = digit_str.len() - places;
    let (whole, frac) = digit_str.split_at(split);
    let mut out = String::new();
    out.push_str(if exact { "= " } else { "≈ " });
    if negative {
        out.push('-');
    }
    out.push_str(whole);
    if !frac.is_empty() {
        let trimmed_frac = if exact {
            frac.trim_end_matches('0')
        } else {
            frac
        };
        if !trimmed_frac.is_empty() {
            out.push('.');
            out.push_str(trimmed_frac);
        }
    }
    out
}

//! Helpers around the arbitrary-precision rational type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn pow(base: &Rat, e: u32) -> Rat {
    num_traits::pow(base.clone(), e as usize)
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite double.
pub fn from_f64(v: f64) -> Option<Rat> {
    Rat::from_float(v)
}

/// Parses an integer, decimal (`-1.56`, `2.5e-3`) or fraction (`3/4`) literal exactly.
pub fn parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n)?;
        let d = parse_decimal(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rat::from_integer(digits.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rat::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= pow(&ten, scale as u32);
    } else {
        value /= pow(&ten, (-scale) as u32);
    }
    Some(if neg { -value } else { value })
}

/// Decimal rendering with `digits` digits after the point, rounded to nearest.
pub fn to_decimal(r: &Rat, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = r * Rat::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let abs = rounded.abs();
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits as usize
        )
    }
}

/// Smallest power of two that is at least `r` (for positive `r`), as `2^k` with `k` possibly negative.
pub fn pow2_ceil_exp(r: &Rat) -> i64 {
    assert!(r.is_positive());
    let mut k: i64 = (r.numer().bits() as i64) - (r.denom().bits() as i64);
    let two = int(2);
    let p2 = |k: i64| -> Rat {
        if k >= 0 {
            pow(&two, k as u32)
        } else {
            pow(&two, (-k) as u32).recip()
        }
    };
    while p2(k) < *r {
        k += 1;
    }
    while k > i64::MIN + 1 && p2(k - 1) >= *r {
        k -= 1;
    }
    k
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_read_exactly() {
        assert_eq!(parse("1.56").unwrap(), frac(39, 25));
        assert_eq!(parse("-1.50").unwrap(), frac(-3, 2));
        assert_eq!(parse("0.00").unwrap(), int(0));
        assert_eq!(parse("2.5e-3").unwrap(), frac(1, 400));
        assert_eq!(parse("1E2").unwrap(), int(100));
        assert_eq!(parse("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse(".5").unwrap(), frac(1, 2));
        assert!(parse("1/0").is_none());
        assert!(parse("abc").is_none());
        assert!(parse("").is_none());
        assert!(parse("-").is_none());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&frac(-3, 2), 3), "-1.500");
        assert_eq!(to_decimal(&frac(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&int(5), 0), "5");
    }

    #[test]
    fn power_of_two_bound() {
        assert_eq!(pow2_ceil_exp(&int(1)), 0);
        assert_eq!(pow2_ceil_exp(&int(5)), 3);
        assert_eq!(pow2_ceil_exp(&frac(1, 3)), -1);
        assert_eq!(pow2_ceil_exp(&frac(1, 4)), -2);
    }
}

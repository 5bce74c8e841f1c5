//! Arbitrary-precision rational scalars.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator after every operation, which is exactly the canonical form
//! all exact equality tests rely on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `p/q` or a finite decimal like `0.25` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let abs = BigRational::new(i.abs() * &scale + f, scale);
        return Ok(if negative { -abs } else { abs });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

pub fn to_f64(r: &Rat) -> f64 {
    // Good enough for desk-scale magnitudes; exact values never leave
    // the rational domain except through this conversion.
    let num = r.numer();
    let den = r.denom();
    match (num.to_string().parse::<f64>(), den.to_string().parse::<f64>()) {
        (Ok(n), Ok(d)) if d != 0.0 && n.is_finite() && d.is_finite() => n / d,
        _ => {
            // fall back to a scaled division for huge operands
            let bits = num.bits().max(den.bits()) as i64;
            let shift = (bits - 100).max(0) as u64;
            let n = (num >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = (den >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

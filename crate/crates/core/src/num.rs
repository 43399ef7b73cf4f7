//! Shorthands for the exact number types used throughout the crate.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(int(num), int(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Formats a rational as `num/den` (or plain integer when den = 1).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num/den` or a plain integer.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let make = |t: &str| -> crate::Result<Int> {
        t.parse::<Int>()
            .map_err(|_| crate::Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        Some((a, b)) => {
            let den = make(b)?;
            if den.is_zero() {
                return Err(crate::Error::ZeroDenominator);
            }
            Ok(Rat::new(make(a)?, den))
        }
        None => Ok(Rat::from_integer(make(s)?)),
    }
}

/// Natural log of a positive big integer, stable for values far beyond f64 range.
pub fn ln_int(n: &Int) -> f64 {
    assert!(n.sign() == Sign::Plus, "ln of non-positive integer");
    let bits = n.bits();
    if bits <= 52 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 52;
    let mantissa = (n >> shift).to_f64().unwrap();
    mantissa.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rat(r: &Rat) -> f64 {
    assert!(r.is_positive(), "ln of non-positive rational");
    ln_int(r.numer()) - ln_int(r.denom())
}

/// Converts a rational to f64 through its log when magnitudes are extreme.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_rat(&r.abs()).exp()
}

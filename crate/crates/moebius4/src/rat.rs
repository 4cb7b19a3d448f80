//! Exact rational scalars and 4-vectors.
//!
//! Every geometric decision in this crate is made over arbitrary-precision
//! rationals; floating point appears only in report "shadow" values and in
//! cross-check oracles on the test side.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Rational from a numerator/denominator pair. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: String,
}

/// Parses `"p"` or `"p/q"` with optional sign, e.g. `"-7/12"`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = |reason: &str| ParseRatError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let mut parts = s.splitn(2, '/');
    let num_str = parts.next().ok_or_else(|| err("empty"))?.trim();
    let num: BigInt = num_str.parse().map_err(|_| err("bad numerator"))?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(den_str) => {
            let den: BigInt = den_str.trim().parse().map_err(|_| err("bad denominator"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Canonical exact form: `"p"` for integers, `"p/q"` otherwise (q > 0).
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal shadow of an exact value; only ever used for reporting.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub type Vec4 = [Rat; 4];

pub fn vec4_zero() -> Vec4 {
    [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()]
}

pub fn vec4_from_i64(v: [i64; 4]) -> Vec4 {
    v.map(rat_int)
}

pub fn vec4_add(a: &Vec4, b: &Vec4) -> Vec4 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2], &a[3] + &b[3]]
}

pub fn vec4_sub(a: &Vec4, b: &Vec4) -> Vec4 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2], &a[3] - &b[3]]
}

pub fn vec4_scale(s: &Rat, v: &Vec4) -> Vec4 {
    [s * &v[0], s * &v[1], s * &v[2], s * &v[3]]
}

pub fn dot4(a: &Vec4, b: &Vec4) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..4 {
        acc += &a[i] * &b[i];
    }
    acc
}

pub fn norm_sq(v: &Vec4) -> Rat {
    dot4(v, v)
}

pub fn dist_sq(a: &Vec4, b: &Vec4) -> Rat {
    norm_sq(&vec4_sub(a, b))
}

/// Sup-norm squared: max_i v_i^2. Exact, unlike the sup norm itself.
pub fn sup_norm_sq(v: &Vec4) -> Rat {
    let mut best = &v[0] * &v[0];
    for c in &v[1..] {
        let sq = c * c;
        if sq > best {
            best = sq;
        }
    }
    best
}

pub fn format_vec4(v: &Vec4) -> [String; 4] {
    [
        format_rat(&v[0]),
        format_rat(&v[1]),
        format_rat(&v[2]),
        format_rat(&v[3]),
    ]
}

pub fn vec4_to_f64(v: &Vec4) -> [f64; 4] {
    [
        rat_to_f64(&v[0]),
        rat_to_f64(&v[1]),
        rat_to_f64(&v[2]),
        rat_to_f64(&v[3]),
    ]
}

pub fn parse_vec4(parts: &[String]) -> Result<Vec4, ParseRatError> {
    if parts.len() != 4 {
        return Err(ParseRatError {
            input: format!("{parts:?}"),
            reason: format!("expected 4 components, got {}", parts.len()),
        });
    }
    Ok([
        parse_rat(&parts[0])?,
        parse_rat(&parts[1])?,
        parse_rat(&parts[2])?,
        parse_rat(&parts[3])?,
    ])
}

/// Compact canonical byte encoding used for exact deduplication keys.
/// Two equal rationals always produce identical bytes (BigRational is kept
/// reduced with a positive denominator).
pub fn push_rat_bytes(out: &mut Vec<u8>, r: &Rat) {
    let (sign, mag) = r.numer().to_bytes_le();
    out.push(match sign {
        num::bigint::Sign::Minus => 0,
        num::bigint::Sign::NoSign => 1,
        num::bigint::Sign::Plus => 2,
    });
    out.extend_from_slice(&(mag.len() as u32).to_le_bytes());
    out.extend_from_slice(&mag);
    let (_, dmag) = r.denom().to_bytes_le();
    out.extend_from_slice(&(dmag.len() as u32).to_le_bytes());
    out.extend_from_slice(&dmag);
}

pub(crate) fn rat_sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

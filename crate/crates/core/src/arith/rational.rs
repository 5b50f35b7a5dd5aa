//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type ComplexRational = Complex<Rational>;

/// Parses `"p/q"` (sign on `p` only) or a bare integer `"p"`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(err());
    }
    let p: BigInt = num.trim_start_matches('+').parse().map_err(|_| err())?;
    let q: BigInt = match den {
        Some(d) if valid_int(d, false) => d.parse().map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(p, q))
}

/// Parses a comma separated list of rationals; the empty string is the empty list.
pub fn parse_rational_list(input: &str) -> Result<Vec<Rational>> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    input.split(',').map(parse_rational).collect()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `Some(k)` when `a = -k` for a non-negative integer `k`.
pub fn nonpositive_integer(a: &Rational) -> Option<u64> {
    if a.is_integer() && !a.is_positive() {
        (-a.to_integer()).to_u64()
    } else {
        None
    }
}

/// Same as [`nonpositive_integer`] for a complex parameter (imaginary part must vanish).
pub fn nonpositive_integer_complex(a: &ComplexRational) -> Option<u64> {
    if a.im.is_zero() {
        nonpositive_integer(&a.re)
    } else {
        None
    }
}

/// Exact value of `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

pub fn pow_rational(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// `floor(log2 |r|)` for nonzero `r`.
pub fn floor_log2(r: &Rational) -> i64 {
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // |r| / 2^e lies in (1/2, 2)
    if scaled_cmp(n, d, e) == std::cmp::Ordering::Less {
        e -= 1;
    }
    e
}

/// Compares `n/d` against `2^e`.
fn scaled_cmp(n: &BigUint, d: &BigUint, e: i64) -> std::cmp::Ordering {
    if e >= 0 {
        n.cmp(&(d << (e as usize)))
    } else {
        (n << ((-e) as usize)).cmp(d)
    }
}

/// Upper bound on the modulus of a complex rational, `|re| + |im|`.
pub fn modulus_upper(z: &ComplexRational) -> Rational {
    z.re.abs() + z.im.abs()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn gcd_is_one(r: &Rational) -> bool {
    r.numer().gcd(r.denom()).is_one()
}

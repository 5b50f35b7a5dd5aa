//! Binary floating point numbers of arbitrary precision.
//!
//! A `BigFloat` is `mantissa * 2^exponent` with `|mantissa| < 2^precision`.
//! Every constructor that rounds says which way it rounds, and the exact
//! dyadic value is always recoverable through [`BigFloat::to_rational`], so
//! callers can measure rounding errors exactly instead of estimating them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{floor_log2, pow2, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Nearest, ties to even.
    Nearest,
    /// Away from zero.
    Up,
    /// Toward zero.
    Down,
}

#[derive(Debug, Clone)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        assert!(precision > 0, "precision must be positive");
        BigFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn from_rational(value: &Rational, precision: u32, mode: Round) -> Self {
        assert!(precision > 0, "precision must be positive");
        if value.is_zero() {
            return Self::zero(precision);
        }
        let sign = value.numer().sign();
        let num = value.numer().magnitude();
        let den = value.denom().magnitude();
        // choose e so that |value| / 2^e lies in [2^(p-1), 2^p)
        let mut e = floor_log2(value) - (precision as i64 - 1);
        let (scaled_num, scaled_den): (BigUint, BigUint) = if e >= 0 {
            (num.clone(), den << (e as usize))
        } else {
            (num << ((-e) as usize), den.clone())
        };
        let (mut q, rem) = scaled_num.div_rem(&scaled_den);
        let bump = match mode {
            Round::Down => false,
            Round::Up => !rem.is_zero(),
            Round::Nearest => {
                let twice = &rem << 1usize;
                match twice.cmp(&scaled_den) {
                    Ordering::Greater => true,
                    Ordering::Equal => q.is_odd(),
                    Ordering::Less => false,
                }
            }
        };
        if bump {
            q += 1u32;
            if q.bits() > precision as u64 {
                q >>= 1usize;
                e += 1;
            }
        }
        let mut out = BigFloat {
            mantissa: BigInt::from_biguint(sign, q),
            exponent: e,
            precision,
        };
        out.trim();
        out
    }

    pub fn from_i64(value: i64, precision: u32) -> Self {
        Self::from_rational(&Rational::from_integer(value.into()), precision, Round::Nearest)
    }

    /// Strips trailing zero bits so equal values share one representation.
    fn trim(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz as usize;
            self.exponent += tz as i64;
        }
    }

    /// The exact dyadic value.
    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.mantissa.clone()) * pow2(self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.mantissa >> (shift as usize)).to_f64().unwrap_or(f64::NAN);
        let e = self.exponent + shift;
        top * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -&self.mantissa,
            ..self.clone()
        }
    }

    pub fn with_precision(&self, precision: u32, mode: Round) -> Self {
        Self::from_rational(&self.to_rational(), precision, mode)
    }

    /// Renders `digits` significant decimal digits in scientific notation,
    /// e.g. `1.2500000000e-1`. Zero renders as `0`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let value = self.to_rational().abs();
        let ten = Rational::from_integer(BigInt::from(10));
        // initial guess from the binary exponent, then correct
        let mut k = (floor_log2(&value) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let pow10 = |e: i64| -> Rational {
            if e >= 0 {
                num_traits::pow(ten.clone(), e as usize)
            } else {
                num_traits::pow(ten.clone(), (-e) as usize).recip()
            }
        };
        while value >= pow10(k + 1) {
            k += 1;
        }
        while value < pow10(k) {
            k -= 1;
        }
        let scaled = &value * pow10(digits as i64 - 1 - k);
        let mut m = round_half_even(&scaled);
        if m.bits() as usize > 0 && m.to_string().len() > digits {
            k += 1;
            m = round_half_even(&(&value * pow10(digits as i64 - 1 - k)));
        }
        let s = m.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if self.is_negative() { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{k}")
        } else {
            format!("{sign}{head}.{tail}e{k}")
        }
    }

    /// Decimal digits that faithfully reflect the binary precision.
    pub fn decimal_digits(&self) -> usize {
        ((self.precision as f64) * std::f64::consts::LOG10_2).floor() as usize
    }
}

fn round_half_even(r: &Rational) -> BigUint {
    let (q, rem) = r.numer().magnitude().div_rem(r.denom().magnitude());
    let twice = rem << 1usize;
    let d = r.denom().magnitude();
    let bump = match twice.cmp(d) {
        Ordering::Greater => true,
        Ordering::Equal => q.is_odd(),
        Ordering::Less => false,
    };
    if bump {
        q + BigUint::one()
    } else {
        q
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mantissa == other.mantissa && self.exponent == other.exponent
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.to_rational().cmp(&other.to_rational()))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.decimal_digits());
        f.write_str(&self.to_decimal(digits))
    }
}

impl From<&BigFloat> for Rational {
    fn from(value: &BigFloat) -> Self {
        value.to_rational()
    }
}

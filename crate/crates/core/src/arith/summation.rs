//! Exact summation of hypergeometric-like series with a rigorous tail bound.
//!
//! Terms are produced exactly. After each term the caller-supplied ratio
//! majorant `R(k)` is consulted: it must satisfy `|t_{j+1}| <= R(k) |t_j|`
//! for every `j >= k` (in particular it must be nonincreasing from `k` on).
//! Once `R(x+1) < 1` the remaining tail is at most `|t_{x+1}| / (1 - R)`,
//! which is `2 |t_{x+1}|` in the common case `R <= 1/2`. Summation stops as
//! soon as that bound drops below `2^-(precision + GUARD_BITS)` times the
//! sum of the magnitudes seen so far.

use num_traits::{One, Signed, Zero};

use super::rational::{modulus_upper, pow2, ComplexRational, Rational};
use crate::error::{Error, Result};

const GUARD_BITS: i64 = 8;
pub(crate) const MAX_TERMS: usize = 200_000;

/// Scalars the summation engine can add exactly.
pub(crate) trait Scalar: Clone + Zero {
    /// An upper bound on the modulus.
    fn magnitude_upper(&self) -> Rational;
}

impl Scalar for Rational {
    fn magnitude_upper(&self) -> Rational {
        self.abs()
    }
}

impl Scalar for ComplexRational {
    fn magnitude_upper(&self) -> Rational {
        modulus_upper(self)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Summed<T> {
    pub sum: T,
    /// `None` when the series terminated and `sum` is exact.
    pub tail: Option<Rational>,
    pub terms_used: usize,
}

/// Sums `terms` (possibly infinite) to the requested relative accuracy.
///
/// A finite iterator is treated as a terminating series and summed exactly.
pub(crate) fn sum_series<T, I, R>(terms: I, majorant: R, precision: u32) -> Result<Summed<T>>
where
    T: Scalar,
    I: IntoIterator<Item = T>,
    R: Fn(usize) -> Option<Rational>,
{
    sum_enveloped(
        terms.into_iter().map(|t| {
            let env = t.magnitude_upper();
            (t, env)
        }),
        majorant,
        precision,
    )
}

/// Like [`sum_series`], but each term comes with an envelope `e_x >= |t_x|`
/// and the majorant bounds ratios of envelopes rather than of terms.
pub(crate) fn sum_enveloped<T, I, R>(terms: I, majorant: R, precision: u32) -> Result<Summed<T>>
where
    T: Scalar,
    I: IntoIterator<Item = (T, Rational)>,
    R: Fn(usize) -> Option<Rational>,
{
    let mut iter = terms.into_iter().peekable();
    let mut sum = T::zero();
    let mut scale = Rational::zero();
    let eps = pow2(-(precision as i64) - GUARD_BITS);
    let mut x = 0usize;
    while let Some((term, envelope)) = iter.next() {
        scale += envelope;
        sum = sum + term;
        let next_env = match iter.peek() {
            Some((_, env)) => env.clone(),
            None => {
                return Ok(Summed {
                    sum,
                    tail: None,
                    terms_used: x + 1,
                })
            }
        };
        if let Some(ratio) = majorant(x + 1) {
            if ratio < Rational::one() {
                let tail = next_env / (Rational::one() - ratio);
                if tail <= &eps * &scale {
                    return Ok(Summed {
                        sum,
                        tail: Some(tail),
                        terms_used: x + 1,
                    });
                }
            }
        }
        x += 1;
        if x >= MAX_TERMS {
            return Err(Error::TermLimit(MAX_TERMS));
        }
    }
    // the iterator ended before producing any term
    Ok(Summed {
        sum,
        tail: None,
        terms_used: 0,
    })
}

/// Ratio majorant for terms whose consecutive ratio is
/// `z * prod(a_i + k) / (prod(b_j + k) * (k + 1))`.
///
/// Uses `|a + k| <= k + |a|`, `|b + k| >= k - |b|` and `k + 1 >= k`; every
/// factor of the resulting bound is nonincreasing once `k > max |b_j|`.
pub(crate) fn hypergeometric_majorant(
    top_moduli: Vec<Rational>,
    bottom_moduli: Vec<Rational>,
    z_modulus: Rational,
) -> impl Fn(usize) -> Option<Rational> {
    move |k: usize| {
        if k == 0 {
            return None;
        }
        let kr = Rational::from_integer(k.into());
        let mut num = z_modulus.clone();
        for a in &top_moduli {
            num *= &kr + a;
        }
        let mut den = kr.clone();
        for b in &bottom_moduli {
            let d = &kr - b;
            if !d.is_positive() {
                return None;
            }
            den *= d;
        }
        Some(num / den)
    }
}

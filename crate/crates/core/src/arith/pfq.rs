//! Generalized hypergeometric series
//! `pFq[a_1..a_p; b_1..b_q; z] = sum_x (a)_x / (b)_x * z^x / x!`.
//!
//! Terms are accumulated exactly in rational (or complex rational)
//! arithmetic and only the final sum is rounded, so the reported bound is
//! truncation tail plus one rounding.

use std::ops::{Div, Mul};

use num_traits::{One, Signed, Zero};

use super::rational::{
    modulus_upper, nonpositive_integer, nonpositive_integer_complex, ComplexRational, Rational,
};
use super::series_value::{ComplexSeriesValue, SeriesValue};
use super::summation::{hypergeometric_majorant, sum_series, Scalar, Summed};
use crate::error::{Error, Result};

/// How a series with given parameters behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    /// Finitely many nonzero terms; the last one has index `last`.
    Terminating { last: u64 },
    /// `p < q + 1`: converges for every argument.
    Entire,
    /// `p = q + 1` and `|z| < 1`.
    Disk,
}

/// Classifies a series, with termination taking precedence over the
/// `p > q + 1` divergence rule.
///
/// `top_zero` / `bottom_zero` are the smallest `k` with `a = -k` (resp. `b = -k`).
pub(crate) fn classify_series(
    top_zero: Option<u64>,
    bottom_zero: Option<u64>,
    p: usize,
    q: usize,
    z_is_zero: bool,
    z_inside_unit_disk: bool,
) -> Result<Convergence> {
    match (top_zero, bottom_zero) {
        (Some(t), Some(b)) if b < t => {
            return Err(Error::InvalidParameter(format!(
                "bottom parameter -{b} vanishes before the series terminates at index {t}"
            )))
        }
        (None, Some(b)) if !z_is_zero => {
            return Err(Error::InvalidParameter(format!(
                "bottom parameter equal to -{b} makes the series undefined"
            )))
        }
        _ => {}
    }
    if z_is_zero {
        return Ok(Convergence::Terminating { last: 0 });
    }
    if let Some(t) = top_zero {
        return Ok(Convergence::Terminating { last: t });
    }
    if p < q + 1 {
        Ok(Convergence::Entire)
    } else if p == q + 1 {
        if z_inside_unit_disk {
            Ok(Convergence::Disk)
        } else {
            Err(Error::DivergentSeries(format!(
                "{p}F{q} diverges for |z| >= 1"
            )))
        }
    } else {
        Err(Error::DivergentSeries(format!(
            "{p}F{q} with p > q + 1 diverges for z != 0 unless a top parameter is a non-positive integer"
        )))
    }
}

/// Exact terms `t_0, t_1, ...` of a hypergeometric series, stopping after
/// index `last` when given.
pub(crate) fn hypergeometric_terms<T>(
    top: Vec<T>,
    bottom: Vec<T>,
    z: T,
    last: Option<u64>,
) -> impl Iterator<Item = T>
where
    T: Scalar + Mul<Output = T> + Div<Output = T> + From<Rational>,
{
    let mut term = Some(T::from(Rational::one()));
    let mut x: u64 = 0;
    std::iter::from_fn(move || {
        let current = term.take()?;
        if last.is_none_or(|l| x < l) {
            let k = T::from(Rational::from_integer(x.into()));
            let mut num = current.clone() * z.clone();
            for a in &top {
                num = num * (a.clone() + k.clone());
            }
            let mut den = T::from(Rational::from_integer((x + 1).into()));
            for b in &bottom {
                den = den * (b.clone() + k.clone());
            }
            term = Some(num / den);
        }
        x += 1;
        Some(current)
    })
}

fn lowest_zero(params: impl Iterator<Item = Option<u64>>) -> Option<u64> {
    params.flatten().min()
}

/// Evaluates `pFq[top; bottom; z]` with a rigorous absolute error bound.
pub fn pfq_eval(
    top: &[Rational],
    bottom: &[Rational],
    z: &Rational,
    precision_bits: u32,
) -> Result<SeriesValue> {
    let summed = pfq_sum(top, bottom, z, precision_bits)?;
    Ok(round_summed(summed, precision_bits))
}

pub(crate) fn pfq_sum(
    top: &[Rational],
    bottom: &[Rational],
    z: &Rational,
    precision_bits: u32,
) -> Result<Summed<Rational>> {
    let convergence = classify_series(
        lowest_zero(top.iter().map(nonpositive_integer)),
        lowest_zero(bottom.iter().map(nonpositive_integer)),
        top.len(),
        bottom.len(),
        z.is_zero(),
        z.abs() < Rational::one(),
    )?;
    let last = match convergence {
        Convergence::Terminating { last } => Some(last),
        _ => None,
    };
    let terms = hypergeometric_terms(top.to_vec(), bottom.to_vec(), z.clone(), last);
    let majorant = hypergeometric_majorant(
        top.iter().map(|a| a.abs()).collect(),
        bottom.iter().map(|b| b.abs()).collect(),
        z.abs(),
    );
    sum_series(terms, majorant, precision_bits)
}

pub(crate) fn round_summed(summed: Summed<Rational>, precision_bits: u32) -> SeriesValue {
    match summed.tail {
        None => SeriesValue::exact(summed.sum, precision_bits),
        Some(tail) => SeriesValue::enclosing(&summed.sum, &tail, precision_bits),
    }
    .with_terms(summed.terms_used)
}

pub(crate) fn round_summed_complex(
    summed: Summed<ComplexRational>,
    precision_bits: u32,
) -> ComplexSeriesValue {
    let Summed { sum, tail, terms_used } = summed;
    let part = |v: Rational| match &tail {
        None => SeriesValue::exact(v, precision_bits),
        Some(t) => SeriesValue::enclosing(&v, t, precision_bits),
    };
    ComplexSeriesValue {
        re: part(sum.re).with_terms(terms_used),
        im: part(sum.im).with_terms(terms_used),
    }
}

/// Complex-parameter variant of [`pfq_eval`].
pub fn pfq_eval_complex(
    top: &[ComplexRational],
    bottom: &[ComplexRational],
    z: &ComplexRational,
    precision_bits: u32,
) -> Result<ComplexSeriesValue> {
    let norm_sq = &z.re * &z.re + &z.im * &z.im;
    let convergence = classify_series(
        lowest_zero(top.iter().map(nonpositive_integer_complex)),
        lowest_zero(bottom.iter().map(nonpositive_integer_complex)),
        top.len(),
        bottom.len(),
        z.is_zero(),
        norm_sq < Rational::one(),
    )?;
    let last = match convergence {
        Convergence::Terminating { last } => Some(last),
        _ => None,
    };
    let terms = hypergeometric_terms(top.to_vec(), bottom.to_vec(), z.clone(), last);
    let majorant = hypergeometric_majorant(
        top.iter().map(modulus_upper).collect(),
        bottom.iter().map(modulus_upper).collect(),
        modulus_upper(z),
    );
    Ok(round_summed_complex(
        sum_series(terms, majorant, precision_bits)?,
        precision_bits,
    ))
}

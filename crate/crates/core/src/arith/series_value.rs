//! Enclosures `approx ± tail_bound` of real numbers.
//!
//! Arithmetic on `SeriesValue` is ball arithmetic: the radius of a result
//! covers the radii of the operands plus the rounding error of the new
//! midpoint, which is computed exactly from the dyadic values. When both
//! operands are known exactly (terminating sums) the exact rational is
//! carried along and the radius only reflects the rounding of `approx`.

use std::fmt;

use num_traits::{Signed, Zero};

use super::bigfloat::{BigFloat, Round};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SeriesValue {
    approx: BigFloat,
    tail_bound: BigFloat,
    terms_used: usize,
    exact: Option<Rational>,
}

fn round_up(r: &Rational, precision: u32) -> BigFloat {
    BigFloat::from_rational(&r.abs(), precision, Round::Up)
}

impl SeriesValue {
    pub fn exact(value: Rational, precision: u32) -> Self {
        let approx = BigFloat::from_rational(&value, precision, Round::Nearest);
        let err = approx.to_rational() - &value;
        SeriesValue {
            tail_bound: round_up(&err, precision),
            approx,
            terms_used: 0,
            exact: Some(value),
        }
    }

    /// A value known only to lie within `tail` of the exact rational `center`.
    pub fn enclosing(center: &Rational, tail: &Rational, precision: u32) -> Self {
        let approx = BigFloat::from_rational(center, precision, Round::Nearest);
        let err = (approx.to_rational() - center).abs() + tail.abs();
        SeriesValue {
            tail_bound: round_up(&err, precision),
            approx,
            terms_used: 0,
            exact: None,
        }
    }

    pub fn zero(precision: u32) -> Self {
        Self::exact(Rational::zero(), precision)
    }

    pub fn with_terms(mut self, terms_used: usize) -> Self {
        self.terms_used = terms_used;
        self
    }

    pub fn approx(&self) -> &BigFloat {
        &self.approx
    }

    /// Absolute bound on `|true value - approx|`.
    pub fn tail_bound(&self) -> &BigFloat {
        &self.tail_bound
    }

    pub fn terms_used(&self) -> usize {
        self.terms_used
    }

    /// The exact value, when every input was exact.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn precision(&self) -> u32 {
        self.approx.precision()
    }

    pub fn center(&self) -> Rational {
        match &self.exact {
            Some(v) => v.clone(),
            None => self.approx.to_rational(),
        }
    }

    /// Radius about [`center`](Self::center): zero for exact values.
    pub fn radius(&self) -> Rational {
        match &self.exact {
            Some(_) => Rational::zero(),
            None => self.tail_bound.to_rational(),
        }
    }

    pub fn abs_upper(&self) -> Rational {
        self.center().abs() + self.radius()
    }

    pub fn abs_lower(&self) -> Rational {
        let v = self.center().abs() - self.radius();
        if v.is_negative() {
            Rational::zero()
        } else {
            v
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    pub fn contains(&self, value: &Rational) -> bool {
        match &self.exact {
            Some(v) => v == value,
            None => (value - self.approx.to_rational()).abs() <= self.tail_bound.to_rational(),
        }
    }

    /// True when the two enclosures intersect.
    pub fn overlaps(&self, other: &SeriesValue) -> bool {
        (self.center() - other.center()).abs() <= self.radius() + other.radius()
    }

    /// `|self.center - other.center|`.
    pub fn deviation(&self, other: &SeriesValue) -> Rational {
        (self.center() - other.center()).abs()
    }

    pub fn to_f64(&self) -> f64 {
        self.approx.to_f64()
    }

    fn from_center_radius(center: Rational, radius: Rational, precision: u32) -> Self {
        Self::enclosing(&center, &radius, precision)
    }

    fn combine(
        &self,
        other: &SeriesValue,
        exact_op: impl Fn(&Rational, &Rational) -> Rational,
        radius: impl Fn(&Rational, &Rational, &Rational, &Rational) -> Rational,
    ) -> SeriesValue {
        let precision = self.precision().max(other.precision());
        let terms = self.terms_used.max(other.terms_used);
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return Self::exact(exact_op(a, b), precision).with_terms(terms);
        }
        let (a, b) = (self.center(), other.center());
        let r = radius(&a, &self.radius(), &b, &other.radius());
        Self::from_center_radius(exact_op(&a, &b), r, precision).with_terms(terms)
    }

    pub fn add(&self, other: &SeriesValue) -> SeriesValue {
        self.combine(other, |a, b| a + b, |_, ra, _, rb| ra + rb)
    }

    pub fn sub(&self, other: &SeriesValue) -> SeriesValue {
        self.combine(other, |a, b| a - b, |_, ra, _, rb| ra + rb)
    }

    pub fn mul(&self, other: &SeriesValue) -> SeriesValue {
        self.combine(
            other,
            |a, b| a * b,
            |a, ra, b, rb| a.abs() * rb + b.abs() * ra + ra * rb,
        )
    }

    pub fn neg(&self) -> SeriesValue {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, factor: &Rational) -> SeriesValue {
        let precision = self.precision();
        match &self.exact {
            Some(v) => Self::exact(v * factor, precision),
            None => Self::from_center_radius(
                self.center() * factor,
                self.radius() * factor.abs(),
                precision,
            ),
        }
        .with_terms(self.terms_used)
    }

    /// Fails with `InvalidParameter` when the divisor's enclosure contains zero.
    pub fn div(&self, other: &SeriesValue) -> Result<SeriesValue> {
        if other.contains_zero() {
            return Err(Error::InvalidParameter(
                "division by an enclosure containing zero".into(),
            ));
        }
        let precision = self.precision().max(other.precision());
        let terms = self.terms_used.max(other.terms_used);
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return Ok(Self::exact(a / b, precision).with_terms(terms));
        }
        let (a, ra) = (self.center(), self.radius());
        let (b, rb) = (other.center(), other.radius());
        let babs = b.abs();
        let r = (&babs * &ra + a.abs() * &rb) / (&babs * (&babs - &rb));
        Ok(Self::from_center_radius(&a / &b, r, precision).with_terms(terms))
    }

    /// Sum of `coeffs[i] * values[i]` with exact rational coefficients.
    pub fn dot(coeffs: &[Rational], values: &[SeriesValue], precision: u32) -> SeriesValue {
        coeffs
            .iter()
            .zip(values)
            .fold(Self::zero(precision), |acc, (c, v)| acc.add(&v.scale(c)))
    }

    pub fn sum<'a>(values: impl IntoIterator<Item = &'a SeriesValue>, precision: u32) -> Self {
        values
            .into_iter()
            .fold(Self::zero(precision), |acc, v| acc.add(v))
    }
}

/// Real and imaginary enclosures of a complex value.
#[derive(Debug, Clone)]
pub struct ComplexSeriesValue {
    pub re: SeriesValue,
    pub im: SeriesValue,
}

impl ComplexSeriesValue {
    pub fn overlaps(&self, other: &ComplexSeriesValue) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }
}

impl fmt::Display for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{} ± {:.3}", self.approx, self.tail_bound),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, pow2, rat};

    fn ball(center: Rational, radius: Rational) -> SeriesValue {
        SeriesValue::enclosing(&center, &radius, 128)
    }

    #[test]
    fn exact_values_stay_exact() {
        let a = SeriesValue::exact(rat(1, 3), 64);
        let b = SeriesValue::exact(rat(2, 7), 64);
        let s = a.mul(&b).add(&a).div(&b).unwrap();
        assert_eq!(s.exact_value(), Some(&((rat(1, 3) * rat(2, 7) + rat(1, 3)) / rat(2, 7))));
        assert!(s.contains(&s.center()));
    }

    #[test]
    fn exact_zero_has_zero_bound() {
        let z = SeriesValue::exact(int(1), 64);
        assert!(z.tail_bound().is_zero());
    }

    #[test]
    fn enclosure_of_products() {
        // [1 ± 1/8] * [-2 ± 1/4] contains every product of members
        let a = ball(int(1), rat(1, 8));
        let b = ball(int(-2), rat(1, 4));
        let p = a.mul(&b);
        for x in [rat(7, 8), int(1), rat(9, 8)] {
            for y in [rat(-9, 4), int(-2), rat(-7, 4)] {
                assert!(p.contains(&(&x * &y)));
            }
        }
    }

    #[test]
    fn enclosure_of_quotients() {
        let a = ball(int(3), rat(1, 16));
        let b = ball(int(2), rat(1, 16));
        let q = a.div(&b).unwrap();
        for x in [rat(47, 16), int(3), rat(49, 16)] {
            for y in [rat(31, 16), int(2), rat(33, 16)] {
                assert!(q.contains(&(&x / &y)));
            }
        }
        assert!(a.div(&ball(int(0), pow2(-10))).is_err());
    }

    #[test]
    fn inexact_rounding_is_covered() {
        let v = SeriesValue::enclosing(&rat(1, 3), &int(0), 64);
        assert!(v.contains(&rat(1, 3)));
        assert!(!v.tail_bound().is_zero());
    }
}

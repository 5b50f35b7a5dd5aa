//! Independent oracles for the integration and acceptance tests.
//!
//! Nothing here calls into the library's series, Pochhammer or Stirling code;
//! everything is built from plain integer and rational arithmetic.

#![allow(dead_code)]

use hypermoment_core::{Rational, SeriesValue};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn pow2(e: i64) -> Rational {
    let two = BigInt::from(2);
    if e >= 0 {
        Rational::from_integer(num_traits::pow(two, e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(two, (-e) as usize))
    }
}

/// `10^-k`.
pub fn ten_pow_neg(k: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k))
}

/// Exact value of a plain decimal literal such as `-1.2345`.
pub fn decimal(s: &str) -> Rational {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int_part}{frac}").parse().unwrap();
    let v = Rational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    if neg {
        -v
    } else {
        v
    }
}

/// Closed interval with rational endpoints.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn around(v: &Rational, r: &Rational) -> Self {
        Interval { lo: v - r, hi: v + r }
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Product of two intervals with nonnegative endpoints.
    pub fn mul_nonneg(&self, other: &Interval) -> Self {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// `e^x` for `|x| <= 1`, enclosed to within `2^-bits`.
pub fn exp_interval(x: &Rational, bits: i64) -> Interval {
    assert!(x.abs() <= int(1));
    let eps = pow2(-bits);
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut k = 0i64;
    loop {
        sum += &term;
        k += 1;
        term = term * x / int(k);
        // remaining terms shrink by at least 1/2 each once k >= 2
        if k >= 2 && term.abs() * int(2) <= eps {
            let r = term.abs() * int(2);
            return Interval::around(&sum, &r);
        }
    }
}

/// `sqrt(x)` for `x > 0`, enclosed to within `2^-bits`.
pub fn sqrt_interval(x: &Rational, bits: u32) -> Interval {
    assert!(x.is_positive());
    let scale = num_traits::pow(BigInt::from(4), bits as usize);
    let scaled = (x * Rational::from_integer(scale)).floor().to_integer();
    let root = scaled.sqrt();
    let lo = Rational::new(root.clone(), num_traits::pow(BigInt::from(2), bits as usize));
    let hi = Rational::new(root + 1, num_traits::pow(BigInt::from(2), bits as usize));
    Interval { lo, hi }
}

/// Truncated power-series product.
pub fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `e^w - 1` scaled by `k`, as coefficients of `w^0 .. w^order`.
pub fn expm1_series(k: &Rational, order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    let mut fact = BigInt::one();
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        fact *= m;
        *slot = num_traits::pow(k.clone(), m) / Rational::from_integer(fact.clone());
    }
    out
}

/// `sum_j a_j u^j` with `u(0) = 0`, truncated.
pub fn compose(outer: &[Rational], u: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    let mut power = vec![Rational::zero(); order + 1];
    power[0] = Rational::one();
    for a in outer.iter().take(order + 1) {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += a * p;
        }
        power = series_mul(&power, u, order);
    }
    out
}

/// `exp(f)` for `f(0) = 0` via `sum f^k / k!`.
pub fn exp_series(f: &[Rational], order: usize) -> Vec<Rational> {
    let mut outer = vec![Rational::zero(); order + 1];
    let mut fact = BigInt::one();
    for (k, slot) in outer.iter_mut().enumerate() {
        if k > 0 {
            fact *= k;
        }
        *slot = Rational::new(BigInt::one(), fact.clone());
    }
    compose(&outer, f, order)
}

/// Rising factorial by repeated multiplication.
pub fn rising(a: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (a + int(i as i64)))
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// `(1 - t u)^(-alpha)` as a series in `u`.
pub fn binomial_series(alpha: &Rational, t: &Rational, order: usize) -> Vec<Rational> {
    (0..=order)
        .map(|k| rising(alpha, k) / factorial(k) * num_traits::pow(t.clone(), k))
        .collect()
}

/// Hahn weight `C(x + alpha, x) C(N - x + beta, N - x)` on `0..=N`.
pub fn hahn_weight(alpha: &Rational, beta: &Rational, n: usize) -> Vec<Rational> {
    let gbin = |top: &Rational, k: usize| -> Rational {
        // C(top, k) = top (top - 1) ... (top - k + 1) / k!
        (0..k).fold(Rational::one(), |acc, i| acc * (top - int(i as i64))) / factorial(k)
    };
    (0..=n)
        .map(|x| gbin(&(int(x as i64) + alpha), x) * gbin(&(int((n - x) as i64) + beta), n - x))
        .collect()
}

/// Krawtchouk weight `C(N, x) p^x (1 - p)^(N - x)`.
pub fn krawtchouk_weight(p: &Rational, n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|x| {
            factorial(n) / (factorial(x) * factorial(n - x))
                * num_traits::pow(p.clone(), x)
                * num_traits::pow(Rational::one() - p, n - x)
        })
        .collect()
}

/// `sum_x x^n w(x)` over a finite support.
pub fn finite_moment(weights: &[Rational], n: usize) -> Rational {
    weights
        .iter()
        .enumerate()
        .map(|(x, w)| num_traits::pow(int(x as i64), n) * w)
        .fold(Rational::zero(), |a, b| a + b)
}

/// Ball-versus-interval: the enclosures intersect.
pub fn overlaps(v: &SeriesValue, iv: &Interval) -> bool {
    let (c, r) = (v.center(), v.radius());
    &c - &r <= iv.hi && &c + &r >= iv.lo
}

/// `|center(v) - mid(iv)| <= tol * |mid(iv)|` and the enclosures intersect.
pub fn close(v: &SeriesValue, iv: &Interval, tol: &Rational) -> bool {
    let m = iv.mid();
    overlaps(v, iv) && (v.center() - &m).abs() <= tol * m.abs().max(pow2(-400))
}

/// Relative distance between two balls' centers.
pub fn relative_gap(a: &SeriesValue, b: &SeriesValue) -> Rational {
    let scale = a.center().abs().max(b.center().abs());
    let d = a.deviation(b);
    if scale.is_zero() {
        d
    } else {
        d / scale
    }
}

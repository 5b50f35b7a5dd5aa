//! Moments `mu_n(c) = sum_x x^n rho(x)` by three independent routes.
//!
//! * proposition: `mu_n = (lambda + c tau)^-n P_n(c) . mu(c)`, where the
//!   vector polynomials obey
//!   `P_{n+1} = c (lambda + c tau) P_n' + (M^T - n tau c I) P_n`, `P_0 = e_0`;
//! * stirling: `mu_n = sum_k {n, k} nu_k` with the generalized moments
//!   `nu_k = L((x - k + 1)_k)`, each a shifted pFq;
//! * oracle: the defining sum, truncated with a rigorous tail bound.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::combinatorics::stirling2;
use crate::arith::pfq::{hypergeometric_terms, pfq_eval, round_summed};
use crate::arith::rational::{factorial, Rational};
use crate::arith::summation::{hypergeometric_majorant, sum_enveloped};
use crate::arith::{Poly, SeriesValue};
use crate::error::{Error, Result};
use crate::weight::{classify, companion_matrix, weight_at, WeightSpec};

/// `P_n(c)`, a vector of `xi + 1` polynomials in `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    pub n: usize,
    pub entries: Vec<Poly>,
}

impl PolyVector {
    pub fn eval(&self, c: &Rational) -> Vec<Rational> {
        self.entries.iter().map(|p| p.eval(c)).collect()
    }
}

/// `P_0 .. P_{n_max}` for the weight's regime and companion matrix.
pub fn poly_vectors(spec: &WeightSpec, n_max: usize) -> Vec<PolyVector> {
    let regime = classify(spec);
    let m = companion_matrix(spec);
    let dim = regime.xi + 1;
    // c (lambda + c tau)
    let drift = regime.prefactor_poly().shift_up();
    let tau_c = Poly::linear(Rational::zero(), Rational::from_integer(regime.tau.into()));

    let mut current: Vec<Poly> = (0..dim)
        .map(|i| if i == 0 { Poly::one() } else { Poly::zero() })
        .collect();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        out.push(PolyVector {
            n,
            entries: current.clone(),
        });
        if n == n_max {
            break;
        }
        let mt = m.transpose_apply(&current);
        let shift = tau_c.scale(&Rational::from_integer(n.into()));
        current = current
            .iter()
            .zip(mt)
            .map(|(p, mtp)| &(&(&drift * &p.derivative()) + &mtp) - &(&shift * p))
            .collect();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Proposition,
    Stirling,
    Oracle,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Proposition => "proposition",
            Route::Stirling => "stirling",
            Route::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct MomentResult {
    pub n: usize,
    pub value: SeriesValue,
    pub route: Route,
}

/// `mu_0(c) .. mu_xi(c)`.
#[derive(Debug, Clone)]
pub struct MomentBase {
    pub values: Vec<SeriesValue>,
    pub spec: WeightSpec,
}

fn weight_majorant(spec: &WeightSpec) -> impl Fn(usize) -> Option<Rational> {
    hypergeometric_majorant(
        spec.alphas.iter().map(|a| a.abs()).collect(),
        spec.bottom_params().iter().map(|b| b.abs()).collect(),
        spec.c.abs(),
    )
}

/// Exact weights `rho(0), rho(1), ...`, finite for terminating weights.
pub fn weight_values(spec: &WeightSpec) -> Result<impl Iterator<Item = Rational>> {
    let last = spec.support_end()?;
    Ok(hypergeometric_terms(
        spec.alphas.clone(),
        spec.bottom_params(),
        spec.c.clone(),
        last,
    ))
}

/// `sum_x f(x) rho(x)` for a polynomial `f` of degree at most `degree`.
///
/// The tail is bounded through the envelope `A max(x, 1)^degree |rho(x)|`,
/// with `A` the sum of the coefficient magnitudes of `f`.
pub(crate) fn weighted_sum(
    spec: &WeightSpec,
    f: impl Fn(&Rational) -> Rational,
    degree: usize,
    precision_bits: u32,
) -> Result<SeriesValue> {
    weighted_sum_with_bound(spec, f, None, degree, precision_bits)
}

fn weighted_sum_with_bound(
    spec: &WeightSpec,
    f: impl Fn(&Rational) -> Rational,
    coeff_bound: Option<Rational>,
    degree: usize,
    precision_bits: u32,
) -> Result<SeriesValue> {
    let rho = weight_values(spec)?;
    let amplitude = match coeff_bound {
        Some(a) => a,
        None => {
            // recover the coefficients of f from its values at 0..=degree
            let pts: Vec<Rational> = (0..=degree).map(|x| f(&Rational::from_integer(x.into()))).collect();
            interpolate(&pts).coeffs().iter().map(|c| c.abs()).sum()
        }
    };
    let d = degree as u32;
    let terms = rho.enumerate().map(move |(x, r)| {
        let xr = Rational::from_integer(x.into());
        let value = f(&xr) * &r;
        let base = if x == 0 { Rational::one() } else { xr };
        let env = &amplitude * num_traits::pow(base, d as usize) * r.abs();
        (value, env)
    });
    let weight = weight_majorant(spec);
    let majorant = move |k: usize| {
        let growth = num_traits::pow(
            Rational::new((k + 1).into(), k.into()),
            d as usize,
        );
        weight(k).map(|r| r * growth)
    };
    Ok(round_summed(
        sum_enveloped(terms, majorant, precision_bits)?,
        precision_bits,
    ))
}

/// Newton-form interpolation through `(x, values[x])`, `x = 0..n`, expanded to a `Poly`.
fn interpolate(values: &[Rational]) -> Poly {
    let n = values.len();
    let mut table = values.to_vec();
    let mut coeffs = Vec::with_capacity(n);
    for level in 0..n {
        coeffs.push(table[0].clone());
        for i in 0..n - level - 1 {
            table[i] = (&table[i + 1] - &table[i]) / Rational::from_integer((level + 1).into());
        }
    }
    let mut poly = Poly::zero();
    let mut basis = Poly::one();
    for (k, c) in coeffs.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        basis = &basis * &Poly::linear(Rational::from_integer((-(k as i64)).into()), Rational::one());
    }
    poly
}

/// `nu_k = L((x - k + 1)_k) = k! rho(k) pFq[alpha + k; beta + 1 + k; c]`.
pub fn generalized_moment(spec: &WeightSpec, k: usize, precision_bits: u32) -> Result<SeriesValue> {
    spec.convergence()?;
    let w = weight_at(spec, k as u64)?;
    if w.is_zero() {
        return Ok(SeriesValue::zero(precision_bits));
    }
    let shift = Rational::from_integer(k.into());
    let top: Vec<Rational> = spec.alphas.iter().map(|a| a + &shift).collect();
    let bottom: Vec<Rational> = spec.bottom_params().iter().map(|b| b + &shift).collect();
    let series = pfq_eval(&top, &bottom, &spec.c, precision_bits)?;
    Ok(series.scale(&(w * Rational::from_integer(factorial(k as u64)))))
}

pub fn moment_stirling(spec: &WeightSpec, n: usize, precision_bits: u32) -> Result<MomentResult> {
    let mut acc = SeriesValue::zero(precision_bits);
    for k in 0..=n {
        let s = stirling2(n, k);
        if s.is_zero() {
            continue;
        }
        acc = acc.add(&generalized_moment(spec, k, precision_bits)?.scale(&s));
    }
    Ok(MomentResult {
        n,
        value: acc,
        route: Route::Stirling,
    })
}

pub fn moment_oracle(spec: &WeightSpec, n: usize, precision_bits: u32) -> Result<MomentResult> {
    let value = weighted_sum_with_bound(
        spec,
        |x| num_traits::pow(x.clone(), n),
        Some(Rational::one()),
        n,
        precision_bits,
    )?;
    Ok(MomentResult {
        n,
        value,
        route: Route::Oracle,
    })
}

/// `mu_0 .. mu_xi` through the Stirling route, keeping it independent of the recurrence.
pub fn base_moments(spec: &WeightSpec, precision_bits: u32) -> Result<MomentBase> {
    let xi = classify(spec).xi;
    let values = (0..=xi)
        .map(|k| moment_stirling(spec, k, precision_bits).map(|m| m.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentBase {
        values,
        spec: spec.clone(),
    })
}

fn nonsingular_prefactor(spec: &WeightSpec) -> Result<Rational> {
    let pre = classify(spec).prefactor(&spec.c);
    if pre.is_zero() {
        return Err(Error::SingularPrefactor(spec.c.to_string()));
    }
    Ok(pre)
}

fn assemble(
    vector: &PolyVector,
    base: &MomentBase,
    prefactor: &Rational,
    precision_bits: u32,
) -> MomentResult {
    let coeffs = vector.eval(&base.spec.c);
    let scale = num_traits::pow(prefactor.clone(), vector.n).recip();
    MomentResult {
        n: vector.n,
        value: SeriesValue::dot(&coeffs, &base.values, precision_bits).scale(&scale),
        route: Route::Proposition,
    }
}

/// `mu_n` through the vector polynomials.
pub fn moment(spec: &WeightSpec, n: usize, precision_bits: u32) -> Result<MomentResult> {
    Ok(moment_sequence(spec, n, precision_bits)?.pop().expect("n + 1 moments"))
}

/// `mu_0 .. mu_{n_max}` through the vector polynomials, sharing one recurrence run.
pub fn moment_sequence(spec: &WeightSpec, n_max: usize, precision_bits: u32) -> Result<Vec<MomentResult>> {
    let prefactor = nonsingular_prefactor(spec)?;
    let base = base_moments(spec, precision_bits)?;
    Ok(poly_vectors(spec, n_max)
        .iter()
        .map(|v| assemble(v, &base, &prefactor, precision_bits))
        .collect())
}

/// `P_n(c) . mu(c)` without the prefactor, defined even where `lambda + c tau = 0`.
pub fn unscaled_products(spec: &WeightSpec, n_max: usize, precision_bits: u32) -> Result<Vec<SeriesValue>> {
    let base = base_moments(spec, precision_bits)?;
    Ok(poly_vectors(spec, n_max)
        .iter()
        .map(|v| SeriesValue::dot(&v.eval(&spec.c), &base.values, precision_bits))
        .collect())
}

/// Moments `mu_0 .. mu_{n_max}`: the proposition route where it is defined,
/// the Stirling route at a singular prefactor.
pub fn moments_up_to(spec: &WeightSpec, n_max: usize, precision_bits: u32) -> Result<Vec<SeriesValue>> {
    match moment_sequence(spec, n_max, precision_bits) {
        Ok(v) => Ok(v.into_iter().map(|m| m.value).collect()),
        Err(Error::SingularPrefactor(_)) => (0..=n_max)
            .map(|n| moment_stirling(spec, n, precision_bits).map(|m| m.value))
            .collect(),
        Err(e) => Err(e),
    }
}

//! Exponential generating functions and Stieltjes transforms.
//!
//! Every identity here is checked by evaluating both sides as convergent
//! series; the formal Laurent series `sum mu_n / z^(n+1)` is never summed.

use num_traits::{One, Signed, Zero};

use crate::arith::pfq::{hypergeometric_terms, pfq_eval, pfq_eval_complex, round_summed_complex};
use crate::arith::rational::{factorial, modulus_upper, nonpositive_integer, ComplexRational, Rational};
use crate::arith::summation::{hypergeometric_majorant, sum_enveloped};
use crate::arith::{ComplexSeriesValue, Poly, SeriesValue};
use crate::error::{Error, Result};
use crate::moments::{base_moments, generalized_moment, moment_oracle, unscaled_products};
use crate::weight::{classify, WeightSpec};

/// Coefficients of `w^0 .. w^order` of a power series.
#[derive(Debug, Clone)]
pub struct TaylorSlice {
    pub coefficients: Vec<SeriesValue>,
}

impl TaylorSlice {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// Side-by-side comparison of two slices of the same power series.
#[derive(Debug, Clone)]
pub struct EgfComparison {
    pub left: TaylorSlice,
    pub right: TaylorSlice,
    /// Largest `|left_i - right_i|` between centers.
    pub max_deviation: Rational,
    /// Largest deviation relative to `max(|left_i|, |right_i|)`; exact zeros count as 0.
    pub max_relative_deviation: Rational,
    /// Every pair of enclosures intersects.
    pub within_bounds: bool,
}

impl EgfComparison {
    pub fn new(left: TaylorSlice, right: TaylorSlice) -> Self {
        let mut max_dev = Rational::zero();
        let mut max_rel = Rational::zero();
        let mut within = left.coefficients.len() == right.coefficients.len();
        for (l, r) in left.coefficients.iter().zip(&right.coefficients) {
            let dev = l.deviation(r);
            let scale = l.center().abs().max(r.center().abs());
            if !dev.is_zero() {
                let rel = if scale.is_zero() { dev.clone() } else { &dev / &scale };
                max_rel = max_rel.max(rel);
            }
            max_dev = max_dev.max(dev);
            within &= l.overlaps(r);
        }
        EgfComparison {
            left,
            right,
            max_deviation: max_dev,
            max_relative_deviation: max_rel,
            within_bounds: within,
        }
    }

    pub fn passes(&self, relative_tolerance: &Rational) -> bool {
        self.within_bounds && self.max_relative_deviation <= *relative_tolerance
    }
}

/// `mu_n(c) / n!` for `n <= order`, from the direct-sum route.
pub fn egf_moments(spec: &WeightSpec, order: usize, precision_bits: u32) -> Result<TaylorSlice> {
    let coefficients = (0..=order)
        .map(|n| {
            moment_oracle(spec, n, precision_bits)
                .map(|m| m.value.scale(&Rational::from_integer(factorial(n as u64)).recip()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TaylorSlice { coefficients })
}

/// Truncated `e^(kappa w) - 1` as a polynomial in `w`.
pub fn exp_minus_one_slice(kappa: &Rational, order: usize) -> Poly {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut term = Rational::one();
    for (m, slot) in coeffs.iter_mut().enumerate().skip(1) {
        term = term * kappa / Rational::from_integer(m.into());
        *slot = term.clone();
    }
    Poly::new(coeffs)
}

/// Truncated powers `u^0 .. u^order` of a series with `u(0) = 0`.
pub fn truncated_powers(u: &Poly, order: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(order + 1);
    let mut acc = Poly::one();
    for _ in 0..=order {
        out.push(acc.clone());
        acc = (&acc * u).truncate(order);
    }
    out
}

/// Compares the slice of `mu_0(c e^((lambda + tau c) w))` with that of
/// `sum_n (P_n(c) . mu(c)) w^n / n!`.
///
/// The left side re-expands `mu_0` about `c` through
/// `mu_0(c (1 + u)) = sum_j nu_j u^j / j!`, with `u = e^(kappa w) - 1`.
pub fn egf_compose_check(
    spec: &WeightSpec,
    order: usize,
    precision_bits: u32,
) -> Result<EgfComparison> {
    let kappa = classify(spec).prefactor(&spec.c);
    let powers = truncated_powers(&exp_minus_one_slice(&kappa, order), order);
    let nus = (0..=order)
        .map(|j| {
            generalized_moment(spec, j, precision_bits)
                .map(|v| v.scale(&Rational::from_integer(factorial(j as u64)).recip()))
        })
        .collect::<Result<Vec<_>>>()?;
    let left = (0..=order)
        .map(|m| {
            let coeffs: Vec<Rational> = powers.iter().map(|p| p.coeff(m)).collect();
            SeriesValue::dot(&coeffs, &nus, precision_bits)
        })
        .collect();
    let right = unscaled_products(spec, order, precision_bits)?
        .into_iter()
        .enumerate()
        .map(|(n, v)| v.scale(&Rational::from_integer(factorial(n as u64)).recip()))
        .collect();
    Ok(EgfComparison::new(
        TaylorSlice { coefficients: left },
        TaylorSlice { coefficients: right },
    ))
}

fn check_real_z(z: &Rational) -> Result<()> {
    if z.is_zero() || (z.is_integer() && z.is_positive()) {
        return Err(Error::InvalidParameter(format!(
            "z = {z} lies on the support {{0, 1, 2, ...}}"
        )));
    }
    Ok(())
}

fn check_complex_z(z: &ComplexRational) -> Result<()> {
    if z.im.is_zero() {
        check_real_z(&z.re)
    } else {
        Ok(())
    }
}

/// `(1/z) p+1Fq+1[-z, alpha; 1 - z, beta + 1; c]`.
pub fn stieltjes_eval(spec: &WeightSpec, z: &Rational, precision_bits: u32) -> Result<SeriesValue> {
    check_real_z(z)?;
    spec.convergence()?;
    let mut top = vec![-z.clone()];
    top.extend(spec.alphas.iter().cloned());
    let mut bottom = vec![Rational::one() - z];
    bottom.extend(spec.bottom_params());
    Ok(pfq_eval(&top, &bottom, &spec.c, precision_bits)?.scale(&z.recip()))
}

pub fn stieltjes_eval_complex(
    spec: &WeightSpec,
    z: &ComplexRational,
    precision_bits: u32,
) -> Result<ComplexSeriesValue> {
    check_complex_z(z)?;
    spec.convergence()?;
    let lift = |r: &Rational| ComplexRational::new(r.clone(), Rational::zero());
    let mut top = vec![-z.clone()];
    top.extend(spec.alphas.iter().map(lift));
    let mut bottom = vec![lift(&Rational::one()) - z];
    bottom.extend(spec.bottom_params().iter().map(lift));
    let f = pfq_eval_complex(&top, &bottom, &lift(&spec.c), precision_bits)?;
    complex_times_exact(&f, &(ComplexRational::one() / z))
}

fn complex_times_exact(v: &ComplexSeriesValue, w: &ComplexRational) -> Result<ComplexSeriesValue> {
    Ok(ComplexSeriesValue {
        re: v.re.scale(&w.re).sub(&v.im.scale(&w.im)),
        im: v.re.scale(&w.im).add(&v.im.scale(&w.re)),
    })
}

/// `sum_x rho(x) / (z - x)`, summed directly.
///
/// Past `x > |z|` the terms are enveloped by `|rho(x)| / (x - |z|)`, whose
/// ratios are bounded by the weight's own ratio majorant.
pub fn stieltjes_oracle(spec: &WeightSpec, z: &Rational, precision_bits: u32) -> Result<SeriesValue> {
    let zc = ComplexRational::new(z.clone(), Rational::zero());
    Ok(stieltjes_oracle_complex(spec, &zc, precision_bits)?.re)
}

pub fn stieltjes_oracle_complex(
    spec: &WeightSpec,
    z: &ComplexRational,
    precision_bits: u32,
) -> Result<ComplexSeriesValue> {
    check_complex_z(z)?;
    let last = spec.support_end()?;
    let zmod = modulus_upper(z);
    let rho = hypergeometric_terms(spec.alphas.clone(), spec.bottom_params(), spec.c.clone(), last);
    let z_owned = z.clone();
    let zmod_terms = zmod.clone();
    let terms = rho.enumerate().map(move |(x, r)| {
        let xr = Rational::from_integer(x.into());
        let denom = &z_owned - ComplexRational::new(xr.clone(), Rational::zero());
        let value = ComplexRational::new(r.clone(), Rational::zero()) / denom.clone();
        let gap = &xr - &zmod_terms;
        let env = if gap.is_positive() {
            r.abs() / gap
        } else {
            modulus_upper(&value)
        };
        (value, env)
    });
    let weight = hypergeometric_majorant(
        spec.alphas.iter().map(|a| a.abs()).collect(),
        spec.bottom_params().iter().map(|b| b.abs()).collect(),
        spec.c.abs(),
    );
    // envelopes switch form at x > |z|, so ratios are only claimed beyond that
    let majorant = move |k: usize| {
        if Rational::from_integer(k.into()) > zmod {
            weight(k)
        } else {
            None
        }
    };
    let summed = sum_enveloped(terms, majorant, precision_bits)?;
    Ok(round_summed_complex(summed, precision_bits))
}

/// The two generalized families whose vector Stieltjes transforms have closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StieltjesFamily {
    GenCharlier { beta: Rational, c: Rational },
    GenMeixner { alpha: Rational, beta: Rational, c: Rational },
}

impl StieltjesFamily {
    pub fn spec(&self) -> WeightSpec {
        match self {
            StieltjesFamily::GenCharlier { beta, c } => {
                WeightSpec::new(vec![], vec![beta.clone()], c.clone())
            }
            StieltjesFamily::GenMeixner { alpha, beta, c } => {
                WeightSpec::new(vec![alpha.clone()], vec![beta.clone()], c.clone())
            }
        }
    }
}

/// Both sides of `S_P(c, z) . mu(c) = (1/z) p+1Fq+1[-z/k, alpha; 1 - z/k, beta + 1; c]`,
/// `k = lambda + tau c`, with `S_P = (U, V)` in closed form.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub u: SeriesValue,
    pub v: SeriesValue,
    pub lhs: SeriesValue,
    pub rhs: SeriesValue,
    pub deviation: Rational,
    pub within_bounds: bool,
}

impl IdentityCheck {
    pub fn relative_deviation(&self) -> Rational {
        let scale = self.rhs.center().abs();
        if scale.is_zero() {
            self.deviation.clone()
        } else {
            &self.deviation / scale
        }
    }
}

/// `U` and `V` for the generalized Charlier weight:
/// `U = (1/z) 1F2[1; 1 - z, -beta - z; c]`,
/// `V = 1/(z (z + beta)) 1F2[1; 1 - z, 1 - beta - z; c]`.
pub fn gen_charlier_uv(
    beta: &Rational,
    c: &Rational,
    z: &Rational,
    precision_bits: u32,
) -> Result<(SeriesValue, SeriesValue)> {
    let one = Rational::one();
    let u = pfq_eval(std::slice::from_ref(&one), &[&one - z, -beta - z], c, precision_bits)?.scale(&z.recip());
    let v = pfq_eval(std::slice::from_ref(&one), &[&one - z, &one - beta - z], c, precision_bits)?
        .scale(&(z * (z + beta)).recip());
    Ok((u, v))
}

/// `U` and `V` for the generalized Meixner weight:
/// `U = 1/(z + alpha) + alpha/(z (z + alpha)) 2F2[1, -alpha - z; 1 - z, -beta - z; -c]`,
/// `V = 1/(z (z + beta)) 2F2[1, 1 - alpha - z; 1 - z, 1 - beta - z; -c]`.
pub fn gen_meixner_uv(
    alpha: &Rational,
    beta: &Rational,
    c: &Rational,
    z: &Rational,
    precision_bits: u32,
) -> Result<(SeriesValue, SeriesValue)> {
    let one = Rational::one();
    let za = z + alpha;
    if za.is_zero() {
        return Err(Error::InvalidParameter("z + alpha = 0".into()));
    }
    let f_u = pfq_eval(
        &[one.clone(), -alpha - z],
        &[&one - z, -beta - z],
        &-c,
        precision_bits,
    )?;
    let u = f_u
        .scale(&(alpha / (z * &za)))
        .add(&SeriesValue::exact(za.recip(), precision_bits));
    let v = pfq_eval(
        &[one.clone(), &one - alpha - z],
        &[&one - z, &one - beta - z],
        &-c,
        precision_bits,
    )?
    .scale(&(z * (z + beta)).recip());
    Ok((u, v))
}

/// Coefficient `v_n` of `c^n` in the generalized Meixner `V(c, z)`:
/// `(-1)^n / (z (z + beta)) (1 - alpha - z)_n / ((1 - z)_n (1 - beta - z)_n)`.
pub fn gen_meixner_v_coefficient(n: usize, alpha: &Rational, beta: &Rational, z: &Rational) -> Rational {
    use crate::arith::combinatorics::pochhammer;
    let one = Rational::one();
    let sign = if n.is_multiple_of(2) { one.clone() } else { -one.clone() };
    sign / (z * (z + beta)) * pochhammer(&(&one - alpha - z), n)
        / (pochhammer(&(&one - z), n) * pochhammer(&(&one - beta - z), n))
}

/// Coefficient `u_n` (`n >= 1`) of `c^n` in the generalized Meixner `U(c, z)`:
/// `alpha (-1)^n / (z (z + alpha)) (-alpha - z)_n / ((1 - z)_n (-beta - z)_n)`; `u_0 = 1/z`.
pub fn gen_meixner_u_coefficient(n: usize, alpha: &Rational, beta: &Rational, z: &Rational) -> Rational {
    use crate::arith::combinatorics::pochhammer;
    if n == 0 {
        return z.recip();
    }
    let one = Rational::one();
    let sign = if n.is_multiple_of(2) { one.clone() } else { -one };
    sign * alpha / (z * (z + alpha)) * pochhammer(&(-alpha - z), n)
        / (pochhammer(&(Rational::one() - z), n) * pochhammer(&(-beta - z), n))
}

/// Evaluates both sides of the vector Stieltjes identity for one family.
pub fn stieltjes_p_identity(
    family: &StieltjesFamily,
    z: &Rational,
    precision_bits: u32,
) -> Result<IdentityCheck> {
    check_real_z(z)?;
    let spec = family.spec();
    let (u, v) = match family {
        StieltjesFamily::GenCharlier { beta, c } => gen_charlier_uv(beta, c, z, precision_bits)?,
        StieltjesFamily::GenMeixner { alpha, beta, c } => {
            gen_meixner_uv(alpha, beta, c, z, precision_bits)?
        }
    };
    let base = base_moments(&spec, precision_bits)?;
    let lhs = u.mul(&base.values[0]).add(&v.mul(&base.values[1]));

    let kappa = classify(&spec).prefactor(&spec.c);
    let zk = z / &kappa;
    if nonpositive_integer(&-&zk).is_some() {
        return Err(Error::InvalidParameter(format!("z/(lambda + tau c) = {zk} on the support")));
    }
    let mut top = vec![-zk.clone()];
    top.extend(spec.alphas.iter().cloned());
    let mut bottom = vec![Rational::one() - &zk];
    bottom.extend(spec.bottom_params());
    let rhs = pfq_eval(&top, &bottom, &spec.c, precision_bits)?.scale(&z.recip());

    Ok(IdentityCheck {
        deviation: lhs.deviation(&rhs),
        within_bounds: lhs.overlaps(&rhs),
        u,
        v,
        lhs,
        rhs,
    })
}

/// Exact Taylor coefficients `a_0 .. a_order` of `exp(f(w))` with `f(0) = 0`.
pub fn exp_of_series(f: &Poly, order: usize) -> Poly {
    // g' = f' g
    let df = f.derivative();
    let mut g = vec![Rational::zero(); order + 1];
    g[0] = Rational::one();
    for m in 0..order {
        let mut acc = Rational::zero();
        for k in 0..=m {
            acc += df.coeff(k) * &g[m - k];
        }
        g[m + 1] = acc / Rational::from_integer((m + 1).into());
    }
    Poly::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::combinatorics::pochhammer;
    use crate::arith::rational::{int, rat};

    #[test]
    fn pochhammer_ratio_is_simple_pole() {
        // (-z)_x / (1 - z)_x = z / (z - x)
        for z in [rat(-3, 2), int(-5), rat(-1, 2), rat(7, 3), rat(-11, 5)] {
            for x in 0..=50usize {
                let lhs = pochhammer(&-&z, x) / pochhammer(&(int(1) - &z), x);
                let rhs = &z / (&z - int(x as i64));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn support_points_are_rejected() {
        let spec = WeightSpec::new(vec![], vec![], rat(1, 2));
        for z in [int(0), int(1), int(4)] {
            assert!(matches!(stieltjes_eval(&spec, &z, 64), Err(Error::InvalidParameter(_))));
            assert!(matches!(stieltjes_oracle(&spec, &z, 64), Err(Error::InvalidParameter(_))));
        }
    }

    #[test]
    fn negative_z_gives_negative_transform() {
        let spec = WeightSpec::new(vec![rat(1, 2)], vec![], rat(1, 4));
        let s = stieltjes_oracle(&spec, &int(-1), 128).unwrap();
        assert!(s.center() < int(0) && !s.contains_zero());
    }

    #[test]
    fn terminating_transform_is_exact() {
        let spec = WeightSpec::new(vec![int(-3)], vec![], int(-1));
        let z = rat(-3, 2);
        let a = stieltjes_eval(&spec, &z, 64).unwrap();
        let b = stieltjes_oracle(&spec, &z, 64).unwrap();
        assert!(a.is_exact());
        assert_eq!(a.exact_value(), b.exact_value());
    }

    #[test]
    fn complex_point_agreement() {
        let spec = WeightSpec::new(vec![], vec![rat(1, 2)], rat(1, 3));
        let z = ComplexRational::new(rat(1, 2), rat(3, 4));
        let a = stieltjes_eval_complex(&spec, &z, 128).unwrap();
        let b = stieltjes_oracle_complex(&spec, &z, 128).unwrap();
        assert!(a.overlaps(&b));
        assert!(!a.im.contains_zero());
    }

    #[test]
    fn meixner_v_coefficients() {
        let (a, b, z) = (rat(1, 2), rat(1, 2), rat(-5, 2));
        assert_eq!(gen_meixner_v_coefficient(0, &a, &b, &z), (&z * (&z + &b)).recip());
        for n in 1..10usize {
            let nr = int(n as i64);
            let v_prev = gen_meixner_v_coefficient(n - 1, &a, &b, &z);
            let v = gen_meixner_v_coefficient(n, &a, &b, &z);
            // v_n = (z + alpha - n) / ((z - n)(z + beta - n)) v_{n-1}
            let ratio = (&z + &a - &nr) / ((&z - &nr) * (&z + &b - &nr));
            assert_eq!(v, ratio * v_prev.clone());
            // u_n = (z + beta - n) v_n - v_{n-1}
            assert_eq!(gen_meixner_u_coefficient(n, &a, &b, &z), (&z + &b - &nr) * &v - v_prev);
        }
    }

    #[test]
    fn exp_series_of_linear_term() {
        // exp(2w): coefficients 2^m / m!
        let g = exp_of_series(&Poly::from_ints(&[0, 2]), 5);
        for m in 0..=5usize {
            let expected = Rational::from_integer(num_bigint::BigInt::from(1u32 << m))
                / Rational::from_integer(factorial(m as u64));
            assert_eq!(g.coeff(m), expected);
        }
    }
}

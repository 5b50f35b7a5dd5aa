//! Hypergeometric-type weights
//! `rho(x) = (alpha)_x / (beta + 1)_x * c^x / x!` and the data derived from them.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::combinatorics::{elementary_symmetric_all, pochhammer_product};
use crate::arith::pfq::{classify_series, Convergence};
use crate::arith::rational::{nonpositive_integer, Rational};
use crate::arith::{Poly, SeriesValue};
use crate::error::{Error, Result};

/// Parameter vectors `alpha` (length p), `beta` (length q) and the point `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSpec {
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
    pub c: Rational,
}

impl WeightSpec {
    pub fn new(alphas: Vec<Rational>, betas: Vec<Rational>, c: Rational) -> Self {
        WeightSpec { alphas, betas, c }
    }

    pub fn p(&self) -> usize {
        self.alphas.len()
    }

    pub fn q(&self) -> usize {
        self.betas.len()
    }

    /// The same weight at another point `c`.
    pub fn at(&self, c: Rational) -> Self {
        WeightSpec { c, ..self.clone() }
    }

    /// Bottom parameters `beta_j + 1` of the associated pFq.
    pub fn bottom_params(&self) -> Vec<Rational> {
        self.betas.iter().map(|b| b + Rational::one()).collect()
    }

    /// True when some `beta_j <= -1`, outside the usual standing assumption.
    pub fn is_nonstandard(&self) -> bool {
        self.betas.iter().any(|b| *b <= -Rational::one())
    }

    pub(crate) fn top_zero(&self) -> Option<u64> {
        self.alphas.iter().filter_map(nonpositive_integer).min()
    }

    pub(crate) fn bottom_zero(&self) -> Option<u64> {
        self.bottom_params().iter().filter_map(nonpositive_integer).min()
    }

    /// Convergence class of `sum_x rho(x)`; errors for divergent or ill-posed weights.
    pub fn convergence(&self) -> Result<Convergence> {
        classify_series(
            self.top_zero(),
            self.bottom_zero(),
            self.p(),
            self.q(),
            self.c.is_zero(),
            self.c.abs() < Rational::one(),
        )
    }

    /// Largest `x` with `rho(x) != 0`, for terminating weights.
    pub fn support_end(&self) -> Result<Option<u64>> {
        Ok(match self.convergence()? {
            Convergence::Terminating { last } => Some(last),
            _ => None,
        })
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Rational]| {
            v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
        };
        write!(
            f,
            "alpha = [{}], beta = [{}], c = {}",
            list(&self.alphas),
            list(&self.betas),
            self.c
        )
    }
}

/// The triple `(lambda, tau, xi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegimeClass {
    pub lambda: i64,
    pub tau: i64,
    pub xi: usize,
}

impl RegimeClass {
    /// `lambda + c tau` as a polynomial in `c`.
    pub fn prefactor_poly(&self) -> Poly {
        Poly::linear(Rational::from_integer(self.lambda.into()), Rational::from_integer(self.tau.into()))
    }

    pub fn prefactor(&self, c: &Rational) -> Rational {
        self.prefactor_poly().eval(c)
    }
}

pub fn classify(spec: &WeightSpec) -> RegimeClass {
    let (p, q) = (spec.p(), spec.q());
    let (lambda, tau) = match (q + 1).cmp(&p) {
        std::cmp::Ordering::Greater => (1, 0),
        std::cmp::Ordering::Equal => (1, -1),
        std::cmp::Ordering::Less => (0, 1),
    };
    RegimeClass {
        lambda,
        tau,
        xi: (p.saturating_sub(1)).max(q),
    }
}

/// `phi(x) = x prod(x + beta_j)` and `eta(x) = c prod(x + alpha_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PearsonPair {
    pub phi: Poly,
    pub eta: Poly,
    pub class_s: usize,
}

fn monic_product(roots_shift: &[Rational]) -> Poly {
    roots_shift.iter().fold(Poly::one(), |acc, a| {
        &acc * &Poly::linear(a.clone(), Rational::one())
    })
}

pub fn pearson(spec: &WeightSpec) -> PearsonPair {
    let phi = monic_product(&spec.betas).shift_up();
    let eta = monic_product(&spec.alphas).scale(&spec.c);
    let deg = |p: &Poly| p.degree().map_or(i64::MIN / 2, |d| d as i64);
    let s = (deg(&phi) - 2).max(deg(&(&phi - &eta)) - 1).max(0);
    PearsonPair {
        phi,
        eta,
        class_s: s as usize,
    }
}

/// `rho(x)` exactly. Past the end of a terminating support the weight is zero,
/// even where the bottom Pochhammer product also vanishes.
pub fn weight_at(spec: &WeightSpec, x: u64) -> Result<Rational> {
    let top = spec.top_zero();
    let bottom = spec.bottom_zero();
    if let Some(t) = top {
        if x > t && bottom.is_none_or(|b| t <= b) {
            return Ok(Rational::zero());
        }
    }
    if let Some(b) = bottom {
        if x > b {
            return Err(Error::InvalidParameter(format!(
                "bottom Pochhammer product vanishes at x = {x}"
            )));
        }
    }
    let n = x as usize;
    let den = pochhammer_product(&spec.bottom_params(), n);
    let fact = crate::arith::rational::factorial(x);
    let num = pochhammer_product(&spec.alphas, n) * num_traits::pow(spec.c.clone(), n);
    Ok(num / (den * Rational::from_integer(fact)))
}

/// `sigma_0(c) .. sigma_xi(c)`, each of degree at most one in `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaCoeffs {
    pub sigmas: Vec<Poly>,
}

pub fn sigma_coeffs(spec: &WeightSpec) -> SigmaCoeffs {
    let regime = classify(spec);
    let (p, q) = (spec.p(), spec.q());
    let e_beta = elementary_symmetric_all(&spec.betas);
    let e_alpha = elementary_symmetric_all(&spec.alphas);
    // coefficient of theta^k in theta prod(theta + beta_j) - c prod(theta + alpha_i)
    let d = |k: usize| -> Poly {
        let a = if (1..=q + 1).contains(&k) {
            e_beta[q + 1 - k].clone()
        } else {
            Rational::zero()
        };
        let b = if k <= p {
            e_alpha[p - k].clone()
        } else {
            Rational::zero()
        };
        Poly::linear(a, -b)
    };
    // the leading coefficient is +(lambda + c tau) unless q + 1 < p, where it is -c
    let sign = if q + 1 >= p {
        -Rational::one()
    } else {
        Rational::one()
    };
    SigmaCoeffs {
        sigmas: (0..=regime.xi).map(|k| d(k).scale(&sign)).collect(),
    }
}

/// `(xi + 1) x (xi + 1)` matrix with `lambda + c tau` on the superdiagonal and
/// the sigma coefficients in the last row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionMatrix {
    pub entries: Vec<Vec<Poly>>,
}

impl CompanionMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `M^T v` for a vector of polynomials.
    pub fn transpose_apply(&self, v: &[Poly]) -> Vec<Poly> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n).fold(Poly::zero(), |acc, j| {
                    let m = &self.entries[j][i];
                    if m.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(m * &v[j])
                    }
                })
            })
            .collect()
    }

    /// Entries evaluated at `c`.
    pub fn eval(&self, c: &Rational) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(c)).collect())
            .collect()
    }
}

pub fn companion_matrix(spec: &WeightSpec) -> CompanionMatrix {
    let regime = classify(spec);
    let n = regime.xi + 1;
    let mut entries = vec![vec![Poly::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = regime.prefactor_poly();
    }
    entries[n - 1] = sigma_coeffs(spec).sigmas;
    CompanionMatrix { entries }
}

/// `sum_x (eta(x) - phi(x)) rho(x)`, which vanishes because `phi(0) = 0`.
pub fn annihilation_sum(spec: &WeightSpec, precision_bits: u32) -> Result<SeriesValue> {
    let pair = pearson(spec);
    let diff = &pair.eta - &pair.phi;
    crate::moments::weighted_sum(spec, |x| diff.eval(x), diff.degree().unwrap_or(0), precision_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn spec(alphas: &[Rational], betas: &[Rational], c: Rational) -> WeightSpec {
        WeightSpec::new(alphas.to_vec(), betas.to_vec(), c)
    }

    #[test]
    fn regime_table() {
        let b = rat(1, 2);
        assert_eq!(
            classify(&spec(&[], std::slice::from_ref(&b), int(1))),
            RegimeClass { lambda: 1, tau: 0, xi: 1 }
        );
        assert_eq!(
            classify(&spec(std::slice::from_ref(&b), &[], int(1))),
            RegimeClass { lambda: 1, tau: -1, xi: 0 }
        );
        assert_eq!(
            classify(&spec(&[b.clone(), int(-3)], &[], int(-1))),
            RegimeClass { lambda: 0, tau: 1, xi: 1 }
        );
        assert_eq!(
            classify(&spec(&[], &[], int(1))),
            RegimeClass { lambda: 1, tau: 0, xi: 0 }
        );
    }

    #[test]
    fn pearson_pairs() {
        let charlier = pearson(&spec(&[], &[], rat(1, 2)));
        assert_eq!(charlier.phi, Poly::x());
        assert_eq!(charlier.eta, Poly::constant(rat(1, 2)));
        assert_eq!(charlier.class_s, 0);

        let beta = rat(1, 3);
        let gen_charlier = pearson(&spec(&[], std::slice::from_ref(&beta), rat(1, 2)));
        assert_eq!(gen_charlier.phi, Poly::new(vec![int(0), beta, int(1)]));
        assert_eq!(gen_charlier.class_s, 1);

        let (a, c) = (rat(5, 2), rat(1, 4));
        let meixner = pearson(&spec(std::slice::from_ref(&a), &[], c.clone()));
        assert_eq!(meixner.phi, Poly::x());
        assert_eq!(meixner.eta, Poly::linear(&c * &a, c));
        assert_eq!(meixner.class_s, 0);
        assert_eq!(meixner.phi.eval(&int(0)), int(0));
    }

    #[test]
    fn weight_values() {
        let charlier = spec(&[], &[], rat(1, 2));
        assert_eq!(weight_at(&charlier, 3).unwrap(), rat(1, 48));
        assert_eq!(weight_at(&charlier, 0).unwrap(), int(1));
        let kraw = spec(&[int(-2)], &[], int(-1));
        assert_eq!(weight_at(&kraw, 3).unwrap(), int(0));
        assert_eq!(weight_at(&kraw, 2).unwrap(), int(1));
        let bad = spec(&[], &[int(-3)], rat(1, 2));
        assert!(weight_at(&bad, 1).is_ok());
        assert!(matches!(weight_at(&bad, 3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn sigma_examples() {
        let (a, b, c) = (rat(1, 2), rat(1, 3), rat(1, 5));
        let gc = sigma_coeffs(&spec(&[], std::slice::from_ref(&b), c.clone()));
        assert_eq!(gc.sigmas, vec![Poly::linear(int(0), int(1)), Poly::constant(-&b)]);

        let gm = sigma_coeffs(&spec(std::slice::from_ref(&a), std::slice::from_ref(&b), c.clone()));
        assert_eq!(gm.sigmas, vec![Poly::linear(int(0), a.clone()), Poly::linear(-&b, int(1))]);

        let n = int(4);
        let gk = sigma_coeffs(&spec(&[a.clone(), -&n], &[], int(-1)));
        assert_eq!(
            gk.sigmas,
            vec![Poly::linear(int(0), &a * &n), Poly::linear(int(1), &n - &a)]
        );
    }

    #[test]
    fn companion_examples() {
        let b = rat(1, 2);
        let m = companion_matrix(&spec(&[], std::slice::from_ref(&b), int(1)));
        assert_eq!(
            m.entries,
            vec![
                vec![Poly::zero(), Poly::one()],
                vec![Poly::x(), Poly::constant(-&b)]
            ]
        );
        let a = rat(3, 2);
        let meixner = companion_matrix(&spec(std::slice::from_ref(&a), &[], rat(1, 4)));
        assert_eq!(meixner.entries, vec![vec![Poly::linear(int(0), a)]]);

        let (a1, a2) = (rat(1, 2), rat(1, 3));
        let gh = companion_matrix(&spec(&[a1.clone(), a2.clone()], std::slice::from_ref(&b), rat(1, 4)));
        assert_eq!(gh.entries[0][1], Poly::from_ints(&[1, -1]));
        assert_eq!(gh.entries[1][0], Poly::linear(int(0), &a1 * &a2));
        assert_eq!(gh.entries[1][1], Poly::linear(-&b, &a1 + &a2));
        assert!(gh.entries[0][0].is_zero());
    }

    #[test]
    fn nonstandard_flag() {
        assert!(spec(&[], &[int(-3)], int(1)).is_nonstandard());
        assert!(spec(&[], &[int(-1)], int(1)).is_nonstandard());
        assert!(!spec(&[], &[rat(-1, 2)], int(1)).is_nonstandard());
    }
}

//! Monic orthogonal polynomials built from moments.
//!
//! Hankel determinants and the coefficient systems are handled in ball
//! arithmetic, so a determinant is called positive only when its whole
//! enclosure is. Exact moments (terminating weights) stay exact throughout.

use std::fmt;

use num_traits::{One, Signed};

use crate::arith::{Poly, Rational, SeriesValue};
use crate::error::{Error, Result};
use crate::moments::moments_up_to;
use crate::weight::WeightSpec;

/// Sign information extracted from a determinant enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    /// The enclosure contains zero.
    Undetermined,
    /// Not assessed: the weight has some `beta_j <= -1`.
    Skipped,
}

#[derive(Debug, Clone)]
pub struct HankelReport {
    /// `Delta_0 .. Delta_n`, `Delta_k = det(mu_(i+j))_(0 <= i, j <= k)`.
    pub determinants: Vec<SeriesValue>,
    pub signs: Vec<Sign>,
}

impl HankelReport {
    pub fn all_positive(&self) -> bool {
        self.signs.iter().all(|s| *s == Sign::Positive)
    }
}

/// Monic polynomial in `x` with enclosed lower coefficients.
#[derive(Debug, Clone)]
pub struct MonicPoly {
    /// Ascending; the last entry is exactly one.
    pub coefficients: Vec<SeriesValue>,
}

impl MonicPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// The exact polynomial, when every coefficient is exact.
    pub fn to_exact(&self) -> Option<Poly> {
        self.coefficients
            .iter()
            .map(|c| c.exact_value().cloned())
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// Coefficients of the product, each as a ball.
    pub fn product(&self, other: &MonicPoly, precision_bits: u32) -> Vec<SeriesValue> {
        let mut out = vec![SeriesValue::zero(precision_bits); self.degree() + other.degree() + 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        out
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn sign_of(v: &SeriesValue, skip: bool) -> Sign {
    if skip {
        Sign::Skipped
    } else if v.contains_zero() {
        Sign::Undetermined
    } else if v.center().is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn hankel(moments: &[SeriesValue], size: usize) -> Vec<Vec<SeriesValue>> {
    (0..size)
        .map(|i| (0..size).map(|j| moments[i + j].clone()).collect())
        .collect()
}

/// Determinant by elimination with pivots chosen by largest lower bound;
/// once no candidate pivot excludes zero, the remaining block is expanded by minors.
fn determinant(mut a: Vec<Vec<SeriesValue>>, precision_bits: u32) -> SeriesValue {
    let n = a.len();
    let mut det = SeriesValue::exact(Rational::one(), precision_bits);
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].contains_zero())
            .max_by(|&x, &y| a[x][col].abs_lower().cmp(&a[y][col].abs_lower()));
        let Some(pr) = pivot else {
            let rest: Vec<Vec<SeriesValue>> = a[col..].iter().map(|row| row[col..].to_vec()).collect();
            return det.mul(&laplace(&rest, precision_bits));
        };
        if pr != col {
            a.swap(pr, col);
            det = det.neg();
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        for r in col + 1..n {
            let factor = a[r][col].div(&p).expect("pivot excludes zero");
            let (upper, lower) = a.split_at_mut(r);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst = dst.sub(&factor.mul(src));
            }
        }
    }
    det
}

fn laplace(a: &[Vec<SeriesValue>], precision_bits: u32) -> SeriesValue {
    match a.len() {
        0 => SeriesValue::exact(Rational::one(), precision_bits),
        1 => a[0][0].clone(),
        n => {
            let mut acc = SeriesValue::zero(precision_bits);
            for j in 0..n {
                let minor: Vec<Vec<SeriesValue>> = a[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = a[0][j].mul(&laplace(&minor, precision_bits));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// `Delta_0 .. Delta_n` from `mu_0 .. mu_(2n)`.
pub fn hankel_dets(moments: &[SeriesValue], n: usize) -> Result<HankelReport> {
    hankel_dets_flagged(moments, n, false)
}

fn hankel_dets_flagged(moments: &[SeriesValue], n: usize, skip_signs: bool) -> Result<HankelReport> {
    if moments.len() < 2 * n + 1 {
        return Err(Error::InsufficientMoments {
            needed: 2 * n + 1,
            got: moments.len(),
        });
    }
    let precision_bits = moments[0].precision();
    let determinants: Vec<SeriesValue> = (0..=n)
        .map(|k| determinant(hankel(moments, k + 1), precision_bits))
        .collect();
    let signs = determinants.iter().map(|d| sign_of(d, skip_signs)).collect();
    Ok(HankelReport { determinants, signs })
}

/// Hankel determinants of a weight's moments; signs are skipped for nonstandard weights.
pub fn hankel_report(spec: &WeightSpec, n: usize, precision_bits: u32) -> Result<HankelReport> {
    let moments = moments_up_to(spec, 2 * n, precision_bits)?;
    hankel_dets_flagged(&moments, n, spec.is_nonstandard())
}

/// Fails with `NonstandardParameters` where positivity is not assessed.
pub fn positive_definite(spec: &WeightSpec, n: usize, precision_bits: u32) -> Result<bool> {
    if spec.is_nonstandard() {
        return Err(Error::NonstandardParameters);
    }
    Ok(hankel_report(spec, n, precision_bits)?.all_positive())
}

/// Solves `H a = -b` with `H = (mu_(i+j))`, `b_i = mu_(i+n)` for the lower coefficients.
pub fn monic_from_moments(moments: &[SeriesValue], n: usize) -> Result<MonicPoly> {
    if moments.len() < 2 * n {
        return Err(Error::InsufficientMoments {
            needed: 2 * n,
            got: moments.len(),
        });
    }
    let precision_bits = moments.first().map_or(64, |m| m.precision());
    let one = SeriesValue::exact(Rational::one(), precision_bits);
    if n == 0 {
        return Ok(MonicPoly { coefficients: vec![one] });
    }
    let mut a = hankel(moments, n);
    let mut rhs: Vec<SeriesValue> = (0..n).map(|i| moments[i + n].neg()).collect();
    for col in 0..n {
        let pr = (col..n)
            .filter(|&r| !a[r][col].contains_zero())
            .max_by(|&x, &y| a[x][col].abs_lower().cmp(&a[y][col].abs_lower()))
            .ok_or(Error::SingularHankel(n - 1))?;
        a.swap(pr, col);
        rhs.swap(pr, col);
        let p = a[col][col].clone();
        for r in col + 1..n {
            let factor = a[r][col].div(&p)?;
            let (upper, lower) = a.split_at_mut(r);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *dst = dst.sub(&factor.mul(src));
            }
            rhs[r] = rhs[r].sub(&factor.mul(&rhs[col]));
        }
    }
    let mut x = vec![SeriesValue::zero(precision_bits); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for k in i + 1..n {
            acc = acc.sub(&a[i][k].mul(&x[k]));
        }
        x[i] = acc.div(&a[i][i]).map_err(|_| Error::SingularHankel(n - 1))?;
    }
    x.push(one);
    Ok(MonicPoly { coefficients: x })
}

pub fn monic_orthogonal(spec: &WeightSpec, n: usize, precision_bits: u32) -> Result<MonicPoly> {
    let moments = moments_up_to(spec, (2 * n).saturating_sub(1), precision_bits)?;
    monic_from_moments(&moments, n)
}

/// `L(Pi_n Pi_m) = sum_k [x^k](Pi_n Pi_m) mu_k`.
pub fn orthogonality_from_moments(
    moments: &[SeriesValue],
    n: usize,
    m: usize,
) -> Result<SeriesValue> {
    let needed = (2 * n.max(m)).max(n + m + 1);
    if moments.len() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            got: moments.len(),
        });
    }
    let precision_bits = moments[0].precision();
    let pn = monic_from_moments(moments, n)?;
    let pm = monic_from_moments(moments, m)?;
    let prod = pn.product(&pm, precision_bits);
    Ok(prod
        .iter()
        .zip(moments)
        .fold(SeriesValue::zero(precision_bits), |acc, (a, mu)| acc.add(&a.mul(mu))))
}

pub fn orthogonality_check(
    spec: &WeightSpec,
    n: usize,
    m: usize,
    precision_bits: u32,
) -> Result<SeriesValue> {
    let top = (2 * n.max(m)).max(n + m + 1) - 1;
    let moments = moments_up_to(spec, top, precision_bits)?;
    orthogonality_from_moments(&moments, n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::families::{hahn_spec, Family};

    fn charlier() -> WeightSpec {
        WeightSpec::new(vec![], vec![], rat(1, 2))
    }

    #[test]
    fn charlier_polynomials() {
        let c = rat(1, 2);
        let p0 = monic_orthogonal(&charlier(), 0, 128).unwrap();
        assert_eq!(p0.to_exact(), Some(Poly::one()));
        let p1 = monic_orthogonal(&charlier(), 1, 128).unwrap();
        assert!(p1.coefficients[0].contains(&-c.clone()));
        let p2 = monic_orthogonal(&charlier(), 2, 128).unwrap();
        // x^2 - (2c + 1) x + c^2
        assert!(p2.coefficients[0].contains(&(&c * &c)));
        assert!(p2.coefficients[1].contains(&-(int(2) * &c + int(1))));
        assert!(p2.coefficients[2].is_exact());
    }

    #[test]
    fn charlier_hankel() {
        let rep = hankel_report(&charlier(), 1, 128).unwrap();
        let mu = moments_up_to(&charlier(), 0, 128).unwrap();
        assert!(rep.determinants[0].overlaps(&mu[0]));
        // Delta_1 = c e^(2c) = e / 2
        let e = crate::arith::pfq_eval(&[], &[], &int(1), 128).unwrap();
        assert!(rep.determinants[1].overlaps(&e.scale(&rat(1, 2))));
        assert!(rep.all_positive());
    }

    #[test]
    fn charlier_orthogonality() {
        let k0 = orthogonality_check(&charlier(), 0, 0, 128).unwrap();
        let mu0 = moments_up_to(&charlier(), 0, 128).unwrap();
        assert!(k0.overlaps(&mu0[0]));
        for (n, m) in [(1, 0), (2, 1), (2, 0), (3, 2)] {
            let v = orthogonality_check(&charlier(), n, m, 128).unwrap();
            assert!(v.contains_zero(), "({n}, {m})");
        }
    }

    #[test]
    fn terminating_hahn_is_exact() {
        let spec = hahn_spec(&int(0), &int(0), 4);
        let rep = hankel_report(&spec, 3, 64).unwrap();
        assert!(rep.determinants.iter().all(|d| d.is_exact()));
        let v = orthogonality_check(&spec, 3, 1, 64).unwrap();
        assert_eq!(v.exact_value(), Some(&int(0)));
    }

    #[test]
    fn nonstandard_positivity_is_refused() {
        let spec = hahn_spec(&int(0), &int(0), 4);
        assert!(matches!(positive_definite(&spec, 2, 64), Err(Error::NonstandardParameters)));
        let rep = hankel_report(&spec, 2, 64).unwrap();
        assert!(rep.signs.iter().all(|s| *s == Sign::Skipped));
        let gm = Family::GenMeixner.build(&Family::GenMeixner.sample_params()).unwrap();
        assert!(positive_definite(&gm.spec, 3, 128).unwrap());
    }

    #[test]
    fn insufficient_moments() {
        let mu = moments_up_to(&charlier(), 2, 64).unwrap();
        assert!(matches!(hankel_dets(&mu, 2), Err(Error::InsufficientMoments { needed: 5, got: 3 })));
    }

    #[test]
    fn singular_hankel_is_reported() {
        // a two-point weight has Delta_2 = 0, so Pi_3 cannot be formed
        let spec = WeightSpec::new(vec![int(-1)], vec![], int(-1));
        assert!(matches!(monic_orthogonal(&spec, 3, 64), Err(Error::SingularHankel(_))));
    }
}

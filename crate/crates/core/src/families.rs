//! The named families, their parameter domains, and family-specific closed forms.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::combinatorics::{pochhammer, stirling2};
use crate::arith::rational::{binomial, factorial, Rational};
use crate::arith::{Poly, SeriesValue};
use crate::error::{Error, Result};
use crate::transforms::{exp_minus_one_slice, truncated_powers, EgfComparison, TaylorSlice};
use crate::weight::{classify, RegimeClass, WeightSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Charlier,
    Meixner,
    Krawtchouk,
    GenCharlier,
    GenMeixner,
    GenKrawtchouk,
    GenHahnI,
    GenHahnII,
    Hahn,
}

/// One named parameter and the domain it must lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamInfo {
    pub name: &'static str,
    pub domain: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub family: Family,
    pub params: &'static [ParamInfo],
    pub p: usize,
    pub q: usize,
    pub regime: RegimeClass,
}

/// Raw parameters as given on the command line: `alpha` and `beta` lists,
/// the point `c` (the success probability for Krawtchouk) and `N`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub c: Option<Rational>,
    pub n: Option<u64>,
}

/// A built family: `rho_family(x) = prefactor * rho(x; spec)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: Family,
    pub spec: WeightSpec,
    pub prefactor: Rational,
}

impl FamilyInstance {
    /// Rescales a value computed from `spec` to the family's normalization.
    pub fn rescale(&self, value: &SeriesValue) -> SeriesValue {
        if self.prefactor.is_one() {
            value.clone()
        } else {
            value.scale(&self.prefactor)
        }
    }
}

const C: ParamInfo = ParamInfo { name: "c", domain: "c > 0" };
const C_UNIT: ParamInfo = ParamInfo { name: "c", domain: "0 < c < 1" };
const ALPHA: ParamInfo = ParamInfo { name: "alpha", domain: "alpha > 0" };
const BETA: ParamInfo = ParamInfo { name: "beta", domain: "beta > -1" };
const N: ParamInfo = ParamInfo { name: "N", domain: "N >= 0 integer" };

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Charlier,
        Family::Meixner,
        Family::Krawtchouk,
        Family::GenCharlier,
        Family::GenMeixner,
        Family::GenKrawtchouk,
        Family::GenHahnI,
        Family::GenHahnII,
        Family::Hahn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Charlier => "charlier",
            Family::Meixner => "meixner",
            Family::Krawtchouk => "krawtchouk",
            Family::GenCharlier => "gen-charlier",
            Family::GenMeixner => "gen-meixner",
            Family::GenKrawtchouk => "gen-krawtchouk",
            Family::GenHahnI => "gen-hahn-1",
            Family::GenHahnII => "gen-hahn-2",
            Family::Hahn => "hahn",
        }
    }

    pub fn descriptor(self) -> FamilyDescriptor {
        let (params, p, q): (&'static [ParamInfo], usize, usize) = match self {
            Family::Charlier => (&[C], 0, 0),
            Family::Meixner => (&[ALPHA, C_UNIT], 1, 0),
            Family::Krawtchouk => (
                &[ParamInfo { name: "c", domain: "0 < c < 1 (success probability)" }, N],
                1,
                0,
            ),
            Family::GenCharlier => (&[BETA, C], 0, 1),
            Family::GenMeixner => (&[ALPHA, BETA, C], 1, 1),
            Family::GenKrawtchouk => (
                &[ALPHA, N, ParamInfo { name: "c", domain: "c < 0" }],
                2,
                0,
            ),
            Family::GenHahnI => (
                &[ParamInfo { name: "alpha", domain: "alpha1, alpha2 > 0" }, BETA, C_UNIT],
                2,
                1,
            ),
            Family::GenHahnII => (
                &[
                    ParamInfo { name: "alpha", domain: "alpha1, alpha2, alpha3 > 0" },
                    ParamInfo { name: "beta", domain: "beta1, beta2 > -1" },
                    C_UNIT,
                ],
                3,
                2,
            ),
            Family::Hahn => (
                &[
                    ParamInfo { name: "alpha", domain: "alpha not in [-N, -1]" },
                    ParamInfo { name: "beta", domain: "beta not in [-N, -1]" },
                    N,
                ],
                2,
                1,
            ),
        };
        let probe = WeightSpec::new(vec![Rational::zero(); p], vec![Rational::zero(); q], Rational::zero());
        FamilyDescriptor {
            family: self,
            params,
            p,
            q,
            regime: classify(&probe),
        }
    }

    /// Parameter values used in examples, tests and the verification suite.
    pub fn sample_params(self) -> FamilyParams {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let (alpha, beta, c, n) = match self {
            Family::Charlier => (vec![], vec![], Some(r(1, 2)), None),
            Family::Meixner => (vec![r(1, 2)], vec![], Some(r(1, 4)), None),
            Family::Krawtchouk => (vec![], vec![], Some(r(1, 2)), Some(4)),
            Family::GenCharlier => (vec![], vec![r(1, 2)], Some(r(1, 3)), None),
            Family::GenMeixner => (vec![r(1, 2)], vec![r(1, 2)], Some(r(1, 4)), None),
            Family::GenKrawtchouk => (vec![r(1, 2)], vec![], Some(r(-1, 3)), Some(4)),
            Family::GenHahnI => (vec![r(1, 2), r(1, 3)], vec![r(1, 2)], Some(r(1, 4)), None),
            Family::GenHahnII => (
                vec![r(1, 2), r(1, 3), r(1, 4)],
                vec![r(1, 2), r(1, 3)],
                Some(r(1, 4)),
                None,
            ),
            Family::Hahn => (vec![r(0, 1)], vec![r(0, 1)], None, Some(4)),
        };
        FamilyParams { alpha, beta, c, n }
    }

    /// Validates parameters and builds the weight.
    pub fn build(self, params: &FamilyParams) -> Result<FamilyInstance> {
        let name = self.name();
        let want = |label: &str, got: usize, expected: usize| -> Result<()> {
            if got != expected {
                return Err(Error::InvalidParameter(format!(
                    "{name} takes {expected} {label} value(s), got {got}"
                )));
            }
            Ok(())
        };
        let (n_alpha, n_beta, needs_c, needs_n) = match self {
            Family::Charlier => (0, 0, true, false),
            Family::Meixner => (1, 0, true, false),
            Family::Krawtchouk => (0, 0, true, true),
            Family::GenCharlier => (0, 1, true, false),
            Family::GenMeixner => (1, 1, true, false),
            Family::GenKrawtchouk => (1, 0, true, true),
            Family::GenHahnI => (2, 1, true, false),
            Family::GenHahnII => (3, 2, true, false),
            Family::Hahn => (1, 1, false, true),
        };
        want("alpha", params.alpha.len(), n_alpha)?;
        want("beta", params.beta.len(), n_beta)?;
        let c = match (&params.c, needs_c) {
            (Some(c), true) => c.clone(),
            (None, true) => return Err(Error::InvalidParameter(format!("{name} requires c"))),
            (Some(_), false) => {
                return Err(Error::InvalidParameter(format!("{name} does not take c")))
            }
            (None, false) => Rational::one(),
        };
        let big_n = match (params.n, needs_n) {
            (Some(n), true) => n,
            (None, true) => return Err(Error::InvalidParameter(format!("{name} requires N"))),
            (Some(_), false) => {
                return Err(Error::InvalidParameter(format!("{name} does not take N")))
            }
            (None, false) => 0,
        };

        let violation = |what: &str| Error::DomainViolation(format!("{name}: {what}"));
        let zero = Rational::zero();
        let one = Rational::one();
        let all_pos = |v: &[Rational]| v.iter().all(|a| a.is_positive());
        let all_above_m1 = |v: &[Rational]| v.iter().all(|b| *b > -one.clone());
        let plain = |spec: WeightSpec| FamilyInstance {
            family: self,
            spec,
            prefactor: Rational::one(),
        };

        match self {
            Family::Charlier => {
                if !c.is_positive() {
                    return Err(violation("requires c > 0"));
                }
                Ok(plain(WeightSpec::new(vec![], vec![], c)))
            }
            Family::Meixner => {
                if !(c > zero && c < one) || !all_pos(&params.alpha) {
                    return Err(violation("requires 0 < c < 1 and alpha > 0"));
                }
                Ok(plain(WeightSpec::new(params.alpha.clone(), vec![], c)))
            }
            Family::Krawtchouk => {
                let (spec, prefactor) = krawtchouk_reduce(&c, big_n)?;
                Ok(FamilyInstance {
                    family: self,
                    spec,
                    prefactor,
                })
            }
            Family::GenCharlier => {
                if !c.is_positive() || !all_above_m1(&params.beta) {
                    return Err(violation("requires c > 0 and beta > -1"));
                }
                Ok(plain(WeightSpec::new(vec![], params.beta.clone(), c)))
            }
            Family::GenMeixner => {
                if !c.is_positive() || !all_pos(&params.alpha) || !all_above_m1(&params.beta) {
                    return Err(violation("requires c > 0, alpha > 0 and beta > -1"));
                }
                Ok(plain(WeightSpec::new(params.alpha.clone(), params.beta.clone(), c)))
            }
            Family::GenKrawtchouk => {
                if !c.is_negative() || !all_pos(&params.alpha) {
                    return Err(violation("requires c < 0 and alpha > 0"));
                }
                let alphas = vec![params.alpha[0].clone(), -Rational::from_integer(big_n.into())];
                Ok(plain(WeightSpec::new(alphas, vec![], c)))
            }
            Family::GenHahnI | Family::GenHahnII => {
                if !(c > zero && c < one) || !all_pos(&params.alpha) || !all_above_m1(&params.beta) {
                    return Err(violation("requires 0 < c < 1, alpha > 0 and beta > -1"));
                }
                Ok(plain(WeightSpec::new(params.alpha.clone(), params.beta.clone(), c)))
            }
            Family::Hahn => {
                let (alpha, beta) = (&params.alpha[0], &params.beta[0]);
                check_hahn_domain(alpha, beta, big_n)?;
                Ok(FamilyInstance {
                    family: self,
                    spec: hahn_spec(alpha, beta, big_n),
                    prefactor: hahn_prefactor(beta, big_n),
                })
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "family",
                input: s.to_string(),
            })
    }
}

/// `sum_k {n, k} c^k`.
pub fn bell_poly(n: usize) -> Poly {
    Poly::new((0..=n).map(|k| stirling2(n, k)).collect())
}

/// `sum_k {n, k} (alpha)_k c^k (1 - c)^(n - k)`, expanded in `c`.
pub fn meixner_poly(n: usize, alpha: &Rational) -> Poly {
    let one_minus_c = Poly::linear(Rational::one(), -Rational::one());
    let mut out = Poly::zero();
    for k in 0..=n {
        let coeff = stirling2(n, k) * pochhammer(alpha, k);
        if coeff.is_zero() {
            continue;
        }
        let mut ck = vec![Rational::zero(); k + 1];
        ck[k] = coeff;
        out = out + Poly::new(ck) * one_minus_c.pow((n - k) as u32);
    }
    out
}

/// `sum_k {n, k} C(N, k) k! p^k`: the Krawtchouk moments as polynomials in `p`.
pub fn krawtchouk_moment_poly(n: usize, big_n: u64) -> Poly {
    Poly::new(
        (0..=n)
            .map(|k| {
                stirling2(n, k)
                    * Rational::from_integer(binomial(big_n, k as u64) * factorial(k as u64))
            })
            .collect(),
    )
}

/// Krawtchouk weight as `(1 - p)^N * rho(x; alpha = (-N), c = p / (p - 1))`.
pub fn krawtchouk_reduce(p: &Rational, big_n: u64) -> Result<(WeightSpec, Rational)> {
    let one = Rational::one();
    if !(p.is_positive() && *p < one) {
        return Err(Error::DomainViolation(format!(
            "krawtchouk: requires 0 < p < 1, got {p}"
        )));
    }
    let c = p / (p - &one);
    let spec = WeightSpec::new(vec![-Rational::from_integer(big_n.into())], vec![], c);
    let prefactor = num_traits::pow(&one - p, big_n as usize);
    Ok((spec, prefactor))
}

fn check_hahn_domain(alpha: &Rational, beta: &Rational, big_n: u64) -> Result<()> {
    let lo = -Rational::from_integer(big_n.into());
    let hi = -Rational::one();
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if big_n >= 1 && *v >= lo && *v <= hi {
            return Err(Error::DomainViolation(format!(
                "hahn: {name} = {v} lies in [-{big_n}, -1]"
            )));
        }
    }
    Ok(())
}

/// `rho(x; alpha = (alpha + 1, -N), beta = (-N - beta - 1), c = 1)`.
pub fn hahn_spec(alpha: &Rational, beta: &Rational, big_n: u64) -> WeightSpec {
    let n = Rational::from_integer(big_n.into());
    let one = Rational::one();
    WeightSpec::new(
        vec![alpha + &one, -n.clone()],
        vec![-n - beta - one],
        Rational::one(),
    )
}

/// `(beta + 1)_N / N!`.
pub fn hahn_prefactor(beta: &Rational, big_n: u64) -> Rational {
    pochhammer(&(beta + Rational::one()), big_n as usize)
        / Rational::from_integer(factorial(big_n))
}

/// `sum_k {n, k} (alpha + 1)_k (alpha + beta + 2 + k)_(N - k) / (N - k)!`.
pub fn hahn_moment(n: usize, alpha: &Rational, beta: &Rational, big_n: u64) -> Result<Rational> {
    check_hahn_domain(alpha, beta, big_n)?;
    let one = Rational::one();
    let two = &one + &one;
    let mut sum = Rational::zero();
    for k in 0..=n.min(big_n as usize) {
        let rest = big_n as usize - k;
        let k_r = Rational::from_integer(k.into());
        sum += stirling2(n, k)
            * pochhammer(&(alpha + &one), k)
            * pochhammer(&(alpha + beta + &two + k_r), rest)
            / Rational::from_integer(factorial(rest as u64));
    }
    Ok(sum)
}

/// Compares `sum_n mu_n^H w^n / n!` with
/// `((alpha + beta + 2)_N / N!) 2F1[-N, alpha + 1; alpha + beta + 2; 1 - e^w]`,
/// both expanded exactly to `w^order`.
pub fn hahn_egf_check(
    alpha: &Rational,
    beta: &Rational,
    big_n: u64,
    order: usize,
    precision_bits: u32,
) -> Result<EgfComparison> {
    check_hahn_domain(alpha, beta, big_n)?;
    let one = Rational::one();
    let ab2 = alpha + beta + &one + &one;
    let left = Poly::new(
        (0..=order)
            .map(|n| {
                hahn_moment(n, alpha, beta, big_n)
                    .map(|m| m / Rational::from_integer(factorial(n as u64)))
            })
            .collect::<Result<Vec<_>>>()?,
    );

    // 1 - e^w = -(e^w - 1)
    let u = -&exp_minus_one_slice(&one, order);
    let powers = truncated_powers(&u, order);
    let mut f = Poly::zero();
    for (k, power) in powers.iter().enumerate().take(big_n as usize + 1) {
        let coeff = pochhammer(&-Rational::from_integer(big_n.into()), k)
            * pochhammer(&(alpha + &one), k)
            / (pochhammer(&ab2, k) * Rational::from_integer(factorial(k as u64)));
        f = f + power.scale(&coeff);
    }
    let right = f.scale(&(pochhammer(&ab2, big_n as usize) / Rational::from_integer(factorial(big_n))));

    let slice = |p: &Poly| TaylorSlice {
        coefficients: (0..=order)
            .map(|k| SeriesValue::exact(p.coeff(k), precision_bits))
            .collect(),
    };
    Ok(EgfComparison::new(slice(&left), slice(&right)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use crate::moments::poly_vectors;

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("laguerre".parse::<Family>().is_err());
    }

    #[test]
    fn descriptor_regimes() {
        let expect = [
            (Family::Charlier, (1, 0, 0)),
            (Family::Meixner, (1, -1, 0)),
            (Family::Krawtchouk, (1, -1, 0)),
            (Family::GenCharlier, (1, 0, 1)),
            (Family::GenMeixner, (1, 0, 1)),
            (Family::GenKrawtchouk, (0, 1, 1)),
            (Family::GenHahnI, (1, -1, 1)),
            (Family::GenHahnII, (1, -1, 2)),
            (Family::Hahn, (1, -1, 1)),
        ];
        for (f, (l, t, x)) in expect {
            let d = f.descriptor();
            assert_eq!((d.regime.lambda, d.regime.tau, d.regime.xi), (l, t, x), "{f}");
            let built = f.build(&f.sample_params()).unwrap();
            assert_eq!((built.spec.p(), built.spec.q()), (d.p, d.q), "{f}");
            assert_eq!(classify(&built.spec), d.regime, "{f}");
        }
    }

    #[test]
    fn domain_checks() {
        let mut p = Family::Meixner.sample_params();
        p.c = Some(int(1));
        assert!(matches!(Family::Meixner.build(&p), Err(Error::DomainViolation(_))));
        let mut p = Family::GenKrawtchouk.sample_params();
        p.c = Some(rat(1, 3));
        assert!(matches!(Family::GenKrawtchouk.build(&p), Err(Error::DomainViolation(_))));
        let mut p = Family::Hahn.sample_params();
        p.alpha = vec![rat(-3, 2)];
        assert!(matches!(Family::Hahn.build(&p), Err(Error::DomainViolation(_))));
        let mut p = Family::Charlier.sample_params();
        p.alpha = vec![int(1)];
        assert!(matches!(Family::Charlier.build(&p), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell_poly(0), Poly::one());
        assert_eq!(bell_poly(2), Poly::from_ints(&[0, 1, 1]));
        assert_eq!(bell_poly(3), Poly::from_ints(&[0, 1, 3, 1]));
    }

    #[test]
    fn bell_matches_recurrence() {
        let spec = WeightSpec::new(vec![], vec![], rat(1, 2));
        for (n, v) in poly_vectors(&spec, 12).iter().enumerate() {
            assert_eq!(v.entries[0], bell_poly(n));
        }
    }

    #[test]
    fn meixner_examples() {
        let a = rat(2, 3);
        assert_eq!(meixner_poly(0, &a), Poly::one());
        assert_eq!(meixner_poly(1, &a), Poly::new(vec![int(0), a.clone()]));
        assert_eq!(
            meixner_poly(2, &a),
            Poly::new(vec![int(0), a.clone(), &a * &a])
        );
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk_moment_poly(0, 3), Poly::one());
        assert_eq!(krawtchouk_moment_poly(1, 3), Poly::from_ints(&[0, 3]));
        assert_eq!(krawtchouk_moment_poly(2, 3), Poly::from_ints(&[0, 3, 6]));
        let (spec, pre) = krawtchouk_reduce(&rat(1, 2), 2).unwrap();
        assert_eq!(spec.c, int(-1));
        assert_eq!(spec.alphas, vec![int(-2)]);
        assert_eq!(pre, rat(1, 4));
        assert!(krawtchouk_reduce(&int(1), 2).is_err());
    }

    #[test]
    fn hahn_examples() {
        let z = int(0);
        assert_eq!(hahn_moment(0, &z, &z, 2).unwrap(), int(3));
        assert_eq!(hahn_moment(1, &z, &z, 2).unwrap(), int(3));
        let (a, b) = (rat(1, 2), rat(2, 3));
        assert_eq!(
            hahn_moment(0, &a, &b, 3).unwrap(),
            pochhammer(&(&a + &b + int(2)), 3) / int(6)
        );
    }

    #[test]
    fn hahn_egf_examples() {
        let z = int(0);
        let cmp = hahn_egf_check(&z, &z, 2, 4, 256).unwrap();
        assert!(cmp.max_deviation.is_zero());
        let cmp = hahn_egf_check(&rat(1, 2), &rat(1, 3), 0, 5, 64).unwrap();
        for (k, v) in cmp.left.coefficients.iter().enumerate() {
            let expected = if k == 0 { int(1) } else { int(0) };
            assert_eq!(v.exact_value(), Some(&expected));
        }
        assert!(cmp.max_deviation.is_zero());
    }
}

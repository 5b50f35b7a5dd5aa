//! Randomized invariants.

mod common;

use common::*;
use hypermoment_core::arith::{pfq_eval, pochhammer, stirling2, Poly};
use hypermoment_core::families::{bell_poly, meixner_poly};
use hypermoment_core::moments::poly_vectors;
use hypermoment_core::weight::{companion_matrix, pearson, sigma_coeffs, weight_at};
use hypermoment_core::{Rational, WeightSpec};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..15, 16i64..32).prop_map(|(n, d)| rat(n, d))
}

fn spec_strategy() -> impl Strategy<Value = WeightSpec> {
    (
        prop::collection::vec(positive_rational(), 0..4),
        prop::collection::vec(positive_rational(), 0..3),
        unit_rational(),
    )
        .prop_map(|(a, b, c)| WeightSpec::new(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pochhammer_splits(a in small_rational(), m in 0usize..=10, n in 0usize..=10) {
        prop_assert_eq!(
            pochhammer(&a, m + n),
            pochhammer(&a, m) * pochhammer(&(&a + int(m as i64)), n)
        );
        prop_assert_eq!(pochhammer(&a, n), rising(&a, n));
    }

    #[test]
    fn falling_factorial_inversion(x in 0i64..=12, n in 0usize..=8) {
        // x^n = sum_k {n,k} (x - k + 1)_k
        let xr = int(x);
        let rhs = (0..=n).fold(Rational::from_integer(0.into()), |acc, k| {
            acc + stirling2(n, k) * pochhammer(&(&xr - int(k as i64) + int(1)), k)
        });
        prop_assert_eq!(num_traits::pow(xr, n), rhs);
    }

    #[test]
    fn pochhammer_ratio_is_a_simple_pole(n in 1i64..60, d in 1i64..9, x in 0usize..=50) {
        let z = rat(-n, d);
        let lhs = pochhammer(&-&z, x) / pochhammer(&(int(1) - &z), x);
        prop_assert_eq!(lhs, &z / (&z - int(x as i64)));
    }

    #[test]
    fn pfq_precision_nesting(
        a in prop::collection::vec(positive_rational(), 0..3),
        b in prop::collection::vec(positive_rational(), 0..3),
        c in unit_rational(),
    ) {
        prop_assume!(a.len() <= b.len() + 1);
        let coarse = pfq_eval(&a, &b, &c, 64).unwrap();
        let fine = pfq_eval(&a, &b, &c, 192).unwrap();
        let (fc, fr) = (fine.center(), fine.radius());
        let (cc, cr) = (coarse.center(), coarse.radius());
        prop_assert!(&fc - &fr >= &cc - &cr && &fc + &fr <= &cc + &cr);
    }

    #[test]
    fn sigmas_are_linear_in_c(spec in spec_strategy()) {
        for s in sigma_coeffs(&spec).sigmas {
            prop_assert!(s.degree().unwrap_or(0) <= 1);
        }
    }

    #[test]
    fn pearson_identity(spec in spec_strategy(), x in 0u64..60) {
        let pp = pearson(&spec);
        let xr = int(x as i64);
        let lhs = pp.phi.eval(&(&xr + int(1))) * weight_at(&spec, x + 1).unwrap();
        prop_assert_eq!(lhs, pp.eta.eval(&xr) * weight_at(&spec, x).unwrap());
    }

    #[test]
    fn first_vector_step_is_companion_row(spec in spec_strategy()) {
        // P_1 = M^T P_0, i.e. the first column of M^T
        let v = poly_vectors(&spec, 1);
        let m = companion_matrix(&spec);
        let unit: Vec<Poly> = (0..m.dim()).map(|i| if i == 0 { Poly::one() } else { Poly::zero() }).collect();
        prop_assert_eq!(&v[1].entries, &m.transpose_apply(&unit));
    }

    #[test]
    fn meixner_closed_form(n in 0usize..=12, a in small_rational()) {
        let spec = WeightSpec::new(vec![a.clone()], vec![], rat(1, 3));
        let v = poly_vectors(&spec, n);
        prop_assert_eq!(&v[n].entries[0], &meixner_poly(n, &a));
    }

    #[test]
    fn tau_zero_degree_bound(spec in spec_strategy(), n in 0usize..8) {
        let spec = WeightSpec::new(spec.alphas.into_iter().take(1).collect(), spec.betas, spec.c);
        if spec.p() <= spec.q() {
            for e in &poly_vectors(&spec, n)[n].entries {
                prop_assert!(e.degree().unwrap_or(0) <= n);
            }
        }
    }
}

#[test]
fn bell_degree_is_exact() {
    let spec = WeightSpec::new(vec![], vec![], rat(1, 2));
    for (n, v) in poly_vectors(&spec, 12).iter().enumerate() {
        assert_eq!(v.entries[0], bell_poly(n));
        assert_eq!(v.entries[0].degree(), Some(n));
    }
}

//! The identity suite behind `hypermoment verify`.

use hypermoment_core::arith::rational::pow2;
use hypermoment_core::families::{
    bell_poly, hahn_egf_check, hahn_moment, krawtchouk_moment_poly, meixner_poly, Family,
};
use hypermoment_core::moments::poly_vectors;
use hypermoment_core::orthopoly::{hankel_dets, orthogonality_from_moments};
use hypermoment_core::transforms::{
    egf_compose_check, stieltjes_eval, stieltjes_oracle, stieltjes_p_identity, StieltjesFamily,
};
use hypermoment_core::weight::{annihilation_sum, pearson, weight_at};
use hypermoment_core::moments::Route;
use hypermoment_core::{Error, Rational, Result, SeriesValue};
use num_traits::{Signed, Zero};

use crate::args::{Common, Target};
use crate::commands::{agreement, route_values};
use crate::report::{bound, CheckRow, Report, SpecReport};

struct Suite {
    rows: Vec<CheckRow>,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: Result<std::result::Result<String, String>>) {
        let (passed, detail) = match outcome {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        self.rows.push(CheckRow {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

type Outcome = Result<std::result::Result<String, String>>;

fn verdict(ok: bool, detail: String) -> Outcome {
    Ok(if ok { Ok(detail) } else { Err(detail) })
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn verify(args: &Common) -> Result<Report> {
    let t = args.target()?;
    let bits = args.precision;
    // relative tolerance for identities whose two sides are computed differently
    let tol = pow2(-(bits as i64) / 3);
    let routes = route_values(&t, 10, bits)?;
    let mut suite = Suite { rows: Vec::new() };

    suite.record("moment routes agree, n <= 10", route_check(&t, &routes, &tol));
    suite.record("Pearson equation, x <= 100", pearson_check(&t));
    suite.record("annihilation sum vanishes", {
        annihilation_sum(&t.spec, bits).and_then(|s| {
            verdict(s.contains_zero(), format!("|sum| <= {}", bound(&s.abs_upper())))
        })
    });
    suite.record("generating function composition, order <= 8", {
        egf_compose_check(&t.spec, args.order.min(8), bits).and_then(|c| {
            verdict(
                c.passes(&tol),
                format!("max relative deviation {}", bound(&c.max_relative_deviation)),
            )
        })
    });
    suite.record("Stieltjes closed form equals direct sum", stieltjes_check(&t, bits));
    family_checks(&t, bits, &tol, &mut suite);
    orthogonality_checks(&t, &routes, bits, &tol, &mut suite);

    let passed = suite.rows.iter().all(|c| c.passed);
    Ok(Report::Verify {
        spec: SpecReport::new(&t),
        precision_bits: bits,
        checks: suite.rows,
        passed,
    })
}

fn route_check(t: &Target, routes: &[Vec<(Route, SeriesValue)>], tol: &Rational) -> Outcome {
    let terminating = t.spec.support_end()?.is_some();
    let mut worst = Rational::zero();
    for (n, row) in routes.iter().enumerate() {
        let values: Vec<SeriesValue> = row.iter().map(|(_, v)| v.clone()).collect();
        let (dev, ok) = agreement(&values);
        let scale = values[0].center().abs();
        let rel = if scale.is_zero() { dev.clone() } else { &dev / &scale };
        let exact_match = values
            .iter()
            .all(|v| v.is_exact() && v.exact_value() == values[0].exact_value());
        if terminating && !exact_match {
            return verdict(false, format!("n = {n}: terminating routes differ"));
        }
        if !ok || rel > *tol {
            return verdict(false, format!("n = {n}: deviation {}", bound(&dev)));
        }
        worst = worst.max(rel);
    }
    verdict(true, format!("max relative deviation {}", bound(&worst)))
}

fn pearson_check(t: &Target) -> Outcome {
    let pp = pearson(&t.spec);
    for x in 0..=100u64 {
        let xr = Rational::from_integer(x.into());
        let next = Rational::from_integer((x + 1).into());
        let lhs = pp.phi.eval(&next) * weight_at(&t.spec, x + 1)? - pp.phi.eval(&xr) * weight_at(&t.spec, x)?;
        let rhs = (pp.eta.eval(&xr) - pp.phi.eval(&xr)) * weight_at(&t.spec, x)?;
        if lhs != rhs {
            return verdict(false, format!("fails at x = {x}"));
        }
    }
    verdict(true, "exact".into())
}

fn stieltjes_check(t: &Target, bits: u32) -> Outcome {
    let mut worst = Rational::zero();
    for z in [r(-3, 2), r(-5, 1), r(-1, 2)] {
        let a = stieltjes_eval(&t.spec, &z, bits)?;
        let b = stieltjes_oracle(&t.spec, &z, bits)?;
        if !a.overlaps(&b) {
            return verdict(false, format!("z = {z}: {a} vs {b}"));
        }
        worst = worst.max(a.deviation(&b));
    }
    verdict(true, format!("z in {{-3/2, -5, -1/2}}, max deviation {}", bound(&worst)))
}

fn family_checks(t: &Target, bits: u32, tol: &Rational, suite: &mut Suite) {
    let Some(family) = t.family else { return };
    let p = &t.params;
    match family {
        Family::Charlier => suite.record("Bell polynomials, n <= 12", {
            let ok = poly_vectors(&t.spec, 12).iter().enumerate().all(|(n, v)| v.entries[0] == bell_poly(n));
            verdict(ok, "exact".into())
        }),
        Family::Meixner => suite.record("Meixner closed form, n <= 12", {
            let ok = poly_vectors(&t.spec, 12)
                .iter()
                .enumerate()
                .all(|(n, v)| v.entries[0] == meixner_poly(n, &p.alpha[0]));
            verdict(ok, "exact".into())
        }),
        Family::Krawtchouk => suite.record("Krawtchouk moment polynomials, n <= 8", {
            let prob = p.c.clone().expect("krawtchouk has c");
            let big_n = p.n.expect("krawtchouk has N");
            (|| {
                for (n, row) in route_values(t, 8, bits)?.iter().enumerate() {
                    let expected = krawtchouk_moment_poly(n, big_n).eval(&prob);
                    if row.iter().any(|(_, v)| v.exact_value() != Some(&expected)) {
                        return verdict(false, format!("n = {n}"));
                    }
                }
                verdict(true, "exact".into())
            })()
        }),
        Family::Hahn => {
            let (a, b, big_n) = (&p.alpha[0], &p.beta[0], p.n.expect("hahn has N"));
            suite.record("Hahn moment sum, n <= 8", (|| {
                for (n, row) in route_values(t, 8, bits)?.iter().enumerate() {
                    let expected = hahn_moment(n, a, b, big_n)?;
                    if row.iter().any(|(_, v)| v.exact_value() != Some(&expected)) {
                        return verdict(false, format!("n = {n}"));
                    }
                }
                verdict(true, "exact".into())
            })());
            suite.record("Hahn generating function, order <= 6", {
                hahn_egf_check(a, b, big_n, 6, bits).and_then(|c| {
                    verdict(c.passes(tol), format!("max deviation {}", bound(&c.max_deviation)))
                })
            });
        }
        Family::GenCharlier | Family::GenMeixner => {
            let fam = if family == Family::GenCharlier {
                StieltjesFamily::GenCharlier { beta: p.beta[0].clone(), c: t.spec.c.clone() }
            } else {
                StieltjesFamily::GenMeixner {
                    alpha: p.alpha[0].clone(),
                    beta: p.beta[0].clone(),
                    c: t.spec.c.clone(),
                }
            };
            suite.record("closed-form vector Stieltjes transform", (|| {
                let mut used = Vec::new();
                for z in [r(-5, 2), r(-2, 1), r(-7, 3), r(-13, 4)] {
                    match stieltjes_p_identity(&fam, &z, bits) {
                        Ok(chk) => {
                            if !(chk.within_bounds && chk.relative_deviation() <= *tol) {
                                return verdict(false, format!("z = {z}: {} vs {}", chk.lhs, chk.rhs));
                            }
                            used.push(z.to_string());
                        }
                        Err(Error::InvalidParameter(_)) => continue,
                        Err(e) => return Err(e),
                    }
                    if used.len() == 2 {
                        break;
                    }
                }
                verdict(!used.is_empty(), format!("z in {{{}}}", used.join(", ")))
            })());
        }
        Family::GenKrawtchouk | Family::GenHahnI | Family::GenHahnII => {}
    }
}

fn orthogonality_checks(
    t: &Target,
    routes: &[Vec<(Route, SeriesValue)>],
    bits: u32,
    tol: &Rational,
    suite: &mut Suite,
) {
    let moments: Vec<SeriesValue> = routes.iter().map(|r| r[0].1.clone()).collect();
    let support = t.spec.support_end().ok().flatten();
    let top = support.map_or(5, |last| (last as usize).min(5));
    suite.record(&format!("orthogonality, m < n <= {top}"), (|| {
        let mut worst = Rational::zero();
        for n in 1..=top {
            let k = orthogonality_from_moments(&moments, n, n)?;
            for m in 0..n {
                let l = orthogonality_from_moments(&moments, n, m)?;
                let rel = l.abs_upper() / k.abs_lower().max(pow2(-(bits as i64) * 4));
                if !l.contains_zero() || rel > *tol {
                    return verdict(false, format!("L(Pi_{n} Pi_{m}) = {l}"));
                }
                worst = worst.max(rel);
            }
        }
        verdict(true, format!("max |L(Pi_n Pi_m)| / K_n = {}", bound(&worst)))
    })());
    if t.family.is_some() {
        if t.spec.is_nonstandard() {
            suite.record("Hankel positivity", verdict(true, "skipped: some beta <= -1".into()));
        } else {
            suite.record(&format!("Hankel positivity, k <= {top}"), {
                hankel_dets(&moments, top).and_then(|rep| {
                    verdict(rep.all_positive(), format!("{} determinants", rep.determinants.len()))
                })
            });
        }
    }
}

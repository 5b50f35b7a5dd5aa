//! One function per subcommand, each producing a [`Report`].

use hypermoment_core::moments::{
    moment_oracle, moment_sequence, moment_stirling, poly_vectors, Route,
};
use hypermoment_core::orthopoly::{hankel_dets, monic_from_moments, orthogonality_from_moments, Sign};
use hypermoment_core::transforms::{egf_compose_check, egf_moments, stieltjes_eval, stieltjes_oracle};
use hypermoment_core::weight::{companion_matrix, pearson, sigma_coeffs};
use hypermoment_core::{Error, Rational, Result, SeriesValue};
use num_traits::Zero;

use crate::args::{Common, Target};
use crate::report::{
    bound, poly_strings, EgfRow, HankelRow, MomentRow, OrthoRow, PolyRow, Report, RouteValue,
    SigmaInfo, SpecReport, StieltjesInfo, Value,
};

/// Moments in the family's normalization, through every route that applies.
pub fn route_values(t: &Target, n_max: usize, bits: u32) -> Result<Vec<Vec<(Route, SeriesValue)>>> {
    let proposition = match moment_sequence(&t.spec, n_max, bits) {
        Ok(v) => Some(v),
        Err(Error::SingularPrefactor(_)) => None,
        Err(e) => return Err(e),
    };
    (0..=n_max)
        .map(|n| {
            let mut routes = Vec::with_capacity(3);
            if let Some(p) = &proposition {
                routes.push((Route::Proposition, p[n].value.clone()));
            }
            routes.push((Route::Stirling, moment_stirling(&t.spec, n, bits)?.value));
            routes.push((Route::Oracle, moment_oracle(&t.spec, n, bits)?.value));
            Ok(routes
                .into_iter()
                .map(|(r, v)| (r, v.scale(&t.prefactor)))
                .collect())
        })
        .collect()
}

/// Largest pairwise center deviation and whether all enclosures intersect.
pub fn agreement(values: &[SeriesValue]) -> (Rational, bool) {
    let mut max = Rational::zero();
    let mut ok = true;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            max = max.max(a.deviation(b));
            ok &= a.overlaps(b);
        }
    }
    (max, ok)
}

pub fn moments(args: &Common) -> Result<Report> {
    let t = args.target()?;
    let bits = args.precision;
    let range = args.range(0..=4)?;
    let all = route_values(&t, *range.end(), bits)?;
    let rows = range
        .map(|n| {
            let values: Vec<SeriesValue> = all[n].iter().map(|(_, v)| v.clone()).collect();
            let (dev, agree) = agreement(&values);
            MomentRow {
                n,
                routes: all[n]
                    .iter()
                    .map(|(r, v)| RouteValue {
                        route: r.name().to_string(),
                        value: Value::new(v, bits),
                    })
                    .collect(),
                max_deviation: bound(&dev),
                agree,
            }
        })
        .collect();
    Ok(Report::Moments {
        spec: SpecReport::new(&t),
        precision_bits: bits,
        rows,
    })
}

pub fn poly(args: &Common) -> Result<Report> {
    let t = args.symbolic_target()?;
    let range = args.range(0..=4)?;
    let vectors = poly_vectors(&t.spec, *range.end());
    let rows = range
        .map(|n| PolyRow {
            n,
            entries: vectors[n].entries.iter().map(poly_strings).collect(),
        })
        .collect();
    Ok(Report::Poly {
        spec: SpecReport::new(&t),
        rows,
    })
}

pub fn sigma(args: &Common) -> Result<Report> {
    let t = args.symbolic_target()?;
    let pp = pearson(&t.spec);
    let sigma = SigmaInfo {
        sigmas: sigma_coeffs(&t.spec).sigmas.iter().map(poly_strings).collect(),
        companion_matrix: companion_matrix(&t.spec)
            .entries
            .iter()
            .map(|row| row.iter().map(poly_strings).collect())
            .collect(),
        phi: poly_strings(&pp.phi),
        eta: if t.symbolic_c {
            // eta = c prod(x + alpha_i); print the coefficients as multiples of c
            let unit = pearson(&t.spec.at(Rational::from_integer(1.into())));
            unit.eta.coeffs().iter().map(|a| format!("{a} c")).collect()
        } else {
            poly_strings(&pp.eta)
        },
        class_s: pp.class_s,
    };
    Ok(Report::Sigma {
        spec: SpecReport::new(&t),
        sigma,
    })
}

pub fn stieltjes(args: &Common) -> Result<Report> {
    let t = args.target()?;
    let bits = args.precision;
    let z = args.z()?;
    let closed = stieltjes_eval(&t.spec, &z, bits)?.scale(&t.prefactor);
    let direct = stieltjes_oracle(&t.spec, &z, bits)?.scale(&t.prefactor);
    Ok(Report::Stieltjes {
        spec: SpecReport::new(&t),
        precision_bits: bits,
        result: StieltjesInfo {
            z: z.to_string(),
            deviation: bound(&closed.deviation(&direct)),
            agree: closed.overlaps(&direct),
            closed_form: Value::new(&closed, bits),
            direct_sum: Value::new(&direct, bits),
        },
    })
}

pub fn egf(args: &Common) -> Result<Report> {
    let t = args.target()?;
    let bits = args.precision;
    let order = args.order;
    let slice = egf_moments(&t.spec, order, bits)?;
    let cmp = egf_compose_check(&t.spec, order, bits)?;
    let rows = (0..=order)
        .map(|k| EgfRow {
            k,
            moment: Value::new(&slice.coefficients[k].scale(&t.prefactor), bits),
            composite: Value::new(&cmp.left.coefficients[k].scale(&t.prefactor), bits),
            vector_form: Value::new(&cmp.right.coefficients[k].scale(&t.prefactor), bits),
        })
        .collect();
    let agree = cmp.within_bounds;
    Ok(Report::Egf {
        spec: SpecReport::new(&t),
        precision_bits: bits,
        rows,
        max_relative_deviation: bound(&cmp.max_relative_deviation),
        agree,
    })
}

pub fn ortho(args: &Common) -> Result<Report> {
    let t = args.target()?;
    let bits = args.precision;
    let range = args.range(0..=4)?;
    let top = *range.end();
    let moments: Vec<SeriesValue> = route_values(&t, 2 * top, bits)?
        .into_iter()
        .map(|routes| routes.into_iter().next().expect("at least one route").1)
        .collect();
    let report = hankel_dets(&moments, top)?;
    let skip = t.spec.is_nonstandard();
    let hankel = range
        .clone()
        .map(|k| HankelRow {
            k,
            determinant: Value::new(&report.determinants[k], bits),
            sign: sign_name(if skip { Sign::Skipped } else { report.signs[k] }).to_string(),
        })
        .collect();
    let polynomials = range
        .map(|n| {
            let p = monic_from_moments(&moments, n)?;
            let norm = orthogonality_from_moments(&moments, n, n)?;
            Ok(OrthoRow {
                n,
                coefficients: p.coefficients.iter().map(|v| Value::new(v, bits)).collect(),
                norm: Value::new(&norm, bits),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::Ortho {
        spec: SpecReport::new(&t),
        precision_bits: bits,
        hankel,
        polynomials,
    })
}

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Positive => "positive",
        Sign::Negative => "negative",
        Sign::Undetermined => "undetermined",
        Sign::Skipped => "skipped",
    }
}

//! Serializable reports. Every field is a string, integer or flag, so JSON
//! output parses back into the same structure and re-renders byte for byte.

use std::fmt::Write;

use hypermoment_core::arith::{BigFloat, Round};
use hypermoment_core::{Poly, Rational, SeriesValue};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use hypermoment_core::families::Family;

use crate::args::Target;

/// Digits shown for error bounds.
const BOUND_DIGITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    pub value: String,
    pub tail_bound: String,
    pub precision_bits: u32,
    /// The exact rational, when the value is a finite sum.
    pub exact: Option<String>,
}

impl Value {
    pub fn new(v: &SeriesValue, precision_bits: u32) -> Self {
        let digits = ((precision_bits as f64) * std::f64::consts::LOG10_2).floor() as usize;
        Value {
            value: v.approx().to_decimal(digits),
            tail_bound: v.tail_bound().to_decimal(BOUND_DIGITS),
            precision_bits,
            exact: v.exact_value().map(|r| r.to_string()),
        }
    }

    fn short(&self) -> String {
        match &self.exact {
            Some(e) => e.clone(),
            None => format!("{} ± {}", self.value, self.tail_bound),
        }
    }
}

/// Upper bound of a nonnegative rational as a short decimal.
pub fn bound(r: &Rational) -> String {
    BigFloat::from_rational(&r.abs(), 64, Round::Up).to_decimal(BOUND_DIGITS)
}

pub fn poly_strings(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn bracket(v: &[String]) -> String {
    format!("[{}]", v.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecReport {
    pub family: Option<String>,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    /// `null` when `c` is left symbolic.
    pub c: Option<String>,
    #[serde(rename = "N")]
    pub big_n: Option<u64>,
    /// The weight is `prefactor * rho(x; alpha, beta, c)`; `null` when it depends on a symbolic `c`.
    pub prefactor: Option<String>,
    pub p: usize,
    pub q: usize,
    pub lambda: i64,
    pub tau: i64,
    pub xi: usize,
}

impl SpecReport {
    pub fn new(t: &Target) -> Self {
        let regime = hypermoment_core::weight::classify(&t.spec);
        let list = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect();
        SpecReport {
            family: t.family.map(|f| f.name().to_string()),
            alpha: list(&t.spec.alphas),
            beta: list(&t.spec.betas),
            c: (!t.symbolic_c).then(|| t.spec.c.to_string()),
            big_n: t.params.n,
            prefactor: (!(t.symbolic_c && t.family == Some(Family::Krawtchouk)))
                .then(|| t.prefactor.to_string()),
            p: t.spec.p(),
            q: t.spec.q(),
            lambda: regime.lambda,
            tau: regime.tau,
            xi: regime.xi,
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(f) = &self.family {
            let _ = write!(s, "family {f}");
            if let Some(n) = self.big_n {
                let _ = write!(s, ", N = {n}");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "weight {} * rho(x; alpha = {}, beta = {}, c = {})",
            self.prefactor.as_deref().unwrap_or("(1 - p)^N"),
            bracket(&self.alpha),
            bracket(&self.beta),
            self.c.as_deref().unwrap_or("c")
        );
        let _ = writeln!(
            s,
            "p = {}, q = {}, (lambda, tau, xi) = ({}, {}, {})",
            self.p, self.q, self.lambda, self.tau, self.xi
        );
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteValue {
    pub route: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentRow {
    pub n: usize,
    pub routes: Vec<RouteValue>,
    pub max_deviation: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRow {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaInfo {
    pub sigmas: Vec<Vec<String>>,
    pub companion_matrix: Vec<Vec<Vec<String>>>,
    pub phi: Vec<String>,
    pub eta: Vec<String>,
    pub class_s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StieltjesInfo {
    pub z: String,
    pub closed_form: Value,
    pub direct_sum: Value,
    pub deviation: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgfRow {
    pub k: usize,
    /// `mu_k / k!`.
    pub moment: Value,
    /// Slice of `mu_0(c e^((lambda + tau c) w))`.
    pub composite: Value,
    /// Slice of `sum_n (P_n . mu) w^n / n!`.
    pub vector_form: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HankelRow {
    pub k: usize,
    pub determinant: Value,
    pub sign: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoRow {
    pub n: usize,
    pub coefficients: Vec<Value>,
    pub norm: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Moments { spec: SpecReport, precision_bits: u32, rows: Vec<MomentRow> },
    Poly { spec: SpecReport, rows: Vec<PolyRow> },
    Sigma { spec: SpecReport, sigma: SigmaInfo },
    Stieltjes { spec: SpecReport, precision_bits: u32, result: StieltjesInfo },
    Egf { spec: SpecReport, precision_bits: u32, rows: Vec<EgfRow>, max_relative_deviation: String, agree: bool },
    Ortho { spec: SpecReport, precision_bits: u32, hankel: Vec<HankelRow>, polynomials: Vec<OrthoRow> },
    Verify { spec: SpecReport, precision_bits: u32, checks: Vec<CheckRow>, passed: bool },
}

impl Report {
    /// False when a cross-check inside the report failed.
    pub fn consistent(&self) -> bool {
        match self {
            Report::Moments { rows, .. } => rows.iter().all(|r| r.agree),
            Report::Stieltjes { result, .. } => result.agree,
            Report::Egf { agree, .. } => *agree,
            Report::Verify { passed, .. } => *passed,
            _ => true,
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn csv(&self) -> String {
        let mut s = String::new();
        let esc = |t: &str| {
            if t.contains([',', '"', '\n']) {
                format!("\"{}\"", t.replace('"', "\"\""))
            } else {
                t.to_string()
            }
        };
        match self {
            Report::Moments { rows, .. } => {
                s.push_str("n,route,value,tail_bound,exact\n");
                for r in rows {
                    for rv in &r.routes {
                        let v = &rv.value;
                        let _ = writeln!(s, "{},{},{},{},{}", r.n, rv.route, v.value, v.tail_bound, v.exact.as_deref().unwrap_or(""));
                    }
                }
            }
            Report::Poly { rows, .. } => {
                s.push_str("n,index,coefficients\n");
                for r in rows {
                    for (i, e) in r.entries.iter().enumerate() {
                        let _ = writeln!(s, "{},{},{}", r.n, i, esc(&bracket(e)));
                    }
                }
            }
            Report::Sigma { sigma, .. } => {
                s.push_str("k,sigma\n");
                for (k, e) in sigma.sigmas.iter().enumerate() {
                    let _ = writeln!(s, "{},{}", k, esc(&bracket(e)));
                }
            }
            Report::Stieltjes { result, .. } => {
                s.push_str("z,form,value,tail_bound\n");
                for (name, v) in [("closed_form", &result.closed_form), ("direct_sum", &result.direct_sum)] {
                    let _ = writeln!(s, "{},{},{},{}", result.z, name, v.value, v.tail_bound);
                }
            }
            Report::Egf { rows, .. } => {
                s.push_str("k,moment,composite,vector_form\n");
                for r in rows {
                    let _ = writeln!(s, "{},{},{},{}", r.k, r.moment.value, r.composite.value, r.vector_form.value);
                }
            }
            Report::Ortho { hankel, polynomials, .. } => {
                s.push_str("kind,index,value\n");
                for h in hankel {
                    let _ = writeln!(s, "hankel,{},{}", h.k, h.determinant.value);
                }
                for p in polynomials {
                    let coeffs: Vec<String> = p.coefficients.iter().map(|v| v.value.clone()).collect();
                    let _ = writeln!(s, "polynomial,{},{}", p.n, esc(&bracket(&coeffs)));
                }
            }
            Report::Verify { checks, .. } => {
                s.push_str("check,passed,detail\n");
                for c in checks {
                    let _ = writeln!(s, "{},{},{}", esc(&c.name), c.passed, esc(&c.detail));
                }
            }
        }
        s
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Moments { spec, rows, .. } => {
                s.push_str(&spec.text());
                for r in rows {
                    for rv in &r.routes {
                        let _ = writeln!(s, "mu_{} [{}] = {}", r.n, rv.route, rv.value.short());
                    }
                    let verdict = if r.agree { "agree" } else { "DISAGREE" };
                    let _ = writeln!(s, "mu_{} routes {verdict}, max deviation {}", r.n, r.max_deviation);
                }
            }
            Report::Poly { spec, rows } => {
                s.push_str(&spec.text());
                for r in rows {
                    let entries: Vec<String> = r.entries.iter().map(|e| bracket(e)).collect();
                    let _ = writeln!(s, "P_{} = {}", r.n, entries.join(", "));
                }
            }
            Report::Sigma { spec, sigma } => {
                s.push_str(&spec.text());
                for (k, e) in sigma.sigmas.iter().enumerate() {
                    let _ = writeln!(s, "sigma_{k} = {}", bracket(e));
                }
                for row in &sigma.companion_matrix {
                    let cells: Vec<String> = row.iter().map(|e| bracket(e)).collect();
                    let _ = writeln!(s, "M: {}", cells.join("  "));
                }
                let _ = writeln!(s, "phi = {}", bracket(&sigma.phi));
                let _ = writeln!(s, "eta = {}", bracket(&sigma.eta));
                let _ = writeln!(s, "class s = {}", sigma.class_s);
            }
            Report::Stieltjes { spec, result, .. } => {
                s.push_str(&spec.text());
                let _ = writeln!(s, "z = {}", result.z);
                let _ = writeln!(s, "closed form = {}", result.closed_form.short());
                let _ = writeln!(s, "direct sum  = {}", result.direct_sum.short());
                let verdict = if result.agree { "agree" } else { "DISAGREE" };
                let _ = writeln!(s, "{verdict}, deviation {}", result.deviation);
            }
            Report::Egf { spec, rows, max_relative_deviation, agree, .. } => {
                s.push_str(&spec.text());
                for r in rows {
                    let _ = writeln!(s, "[w^{}] mu/k! = {}", r.k, r.moment.short());
                    let _ = writeln!(s, "[w^{}] composite = {}", r.k, r.composite.short());
                    let _ = writeln!(s, "[w^{}] vector form = {}", r.k, r.vector_form.short());
                }
                let verdict = if *agree { "agree" } else { "DISAGREE" };
                let _ = writeln!(s, "slices {verdict}, max relative deviation {max_relative_deviation}");
            }
            Report::Ortho { spec, hankel, polynomials, .. } => {
                s.push_str(&spec.text());
                for h in hankel {
                    let _ = writeln!(s, "Delta_{} = {} ({})", h.k, h.determinant.short(), h.sign);
                }
                for p in polynomials {
                    let coeffs: Vec<String> = p.coefficients.iter().map(|v| v.short()).collect();
                    let _ = writeln!(s, "Pi_{} = {}", p.n, bracket(&coeffs));
                    let _ = writeln!(s, "K_{} = {}", p.n, p.norm.short());
                }
            }
            Report::Verify { spec, checks, passed, .. } => {
                s.push_str(&spec.text());
                for c in checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(s, "{mark}  {}: {}", c.name, c.detail);
                }
                let _ = writeln!(s, "{}", if *passed { "all checks passed" } else { "some checks FAILED" });
            }
        }
        s
    }
}

//! Stirling numbers, Pochhammer symbols and elementary symmetric functions.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Rows `0..len` of the Stirling triangle of the second kind; row `n` has `n + 1` entries.
static STIRLING2: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();

fn stirling_table() -> &'static RwLock<Vec<Vec<BigInt>>> {
    STIRLING2.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

/// Stirling number of the second kind `{n, k}` as an integer.
pub fn stirling2_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    {
        let rows = stirling_table().read().unwrap_or_else(|e| e.into_inner());
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = stirling_table().write().unwrap_or_else(|e| e.into_inner());
    // another writer may have extended the table meanwhile
    while rows.len() <= n {
        let prev = rows.last().expect("table starts with row 0");
        let m = prev.len();
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let carry = if j < m { &prev[j] * BigInt::from(j) } else { BigInt::zero() };
            next[j] = &prev[j - 1] + carry;
        }
        rows.push(next);
    }
    rows[n][k].clone()
}

/// `{n, k}` as a `Rational` (always an integer).
pub fn stirling2(n: usize, k: usize) -> Rational {
    Rational::from_integer(stirling2_int(n, k))
}

/// Rising factorial `a (a + 1) ... (a + n - 1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        if term.is_zero() {
            return Rational::zero();
        }
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Product of the rising factorials of every entry of `params`.
pub fn pochhammer_product(params: &[Rational], n: usize) -> Rational {
    params
        .iter()
        .map(|a| pochhammer(a, n))
        .fold(Rational::one(), |acc, p| acc * p)
}

/// Sum of all `k`-fold products of distinct entries of `values`; `e_0 = 1`.
pub fn elementary_symmetric(k: usize, values: &[Rational]) -> Result<Rational> {
    if k > values.len() {
        return Err(Error::OutOfRange {
            index: k,
            max: values.len(),
        });
    }
    Ok(elementary_symmetric_all(values).swap_remove(k))
}

/// `[e_0, e_1, ..., e_m]` for `m = values.len()`, via the coefficients of `prod (1 + v t)`.
pub fn elementary_symmetric_all(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::one();
    for (i, v) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1].clone();
            e[k] += prev * v;
        }
    }
    e
}

//! Rank estimates for matchgate + ZZ circuits.
//!
//! `χ_t` is the sum of Pauli ranks after every gate. Starting from a degree-2
//! measurement, the span reachable after `s` ZZ gates is the even-degree
//! staircase `C(2n, 2), C(2n, 4), ...`, so the cost is polynomial while the
//! number of ZZ gates `m` stays at or below `m_c = ⌊n/2⌋ − 1` and exponential
//! beyond it.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};

/// `C(n, k)` as an exact integer; `None` above `n = 64`.
pub fn binomial_exact(n: usize, k: usize) -> Option<u128> {
    if n > 64 {
        return None;
    }
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    Some(c)
}

/// `C(n, k)` as a real, exact up to rounding for `n ≤ 64`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    match binomial_exact(n, k) {
        Some(c) => c as f64,
        None => ln_binomial(n as u64, k as u64).exp(),
    }
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

pub fn m_critical(n: usize) -> usize {
    (n / 2).saturating_sub(1)
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} is below 2")));
    }
    if m + 2 > n {
        return Err(Error::OutOfRange(format!("m = {m} exceeds n - 2 = {}", n - 2)));
    }
    Ok(())
}

/// `N Σ_{s=1}^{m} C(2n, 2m+4−2s)`.
pub fn chi_general(n: usize, m: usize, big_n: usize) -> Result<f64> {
    check_m(n, m)?;
    let sum = (1..=m)
        .map(|s| binomial(2 * n, 2 * m + 4 - 2 * s))
        .fold(0.0, |a, b| a + b);
    Ok(big_n as f64 * sum)
}

/// `N/(m+1) Σ_{s=1}^{m} s C(2n, 2m+4−2s)`.
pub fn chi_layered(n: usize, m: usize, big_n: usize) -> Result<f64> {
    check_m(n, m)?;
    let sum = (1..=m)
        .map(|s| s as f64 * binomial(2 * n, 2 * m + 4 - 2 * s))
        .fold(0.0, |a, b| a + b);
    Ok(big_n as f64 / (m + 1) as f64 * sum)
}

/// `r = ((2m+2)/(2n−2m−1))²`.
pub fn ratio(n: usize, m: usize) -> f64 {
    let num = (2 * m + 2) as f64;
    let den = 2.0 * n as f64 - 2.0 * m as f64 - 1.0;
    (num / den).powi(2)
}

fn check_polynomial(n: usize, m: usize) -> Result<()> {
    check_m(n, m)?;
    if m > m_critical(n) {
        return Err(Error::OutOfRange(format!(
            "m = {m} is past m_c = {} (exponential regime)",
            m_critical(n)
        )));
    }
    Ok(())
}

/// `N C(2n, 2m+2) / (1 − r)`.
pub fn bound_general(n: usize, m: usize, big_n: usize) -> Result<f64> {
    check_polynomial(n, m)?;
    Ok(big_n as f64 * binomial(2 * n, 2 * m + 2) / (1.0 - ratio(n, m)))
}

/// `N/(m+1) C(2n, 2m+2) / (1 − r)²`.
pub fn bound_layered(n: usize, m: usize, big_n: usize) -> Result<f64> {
    check_polynomial(n, m)?;
    let r = ratio(n, m);
    Ok(big_n as f64 / (m + 1) as f64 * binomial(2 * n, 2 * m + 2) / ((1.0 - r) * (1.0 - r)))
}

/// `N 2^{2n−1} Φ(√(8/n) (m − m_c + 0.5))`.
pub fn bound_exponential(n: usize, m: usize, big_n: usize) -> Result<f64> {
    check_m(n, m)?;
    let mc = m_critical(n);
    if m < mc {
        return Err(Error::OutOfRange(format!(
            "m = {m} is below m_c = {mc} (polynomial regime)"
        )));
    }
    Ok(exponential_form(n, m as f64 - mc as f64, big_n))
}

fn exponential_form(n: usize, excess: f64, big_n: usize) -> f64 {
    let alpha = (8.0 / n as f64).sqrt() * (excess + 0.5);
    big_n as f64 * 2f64.powi(2 * n as i32 - 1) * normal_cdf(alpha)
}

/// Endpoints of the layered exponential regime: `2N/(n+1) C(2n, n)` at the
/// lower end and `N C(2n, n)` at the upper.
pub fn layered_exponential_endpoints(n: usize, big_n: usize) -> (f64, f64) {
    let c = binomial(2 * n, n);
    (2.0 * big_n as f64 / (n + 1) as f64 * c, big_n as f64 * c)
}

/// Degrees reachable from a degree-`k` monomial under a degree-`d` generator
/// sharing `l` Majorana indices with it.
pub fn predict_spans(d: usize, k: usize, l: usize) -> Result<Vec<usize>> {
    if l > d.min(k) {
        return Err(Error::OutOfRange(format!("overlap {l} exceeds min({d}, {k})")));
    }
    if (d * k - l) % 2 == 0 {
        Ok(vec![k])
    } else {
        let mut out = vec![k, k + d - 2 * l];
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Polynomial,
    Exponential,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub m_c: usize,
    pub regime: Regime,
    pub chi_general: f64,
    pub chi_layered: f64,
    pub bound_general: f64,
    pub bound_layered: f64,
    pub r: f64,
}

/// In the exponential regime both bounds take the normal-CDF form.
pub fn report(n: usize, m: usize, big_n: usize) -> Result<BoundReport> {
    check_m(n, m)?;
    let m_c = m_critical(n);
    let regime = if m <= m_c {
        Regime::Polynomial
    } else {
        Regime::Exponential
    };
    let (bound_general, bound_layered) = match regime {
        Regime::Polynomial => (bound_general(n, m, big_n)?, bound_layered(n, m, big_n)?),
        Regime::Exponential => {
            let b = bound_exponential(n, m, big_n)?;
            (b, b)
        }
    };
    Ok(BoundReport {
        n,
        m,
        big_n,
        m_c,
        regime,
        chi_general: chi_general(n, m, big_n)?,
        chi_layered: chi_layered(n, m, big_n)?,
        bound_general,
        bound_layered,
        r: ratio(n, m),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub chi_general: f64,
    pub bound: f64,
    pub regime: Regime,
}

/// Rows for every `n` in range and `m = 0..=n−2`. The bound column switches
/// to the normal-CDF form from `m = m_c` on.
pub fn sweep(ns: std::ops::RangeInclusive<usize>, big_n: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for n in ns {
        for m in 0..=n.saturating_sub(2) {
            let m_c = m_critical(n);
            let bound = if m < m_c {
                bound_general(n, m, big_n)?
            } else {
                bound_exponential(n, m, big_n)?
            };
            rows.push(SweepRow {
                n,
                m,
                big_n,
                chi_general: chi_general(n, m, big_n)?,
                bound,
                regime: if m <= m_c {
                    Regime::Polynomial
                } else {
                    Regime::Exponential
                },
            });
        }
    }
    Ok(rows)
}

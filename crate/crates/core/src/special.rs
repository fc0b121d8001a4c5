//! Log-space special functions: factorials, Gamma at (half-)integers and the
//! Euler Beta function.
//!
//! Factorial ratios in the cloner amplitudes overflow `f64` well below a
//! hundred photons, so everything here returns natural logarithms.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

const TABLE_LEN: usize = 1024;

fn factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Neumaier-compensated running sum of ln k.
        let mut table = Vec::with_capacity(TABLE_LEN);
        let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
        table.push(0.0);
        for k in 1..TABLE_LEN {
            let term = (k as f64).ln();
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            table.push(sum + comp);
        }
        table
    })
}

/// Stirling series for ln(n!) = ln Γ(n+1), used beyond the table.
fn stirling_log_factorial(n: f64) -> f64 {
    let inv = 1.0 / n;
    let inv2 = inv * inv;
    // Bernoulli terms B_{2k} / (2k(2k-1) n^{2k-1}) for k = 1..5.
    let series =
        inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 / 1188.0))));
    (n + 0.5) * n.ln() - n + 0.5 * (2.0 * PI).ln() + series
}

/// ln(n!).
pub fn log_factorial(n: usize) -> f64 {
    let table = factorial_table();
    if n < table.len() {
        table[n]
    } else {
        stirling_log_factorial(n as f64)
    }
}

/// ln C(n, k); `-inf` when `k > n`.
pub fn log_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    log_factorial(n) - log_factorial(k) - log_factorial(n - k)
}

/// ln Γ(x) for x > 0.
///
/// Integers and half-integers go through [`log_factorial`] and the duplication
/// identity Γ(k + 1/2) = (2k)! √π / (4^k k!), which keeps values such as
/// ln Γ(5/2) exact to rounding. Other arguments use the Lanczos approximation.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("log_gamma requires x > 0, got {x}")));
    }
    let twice = 2.0 * x;
    if twice.fract() == 0.0 && twice < 1e15 {
        let twice = twice as u64;
        if twice.is_multiple_of(2) {
            return Ok(log_factorial((twice / 2 - 1) as usize));
        }
        let k = ((twice - 1) / 2) as usize;
        return Ok(log_factorial(2 * k) - 2.0 * k as f64 * LN_2 - log_factorial(k) + 0.5 * PI.ln());
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b).
pub fn log_euler_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Euler beta requires positive arguments, got ({a}, {b})"
        )));
    }
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

//! Brute-force reference computations, independent of the library's
//! recurrences and closed-form amplitudes.
//!
//! States are polynomials in two creation operators acting on the vacuum,
//! `Σ_p c_p x^p y^{N−p}`. Amplification is a truncated Taylor series of
//! `exp(g(x y − ∂x ∂y))` in exact rationals; basis changes substitute
//! `x, y` by linear combinations and expand with big-integer binomials.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Poly = BTreeMap<(usize, usize), BigRational>;

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn sqrt_factorials(j: usize, n: usize) -> f64 {
    (factorial(j) * factorial(n - j)).to_f64().unwrap().sqrt()
}

/// `(x y − ∂x ∂y)` applied to a polynomial state.
fn pair_generator(state: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(p, q), c) in state {
        *out.entry((p + 1, q + 1)).or_insert_with(BigRational::zero) += c.clone();
        if p > 0 && q > 0 {
            let w = c * BigRational::from_integer(BigInt::from(p * q));
            *out.entry((p - 1, q - 1)).or_insert_with(BigRational::zero) -= w;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Sector-`N` part of `exp(g(x y − ∂x ∂y))` applied to `x` (first = true) or
/// `y`, with `g = 1/1000` and enough Taylor terms that the neglected orders
/// are below 1e-40 relative. Returns `c_p` for `x^p y^{N−p}`.
pub fn taylor_amplified(photons: usize, first: bool) -> Vec<BigRational> {
    assert!(photons % 2 == 1);
    let pairs = (photons - 1) / 2;
    let g = BigRational::new(BigInt::one(), BigInt::from(1000));
    let mut term: Poly = Poly::new();
    term.insert(if first { (1, 0) } else { (0, 1) }, BigRational::one());
    let mut sum: Poly = Poly::new();
    let mut coefficient = BigRational::one();
    for order in 0..=(pairs + 12) {
        if order > 0 {
            term = pair_generator(&term);
            coefficient = coefficient * g.clone() / BigRational::from_integer(BigInt::from(order));
        }
        for (&(p, q), c) in &term {
            if p + q == photons {
                *sum.entry((p, q)).or_insert_with(BigRational::zero) += c * coefficient.clone();
            }
        }
    }
    (0..=photons)
        .map(|p| sum.get(&(p, photons - p)).cloned().unwrap_or_else(BigRational::zero))
        .collect()
}

/// Creation operators of the first and second mode of direction (θ, φ), as
/// rows over `(a_h†, a_v†)`. The first mode is
/// `a = cos(θ/2) e^{iφ/2} a_h + sin(θ/2) e^{−iφ/2} a_v`; the second is its
/// orthogonal complement with unit determinant.
pub fn creation_rows(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = Complex64::from_polar(1.0, 0.5 * phi);
    let annihilation = [[e * c, e.conj() * s], [-e * s, e.conj() * c]];
    [
        [annihilation[0][0].conj(), annihilation[0][1].conj()],
        [annihilation[1][0].conj(), annihilation[1][1].conj()],
    ]
}

/// h/v components of the one-photon state along (θ, φ).
pub fn photon(theta: f64, phi: f64) -> [Complex64; 2] {
    creation_rows(theta, phi)[0]
}

fn inverse_2x2(m: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

/// Substitutes `x → s[0][0] X + s[0][1] Y`, `y → s[1][0] X + s[1][1] Y`.
fn substitute(coeffs: &[Complex64], s: [[Complex64; 2]; 2]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let mut out = vec![Complex64::default(); n + 1];
    for (p, &c) in coeffs.iter().enumerate() {
        if c == Complex64::default() {
            continue;
        }
        let q = n - p;
        for a in 0..=p {
            let left = c * binomial(p, a).to_f64().unwrap() * s[0][0].powu(a as u32) * s[0][1].powu((p - a) as u32);
            for b in 0..=q {
                let right = binomial(q, b).to_f64().unwrap() * s[1][0].powu(b as u32) * s[1][1].powu((q - b) as u32);
                out[a + b] += left * right;
            }
        }
    }
    out
}

/// h/v Fock amplitudes → Fock amplitudes in the (θ, φ) counter basis.
pub fn rotate_hv_amplitudes(amplitudes: &[Complex64], theta: f64, phi: f64) -> Vec<Complex64> {
    let n = amplitudes.len() - 1;
    let coeffs: Vec<Complex64> = amplitudes
        .iter()
        .enumerate()
        .map(|(p, a)| a / sqrt_factorials(p, n))
        .collect();
    // a_k† = Σ_i (R⁻¹)[k][i] b_i†
    let rows = creation_rows(theta, phi);
    let out = substitute(&coeffs, inverse_2x2(rows));
    out.iter().enumerate().map(|(j, c)| c * sqrt_factorials(j, n)).collect()
}

/// Sector matrix `⟨p|_to |m⟩_from` by polynomial substitution.
pub fn rotation_matrix(photons: usize, from: (f64, f64), to: (f64, f64)) -> Vec<Vec<Complex64>> {
    let from_rows = creation_rows(from.0, from.1);
    let mut columns = Vec::with_capacity(photons + 1);
    for m in 0..=photons {
        let mut coeffs = vec![Complex64::default(); photons + 1];
        coeffs[m] = Complex64::new(1.0 / sqrt_factorials(m, photons), 0.0);
        let hv_coeffs = substitute(&coeffs, from_rows);
        let hv_amps: Vec<Complex64> = hv_coeffs
            .iter()
            .enumerate()
            .map(|(p, c)| c * sqrt_factorials(p, photons))
            .collect();
        columns.push(rotate_hv_amplitudes(&hv_amps, to.0, to.1));
    }
    (0..=photons)
        .map(|p| (0..=photons).map(|m| columns[m][p]).collect())
        .collect()
}

fn probabilities(amplitudes: &[Complex64]) -> Vec<f64> {
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    amplitudes.iter().map(|a| a.norm_sqr() / norm).collect()
}

/// Taylor-amplified sector of both input modes, reusable across settings.
pub struct UnitaryOracle {
    photons: usize,
    h: Vec<f64>,
    v: Vec<f64>,
}

impl UnitaryOracle {
    pub fn new(photons: usize) -> Self {
        let h = taylor_amplified(photons, true);
        let v = taylor_amplified(photons, false);
        // a common scale keeps the relative weight of the two inputs exact
        let scale = h.iter().chain(&v).map(|c| c.abs()).max().unwrap();
        let to_f64 = |c: &BigRational| (c / scale.clone()).to_f64().unwrap();
        Self {
            photons,
            h: h.iter().map(to_f64).collect(),
            v: v.iter().map(to_f64).collect(),
        }
    }

    pub fn distribution(&self, angles: [f64; 4]) -> Vec<f64> {
        let [theta_a, phi_a, theta_b, phi_b] = angles;
        let input = photon(theta_a, phi_a);
        let n = self.photons;
        let hv_amps: Vec<Complex64> = (0..=n)
            .map(|p| (input[0] * self.h[p] + input[1] * self.v[p]) * sqrt_factorials(p, n))
            .collect();
        probabilities(&rotate_hv_amplitudes(&hv_amps, theta_b, phi_b))
    }
}

/// Counting distribution of the unitary cloner from the Taylor oracle.
pub fn unitary_distribution(photons: usize, angles: [f64; 4]) -> Vec<f64> {
    UnitaryOracle::new(photons).distribution(angles)
}

/// Prepare state for the measure-and-prepare oracle.
#[derive(Clone, Copy)]
pub enum Prepare {
    Equatorial,
    Squeezed(usize),
}

fn prepared_hv(prepare: Prepare, photons: usize, phi: f64) -> Vec<Complex64> {
    match prepare {
        Prepare::Equatorial => {
            // (b_φ†)^N / √N! with b_φ† = x-row of creation_rows(π/2, φ)
            let row = creation_rows(PI / 2.0, phi)[0];
            let mut coeffs = vec![Complex64::default(); photons + 1];
            coeffs[photons] = Complex64::new(1.0 / factorial(photons).to_f64().unwrap().sqrt(), 0.0);
            let expanded = substitute(&coeffs, [[row[0], row[1]], [Complex64::default(); 2]]);
            expanded
                .iter()
                .enumerate()
                .map(|(p, c)| c * sqrt_factorials(p, photons))
                .collect()
        }
        Prepare::Squeezed(tau) => {
            let n = (photons - 1) / 2;
            let mut amps = vec![Complex64::default(); photons + 1];
            let w = 1.0 / (2.0 * (tau as f64 + 1.0)).sqrt();
            for k in 0..=tau {
                let angle = 0.5 * phi * (2 * k + 1) as f64;
                amps[n - k] += Complex64::from_polar(w, angle);
                amps[n + k + 1] += Complex64::from_polar(w, -angle);
            }
            amps
        }
    }
}

/// Measure-and-prepare mixture by oversampled trapezoid over the random
/// equatorial basis φ ∈ [0, π), with both measurement outcomes.
pub fn mp_distribution(prepare: Prepare, photons: usize, angles: [f64; 4]) -> Vec<f64> {
    let [theta_a, phi_a, theta_b, phi_b] = angles;
    let input = photon(theta_a, phi_a);
    let overlap = |v: [Complex64; 2]| (input[0].conj() * v[0] + input[1].conj() * v[1]).norm_sqr();
    let nodes = 10 * 4 * (photons + 2);
    let mut total = vec![0.0; photons + 1];
    let matrix = rotation_matrix(photons, (0.0, 0.0), (theta_b, phi_b));
    let counts = |amps: Vec<Complex64>| -> Vec<f64> {
        (0..=photons)
            .map(|p| {
                matrix[p]
                    .iter()
                    .zip(&amps)
                    .map(|(d, a)| d * a)
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .collect()
    };
    for i in 0..nodes {
        let phi = PI * i as f64 / nodes as f64;
        let plus = overlap(photon(PI / 2.0, phi));
        let minus = overlap(photon(PI / 2.0, phi + PI));
        let q_plus = counts(prepared_hv(prepare, photons, phi));
        let q_minus = counts(prepared_hv(prepare, photons, phi + PI));
        for j in 0..=photons {
            total[j] += (plus * q_plus[j] + minus * q_minus[j]) / nodes as f64;
        }
    }
    total
}

//! The semicircle law: spectral measure of the fundamental character
//! `χ_1` of `O_N^+` with respect to the Haar state.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};

/// Default number of Simpson panels.
pub const DEFAULT_SUBDIVISIONS: usize = 10_000;

/// Minimum number of Simpson panels accepted by [`semicircle_moment`].
pub const MIN_SUBDIVISIONS: usize = 64;

/// The standard semicircle measure on `[-2, 2]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SemicircleMeasure;

impl SemicircleMeasure {
    pub fn density(&self, x: f64) -> f64 {
        semicircle_density(x)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        semicircle_cdf(x)
    }

    pub fn moment(&self, k: u32) -> f64 {
        semicircle_moment(k, DEFAULT_SUBDIVISIONS).expect("default subdivisions are valid")
    }
}

pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() <= 2.0 {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    } else {
        0.0
    }
}

/// `F(x) = 1/2 + x sqrt(4 - x^2) / (4π) + asin(x/2) / π` on `[-2, 2]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI
    }
}

/// `∫ x^k dμ(x)` by composite Simpson quadrature.
///
/// The density has square-root endpoints, which limits Simpson in `x` to
/// `O(h^{3/2})`. Under `x = 2 cos θ` the integral becomes
/// `(2/π) ∫_0^π (2 cos θ)^k sin^2 θ dθ` with a smooth integrand, so the
/// panels are laid out in `θ`. An odd panel count is rounded up.
pub fn semicircle_moment(k: u32, subdivisions: usize) -> Result<f64> {
    if subdivisions < MIN_SUBDIVISIONS {
        return Err(domain(format!(
            "need at least {MIN_SUBDIVISIONS} subdivisions, got {subdivisions}"
        )));
    }
    let panels = subdivisions + subdivisions % 2;
    let h = PI / panels as f64;
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        (2.0 * c).powi(k as i32) * s * s
    };
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..panels {
        let v = f(i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    let integral = h / 3.0 * (f(0.0) + f(PI) + 4.0 * odd + 2.0 * even);
    Ok(2.0 / PI * integral)
}

/// `count` draws from the semicircle law, reproducible per seed.
///
/// Rejection sampling against the uniform envelope on `[-2, 2] × [0, 1/π]`
/// (acceptance rate `π/4`). The generator is ChaCha8 seeded with
/// [`SeedableRng::seed_from_u64`].
pub fn semicircle_sample(seed: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(&mut rng, count)
}

pub fn sample_with<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<f64> {
    let top = 1.0 / PI;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.gen_range(-2.0..=2.0);
        let y = rng.gen::<f64>() * top;
        if y <= semicircle_density(x) {
            out.push(x);
        }
    }
    out
}

/// Empirical moments `(1/n) Σ x_i^k` for `k = 1..=max_k`.
pub fn empirical_moments(samples: &[f64], max_k: u32) -> Vec<f64> {
    let n = samples.len() as f64;
    (1..=max_k)
        .map(|k| samples.iter().map(|x| x.powi(k as i32)).sum::<f64>() / n)
        .collect()
}

/// Kolmogorov-Smirnov distance between the empirical distribution of the
/// samples and the semicircle CDF.
pub fn ks_distance(samples: &[f64]) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = semicircle_cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    /// The reduced C*-algebra of `O_N^+`.
    Reduced,
    /// The full (universal) C*-algebra of `O_N^+`.
    Full,
}

/// Spectrum of the fundamental character `χ_1`.
pub fn spectrum_interval(algebra: Algebra, big_n: u64) -> Result<(f64, f64)> {
    if big_n < 2 {
        return Err(domain(format!("N must be at least 2, got {big_n}")));
    }
    Ok(match algebra {
        Algebra::Reduced => (-2.0, 2.0),
        Algebra::Full => (-(big_n as f64), big_n as f64),
    })
}

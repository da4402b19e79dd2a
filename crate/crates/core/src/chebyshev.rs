//! Dilated Chebyshev polynomials of the second kind.
//!
//! `u_0(x) = 1`, `u_1(x) = x` and `x u_n(x) = u_{n+1}(x) + u_{n-1}(x)`.
//! The values `u_n(N)` are the dimensions of the irreducible
//! corepresentations of `O_N^+`. Everything here is evaluated by the
//! three-term recursion; the closed form in `q(t)` is singular at `t = 2`
//! and is only used as a cross-check in tests.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// Anchor of the decay estimates when the caller does not choose one.
pub const DEFAULT_T0: f64 = 2.5;

/// Quantum group dimension `N` together with the decay anchor `t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyParams {
    n: u64,
    t0: f64,
}

impl ChebyParams {
    /// `n >= 2` and `2 < t0 < 3`.
    pub fn new(n: u64, t0: f64) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("N must be at least 2, got {n}")));
        }
        check_t0(t0)?;
        Ok(Self { n, t0 })
    }

    pub fn with_default_t0(n: u64) -> Result<Self> {
        Self::new(n, DEFAULT_T0)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn q_n(&self) -> f64 {
        q_unchecked(self.n as f64)
    }

    pub fn q_t0(&self) -> f64 {
        q_unchecked(self.t0)
    }

    /// `C_{t0} = (1 - q(t0)^{-2})^{-1}`.
    pub fn decay_constant(&self) -> f64 {
        decay_unchecked(self.t0)
    }

    /// Fails unless `t0 <= t <= N` and `N >= 3`.
    pub fn check_t(&self, t: f64) -> Result<()> {
        if self.n < 3 {
            return Err(domain(format!(
                "multiplier nets need N >= 3, got {}",
                self.n
            )));
        }
        if !(t >= self.t0 && t <= self.n as f64) {
            return Err(domain(format!(
                "t = {t} outside [t0, N] = [{}, {}]",
                self.t0, self.n
            )));
        }
        Ok(())
    }
}

fn check_t0(t0: f64) -> Result<()> {
    if t0 > 2.0 && t0 < 3.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "t0 must lie in the open interval (2, 3), got {t0}"
        )))
    }
}

/// Integer coefficient vector; entry `i` is the coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCoeffs(pub Vec<BigInt>);

impl PolyCoeffs {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.0
            .last()
            .expect("polynomial has at least one coefficient")
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for PolyCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `u_n(x)` in double precision.
pub fn cheby_u(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `u_n(x)` exactly, for an integer argument.
pub fn cheby_u_exact(n: usize, x: &BigInt) -> BigInt {
    let mut prev = BigInt::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = x * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// All values `u_0(x), ..., u_n(x)`.
pub fn cheby_u_table(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    for k in 2..=n {
        out.push(x * out[k - 1] - out[k - 2]);
    }
    out
}

pub fn cheby_coeffs(n: usize) -> PolyCoeffs {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return PolyCoeffs(prev);
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        // x * cur - prev
        let mut next: Vec<BigInt> = std::iter::once(BigInt::zero())
            .chain(cur.iter().cloned())
            .collect();
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    PolyCoeffs(cur)
}

/// `q(t) = (t + sqrt(t^2 - 4)) / 2`, the larger root of `q + 1/q = t`.
pub fn q_of(t: f64) -> Result<f64> {
    if t.is_nan() || t < 2.0 {
        return Err(domain(format!("q(t) needs t >= 2, got {t}")));
    }
    Ok(q_unchecked(t))
}

pub(crate) fn q_unchecked(t: f64) -> f64 {
    (t + (t * t - 4.0).max(0.0).sqrt()) / 2.0
}

/// Exact dimension `u_n(N)` of the `n`-th irreducible of `O_N^+`.
pub fn dim_orth(n: usize, big_n: u64) -> Result<BigUint> {
    if big_n < 2 {
        return Err(domain(format!("N must be at least 2, got {big_n}")));
    }
    let value = cheby_u_exact(n, &BigInt::from(big_n));
    Ok(value.to_biguint().expect("u_n(N) is positive for N >= 2"))
}

/// `u_n(t) / u_n(N)` for `t` in `[t0, N]`.
///
/// Evaluated as a product of successive quotients `u_k / u_{k-1}` so that
/// large `n` cannot overflow.
pub fn coeff_ratio(n: usize, t: f64, params: &ChebyParams) -> Result<f64> {
    params.check_t(t)?;
    Ok(ratio_unchecked(n, t, params.n() as f64))
}

/// `u_n(t) / u_n(x)` for `t, x >= 2`.
pub(crate) fn ratio_unchecked(n: usize, t: f64, x: f64) -> f64 {
    let (mut rt, mut rx) = (t, x);
    let mut acc = 1.0;
    for k in 1..=n {
        if k > 1 {
            rt = t - 1.0 / rt;
            rx = x - 1.0 / rx;
        }
        acc *= rt / rx;
    }
    acc
}

/// All ratios `u_k(t)/u_k(x)` for `k = 0..=n`.
pub(crate) fn ratio_table(n: usize, t: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let (mut rt, mut rx) = (t, x);
    let mut acc = 1.0;
    for k in 1..=n {
        if k > 1 {
            rt = t - 1.0 / rt;
            rx = x - 1.0 / rx;
        }
        acc *= rt / rx;
        out.push(acc);
    }
    out
}

/// `C_{t0} = (1 - q(t0)^{-2})^{-1}` for `2 < t0 < 3`.
pub fn decay_constant(t0: f64) -> Result<f64> {
    check_t0(t0)?;
    Ok(decay_unchecked(t0))
}

fn decay_unchecked(t0: f64) -> f64 {
    let q = q_unchecked(t0);
    1.0 / (1.0 - q.powi(-2))
}

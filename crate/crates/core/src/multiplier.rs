//! Central multiplier nets at the level of their eigenvalues.
//!
//! A central multiplier acts on the span of the matrix coefficients of each
//! irreducible by a scalar. For `O_N^+` the net `T_t` has eigenvalue
//! `u_n(t)/u_n(N)` on level `n`; for `U_N^+` the net `Ψ_t` has eigenvalue
//! `a_t(g) = r(t)^{Σ|ε(s)|} Π_s u_{k(s)}(t)/u_{k(s)}(N)` on the word `g`,
//! read off the alternating form of `χ_g`.
//!
//! Both nets are dominated by `C_{t0} (t/N)^n` on level `n`. Combined with
//! property RD (a user-supplied constant `D_N` or `R_N`), this gives
//! certified upper bounds for the norm of the tail beyond a finite
//! truncation.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_traits::ToPrimitive;

use crate::chebyshev::dim_orth;
use crate::chebyshev::{cheby_u, q_unchecked, ratio_table, ratio_unchecked, ChebyParams};
use crate::error::{domain, Error, Result};
use crate::orth::OrthLabel;
use crate::unitary::{alternating_form, dim_unitary, FreeWord};

/// Default cap on the number of entries of a `U_N^+` coefficient table.
pub const DEFAULT_ENTRY_CAP: u128 = 1 << 20;

/// Absolute slack used when comparing computed values against bounds.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Orth,
    Unit,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Orth => "o",
            Group::Unit => "u",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Orth(OrthLabel),
    Unit(FreeWord),
}

impl Label {
    pub fn level(&self) -> usize {
        match self {
            Label::Orth(l) => l.0,
            Label::Unit(w) => w.len(),
        }
    }

    /// The conjugate label: identity on `O_N^+`, the word involution on
    /// `U_N^+`.
    pub fn conjugate(&self) -> Label {
        match self {
            Label::Orth(l) => Label::Orth(l.conjugate()),
            Label::Unit(w) => Label::Unit(w.involution()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Orth(l) => write!(f, "{l}"),
            Label::Unit(w) => write!(f, "{w}"),
        }
    }
}

/// The central state `ψ_t` on the character algebra of `O_N^+`, given by
/// evaluation at `t ∈ [-N, N]`: `ψ_t(χ_n) = u_n(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralStateO {
    t: f64,
    n: u64,
}

impl CentralStateO {
    pub fn new(t: f64, n: u64) -> Result<Self> {
        if n < 3 {
            return Err(domain(format!("central states need N >= 3, got {n}")));
        }
        if t.is_nan() || t.abs() > n as f64 {
            return Err(domain(format!("t = {t} outside the spectrum [-{n}, {n}]")));
        }
        Ok(Self { t, n })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `ψ_t(χ_n) = u_n(t)`.
    pub fn eval(&self, level: usize) -> f64 {
        cheby_u(level, self.t)
    }
}

/// `ψ_t(χ_n) / d_n = u_n(t) / u_n(N)`.
pub fn central_coeff_orth(level: usize, state: &CentralStateO) -> f64 {
    let (t, big_n) = (state.t, state.n as f64);
    if t.abs() >= 2.0 {
        // u_n(-x) = (-1)^n u_n(x)
        let sign = if t < 0.0 && level % 2 == 1 { -1.0 } else { 1.0 };
        sign * ratio_unchecked(level, t.abs(), big_n)
    } else {
        cheby_u(level, t) / cheby_u(level, big_n)
    }
}

/// `r(t) = (1 - q(t)^{-2}) / (1 - q(N)^{-2})`, the Poisson radius paired
/// with `T_t` in the `U_N^+` net.
pub fn r_of(t: f64, params: &ChebyParams) -> Result<f64> {
    params.check_t(t)?;
    Ok(r_unchecked(t, params.n() as f64))
}

fn r_unchecked(t: f64, big_n: f64) -> f64 {
    (1.0 - q_unchecked(t).powi(-2)) / (1.0 - q_unchecked(big_n).powi(-2))
}

/// Eigenvalue `a_t(w)` of `Ψ_t` on the irreducible `U^w`.
pub fn a_coeff(w: &FreeWord, t: f64, params: &ChebyParams) -> Result<f64> {
    params.check_t(t)?;
    let big_n = params.n() as f64;
    let form = alternating_form(w);
    // The involution reverses the block order; sorting keeps a(w) and a(w̄)
    // bit-for-bit equal.
    let product = sorted_block_product(&form.blocks, |k| ratio_unchecked(k, t, big_n));
    Ok(r_unchecked(t, big_n).powi(form.eps_weight() as i32) * product)
}

fn sorted_block_product(blocks: &[usize], ratio: impl Fn(usize) -> f64) -> f64 {
    let mut sorted = blocks.to_vec();
    sorted.sort_unstable();
    sorted.into_iter().map(ratio).product()
}

/// `P_r(z^n) = r^{|n|} z^n`: eigenvalues of the Poisson kernel on the circle.
pub fn poisson_coeff(r: f64, n: i64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!(
            "Poisson radius must lie in [0, 1), got {r}"
        )));
    }
    Ok(r.powi(n.unsigned_abs().min(i32::MAX as u64) as i32))
}

/// The envelope `constant · ratio^n` dominating the coefficients on level `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayBound {
    pub constant: f64,
    pub ratio: f64,
}

impl DecayBound {
    pub fn at(&self, level: usize) -> f64 {
        self.constant * pow_level(self.ratio, level)
    }
}

fn pow_level(x: f64, n: usize) -> f64 {
    match i32::try_from(n) {
        Ok(n) => x.powi(n),
        Err(_) => x.powf(n as f64),
    }
}

/// Net parameters recorded alongside a coefficient table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetParams {
    pub t: f64,
    pub n: u64,
    pub t0: f64,
    /// `r(t)`; only meaningful for `U_N^+`.
    pub r: Option<f64>,
}

/// Eigenvalues of a central multiplier on a finite set of labels.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierCoeffs {
    pub group: Group,
    pub params: Option<NetParams>,
    pub entries: BTreeMap<Label, f64>,
    /// Envelope valid on every level, stored or not.
    pub decay: Option<DecayBound>,
}

impl MultiplierCoeffs {
    /// A bare `O_N^+` table `a_0, a_1, ...` without net parameters.
    pub fn from_orth_sequence(values: &[f64], decay: Option<DecayBound>) -> Self {
        Self {
            group: Group::Orth,
            params: None,
            entries: values
                .iter()
                .enumerate()
                .map(|(n, &v)| (Label::Orth(OrthLabel(n)), v))
                .collect(),
            decay,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &Label) -> Option<f64> {
        self.entries.get(label).copied()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.entries.keys().map(Label::level).max()
    }

    /// `max_{|label| = n} |coeff|` for every stored level `n`.
    pub fn level_max(&self) -> BTreeMap<usize, f64> {
        let mut out: BTreeMap<usize, f64> = BTreeMap::new();
        for (label, v) in &self.entries {
            let slot = out.entry(label.level()).or_insert(0.0);
            *slot = slot.max(v.abs());
        }
        out
    }
}

/// Norm of the multiplier on `L^2`: the supremum of the stored
/// `|coefficients|`, `0` for an empty table.
pub fn net_l2_norm(c: &MultiplierCoeffs) -> f64 {
    c.entries.values().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `sup_{n >= from} (n+1)^2 · constant · ratio^n` for `0 <= ratio < 1`.
///
/// `s_n = (n+1)^2 ratio^n` is unimodal: `s_{n+1}/s_n = ((n+2)/(n+1))^2 ratio`
/// is decreasing in `n`, so once a step fails to increase, no later step
/// does. The scan stops there and returns the maximum seen.
pub fn tail_sup(from: usize, bound: DecayBound) -> f64 {
    let DecayBound { constant, ratio } = bound;
    assert!(
        (0.0..1.0).contains(&ratio),
        "tail_sup needs a ratio in [0, 1), got {ratio}"
    );
    let term = |n: usize| {
        let k = (n + 1) as f64;
        k * k * pow_level(ratio, n)
    };
    let mut n = from;
    let mut best = term(n);
    loop {
        let next = term(n + 1);
        if next <= best {
            break;
        }
        best = next;
        n += 1;
    }
    constant * best
}

/// `k_a = sup_{n >= from_level} (n+1)^2 max_{|label| = n} |a_label|`.
///
/// Stored levels contribute their actual maxima; beyond the last stored
/// level the decay envelope, when present, is used.
pub fn k_a(c: &MultiplierCoeffs, from_level: usize) -> f64 {
    let stored = c
        .level_max()
        .into_iter()
        .filter(|&(n, _)| n >= from_level)
        .map(|(n, v)| {
            let k = (n + 1) as f64;
            k * k * v
        })
        .fold(0.0, f64::max);
    let beyond = match (c.decay, c.max_level()) {
        (Some(bound), Some(last)) => tail_sup(from_level.max(last + 1), bound),
        (Some(bound), None) => tail_sup(from_level, bound),
        (None, _) => 0.0,
    };
    stored.max(beyond)
}

/// `‖T‖_{L^2 → L^∞} <= π · rd_constant · k_a / √6`.
pub fn ultra_bound(ka: f64, rd_constant: f64) -> Result<f64> {
    if ka.is_nan() || ka < 0.0 {
        return Err(domain(format!("k_a must be non-negative, got {ka}")));
    }
    if rd_constant.is_nan() || rd_constant <= 0.0 {
        return Err(domain(format!(
            "RD constant must be positive, got {rd_constant}"
        )));
    }
    Ok(PI * rd_constant * ka / 6f64.sqrt())
}

/// Property RD constants and the decay anchor. `D_N` (for `O_N^+`) and
/// `R_N` (for `U_N^+`) have no defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    d: Option<f64>,
    r: Option<f64>,
    t0: f64,
}

impl BoundParams {
    pub fn new(d: Option<f64>, r: Option<f64>, t0: f64) -> Result<Self> {
        for (name, v) in [("D", d), ("R", r)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(domain(format!("{name} must be positive, got {v}")));
                }
            }
        }
        crate::chebyshev::decay_constant(t0)?;
        Ok(Self { d, r, t0 })
    }

    pub fn orth(d: f64, t0: f64) -> Result<Self> {
        Self::new(Some(d), None, t0)
    }

    pub fn unit(r: f64, t0: f64) -> Result<Self> {
        Self::new(None, Some(r), t0)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn rd_constant(&self, group: Group) -> Result<f64> {
        match group {
            Group::Orth => self
                .d
                .ok_or_else(|| domain("the O_N^+ bound needs the RD constant D")),
            Group::Unit => self
                .r
                .ok_or_else(|| domain("the U_N^+ bound needs the RD constant R")),
        }
    }
}

fn check_tail_domain(t: f64, big_n: u64, t0: f64) -> Result<ChebyParams> {
    let params = ChebyParams::new(big_n, t0)?;
    params.check_t(t)?;
    if t >= big_n as f64 {
        return Err(domain(format!("tail bound degenerates at t = N = {big_n}")));
    }
    Ok(params)
}

/// Upper bound for `‖net_t - net_{t,m}‖` on the reduced C*-algebra:
/// `π K / √6 · sup_{n >= m+1} (n+1)^2 C_{t0} (t/N)^n` with `K = D_N` or `R_N`.
pub fn tail_bound(group: Group, t: f64, m: usize, big_n: u64, bounds: &BoundParams) -> Result<f64> {
    let rd = bounds.rd_constant(group)?;
    let params = check_tail_domain(t, big_n, bounds.t0)?;
    let sup = tail_sup(
        m + 1,
        DecayBound {
            constant: params.decay_constant(),
            ratio: t / big_n as f64,
        },
    );
    ultra_bound(sup, rd)
}

pub fn tail_bound_orth(t: f64, m: usize, big_n: u64, bounds: &BoundParams) -> Result<f64> {
    tail_bound(Group::Orth, t, m, big_n, bounds)
}

pub fn tail_bound_unitary(t: f64, m: usize, big_n: u64, bounds: &BoundParams) -> Result<f64> {
    tail_bound(Group::Unit, t, m, big_n, bounds)
}

/// A truncation order `m` with a certified bound on the discarded tail.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationCertificate {
    pub group: Group,
    pub t: f64,
    pub n: u64,
    pub m: usize,
    pub tail_bound: f64,
    pub target_eps: f64,
}

impl TruncationCertificate {
    pub fn satisfied(&self) -> bool {
        self.tail_bound <= self.target_eps
    }
}

/// Smallest `m` whose tail bound is at most `eps`.
pub fn choose_truncation(
    t: f64,
    eps: f64,
    big_n: u64,
    group: Group,
    bounds: &BoundParams,
) -> Result<TruncationCertificate> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(domain(format!("eps must be positive, got {eps}")));
    }
    let bound_at = |m: usize| tail_bound(group, t, m, big_n, bounds);
    let certificate = |m: usize, tail_bound: f64| TruncationCertificate {
        group,
        t,
        n: big_n,
        m,
        tail_bound,
        target_eps: eps,
    };

    let first = bound_at(0)?;
    if first <= eps {
        return Ok(certificate(0, first));
    }
    // The bound stays at its peak value until m + 1 passes the peak of
    // (n+1)^2 (t/N)^n, then decreases strictly.
    let ratio = t / big_n as f64;
    let mut m = peak_level(ratio).saturating_sub(1);
    loop {
        let b = bound_at(m)?;
        if b <= eps {
            return Ok(certificate(m, b));
        }
        m += 1;
    }
}

fn peak_level(ratio: f64) -> usize {
    let mut n = 0;
    while ((n + 2) as f64 / (n + 1) as f64).powi(2) * ratio > 1.0 {
        n += 1;
    }
    n
}

fn unit_table_size(max_level: usize) -> u128 {
    if max_level >= 126 {
        u128::MAX
    } else {
        (1u128 << (max_level + 1)) - 1
    }
}

/// Coefficients of the net on every label with level in `levels`.
pub fn net_coeffs(
    group: Group,
    t: f64,
    levels: std::ops::RangeInclusive<usize>,
    params: &ChebyParams,
    cap: u128,
) -> Result<MultiplierCoeffs> {
    params.check_t(t)?;
    let radius = match group {
        Group::Orth => None,
        Group::Unit => Some(r_unchecked(t, params.n() as f64)),
    };
    build_table(group, t, radius, levels, params, cap)
}

/// `U_N^+` coefficients of the free product `P_r * T_t` for an explicit
/// Poisson radius `r ∈ [0, 1]`; `r = r(t)` recovers [`net_coeffs`].
///
/// The decay envelope is attached only when `r <= r(t)`, where it is
/// still valid.
pub fn unit_coeffs_with_radius(
    t: f64,
    radius: f64,
    levels: std::ops::RangeInclusive<usize>,
    params: &ChebyParams,
    cap: u128,
) -> Result<MultiplierCoeffs> {
    params.check_t(t)?;
    if !(0.0..=1.0).contains(&radius) {
        return Err(domain(format!("radius must lie in [0, 1], got {radius}")));
    }
    let mut table = build_table(Group::Unit, t, Some(radius), levels, params, cap)?;
    if radius > r_unchecked(t, params.n() as f64) {
        table.decay = None;
    }
    Ok(table)
}

fn build_table(
    group: Group,
    t: f64,
    radius: Option<f64>,
    levels: std::ops::RangeInclusive<usize>,
    params: &ChebyParams,
    cap: u128,
) -> Result<MultiplierCoeffs> {
    let big_n = params.n() as f64;
    let (lo, hi) = (*levels.start(), *levels.end());
    let ratios = ratio_table(hi, t, big_n);
    let mut entries = BTreeMap::new();
    match group {
        Group::Orth => {
            for (n, &v) in ratios.iter().enumerate().take(hi + 1).skip(lo) {
                entries.insert(Label::Orth(OrthLabel(n)), v);
            }
        }
        Group::Unit => {
            let requested = unit_table_size(hi) - if lo == 0 { 0 } else { unit_table_size(lo - 1) };
            if requested > cap {
                return Err(Error::Resource { requested, cap });
            }
            let r = radius.expect("unit tables carry a radius");
            for len in lo..=hi {
                for w in FreeWord::all_of_len(len) {
                    let form = alternating_form(&w);
                    let v = r.powi(form.eps_weight() as i32)
                        * sorted_block_product(&form.blocks, |k| ratios[k]);
                    entries.insert(Label::Unit(w), v);
                }
            }
        }
    }
    Ok(MultiplierCoeffs {
        group,
        params: Some(NetParams {
            t,
            n: params.n(),
            t0: params.t0(),
            r: radius,
        }),
        entries,
        decay: Some(DecayBound {
            constant: params.decay_constant(),
            ratio: t / big_n,
        }),
    })
}

/// `T_{t,m}` or `Ψ_{t,m}`: the coefficients on all labels of level `<= m`.
pub fn truncated_coeffs(
    group: Group,
    t: f64,
    m: usize,
    params: &ChebyParams,
) -> Result<MultiplierCoeffs> {
    net_coeffs(group, t, 0..=m, params, DEFAULT_ENTRY_CAP)
}

pub fn truncated_coeffs_with_cap(
    group: Group,
    t: f64,
    m: usize,
    params: &ChebyParams,
    cap: u128,
) -> Result<MultiplierCoeffs> {
    net_coeffs(group, t, 0..=m, params, cap)
}

/// Pairs `(α, a_t(ᾱ) d_α)` for every label of level `<= m`: the
/// coefficients of `ω_t = Σ_α a_t(ᾱ) d_α χ_α` in the character basis.
pub fn approx_identity_weights(
    group: Group,
    t: f64,
    m: usize,
    params: &ChebyParams,
) -> Result<Vec<(Label, f64)>> {
    if t >= params.n() as f64 {
        return Err(domain(format!("weights need t < N = {}", params.n())));
    }
    let table = truncated_coeffs(group, t, m, params)?;
    table
        .entries
        .keys()
        .map(|label| {
            let coeff = table
                .get(&label.conjugate())
                .expect("the table is closed under conjugation");
            let dim = match label {
                Label::Orth(l) => dim_orth(l.0, params.n())?,
                Label::Unit(w) => dim_unitary(w, params.n())?,
            };
            let dim = dim.to_f64().unwrap_or(f64::INFINITY);
            Ok((label.clone(), coeff * dim))
        })
        .collect()
}

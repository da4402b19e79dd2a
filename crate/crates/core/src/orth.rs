//! Fusion ring of `O_N^+`.
//!
//! Irreducibles are labelled by `n >= 0` (label 0 is trivial, label 1 the
//! fundamental), every label is self-conjugate and
//! `V^r ⊠ V^s ≅ V^{r+s} ⊕ V^{r+s-2} ⊕ ... ⊕ V^{|r-s|}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::chebyshev::dim_orth;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrthLabel(pub usize);

impl OrthLabel {
    pub const TRIVIAL: OrthLabel = OrthLabel(0);
    pub const FUNDAMENTAL: OrthLabel = OrthLabel(1);

    /// Every irreducible of `O_N^+` is self-conjugate.
    pub fn conjugate(self) -> Self {
        self
    }
}

impl fmt::Display for OrthLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for OrthLabel {
    fn from(n: usize) -> Self {
        OrthLabel(n)
    }
}

/// A direct sum `⊕ mult · V^label`. Zero multiplicities are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FusionSum {
    terms: BTreeMap<OrthLabel, BigUint>,
}

impl FusionSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: OrthLabel) -> Self {
        let mut s = Self::new();
        s.add(label, BigUint::one());
        s
    }

    /// The unit of the fusion ring.
    pub fn unit() -> Self {
        Self::single(OrthLabel::TRIVIAL)
    }

    pub fn add(&mut self, label: OrthLabel, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.terms.entry(label).or_default() += mult;
    }

    pub fn multiplicity(&self, label: OrthLabel) -> BigUint {
        self.terms.get(&label).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (OrthLabel, &BigUint)> {
        self.terms.iter().map(|(l, m)| (*l, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tensor product of two direct sums, distributed over the terms.
    pub fn fuse(&self, other: &FusionSum) -> FusionSum {
        let mut out = FusionSum::new();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                let m = ma * mb;
                for (c, _) in fuse_orth(a, b).iter() {
                    out.add(c, m.clone());
                }
            }
        }
        out
    }

    pub fn fuse_label(&self, label: OrthLabel) -> FusionSum {
        self.fuse(&FusionSum::single(label))
    }

    /// `Σ mult · dim_orth(label, N)`.
    pub fn total_dim(&self, big_n: u64) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (l, m) in self.iter() {
            total += m * dim_orth(l.0, big_n)?;
        }
        Ok(total)
    }
}

impl fmt::Display for FusionSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(l, m)| format!("{l}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn fuse_orth(r: OrthLabel, s: OrthLabel) -> FusionSum {
    let mut out = FusionSum::new();
    let (r, s) = (r.0, s.0);
    for l in 0..=r.min(s) {
        out.add(OrthLabel(r + s - 2 * l), BigUint::one());
    }
    out
}

/// Left-to-right iterated fusion of a non-empty sequence of labels.
pub fn fuse_orth_many(labels: &[OrthLabel]) -> Result<FusionSum> {
    let (first, rest) = labels
        .split_first()
        .ok_or_else(|| domain("fuse_orth_many needs at least one label"))?;
    Ok(rest
        .iter()
        .fold(FusionSum::single(*first), |acc, &l| acc.fuse_label(l)))
}

/// `h(χ_1^k)`: multiplicity of the trivial label in the `k`-th tensor power
/// of the fundamental corepresentation.
pub fn char_moment_orth(k: usize) -> BigUint {
    let mut acc = FusionSum::unit();
    for _ in 0..k {
        acc = acc.fuse_label(OrthLabel::FUNDAMENTAL);
    }
    acc.multiplicity(OrthLabel::TRIVIAL)
}

/// True iff `d_r d_s` equals the dimension of the decomposition of `r ⊠ s`.
pub fn dim_check_fusion(r: OrthLabel, s: OrthLabel, big_n: u64) -> Result<bool> {
    let lhs = dim_orth(r.0, big_n)? * dim_orth(s.0, big_n)?;
    Ok(lhs == fuse_orth(r, s).total_dim(big_n)?)
}

/// `binom(2m, m) / (m + 1)`.
pub fn catalan(m: usize) -> BigUint {
    // binom(2m, m) = prod_{i=1}^{m} (m + i) / i, exact at every step
    let mut binom = BigUint::one();
    for i in 1..=m {
        binom = binom * BigUint::from(m + i) / BigUint::from(i);
    }
    binom / BigUint::from(m + 1)
}

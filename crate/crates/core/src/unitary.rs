//! Fusion ring of `U_N^+`.
//!
//! Irreducibles are indexed by words in the free monoid on two letters
//! `a = g1`, `b = g2`, equipped with the antimultiplicative involution that
//! swaps the letters. Fusion is
//! `U^g ⊠ U^h ≅ ⊕_{g = ασ, h = σ̄β} U^{αβ}`.
//!
//! Writing `z` for the free Haar unitary and `χ_k` for the `O_N^+`
//! characters, `χ_a = z χ_1` and `χ_b = χ_1 z^{-1}`, and every `χ_g`
//! factors as a single alternating monomial
//! `z^{ε(1)} χ_{k(1)} z^{ε(2)} ... χ_{k(n)} z^{ε(n+1)}`.
//! [`alternating_form`] reads that monomial off the word directly;
//! [`char_expand_oracle`] rebuilds it by multiplying characters in the
//! free product, which keeps the two routes independent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::chebyshev::{cheby_u_exact, dim_orth};
use crate::error::{domain, Error, Result};
use crate::orth::{fuse_orth, OrthLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    G1,
    G2,
}

impl Letter {
    pub fn bar(self) -> Self {
        match self {
            Letter::G1 => Letter::G2,
            Letter::G2 => Letter::G1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::G1 => 'a',
            Letter::G2 => 'b',
        }
    }
}

/// A word in the free monoid `F_2^+`. Ordered by length, then
/// lexicographically with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn g1() -> Self {
        Self(vec![Letter::G1])
    }

    pub fn g2() -> Self {
        Self(vec![Letter::G2])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word as a string over `{a, b}`; empty for the unit.
    pub fn to_letters(&self) -> String {
        self.0.iter().map(|l| l.as_char()).collect()
    }

    /// Reverse and swap the letters.
    pub fn involution(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.bar()).collect())
    }

    /// The `index`-th word of length `len` in lexicographic order; bit
    /// `len - 1 - i` of `index` selects letter `i`.
    pub fn from_index(len: usize, index: u64) -> Self {
        Self(
            (0..len)
                .map(|i| {
                    if (index >> (len - 1 - i)) & 1 == 1 {
                        Letter::G2
                    } else {
                        Letter::G1
                    }
                })
                .collect(),
        )
    }

    /// All `2^len` words of a given length, lexicographically.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = FreeWord> {
        assert!(len < 64, "word length {len} too large to enumerate");
        (0..1u64 << len).map(move |i| FreeWord::from_index(len, i))
    }

    /// All `2^{max_len+1} - 1` words of length at most `max_len`.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = FreeWord> {
        (0..=max_len).flat_map(FreeWord::all_of_len)
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Displays the unit as `e`.
impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&self.to_letters())
        }
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        word_parse(s)
    }
}

impl Mul<&FreeWord> for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        FreeWord(self.0.iter().chain(rhs.0.iter()).copied().collect())
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: FreeWord) -> FreeWord {
        &self * &rhs
    }
}

/// Parses a word over `{a, b}`. The empty string is the unit.
pub fn word_parse(text: &str) -> Result<FreeWord> {
    text.chars()
        .enumerate()
        .map(|(i, c)| match c {
            'a' => Ok(Letter::G1),
            'b' => Ok(Letter::G2),
            other => Err(Error::Parse(format!(
                "invalid letter {other:?} at position {i} in word {text:?} (expected 'a' or 'b')"
            ))),
        })
        .collect::<Result<Vec<_>>>()
        .map(FreeWord)
}

pub fn involution(w: &FreeWord) -> FreeWord {
    w.involution()
}

/// Direct sum of `U_N^+` irreducibles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UFusionSum {
    terms: BTreeMap<FreeWord, u64>,
}

impl UFusionSum {
    pub fn add(&mut self, w: FreeWord, mult: u64) {
        if mult > 0 {
            *self.terms.entry(w).or_default() += mult;
        }
    }

    pub fn multiplicity(&self, w: &FreeWord) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FreeWord, u64)> {
        self.terms.iter().map(|(w, m)| (w, *m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_dim(&self, big_n: u64) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (w, m) in self.iter() {
            total += dim_unitary(w, big_n)? * m;
        }
        Ok(total)
    }
}

impl fmt::Display for UFusionSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(w, m)| format!("{w}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// One term `αβ` for every suffix `σ` of `g` whose conjugate is a prefix
/// of `h`.
///
/// The terms are pairwise distinct because each has length
/// `|g| + |h| - 2|σ|`, so the result is multiplicity-free.
pub fn fuse_unitary(g: &FreeWord, h: &FreeWord) -> UFusionSum {
    let (gl, hl) = (g.letters(), h.letters());
    let mut out = UFusionSum::default();
    for k in 0..=gl.len().min(hl.len()) {
        let (alpha, sigma) = gl.split_at(gl.len() - k);
        let (prefix, beta) = hl.split_at(k);
        // σ̄ reads σ backwards with letters swapped
        let matches = sigma.iter().rev().zip(prefix).all(|(s, p)| s.bar() == *p);
        if matches {
            out.add(FreeWord(alpha.iter().chain(beta).copied().collect()), 1);
        }
    }
    out
}

/// Exponents `ε(1..=n+1)` of `z` and Chebyshev indices `k(1..=n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlternatingForm {
    pub eps: Vec<i8>,
    pub blocks: Vec<usize>,
}

impl AlternatingForm {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `Σ_s |ε(s)|`.
    pub fn eps_weight(&self) -> u32 {
        self.eps.iter().map(|e| e.unsigned_abs() as u32).sum()
    }

    /// Checks the sign pattern: interior exponents are `±1`, the first is in
    /// `{0, +1}` and the last in `{0, -1}`.
    pub fn is_well_formed(&self) -> bool {
        let n = self.blocks.len();
        if self.eps.len() != n + 1 || self.blocks.contains(&0) {
            return false;
        }
        if n == 0 {
            return self.eps == [0];
        }
        let interior_ok = self.eps[1..n].iter().all(|e| e.abs() == 1);
        interior_ok && matches!(self.eps[0], 0 | 1) && matches!(self.eps[n], 0 | -1)
    }
}

impl fmt::Display for AlternatingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, e) in self.eps.iter().enumerate() {
            match e {
                0 => {}
                1 => out.push_str("z "),
                e => out.push_str(&format!("z^{e} ")),
            }
            if let Some(k) = self.blocks.get(i) {
                out.push_str(&format!("χ{k} "));
            }
        }
        let out = out.trim_end();
        f.write_str(if out.is_empty() { "1" } else { out })
    }
}

/// Reads the alternating form off the word: blocks are the maximal runs in
/// which consecutive letters differ.
pub fn alternating_form(w: &FreeWord) -> AlternatingForm {
    let letters = w.letters();
    let (first, last) = match (letters.first(), letters.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => {
            return AlternatingForm {
                eps: vec![0],
                blocks: vec![],
            }
        }
    };

    let mut eps = vec![if first == Letter::G1 { 1 } else { 0 }];
    let mut blocks = Vec::new();
    let mut run = 1;
    for pair in letters.windows(2) {
        if pair[0] == pair[1] {
            blocks.push(run);
            run = 1;
            eps.push(if pair[0] == Letter::G1 { 1 } else { -1 });
        } else {
            run += 1;
        }
    }
    blocks.push(run);
    eps.push(if last == Letter::G2 { -1 } else { 0 });
    AlternatingForm { eps, blocks }
}

// Reduced words in the free product C[Z] * R(O_N^+): no zero powers of z,
// no trivial characters, z-powers and characters alternate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Factor {
    Z(i32),
    Chi(usize),
}

type Monomial = Vec<Factor>;

#[derive(Debug, Default)]
struct Combination(BTreeMap<Monomial, i64>);

impl Combination {
    fn add(&mut self, m: Monomial, c: i64) {
        let entry = self.0.entry(m).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.0.retain(|_, v| *v != 0);
        }
    }

    fn absorb(&mut self, other: Combination, scale: i64) {
        for (m, c) in other.0 {
            self.add(m, c * scale);
        }
    }
}

fn letter_char(l: Letter) -> Monomial {
    match l {
        Letter::G1 => vec![Factor::Z(1), Factor::Chi(1)],
        Letter::G2 => vec![Factor::Chi(1), Factor::Z(-1)],
    }
}

/// Product of two reduced monomials, reduced again at the junction.
fn multiply(left: &[Factor], right: &[Factor]) -> Combination {
    let mut out = Combination::default();
    match (left.split_last(), right.split_first()) {
        (Some((Factor::Z(a), lrest)), Some((Factor::Z(b), rrest))) => {
            let s = a + b;
            if s == 0 {
                out.absorb(multiply(lrest, rrest), 1);
            } else {
                let mut m = lrest.to_vec();
                m.push(Factor::Z(s));
                m.extend_from_slice(rrest);
                out.add(m, 1);
            }
        }
        (Some((Factor::Chi(j), lrest)), Some((Factor::Chi(k), rrest))) => {
            for (c, _) in fuse_orth(OrthLabel(*j), OrthLabel(*k)).iter() {
                if c.0 == 0 {
                    out.absorb(multiply(lrest, rrest), 1);
                } else {
                    let mut m = lrest.to_vec();
                    m.push(Factor::Chi(c.0));
                    m.extend_from_slice(rrest);
                    out.add(m, 1);
                }
            }
        }
        _ => {
            let mut m = left.to_vec();
            m.extend_from_slice(right);
            out.add(m, 1);
        }
    }
    out
}

fn monomial_to_form(m: &[Factor]) -> Result<AlternatingForm> {
    let mut eps = Vec::new();
    let mut blocks = Vec::new();
    let mut pending = 0i32;
    for f in m {
        match *f {
            Factor::Z(e) => pending = e,
            Factor::Chi(k) => {
                eps.push(pending);
                blocks.push(k);
                pending = 0;
            }
        }
    }
    eps.push(pending);
    let eps = eps
        .into_iter()
        .map(|e| {
            if e.abs() <= 1 {
                Ok(e as i8)
            } else {
                Err(Error::Consistency(format!(
                    "z exponent {e} in a character monomial"
                )))
            }
        })
        .collect::<Result<Vec<i8>>>()?;
    Ok(AlternatingForm { eps, blocks })
}

/// Builds `χ_w` letter by letter through
/// `χ_{w s} = χ_w χ_s - [w ends with s̄] χ_{w minus last letter}`,
/// multiplying in the free product of the circle and the `O_N^+` character
/// ring. Fails if more than one monomial survives any step.
pub fn char_expand_oracle(w: &FreeWord) -> Result<AlternatingForm> {
    let mut prev: Monomial = Vec::new();
    let mut cur: Monomial = Vec::new();
    let letters = w.letters();
    for (i, &s) in letters.iter().enumerate() {
        let mut next = multiply(&cur, &letter_char(s));
        if i > 0 && letters[i - 1] == s.bar() {
            next.add(prev.clone(), -1);
        }
        let mut survivors = next.0.into_iter();
        let single = match (survivors.next(), survivors.next()) {
            (Some((m, 1)), None) => m,
            (first, second) => {
                return Err(Error::Consistency(format!(
                    "character of {} (prefix of {w}) did not reduce to one monomial: {:?} {:?}",
                    FreeWord(letters[..=i].to_vec()),
                    first,
                    second
                )))
            }
        };
        prev = std::mem::replace(&mut cur, single);
    }
    monomial_to_form(&cur)
}

/// Dimension of `U^w`: the product of `u_{k(s)}(N)` over the blocks.
pub fn dim_unitary(w: &FreeWord, big_n: u64) -> Result<BigUint> {
    if big_n < 2 {
        return Err(domain(format!("N must be at least 2, got {big_n}")));
    }
    alternating_form(w)
        .blocks
        .iter()
        .try_fold(BigUint::one(), |acc, &k| Ok(acc * dim_orth(k, big_n)?))
}

/// Dimension of `U^w` from `d(w s) = N d(w) - [w ends with s̄] d(w minus
/// last letter)`, which is fusion with a single generator.
pub fn dim_unitary_recursive(w: &FreeWord, big_n: u64) -> Result<BigUint> {
    if big_n < 2 {
        return Err(domain(format!("N must be at least 2, got {big_n}")));
    }
    let n = BigInt::from(big_n);
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    let letters = w.letters();
    for (i, &s) in letters.iter().enumerate() {
        let mut next = &n * &cur;
        if i > 0 && letters[i - 1] == s.bar() {
            next -= &prev;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur.to_biguint()
        .ok_or_else(|| Error::Consistency(format!("negative dimension for {w}")))
}

pub fn dim_check_fusion_unitary(g: &FreeWord, h: &FreeWord, big_n: u64) -> Result<bool> {
    let lhs = dim_unitary(g, big_n)? * dim_unitary(h, big_n)?;
    Ok(lhs == fuse_unitary(g, h).total_dim(big_n)?)
}

/// `u_k(N)` for the block sizes, handy for table output.
pub fn block_dims(form: &AlternatingForm, big_n: u64) -> Vec<BigInt> {
    let n = BigInt::from(big_n);
    form.blocks.iter().map(|&k| cheby_u_exact(k, &n)).collect()
}

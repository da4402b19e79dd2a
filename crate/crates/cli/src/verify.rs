use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qfusion::chebyshev::{coeff_ratio, ChebyParams};
use qfusion::multiplier::{a_coeff, BOUND_SLACK};
use qfusion::orth::{catalan, char_moment_orth, dim_check_fusion, fuse_orth, FusionSum, OrthLabel};
use qfusion::spectral::{semicircle_moment, DEFAULT_SUBDIVISIONS};
use qfusion::unitary::{
    alternating_form, char_expand_oracle, dim_check_fusion_unitary, dim_unitary,
    dim_unitary_recursive, fuse_unitary, FreeWord, Letter,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Fusion,
    Decay,
    Moments,
    Forms,
    Dims,
}

/// Scale knobs; `None` selects the per-suite default.
#[derive(Debug, Clone, Default)]
pub struct VerifyOpts {
    pub max_len: Option<usize>,
    pub max_label: Option<usize>,
    pub dims: Option<Vec<u64>>,
    pub grid: Option<usize>,
    pub random: Option<usize>,
    pub seed: u64,
    pub t0: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: u64,
}

impl Tally {
    fn check(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn finish(self, name: &'static str) -> CheckResult {
        CheckResult {
            name,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

pub fn run(suite: Suite, opts: &VerifyOpts) -> Vec<CheckResult> {
    match suite {
        Suite::Fusion => fusion(opts),
        Suite::Decay => decay(opts),
        Suite::Moments => moments(),
        Suite::Forms => forms(opts),
        Suite::Dims => dims(opts),
    }
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::new(
        (0..len)
            .map(|_| if rng.gen() { Letter::G1 } else { Letter::G2 })
            .collect(),
    )
}

/// `count` words of length in `min_len..=max_len`.
fn random_words_between<R: Rng>(
    rng: &mut R,
    min_len: usize,
    max_len: usize,
    count: usize,
) -> Vec<FreeWord> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(min_len..=max_len);
            FreeWord::new(
                (0..len)
                    .map(|_| if rng.gen() { Letter::G1 } else { Letter::G2 })
                    .collect(),
            )
        })
        .collect()
}

fn fusion(opts: &VerifyOpts) -> Vec<CheckResult> {
    let max_label = opts.max_label.unwrap_or(12);
    let orth_dims = opts.dims.clone().unwrap_or_else(|| vec![2, 3, 4, 5]);
    let unit_dims: Vec<u64> = opts
        .dims
        .clone()
        .map(|d| d.into_iter().filter(|&n| n >= 2).collect())
        .unwrap_or_else(|| vec![3, 4]);
    let max_len = opts.max_len.unwrap_or(6);
    let random = opts.random.unwrap_or(10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut out = Vec::new();

    let mut t = Tally::default();
    for &n in &orth_dims {
        for r in 0..=max_label {
            for s in 0..=max_label {
                t.check(dim_check_fusion(OrthLabel(r), OrthLabel(s), n).unwrap_or(false));
            }
        }
    }
    out.push(t.finish("orth_dimension_consistency"));

    let mut t = Tally::default();
    for r in 0..=max_label {
        for s in 0..=max_label {
            let sum = fuse_orth(OrthLabel(r), OrthLabel(s));
            let free = sum.iter().all(|(_, m)| *m == BigUint::from(1u32));
            t.check(free && sum == fuse_orth(OrthLabel(s), OrthLabel(r)));
        }
    }
    out.push(t.finish("orth_multiplicity_free_symmetric"));

    let mut t = Tally::default();
    let assoc_max = max_label.min(10);
    for a in 0..=assoc_max {
        for b in 0..=assoc_max {
            for c in 0..=assoc_max {
                let (a, b, c) = (OrthLabel(a), OrthLabel(b), OrthLabel(c));
                let left = fuse_orth(a, b).fuse_label(c);
                let right = FusionSum::single(a).fuse(&fuse_orth(b, c));
                t.check(left == right);
            }
        }
    }
    out.push(t.finish("orth_associativity"));

    let mut t = Tally::default();
    for n in 1..=max_label.max(1) * 4 {
        let s = fuse_orth(OrthLabel(1), OrthLabel(n));
        t.check(
            s.len() == 2
                && s.multiplicity(OrthLabel(n - 1)) == BigUint::from(1u32)
                && s.multiplicity(OrthLabel(n + 1)) == BigUint::from(1u32),
        );
    }
    out.push(t.finish("orth_character_recursion"));

    let words: Vec<FreeWord> = FreeWord::all_up_to(max_len).collect();
    let mut t = Tally::default();
    for &n in &unit_dims {
        for g in &words {
            for h in &words {
                t.check(dim_check_fusion_unitary(g, h, n).unwrap_or(false));
            }
        }
    }
    out.push(t.finish("unit_dimension_consistency_exhaustive"));

    let mut t = Tally::default();
    for &n in &unit_dims {
        for _ in 0..random {
            let g = random_word(&mut rng, 10);
            let h = random_word(&mut rng, 10);
            t.check(dim_check_fusion_unitary(&g, &h, n).unwrap_or(false));
        }
    }
    out.push(t.finish("unit_dimension_consistency_random"));

    let mut t = Tally::default();
    for g in &words {
        for h in &words {
            let sum = fuse_unitary(g, h);
            let free = sum.iter().all(|(_, m)| m == 1);
            let conj = fuse_unitary(&h.involution(), &g.involution());
            let mirrored = sum.len() == conj.len()
                && sum
                    .iter()
                    .all(|(w, _)| conj.multiplicity(&w.involution()) == 1);
            t.check(free && mirrored);
        }
    }
    out.push(t.finish("unit_multiplicity_free_conjugation"));

    out
}

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![lo];
    }
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

/// True if every step of `values` increases by more than a relative 1e-14.
fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] > w[0] * (1.0 + 1e-14))
}

fn decay(opts: &VerifyOpts) -> Vec<CheckResult> {
    let dims = opts.dims.clone().unwrap_or_else(|| vec![3, 4, 5, 6]);
    let points = opts.grid.unwrap_or(50);
    let max_len = opts.max_len.unwrap_or(12);
    let max_level = 60;

    let mut orth_decay = Tally::default();
    let mut orth_contract = Tally::default();
    let mut orth_monotone = Tally::default();
    let mut unit_decay = Tally::default();
    let mut unit_contract = Tally::default();
    let mut unit_monotone = Tally::default();
    let words: Vec<FreeWord> = FreeWord::all_up_to(max_len).collect();

    for &n in &dims {
        let Ok(params) = ChebyParams::new(n, opts.t0) else {
            orth_decay.check(false);
            continue;
        };
        let c = params.decay_constant();
        let ts = grid(opts.t0, n as f64, points);
        let envelope = |t: f64, level: usize| c * (t / n as f64).powi(level as i32);

        for level in 0..=max_level {
            let mut series = Vec::with_capacity(ts.len());
            for &t in &ts {
                let v = coeff_ratio(level, t, &params).unwrap_or(f64::NAN);
                orth_decay.check(v > 0.0 && v <= envelope(t, level) + BOUND_SLACK);
                let at_top = t == n as f64;
                orth_contract.check(
                    v > 0.0 && v <= 1.0 && (level != 0 || v == 1.0) && (!at_top || v == 1.0),
                );
                series.push(v);
            }
            if level > 0 {
                orth_monotone.check(strictly_increasing(&series));
            }
        }

        for w in &words {
            let mut series = Vec::with_capacity(ts.len());
            for &t in &ts {
                let v = a_coeff(w, t, &params).unwrap_or(f64::NAN);
                unit_decay.check(v > 0.0 && v <= envelope(t, w.len()) + BOUND_SLACK);
                let at_top = t == n as f64;
                unit_contract.check(
                    v > 0.0 && v <= 1.0 && (!w.is_empty() || v == 1.0) && (!at_top || v == 1.0),
                );
                series.push(v);
            }
            if !w.is_empty() {
                unit_monotone.check(strictly_increasing(&series));
            }
        }
    }

    vec![
        orth_decay.finish("orth_decay_bound"),
        orth_contract.finish("orth_contraction"),
        orth_monotone.finish("orth_increasing_in_t"),
        unit_decay.finish("unit_decay_bound"),
        unit_contract.finish("unit_contraction"),
        unit_monotone.finish("unit_increasing_in_t"),
    ]
}

fn moments() -> Vec<CheckResult> {
    let mut even = Tally::default();
    let mut odd = Tally::default();
    for m in 0..=8usize {
        let fused = char_moment_orth(2 * m);
        let closed = catalan(m);
        let quad = semicircle_moment(2 * m as u32, DEFAULT_SUBDIVISIONS).unwrap_or(f64::NAN);
        let closed_f = closed.to_f64().unwrap_or(f64::NAN);
        even.check(fused == closed && (quad - closed_f).abs() <= 1e-8);

        let fused_odd = char_moment_orth(2 * m + 1);
        let quad_odd =
            semicircle_moment(2 * m as u32 + 1, DEFAULT_SUBDIVISIONS).unwrap_or(f64::NAN);
        odd.check(fused_odd == BigUint::from(0u32) && quad_odd.abs() <= 1e-12);
    }
    vec![
        even.finish("even_moments_fusion_catalan_quadrature"),
        odd.finish("odd_moments_vanish"),
    ]
}

fn forms(opts: &VerifyOpts) -> Vec<CheckResult> {
    let max_len = opts.max_len.unwrap_or(10);
    let mut eq = Tally::default();
    let mut shape = Tally::default();
    for w in FreeWord::all_up_to(max_len) {
        let fast = alternating_form(&w);
        eq.check(char_expand_oracle(&w).map(|o| o == fast).unwrap_or(false));
        let repeats = w.letters().windows(2).filter(|p| p[0] == p[1]).count();
        shape.check(
            fast.is_well_formed()
                && fast.blocks.iter().sum::<usize>() == w.len()
                && (w.is_empty() || fast.block_count() == repeats + 1),
        );
    }
    vec![eq.finish("form_equals_oracle"), shape.finish("form_shape")]
}

fn dims(opts: &VerifyOpts) -> Vec<CheckResult> {
    let dims = opts.dims.clone().unwrap_or_else(|| vec![2, 3, 4]);
    let exhaustive = opts.max_len.unwrap_or(8);
    let random = opts.random.unwrap_or(10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut exh = Tally::default();
    let mut rnd = Tally::default();
    let mut inv = Tally::default();
    let words: Vec<FreeWord> = FreeWord::all_up_to(exhaustive).collect();
    let sampled = random_words_between(
        &mut rng,
        exhaustive + 1,
        exhaustive.max(12).max(exhaustive + 1),
        random,
    );
    for &n in &dims {
        let agree = |w: &FreeWord| match (dim_unitary(w, n), dim_unitary_recursive(w, n)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        for w in &words {
            exh.check(agree(w));
            inv.check(
                w.involution().involution() == *w
                    && dim_unitary(w, n).ok() == dim_unitary(&w.involution(), n).ok(),
            );
        }
        for w in &sampled {
            rnd.check(agree(w));
        }
    }
    vec![
        exh.finish("block_product_equals_recursion_exhaustive"),
        rnd.finish("block_product_equals_recursion_random"),
        inv.finish("involution_invariance"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> VerifyOpts {
        VerifyOpts {
            seed: 42,
            t0: 2.5,
            ..VerifyOpts::default()
        }
    }

    #[test]
    fn grid_endpoints_exact() {
        let g = grid(2.5, 3.0, 50);
        assert_eq!(g.len(), 50);
        assert_eq!(g[0], 2.5);
        assert_eq!(g[49], 3.0);
    }

    #[test]
    fn small_suites_pass() {
        let small = VerifyOpts {
            max_len: Some(4),
            max_label: Some(5),
            random: Some(50),
            grid: Some(5),
            ..opts()
        };
        for suite in [
            Suite::Fusion,
            Suite::Decay,
            Suite::Moments,
            Suite::Forms,
            Suite::Dims,
        ] {
            for r in run(suite, &small) {
                assert!(r.cases > 0, "{suite:?} {}", r.name);
                assert_eq!(r.failures, 0, "{suite:?} {}", r.name);
            }
        }
    }

    #[test]
    fn forms_case_count() {
        let r = run(Suite::Forms, &opts());
        assert_eq!(r[0].cases, 2047);
    }
}

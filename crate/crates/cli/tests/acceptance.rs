//! Acceptance criteria. Every criterion runs, prints one PASS/FAIL line, and
//! the test fails at the end if any criterion failed.
//!
//! Run with `cargo test -p qfusion-cli --test acceptance -- --nocapture` to
//! see the report.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qfusion::chebyshev::{coeff_ratio, dim_orth, ChebyParams};
use qfusion::multiplier::{
    a_coeff, approx_identity_weights, choose_truncation, r_of, tail_bound_orth, BoundParams, Group,
    Label,
};
use qfusion::orth::{catalan, char_moment_orth, fuse_orth, OrthLabel};
use qfusion::spectral::{
    empirical_moments, ks_distance, semicircle_moment, semicircle_sample, spectrum_interval,
    Algebra,
};
use qfusion::unitary::{
    alternating_form, char_expand_oracle, dim_unitary, dim_unitary_recursive, fuse_unitary,
    FreeWord, Letter,
};

const SEED: u64 = 42;
const T0: f64 = 2.5;
const BOUND_SLACK: f64 = 1e-12;
const STRICT_SLACK: f64 = 1e-14;
const QUAD_TOL: f64 = 1e-8;
const ODD_TOL: f64 = 1e-12;
const WEIGHT_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_word(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(min_len..=max_len);
    FreeWord::new(
        (0..len)
            .map(|_| if rng.gen() { Letter::G1 } else { Letter::G2 })
            .collect(),
    )
}

/// 50 points from `t0` to `N`, endpoints exact.
fn grid(n: u64) -> Vec<f64> {
    let hi = n as f64;
    (0..50)
        .map(|i| {
            if i == 49 {
                hi
            } else {
                T0 + (hi - T0) * i as f64 / 49.0
            }
        })
        .collect()
}

/// Envelope `C_{t0} (t/N)^n`, computed from q(t0) directly.
fn envelope(t: f64, n: u64, level: usize) -> f64 {
    let q0 = (T0 + (T0 * T0 - 4.0).sqrt()) / 2.0;
    (t / n as f64).powi(level as i32) / (1.0 - q0.powi(-2))
}

fn ac1_moments() -> Outcome {
    let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
    let mut worst = 0.0f64;
    for (m, &value) in expected.iter().enumerate() {
        let fused = char_moment_orth(2 * m);
        let closed = catalan(m);
        let quad = semicircle_moment(2 * m as u32, 10_000).map_err(|e| e.to_string())?;
        ensure(fused == BigUint::from(value), || {
            format!("fusion count m={m}: {fused}")
        })?;
        ensure(closed == BigUint::from(value), || {
            format!("catalan({m}) = {closed}")
        })?;
        let err = (quad - value as f64).abs();
        worst = worst.max(err);
        ensure(err <= QUAD_TOL, || {
            format!("quadrature m={m}: {quad} (err {err:e})")
        })?;

        let odd_k = 2 * m + 1;
        let odd_quad = semicircle_moment(odd_k as u32, 10_000).map_err(|e| e.to_string())?;
        ensure(char_moment_orth(odd_k) == BigUint::from(0u32), || {
            format!("odd fusion k={odd_k}")
        })?;
        ensure(odd_quad.abs() <= ODD_TOL, || {
            format!("odd quadrature k={odd_k}: {odd_quad:e}")
        })?;
    }
    Ok(format!("m=0..8, max quadrature error {worst:.1e}"))
}

fn ac2_orth_dims() -> Outcome {
    let mut cases = 0;
    for n in 2..=5u64 {
        for r in 0..=12 {
            for s in 0..=12 {
                let lhs = dim_orth(r, n).unwrap() * dim_orth(s, n).unwrap();
                let rhs: BigUint = fuse_orth(OrthLabel(r), OrthLabel(s))
                    .iter()
                    .map(|(l, m)| m * dim_orth(l.0, n).unwrap())
                    .sum();
                ensure(lhs == rhs, || format!("r={r} s={s} N={n}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases exact"))
}

fn unit_dims_agree(g: &FreeWord, h: &FreeWord, n: u64) -> bool {
    let lhs = dim_unitary(g, n).unwrap() * dim_unitary(h, n).unwrap();
    let rhs: BigUint = fuse_unitary(g, h)
        .iter()
        .map(|(w, m)| dim_unitary(w, n).unwrap() * m)
        .sum();
    lhs == rhs
}

fn ac3_unit_dims() -> Outcome {
    let words: Vec<FreeWord> = FreeWord::all_up_to(6).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pairs: Vec<(FreeWord, FreeWord)> = (0..10_000)
        .map(|_| (random_word(&mut rng, 0, 10), random_word(&mut rng, 0, 10)))
        .collect();
    let mut cases = 0;
    for n in [3u64, 4] {
        for g in &words {
            for h in &words {
                ensure(unit_dims_agree(g, h, n), || format!("{g} ⊠ {h} at N={n}"))?;
                cases += 1;
            }
        }
        for (g, h) in &pairs {
            ensure(unit_dims_agree(g, h, n), || format!("{g} ⊠ {h} at N={n}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases exact (seed {SEED})"))
}

fn ac4_forms_and_dims() -> Outcome {
    let mut forms = 0;
    for w in FreeWord::all_up_to(10) {
        let oracle = char_expand_oracle(&w).map_err(|e| e.to_string())?;
        ensure(oracle == alternating_form(&w), || {
            format!("form mismatch at {w}")
        })?;
        forms += 1;
    }
    ensure(forms == 2047, || format!("{forms} words enumerated"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sampled: Vec<FreeWord> = (0..10_000).map(|_| random_word(&mut rng, 9, 12)).collect();
    let mut dims = 0;
    for n in 2..=4u64 {
        for w in FreeWord::all_up_to(8).chain(sampled.iter().cloned()) {
            ensure(
                dim_unitary(&w, n).unwrap() == dim_unitary_recursive(&w, n).unwrap(),
                || format!("dimension mismatch at {w}, N={n}"),
            )?;
            dims += 1;
        }
    }
    Ok(format!("{forms} forms, {dims} dimension cases"))
}

fn ac5_decay() -> Outcome {
    let mut cases = 0u64;
    let words: Vec<FreeWord> = FreeWord::all_up_to(12).collect();
    for n in 3..=6u64 {
        let params = ChebyParams::new(n, T0).unwrap();
        for t in grid(n) {
            for level in 0..=60 {
                let v = coeff_ratio(level, t, &params).unwrap();
                let bound = envelope(t, n, level);
                ensure(v > 0.0 && v <= bound + BOUND_SLACK, || {
                    format!("u_{level}({t})/u_{level}({n}) = {v:e} > {bound:e}")
                })?;
                cases += 1;
            }
            for w in &words {
                let v = a_coeff(w, t, &params).unwrap();
                let bound = envelope(t, n, w.len());
                ensure(v > 0.0 && v <= bound + BOUND_SLACK, || {
                    format!("a_{t}({w}) = {v:e} > {bound:e} at N={n}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, slack {BOUND_SLACK:e}"))
}

fn check_net_series(series: &[f64], trivial: bool, what: &str) -> Result<(), String> {
    for &v in series {
        ensure(v > 0.0 && v <= 1.0, || {
            format!("{what}: coefficient {v} outside (0, 1]")
        })?;
    }
    if trivial {
        ensure(series.iter().all(|&v| v == 1.0), || {
            format!("{what}: trivial label not exactly 1")
        })?;
        return Ok(());
    }
    ensure(*series.last().unwrap() == 1.0, || {
        format!("{what}: value at t = N is not 1")
    })?;
    for pair in series.windows(2) {
        ensure(pair[1] > pair[0] * (1.0 + STRICT_SLACK), || {
            format!(
                "{what}: not strictly increasing ({} -> {})",
                pair[0], pair[1]
            )
        })?;
    }
    Ok(())
}

fn ac6_contraction() -> Outcome {
    let mut series_count = 0;
    let words: Vec<FreeWord> = FreeWord::all_up_to(12).collect();
    for n in 3..=6u64 {
        let params = ChebyParams::new(n, T0).unwrap();
        let ts = grid(n);
        for level in 0..=60 {
            let s: Vec<f64> = ts
                .iter()
                .map(|&t| coeff_ratio(level, t, &params).unwrap())
                .collect();
            check_net_series(&s, level == 0, &format!("orth level {level}, N={n}"))?;
            series_count += 1;
        }
        for w in &words {
            let s: Vec<f64> = ts
                .iter()
                .map(|&t| a_coeff(w, t, &params).unwrap())
                .collect();
            check_net_series(&s, w.is_empty(), &format!("unit word {w}, N={n}"))?;
            series_count += 1;
        }
    }
    Ok(format!(
        "{series_count} coefficient series on 50-point grids"
    ))
}

fn cli_bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_qfusion"))
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn ac7_truncation() -> Outcome {
    let bounds = BoundParams::orth(1.0, T0).unwrap();
    let bounds_seq: Vec<f64> = (0..=300)
        .map(|m| tail_bound_orth(2.5, m, 3, &bounds).unwrap())
        .collect();
    ensure(bounds_seq.windows(2).all(|w| w[1] <= w[0]), || {
        "tail bound increased in m".into()
    })?;
    ensure(*bounds_seq.last().unwrap() < 1e-12, || {
        "tail bound does not tend to 0".into()
    })?;

    let mut ms = Vec::new();
    for k in 1..=6 {
        let eps = 10f64.powi(-k);
        let cert =
            choose_truncation(2.5, eps, 3, Group::Orth, &bounds).map_err(|e| e.to_string())?;
        ensure(cert.tail_bound <= eps, || format!("k={k}: bound above eps"))?;
        if cert.m > 0 {
            let before = tail_bound_orth(2.5, cert.m - 1, 3, &bounds).unwrap();
            ensure(before > eps, || format!("k={k}: m={} not minimal", cert.m))?;
        }
        ms.push(cert.m);

        let golden_path = golden_dir().join(format!("certify_o_t2.5_N3_D1_eps1e-{k}.jsonl"));
        let golden = std::fs::read(&golden_path)
            .map_err(|e| format!("missing golden file {}: {e}", golden_path.display()))?;
        for _ in 0..2 {
            let out = Command::new(cli_bin())
                .args([
                    "certify", "--group", "o", "--t", "2.5", "--N", "3", "--D", "1",
                ])
                .arg("--eps")
                .arg(format!("1e-{k}"))
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || {
                format!("k={k}: exit {:?}", out.status.code())
            })?;
            ensure(out.stdout == golden, || {
                format!(
                    "k={k}: output differs from golden file\n{}",
                    String::from_utf8_lossy(&out.stdout)
                )
            })?;
        }
    }
    Ok(format!("minimal m = {ms:?}, golden files byte-identical"))
}

fn ac8_involution() -> Outcome {
    let words: Vec<FreeWord> = FreeWord::all_up_to(8).collect();
    let mut pairs = 0;
    for g in &words {
        ensure(g.involution().involution() == *g, || {
            format!("involution not involutive at {g}")
        })?;
        for h in words.iter().filter(|h| g.len() + h.len() <= 8) {
            ensure(
                (g * h).involution() == &h.involution() * &g.involution(),
                || format!("not antimultiplicative at ({g}, {h})"),
            )?;
            pairs += 1;
        }
    }
    for n in 3..=4u64 {
        let params = ChebyParams::new(n, T0).unwrap();
        for w in &words {
            let wbar = w.involution();
            ensure(
                dim_unitary(w, n).unwrap() == dim_unitary(&wbar, n).unwrap(),
                || format!("d({w}) != d({wbar}) at N={n}"),
            )?;
            for t in [T0, 2.8, n as f64 - 0.1, n as f64] {
                let (a, b) = (
                    a_coeff(w, t, &params).unwrap(),
                    a_coeff(&wbar, t, &params).unwrap(),
                );
                ensure(a == b, || {
                    format!("a_{t}({w}) = {a} but a_{t}({wbar}) = {b}")
                })?;
            }
        }
    }
    Ok(format!("{} words, {pairs} pairs", words.len()))
}

fn ac9_sampling() -> Outcome {
    let start = Instant::now();
    let samples = semicircle_sample(SEED, 1_000_000);
    ensure(samples.iter().all(|x| x.abs() <= 2.0), || {
        "sample outside [-2, 2]".into()
    })?;
    let m = empirical_moments(&samples, 4);
    let target = [0.0, 1.0, 0.0, 2.0];
    let tol = [0.01, 0.01, 0.03, 0.05];
    for i in 0..4 {
        ensure((m[i] - target[i]).abs() <= tol[i], || {
            format!(
                "m{} = {} not within {} of {}",
                i + 1,
                m[i],
                tol[i],
                target[i]
            )
        })?;
    }
    let ks = ks_distance(&semicircle_sample(SEED, 100_000));
    ensure(ks < 0.01, || format!("KS distance {ks}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "moments [{:.4}, {:.4}, {:.4}, {:.4}], KS {ks:.4}, {:.2}s",
        m[0],
        m[1],
        m[2],
        m[3],
        elapsed.as_secs_f64()
    ))
}

fn ac10_spectrum() -> Outcome {
    for n in 2..=10u64 {
        let red = spectrum_interval(Algebra::Reduced, n).map_err(|e| e.to_string())?;
        let full = spectrum_interval(Algebra::Full, n).map_err(|e| e.to_string())?;
        ensure(red == (-2.0, 2.0), || format!("reduced at N={n}: {red:?}"))?;
        ensure(full == (-(n as f64), n as f64), || {
            format!("full at N={n}: {full:?}")
        })?;
    }
    Ok("N = 2..10".into())
}

fn ac11_weights() -> Outcome {
    let mut checked = 0;
    for n in 3..=6u64 {
        let params = ChebyParams::new(n, T0).unwrap();
        for t in [T0, 2.75, n as f64 - 0.25] {
            let orth =
                approx_identity_weights(Group::Orth, t, 1, &params).map_err(|e| e.to_string())?;
            let expected_o = [
                (Label::Orth(OrthLabel(0)), 1.0),
                (Label::Orth(OrthLabel(1)), t),
            ];
            let r = r_of(t, &params).unwrap();
            let unit =
                approx_identity_weights(Group::Unit, t, 1, &params).map_err(|e| e.to_string())?;
            let expected_u = [
                (Label::Unit(FreeWord::unit()), 1.0),
                (Label::Unit(FreeWord::g1()), r * t),
                (Label::Unit(FreeWord::g2()), r * t),
            ];
            for (got, want) in [(&orth[..], &expected_o[..]), (&unit[..], &expected_u[..])] {
                ensure(got.len() == want.len(), || {
                    format!("{} weights at N={n}", got.len())
                })?;
                for ((gl, gv), (wl, wv)) in got.iter().zip(want) {
                    ensure(gl == wl && (gv - wv).abs() <= WEIGHT_TOL, || {
                        format!("N={n} t={t}: ({gl}, {gv}) vs ({wl}, {wv})")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} weights within {WEIGHT_TOL:e}"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("AC1 moment triple agreement", ac1_moments),
        ("AC2 dimension consistency (O_N^+)", ac2_orth_dims),
        ("AC3 dimension consistency (U_N^+)", ac3_unit_dims),
        ("AC4 form oracle and dimension routes", ac4_forms_and_dims),
        ("AC5 decay certificates", ac5_decay),
        ("AC6 contraction and convergence", ac6_contraction),
        ("AC7 truncation certificates", ac7_truncation),
        ("AC8 involution properties", ac8_involution),
        ("AC9 semicircle sampling", ac9_sampling),
        ("AC10 spectrum intervals", ac10_spectrum),
        ("AC11 approximate-identity weights", ac11_weights),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn quadrature_matches_pi_scaled_density() {
    // sanity: the density normalisation used by the moments
    let total = semicircle_moment(0, 10_000).unwrap();
    assert!((total - 1.0).abs() < 1e-10);
    assert!((qfusion::spectral::semicircle_density(0.0) - 1.0 / PI).abs() < 1e-16);
    let c = catalan(8).to_f64().unwrap();
    assert_eq!(c, 1430.0);
}

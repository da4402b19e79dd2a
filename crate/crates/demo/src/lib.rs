//! WebAssembly bindings behind `www/index.html`.
//!
//! Each exported function is a thin wrapper over a plain Rust function so the
//! logic can be tested natively.

use wasm_bindgen::prelude::*;

use qfusion::chebyshev::{coeff_ratio, dim_orth, ChebyParams};
use qfusion::multiplier::a_coeff;
use qfusion::orth::{fuse_orth, OrthLabel};
use qfusion::spectral::semicircle_sample;
use qfusion::unitary::{alternating_form, dim_unitary, fuse_unitary, word_parse};

fn orth_label(text: &str) -> Result<OrthLabel, String> {
    text.trim()
        .parse()
        .map(OrthLabel)
        .map_err(|_| format!("expected a non-negative integer label, got {text:?}"))
}

/// Points `(t, coefficient)` for `t` evenly spaced over `[t0, N]`, flattened.
pub fn curve(group: &str, label: &str, n: u32, t0: f64, samples: u32) -> Result<Vec<f64>, String> {
    let params = ChebyParams::new(n.into(), t0).map_err(|e| e.to_string())?;
    if samples < 2 {
        return Err("need at least two sample points".into());
    }
    let hi = f64::from(n);
    let ts = (0..samples).map(|i| {
        if i + 1 == samples {
            hi
        } else {
            t0 + (hi - t0) * f64::from(i) / f64::from(samples - 1)
        }
    });
    let mut out = Vec::with_capacity(2 * samples as usize);
    match group {
        "o" => {
            let level = orth_label(label)?.0;
            for t in ts {
                out.push(t);
                out.push(coeff_ratio(level, t, &params).map_err(|e| e.to_string())?);
            }
        }
        "u" => {
            let w = word_parse(label.trim()).map_err(|e| e.to_string())?;
            for t in ts {
                out.push(t);
                out.push(a_coeff(&w, t, &params).map_err(|e| e.to_string())?);
            }
        }
        other => return Err(format!("unknown group {other:?}")),
    }
    Ok(out)
}

/// Normalised histogram of `count` semicircle samples over `bins` equal
/// bins of `[-2, 2]`, so the bars are directly comparable with the density.
pub fn histogram(seed: u64, count: u32, bins: u32) -> Result<Vec<f64>, String> {
    if bins == 0 || count == 0 {
        return Err("bins and count must be positive".into());
    }
    let width = 4.0 / f64::from(bins);
    let mut h = vec![0.0; bins as usize];
    for x in semicircle_sample(seed, count as usize) {
        let i = (((x + 2.0) / width) as usize).min(bins as usize - 1);
        h[i] += 1.0;
    }
    let scale = 1.0 / (f64::from(count) * width);
    h.iter_mut().for_each(|v| *v *= scale);
    Ok(h)
}

/// Decomposition of `left ⊗ right`, one tab-separated line per summand:
/// label, multiplicity, dimension at `N` and, for words, the alternating form.
pub fn fusion(group: &str, left: &str, right: &str, n: u32) -> Result<Vec<String>, String> {
    let n = u64::from(n);
    match group {
        "o" => {
            let sum = fuse_orth(orth_label(left)?, orth_label(right)?);
            sum.iter()
                .map(|(l, m)| {
                    let d = dim_orth(l.0, n).map_err(|e| e.to_string())?;
                    Ok(format!("{l}\t{m}\t{d}\t"))
                })
                .collect()
        }
        "u" => {
            let g = word_parse(left.trim()).map_err(|e| e.to_string())?;
            let h = word_parse(right.trim()).map_err(|e| e.to_string())?;
            fuse_unitary(&g, &h)
                .iter()
                .map(|(w, m)| {
                    let d = dim_unitary(w, n).map_err(|e| e.to_string())?;
                    Ok(format!("{w}\t{m}\t{d}\t{}", alternating_form(w)))
                })
                .collect()
        }
        other => Err(format!("unknown group {other:?}")),
    }
}

#[wasm_bindgen(js_name = coefficientCurve)]
pub fn coefficient_curve(
    group: &str,
    label: &str,
    n: u32,
    t0: f64,
    samples: u32,
) -> Result<Vec<f64>, JsError> {
    curve(group, label, n, t0, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = semicircleHistogram)]
pub fn semicircle_histogram(seed: u32, count: u32, bins: u32) -> Result<Vec<f64>, JsError> {
    histogram(seed.into(), count, bins).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = fuseLabels)]
pub fn fuse_labels(group: &str, left: &str, right: &str, n: u32) -> Result<Vec<String>, JsError> {
    fusion(group, left, right, n).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_end_at_one() {
        for (group, label) in [("o", "4"), ("u", "abba")] {
            let c = curve(group, label, 3, 2.5, 11).unwrap();
            assert_eq!(c.len(), 22);
            assert_eq!(c[0], 2.5);
            assert_eq!(c[20], 3.0);
            assert_eq!(c[21], 1.0);
            assert!(c.chunks(2).all(|p| p[1] > 0.0 && p[1] <= 1.0));
        }
        assert!(curve("o", "x", 3, 2.5, 11).is_err());
        assert!(curve("o", "1", 2, 2.5, 11).is_err());
    }

    #[test]
    fn histogram_is_a_density() {
        let h = histogram(42, 20_000, 40).unwrap();
        let mass: f64 = h.iter().map(|v| v * 0.1).sum();
        assert!((mass - 1.0).abs() < 1e-12);
        // peak near 1/π in the middle bins
        assert!((h[20] - 1.0 / std::f64::consts::PI).abs() < 0.03);
    }

    #[test]
    fn fusion_lines() {
        assert_eq!(
            fusion("o", "1", "1", 3).unwrap(),
            vec!["0\t1\t1\t", "2\t1\t8\t"]
        );
        let u = fusion("u", "a", "b", 3).unwrap();
        assert_eq!(u, vec!["e\t1\t1\t1", "ab\t1\t8\tz χ2 z^-1"]);
    }
}

//! Running integrals anchored at an arbitrary base node.
//!
//! Both routines return `I[k] = integral from x[base] to x[k] of f`, signed, so
//! nodes left of the base carry negative-orientation integrals.

/// Exact integral over `[a, b]` of the quadratic interpolating `(x[k], f[k])`.
fn quadratic_integral(x: [f64; 3], f: [f64; 3], a: f64, b: f64) -> f64 {
    // Newton form in s = t - x[0]: f0 + d1 s + d2 s (s - h1)
    let h1 = x[1] - x[0];
    let d1 = (f[1] - f[0]) / h1;
    let d2 = ((f[2] - f[1]) / (x[2] - x[1]) - d1) / (x[2] - x[0]);
    let (sa, sb) = (a - x[0], b - x[0]);
    let mean1 = 0.5 * (sa + sb);
    let mean2 = (sa * sa + sa * sb + sb * sb) / 3.0;
    (b - a) * (f[0] + d1 * mean1 + d2 * (mean2 - h1 * mean1))
}

/// Cumulative composite Simpson rule.
///
/// Nodes an even number of intervals away from the base are reached by whole
/// Simpson panels; the odd ones add a single-interval integral of the quadratic
/// through the neighbouring panel, which keeps fourth-order accuracy at every
/// node. Non-uniform spacing is handled exactly for quadratics. Grids with only
/// two nodes fall back to the trapezoid rule.
pub fn cumulative_simpson(x: &[f64], f: &[f64], base: usize) -> Vec<f64> {
    let n = x.len();
    assert_eq!(n, f.len());
    assert!(base < n);
    let mut out = vec![0.0; n];
    if n == 1 {
        return out;
    }
    if n == 2 {
        let t = 0.5 * (x[1] - x[0]) * (f[0] + f[1]);
        out[1 - base] = if base == 0 { t } else { -t };
        return out;
    }
    let tri = |a: usize| -> ([f64; 3], [f64; 3]) {
        ([x[a], x[a + 1], x[a + 2]], [f[a], f[a + 1], f[a + 2]])
    };

    // rightwards
    let mut acc = 0.0;
    let mut k = base;
    while k + 1 < n {
        if k + 2 < n {
            let (xs, fs) = tri(k);
            out[k + 1] = acc + quadratic_integral(xs, fs, x[k], x[k + 1]);
            acc += quadratic_integral(xs, fs, x[k], x[k + 2]);
            out[k + 2] = acc;
            k += 2;
        } else {
            let (xs, fs) = tri(k - 1);
            out[k + 1] = acc + quadratic_integral(xs, fs, x[k], x[k + 1]);
            k += 1;
        }
    }

    // leftwards
    let mut acc = 0.0;
    let mut k = base;
    while k >= 1 {
        if k >= 2 {
            let (xs, fs) = tri(k - 2);
            out[k - 1] = acc - quadratic_integral(xs, fs, x[k - 1], x[k]);
            acc -= quadratic_integral(xs, fs, x[k - 2], x[k]);
            out[k - 2] = acc;
            k -= 2;
        } else {
            let (xs, fs) = tri(k - 1);
            out[k - 1] = acc - quadratic_integral(xs, fs, x[k - 1], x[k]);
            k -= 1;
        }
    }
    out
}

/// Cumulative trapezoid rule anchored at `base`.
pub fn cumulative_trapezoid(x: &[f64], f: &[f64], base: usize) -> Vec<f64> {
    let n = x.len();
    assert_eq!(n, f.len());
    let mut out = vec![0.0; n];
    for k in base + 1..n {
        out[k] = out[k - 1] + 0.5 * (x[k] - x[k - 1]) * (f[k] + f[k - 1]);
    }
    for k in (0..base).rev() {
        out[k] = out[k + 1] - 0.5 * (x[k + 1] - x[k]) * (f[k] + f[k + 1]);
    }
    out
}

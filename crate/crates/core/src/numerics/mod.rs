//! Discrete operators shared by the analysis, canonicalization and
//! reconstruction modules.

pub mod interp;
pub mod quadrature;
pub mod stencil;

/// Two-grid order estimate `log2(e_coarse / e_fine)` for a halved step.
///
/// `None` when either error is zero or not finite, i.e. when the data is
/// reproduced exactly and no order can be measured.
pub fn two_grid_order(coarse: f64, fine: f64) -> Option<f64> {
    if coarse > 0.0 && fine > 0.0 && coarse.is_finite() && fine.is_finite() {
        Some((coarse / fine).log2())
    } else {
        None
    }
}

/// `n` equally spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|k| {
                if k == n - 1 {
                    b
                } else {
                    a + (b - a) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Uniform grid with spacing `h` through `anchor`, covering as much of `[a, b]` as possible.
pub fn anchored_grid(a: f64, b: f64, anchor: f64, h: f64) -> Vec<f64> {
    // nodes within rounding of an end are kept and clamped onto it
    let lo = ((a - anchor) / h - 1e-9).ceil() as i64;
    let hi = ((b - anchor) / h + 1e-9).floor() as i64;
    (lo..=hi).map(|k| (anchor + k as f64 * h).clamp(a, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints_exact() {
        let g = linspace(-1.0, 1.0, 201);
        assert_eq!(g[0], -1.0);
        assert_eq!(g[100], 0.0);
        assert_eq!(g[200], 1.0);
    }

    #[test]
    fn anchored_grid_contains_anchor() {
        let g = anchored_grid(0.3, 2.9, 1.0, 0.25);
        assert!(g.contains(&1.0));
        assert!(g[0] >= 0.3 && *g.last().unwrap() <= 2.9);
        assert_eq!(g.len(), 10);
        let g = anchored_grid(1.0 + 1e-14, 2.0 - 1e-14, 1.5, 0.05);
        assert_eq!(g.len(), 21);
        assert_eq!((g[0], g[20]), (1.0 + 1e-14, 2.0 - 1e-14));
    }

    #[test]
    fn order_of_exact_data_is_none() {
        assert_eq!(two_grid_order(0.0, 0.0), None);
        assert!((two_grid_order(4.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
    }
}

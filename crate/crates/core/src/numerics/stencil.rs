//! Finite-difference and interpolation weights on arbitrary node sets.
//!
//! Weights come from Fornberg's recursion, so the same routine yields central,
//! one-sided and interpolating (derivative order 0) stencils on uniform or
//! non-uniform grids. On a uniform grid the 3-point first-derivative weights
//! are exactly `(-1/2h, 0, 1/2h)`, which makes the tensor-product mixed
//! derivative coincide with the classic 4-point cross stencil.

/// Weights `w[k]` such that `sum_k w[k] f(nodes[k]) ~ f^(order)(x0)`.
pub fn fornberg_weights(x0: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(n > order, "need more nodes than the derivative order");
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Start index of a `width`-point window around node `i`, shifted inward at the ends.
pub fn window_start(i: usize, width: usize, n: usize) -> usize {
    let half = width / 2;
    i.saturating_sub(half).min(n - width)
}

/// Start index of a `width`-point window for an off-node point in interval `[k, k+1]`.
pub fn interval_window_start(k: usize, width: usize, n: usize) -> usize {
    let left = (width - 1) / 2;
    k.saturating_sub(left).min(n - width)
}

/// Precomputed derivative operator along one axis: for each node, a window start
/// and its weights.
#[derive(Debug, Clone)]
pub struct LineOperator {
    pub starts: Vec<usize>,
    pub weights: Vec<Vec<f64>>,
}

impl LineOperator {
    /// `width`-point operator for derivative `order` at every node of `x`.
    /// Interior nodes get centred windows; boundary nodes get one-sided ones.
    pub fn new(x: &[f64], order: usize, width: usize) -> Self {
        let n = x.len();
        let width = width.min(n);
        let mut starts = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let s = window_start(i, width, n);
            starts.push(s);
            weights.push(fornberg_weights(x[i], &x[s..s + width], order));
        }
        Self { starts, weights }
    }

    pub fn apply_at(&self, i: usize, f: impl Fn(usize) -> f64) -> f64 {
        let s = self.starts[i];
        self.weights[i].iter().enumerate().map(|(k, w)| w * f(s + k)).sum()
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        (0..f.len()).map(|i| self.apply_at(i, |k| f[k])).collect()
    }
}

/// Lagrange interpolation of samples `(x, f)` at `t` using a `width`-point window.
pub fn lagrange_at(x: &[f64], f: &[f64], t: f64, width: usize) -> f64 {
    let n = x.len();
    let width = width.min(n);
    let k = locate(x, t);
    let s = interval_window_start(k, width, n);
    let w = fornberg_weights(t, &x[s..s + width], 0);
    w.iter().zip(&f[s..s + width]).map(|(w, f)| w * f).sum()
}

/// Index `k` of the interval `[x[k], x[k+1]]` containing `t`, clamped to the grid.
pub fn locate(x: &[f64], t: f64) -> usize {
    let n = x.len();
    if n < 2 {
        return 0;
    }
    match x.partition_point(|&xi| xi <= t) {
        0 => 0,
        p if p >= n => n - 2,
        p => p - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_central_weights() {
        let h = 0.1;
        let w = fornberg_weights(0.0, &[-h, 0.0, h], 1);
        assert!((w[0] + 5.0).abs() < 1e-12 && w[1].abs() < 1e-12 && (w[2] - 5.0).abs() < 1e-12);
        let w2 = fornberg_weights(0.0, &[-h, 0.0, h], 2);
        assert!((w2[0] - 100.0).abs() < 1e-9 && (w2[1] + 200.0).abs() < 1e-9);
        let w5 = fornberg_weights(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 1);
        let expect = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in w5.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn polynomials_differentiated_exactly() {
        let x = [0.0, 0.3, 0.45, 1.0, 1.7];
        let f: Vec<f64> = x.iter().map(|t| t * t * t - 2.0 * t).collect();
        let d = LineOperator::new(&x, 1, 5).apply(&f);
        for (t, d) in x.iter().zip(d) {
            assert!((d - (3.0 * t * t - 2.0)).abs() < 1e-11);
        }
    }

    #[test]
    fn lagrange_reproduces_cubics() {
        let x: Vec<f64> = (0..7).map(|k| k as f64 * 0.25).collect();
        let f: Vec<f64> = x.iter().map(|t| 1.0 + t - t * t * t).collect();
        for t in [0.0, 0.1, 0.8, 1.33, 1.5] {
            let got = lagrange_at(&x, &f, t, 4);
            assert!((got - (1.0 + t - t * t * t)).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn locate_clamps() {
        let x = [0.0, 1.0, 2.0];
        assert_eq!(locate(&x, -1.0), 0);
        assert_eq!(locate(&x, 0.5), 0);
        assert_eq!(locate(&x, 1.0), 1);
        assert_eq!(locate(&x, 2.0), 1);
        assert_eq!(locate(&x, 9.0), 1);
    }
}

//! Monotone piecewise-cubic Hermite interpolation.

/// Cubic Hermite interpolant through increasing data with prescribed slopes.
///
/// Slopes are clipped with the Fritsch-Carlson condition so the interpolant is
/// monotone on every interval. Smooth data with exact slopes is left untouched,
/// and then the interpolant is fourth-order accurate.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    /// `x` strictly increasing, `y` non-decreasing, `slopes >= 0`.
    pub fn new(x: Vec<f64>, y: Vec<f64>, slopes: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 2 && y.len() == n && slopes.len() == n);
        let mut d = slopes;
        for k in 0..n - 1 {
            let delta = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
            if delta == 0.0 {
                d[k] = 0.0;
                d[k + 1] = 0.0;
                continue;
            }
            let a = d[k] / delta;
            let b = d[k + 1] / delta;
            let s = a * a + b * b;
            if s > 9.0 {
                let tau = 3.0 / s.sqrt();
                d[k] = tau * a * delta;
                d[k + 1] = tau * b * delta;
            }
        }
        Self { x, y, d }
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn range(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    /// Evaluate at `t`; exact at knots. Outside the knot range the end cubic is extended.
    pub fn eval(&self, t: f64) -> f64 {
        let k = super::stencil::locate(&self.x, t);
        let h = self.x[k + 1] - self.x[k];
        let s = (t - self.x[k]) / h;
        if s == 0.0 {
            return self.y[k];
        }
        if s == 1.0 {
            return self.y[k + 1];
        }
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.y[k] + h10 * h * self.d[k] + h01 * self.y[k + 1] + h11 * h * self.d[k + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_at_knots_and_monotone() {
        let x = vec![0.0, 1.0, 1.5, 4.0];
        let y = vec![0.0, 0.1, 3.0, 3.1];
        let c = MonotoneCubic::new(x.clone(), y.clone(), vec![5.0, 5.0, 5.0, 5.0]);
        for (a, b) in x.iter().zip(&y) {
            assert_eq!(c.eval(*a), *b);
        }
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=400 {
            let v = c.eval(4.0 * k as f64 / 400.0);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }

    #[test]
    fn fourth_order_with_exact_slopes() {
        let err = |n: usize| {
            let x: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
            let y: Vec<f64> = x.iter().map(|t| t.exp()).collect();
            let c = MonotoneCubic::new(x, y.clone(), y);
            (0..1000)
                .map(|k| {
                    let t = (k as f64 + 0.37) / 1000.0;
                    (c.eval(t) - t.exp()).abs()
                })
                .fold(0.0, f64::max)
        };
        assert!(err(11) / err(21) > 14.0);
    }
}

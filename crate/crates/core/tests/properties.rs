use std::collections::BTreeMap;

use lorentz_surfaces::bonnet::{self, initial_frame, FrameState, Seed};
use lorentz_surfaces::canonical::{canonical_gauge_transform, verify_canonical};
use lorentz_surfaces::corpus;
use lorentz_surfaces::io::chart_file::{chart_from_str, chart_to_string};
use lorentz_surfaces::minkowski::{boost, det3};
use lorentz_surfaces::natural::natural_residual;
use lorentz_surfaces::numerics::linspace;
use lorentz_surfaces::numerics::quadrature::cumulative_simpson;
use lorentz_surfaces::{cross, inner, Chart, Field, Grid, MinkowskiVec, Sign};
use proptest::prelude::*;

fn vec3() -> impl Strategy<Value = MinkowskiVec> {
    (-5.0..5.0, -5.0..5.0, -5.0..5.0).prop_map(|(a, b, c)| MinkowskiVec::new(a, b, c))
}

fn sign() -> impl Strategy<Value = Sign> {
    any::<bool>().prop_map(|b| if b { Sign::Plus } else { Sign::Minus })
}

fn cylinder_like(n: usize, f: f64, h: f64, eps: (Sign, Sign)) -> Chart {
    let g = Grid::new(linspace(0.0, 1.0, n), linspace(0.0, 1.0, n)).unwrap();
    Chart::new(g, Field::constant(n, n, f), Field::constant(n, n, h), (n / 2, n / 2), eps).unwrap()
}

proptest! {
    #[test]
    fn cross_product_is_the_determinant(a in vec3(), b in vec3(), c in vec3()) {
        let lhs = inner(&cross(&a, &b), &c);
        prop_assert!((lhs - det3(&a, &b, &c)).abs() <= 1e-12 * (1.0 + lhs.abs()));
        prop_assert!(inner(&cross(&a, &b), &a).abs() <= 1e-11);
    }

    #[test]
    fn boosts_are_isometries(a in vec3(), b in vec3(), k in 1usize..=2, phi in -2.0..2.0f64) {
        let (x, y) = (boost(&a, k, phi), boost(&b, k, phi));
        prop_assert!((inner(&x, &y) - inner(&a, &b)).abs() <= 1e-10 * (1.0 + inner(&a, &b).abs()));
    }

    #[test]
    fn chart_files_round_trip_bit_exactly(
        vals in prop::collection::vec(1e-3..1e3f64, 30),
        hs in prop::collection::vec(-1e6..1e6f64, 30),
        e1 in sign(), e2 in sign(),
    ) {
        let g = Grid::new(vec![0.1, 0.2, 0.30000000000000004, 0.7, 1.0], vec![-3.0, 1e-300, 2.5, 9.0, 11.0, 12.0]).unwrap();
        let mut chart = Chart::new(g, Field::from_vec(5, 6, vals).unwrap(), Field::from_vec(5, 6, hs).unwrap(), (1, 2), (e1, e2)).unwrap();
        chart.k = Some(chart.h.map(|x| x / 3.0));
        let text = chart_to_string(&chart, BTreeMap::new()).unwrap();
        prop_assert_eq!(chart_from_str(&text).unwrap(), chart);
    }

    #[test]
    fn gauges_keep_charts_canonical(
        delta in sign(), c1 in -5.0..5.0f64, c2 in -5.0..5.0f64, swap in any::<bool>(),
        which in 0usize..2,
    ) {
        let (name, u, v) = [("enneper1", (1.0, 2.0), (-1.0, 0.0)), ("enneper2", (0.5, 1.5), (0.5, 1.5))][which];
        let base = corpus::reference_chart(name, linspace(u.0, u.1, 21), linspace(v.0, v.1, 21), (u.0 + u.1) / 2.0, (v.0 + v.1) / 2.0).unwrap();
        let t = canonical_gauge_transform(&base, delta, c1, c2, swap).unwrap();
        prop_assert!(verify_canonical(&t, 1e-9).unwrap().pass);
        let r0 = natural_residual(&base).unwrap().max_abs;
        let r1 = natural_residual(&t).unwrap().max_abs;
        prop_assert!((r0 - r1).abs() <= 1e-9 * (1.0 + r0));
    }

    #[test]
    fn constant_data_residual_is_gauss_defect(f in 0.1..10.0f64, h in -3.0..3.0f64, e1 in sign(), e2 in sign()) {
        let want = (e1.value() * e2.value() - (f * h).powi(2)).abs();
        let got = natural_residual(&cylinder_like(9, f, h, (e1, e2))).unwrap().max_abs;
        prop_assert!((got - want).abs() <= 1e-12 * (1.0 + want));
        let exact = natural_residual(&cylinder_like(9, f, e1.value() / f, (Sign::Plus, Sign::Plus))).unwrap();
        prop_assert!(exact.max_abs <= 1e-12);
    }

    #[test]
    fn simpson_is_exact_for_quadratics(
        steps in prop::collection::vec(0.01..1.0f64, 2..40),
        (a, b, c) in (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64),
        base_frac in 0.0..1.0f64,
    ) {
        let mut x = vec![0.0];
        for h in &steps {
            x.push(x.last().unwrap() + h);
        }
        let base = (steps.len() as f64 * base_frac) as usize;
        let prim = |t: f64| a * t + b * t * t / 2.0 + c * t * t * t / 3.0;
        let ys: Vec<f64> = x.iter().map(|t| a + b * t + c * t * t).collect();
        let s = cumulative_simpson(&x, &ys, base);
        prop_assert_eq!(s[base], 0.0);
        for (t, got) in x.iter().zip(&s) {
            let want = prim(*t) - prim(x[base]);
            prop_assert!((got - want).abs() <= 1e-10 * (1.0 + want.abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reconstruction_follows_the_seed(phi in -1.0..1.0f64, k in 1usize..=2, shift in vec3(), f in 0.5..3.0f64) {
        let chart = cylinder_like(15, f, 0.5, (Sign::Plus, Sign::Minus));
        let std = bonnet::reconstruct(&chart, &Seed::Standard).unwrap();
        let s = initial_frame(f, &Seed::Standard).unwrap();
        let moved = FrameState {
            x_tan: boost(&s.x_tan, k, phi),
            y_tan: boost(&s.y_tan, k, phi),
            normal: boost(&s.normal, k, phi),
            position: boost(&s.position, k, phi) + shift,
        };
        let r = bonnet::reconstruct(&chart, &Seed::Custom(moved)).unwrap();
        let scale = 1.0 + std.mesh.iter().map(|x| x.max_abs()).fold(0.0, f64::max);
        for (a, b) in std.mesh.iter().zip(&r.mesh) {
            prop_assert!((boost(a, k, phi) + shift - *b).max_abs() <= 1e-9 * scale * phi.cosh());
        }
        prop_assert!(std.max_drift() < 1e-6);
    }
}

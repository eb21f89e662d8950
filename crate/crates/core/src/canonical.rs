//! Canonical isotropic coordinates.
//!
//! Given isotropic coordinates with an initial point `(u0, v0)`, the maps
//! `u~ = u~0 + int_{u0}^{u} sqrt|L(s, v0)| ds` and
//! `v~ = v~0 + int_{v0}^{v} sqrt|N(u0, s)| ds` produce coordinates with
//! `L~(u~, v~0) = eps1`, `N~(u~0, v~) = eps2`. This module builds those maps by
//! composite Simpson quadrature, pulls charts back through them, checks the
//! canonicity conditions, and applies the residual affine gauge freedom.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Chart, Field, Grid, Sign};
use crate::numerics::interp::MonotoneCubic;
use crate::numerics::quadrature::cumulative_simpson;
use crate::numerics::stencil::lagrange_at;
use crate::surface::{fundamental_forms_at, SurfaceProvider};

/// Strictly increasing map `p -> t` sampled at knots, with its derivative.
#[derive(Debug, Clone)]
pub struct MonotoneMap {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
    /// `dt/dp` at each knot.
    pub derivative: Vec<f64>,
    /// Index of the initial point among the knots.
    pub base_index: usize,
    /// Sign of the second-form coefficient along the base line.
    pub sign: Sign,
    forward: MonotoneCubic,
    inverse: MonotoneCubic,
}

impl MonotoneMap {
    pub fn new(knots: Vec<f64>, values: Vec<f64>, derivative: Vec<f64>, base_index: usize, sign: Sign) -> Result<Self> {
        let n = knots.len();
        if n < 2 || values.len() != n || derivative.len() != n {
            return Err(Error::Precondition("monotone map needs at least two matching samples".into()));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) || derivative.iter().any(|d| !(*d > 0.0)) {
            return Err(Error::Precondition("monotone map values must strictly increase".into()));
        }
        let forward = MonotoneCubic::new(knots.clone(), values.clone(), derivative.clone());
        let inverse = MonotoneCubic::new(
            values.clone(),
            knots.clone(),
            derivative.iter().map(|d| 1.0 / d).collect(),
        );
        Ok(Self { knots, values, derivative, base_index, sign, forward, inverse })
    }

    pub fn base_value(&self) -> f64 {
        self.values[self.base_index]
    }

    pub fn range(&self) -> (f64, f64) {
        (self.values[0], self.values[self.values.len() - 1])
    }

    pub fn eval(&self, p: f64) -> f64 {
        self.forward.eval(p)
    }

    /// Inverse map by monotone cubic interpolation; exact at knots.
    pub fn invert(&self, t: f64) -> Result<f64> {
        let (min, max) = self.range();
        let slack = 1e-12 * (1.0 + min.abs().max(max.abs()));
        if t < min - slack || t > max + slack {
            return Err(Error::Range { value: t, min, max });
        }
        Ok(self.inverse.eval(t))
    }

    /// `dt/dp` at an arbitrary `p` by cubic interpolation of the knot derivatives.
    pub fn derivative_at(&self, p: f64) -> f64 {
        lagrange_at(&self.knots, &self.derivative, p, 4)
    }
}

/// Build one canonical line map from samples of `L` (or `N`) along the base line.
fn line_map(
    axis: &[f64],
    coeff: &[f64],
    base_index: usize,
    origin: f64,
    coefficient: &'static str,
    param: &'static str,
) -> Result<MonotoneMap> {
    let scale = coeff.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let tol = 1e-10 * (1.0 + scale);
    let sign = Sign::of(coeff[base_index]).filter(|_| coeff[base_index].abs() > tol).ok_or(
        Error::NotGeneralType { coefficient, param, value: axis[base_index] },
    )?;
    // walk outwards from the base so the reported node is the first one reached
    let order = (base_index..axis.len()).chain((0..base_index).rev());
    for k in order {
        if coeff[k].abs() <= tol {
            return Err(Error::NotGeneralType { coefficient, param, value: axis[k] });
        }
        if Sign::of(coeff[k]) != Some(sign) {
            return Err(Error::KindChange { coefficient, param, value: axis[k] });
        }
    }
    let root: Vec<f64> = coeff.iter().map(|c| c.abs().sqrt()).collect();
    let values: Vec<f64> = cumulative_simpson(axis, &root, base_index)
        .into_iter()
        .map(|x| origin + x)
        .collect();
    MonotoneMap::new(axis.to_vec(), values, root, base_index, sign)
}

/// Canonical maps `(u -> u~, v -> v~)` with initial point `(u0, v0)` from a provider.
///
/// `u0` and `v0` must be nodes of `u_grid` and `v_grid`.
pub fn canonical_maps(
    provider: &dyn SurfaceProvider,
    u0: f64,
    v0: f64,
    u_grid: &[f64],
    v_grid: &[f64],
    tilde_u0: f64,
    tilde_v0: f64,
) -> Result<(MonotoneMap, MonotoneMap)> {
    let iu = Grid::index_of(u_grid, u0)
        .ok_or_else(|| Error::Precondition(format!("u0 = {u0} is not a node of the u grid")))?;
    let iv = Grid::index_of(v_grid, v0)
        .ok_or_else(|| Error::Precondition(format!("v0 = {v0} is not a node of the v grid")))?;
    let l_line = u_grid
        .par_iter()
        .map(|&u| Ok(fundamental_forms_at(&provider.jet(u, v0)?, u, v0)?.L))
        .collect::<Result<Vec<f64>>>()?;
    let n_line = v_grid
        .par_iter()
        .map(|&v| Ok(fundamental_forms_at(&provider.jet(u0, v)?, u0, v)?.N))
        .collect::<Result<Vec<f64>>>()?;
    Ok((
        line_map(u_grid, &l_line, iu, tilde_u0, "L", "u")?,
        line_map(v_grid, &n_line, iv, tilde_v0, "N", "v")?,
    ))
}

/// Canonical maps from the `L` and `N` fields a chart already carries.
pub fn canonical_maps_from_chart(chart: &Chart, tilde_u0: f64, tilde_v0: f64) -> Result<(MonotoneMap, MonotoneMap)> {
    let (l, n) = second_form_lines(chart)?;
    let (i0, j0) = (chart.u0_index, chart.v0_index);
    let l_line = l.row(j0).to_vec();
    let n_line = n.column(i0);
    Ok((
        line_map(&chart.grid.u, &l_line, i0, tilde_u0, "L", "u")?,
        line_map(&chart.grid.v, &n_line, j0, tilde_v0, "N", "v")?,
    ))
}

fn second_form_lines(chart: &Chart) -> Result<(&Field, &Field)> {
    match (&chart.l, &chart.n) {
        (Some(l), Some(n)) => Ok((l, n)),
        _ => Err(Error::Precondition("chart carries no L and N fields".into())),
    }
}

/// Uniform canonical grid through the map's base value, spanning its range with `n` nodes at most.
pub fn canonical_axis(map: &MonotoneMap, n: usize) -> Vec<f64> {
    let (a, b) = map.range();
    let h = (b - a) / (n.max(2) - 1) as f64;
    crate::numerics::anchored_grid(a, b, map.base_value(), h)
}

/// Pull a chart back to canonical coordinates through `maps`.
///
/// Off-node source values come from bicubic interpolation. With
/// `u' = du/du~ = 1 / sqrt|L(u, v0)|`: `F~ = F u' v'`, `L~ = L u'^2`,
/// `M~ = M u' v'`, `N~ = N v'^2`, `H~ = H`, `K~ = K`. The output signs are the
/// map signs, and the chart is flagged canonical when [`verify_canonical`]
/// passes at `verify_tol`.
pub fn resample_to_canonical(
    chart: &Chart,
    maps: &(MonotoneMap, MonotoneMap),
    canonical_u: &[f64],
    canonical_v: &[f64],
    verify_tol: f64,
) -> Result<Chart> {
    let (mu, mv) = maps;
    let grid = Grid::new(canonical_u.to_vec(), canonical_v.to_vec())?;
    let su: Vec<(f64, f64)> = canonical_u
        .iter()
        .map(|&t| mu.invert(t).map(|u| (u, 1.0 / mu.derivative_at(u))))
        .collect::<Result<_>>()?;
    let sv: Vec<(f64, f64)> = canonical_v
        .iter()
        .map(|&t| mv.invert(t).map(|v| (v, 1.0 / mv.derivative_at(v))))
        .collect::<Result<_>>()?;
    let i0 = Grid::index_of(canonical_u, mu.base_value()).ok_or_else(|| {
        Error::Precondition(format!("canonical u grid misses the initial value {}", mu.base_value()))
    })?;
    let j0 = Grid::index_of(canonical_v, mv.base_value()).ok_or_else(|| {
        Error::Precondition(format!("canonical v grid misses the initial value {}", mv.base_value()))
    })?;

    let src = &chart.grid;
    let pull = |field: &Field, law: fn(f64, f64, f64) -> f64| -> Field {
        let data: Vec<f64> = (0..grid.nu() * grid.nv())
            .into_par_iter()
            .map(|p| {
                let ((u, du), (v, dv)) = (su[p % grid.nu()], sv[p / grid.nu()]);
                law(field.sample(src, u, v), du, dv)
            })
            .collect();
        Field::from_vec(grid.nu(), grid.nv(), data).expect("sized")
    };
    let f = pull(&chart.f, |x, du, dv| x * du * dv);
    let h = pull(&chart.h, |x, _, _| x);
    let mut out = Chart::new(grid.clone(), f, h, (i0, j0), (mu.sign, mv.sign))?;
    out.l = chart.l.as_ref().map(|l| pull(l, |x, du, _| x * du * du));
    out.m = chart.m.as_ref().map(|m| pull(m, |x, du, dv| x * du * dv));
    out.n = chart.n.as_ref().map(|n| pull(n, |x, _, dv| x * dv * dv));
    out.k = chart.k.as_ref().map(|k| pull(k, |x, _, _| x));
    if out.l.is_some() && out.n.is_some() {
        out.canonical = verify_canonical(&out, verify_tol)?.pass;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalReport {
    pub u0: f64,
    pub v0: f64,
    pub eps1: Sign,
    pub eps2: Sign,
    /// `max |L(., v0) - eps1|`.
    pub l_line_max_dev: f64,
    /// `max |N(u0, .) - eps2|`.
    pub n_line_max_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Check `L(u, v0) = eps1` and `N(u0, v) = eps2` on the chart.
pub fn verify_canonical(chart: &Chart, tol: f64) -> Result<CanonicalReport> {
    let (l, n) = second_form_lines(chart)?;
    let (i0, j0) = (chart.u0_index, chart.v0_index);
    let e1 = chart.eps1.value();
    let e2 = chart.eps2.value();
    let l_dev = l.row(j0).iter().fold(0.0_f64, |m, x| m.max((x - e1).abs()));
    let n_dev = n.column(i0).iter().fold(0.0_f64, |m, x| m.max((x - e2).abs()));
    Ok(CanonicalReport {
        u0: chart.u0(),
        v0: chart.v0(),
        eps1: chart.eps1,
        eps2: chart.eps2,
        l_line_max_dev: l_dev,
        n_line_max_dev: n_dev,
        tolerance: tol,
        pass: l_dev <= tol && n_dev <= tol,
    })
}

/// Apply `u = delta u~ + c1, v = delta v~ + c2`, or with `swap` the renumbered
/// form `u = delta v~ + c1, v = delta u~ + c2`.
///
/// Non-swapped changes leave every coefficient unchanged (`delta^2 = 1`) and
/// only re-index the grid. A swap transposes the chart and maps
/// `(L, M, N, H) -> (-N, -M, -L, -H)`, `(eps1, eps2) -> (-eps2, -eps1)`.
pub fn canonical_gauge_transform(chart: &Chart, delta: Sign, c1: f64, c2: f64, swap: bool) -> Result<Chart> {
    let d = delta.value();
    let reverse = delta == Sign::Minus;
    let (nu, nv) = (chart.grid.nu(), chart.grid.nv());
    let axis = |x: &[f64], c: f64| -> Vec<f64> {
        let mut t: Vec<f64> = x.iter().map(|&p| d * (p - c)).collect();
        if reverse {
            t.reverse();
        }
        t
    };
    let idx = |k: usize, n: usize| if reverse { n - 1 - k } else { k };

    if !swap {
        let grid = Grid::new(axis(&chart.grid.u, c1), axis(&chart.grid.v, c2))?;
        let re = |f: &Field| Field::from_indexed(nu, nv, |i, j| f.at(idx(i, nu), idx(j, nv)));
        let mut out = Chart::new(
            grid,
            re(&chart.f),
            re(&chart.h),
            (idx(chart.u0_index, nu), idx(chart.v0_index, nv)),
            (chart.eps1, chart.eps2),
        )?;
        out.l = chart.l.as_ref().map(re);
        out.m = chart.m.as_ref().map(re);
        out.n = chart.n.as_ref().map(re);
        out.k = chart.k.as_ref().map(re);
        out.canonical = chart.canonical;
        return Ok(out);
    }

    // new u~ runs along old v, new v~ along old u
    let grid = Grid::new(axis(&chart.grid.v, c2), axis(&chart.grid.u, c1))?;
    let tr = |f: &Field, s: f64| Field::from_indexed(nv, nu, |i, j| s * f.at(idx(j, nu), idx(i, nv)));
    let mut out = Chart::new(
        grid,
        tr(&chart.f, 1.0),
        tr(&chart.h, -1.0),
        (idx(chart.v0_index, nv), idx(chart.u0_index, nu)),
        (chart.eps2.flip(), chart.eps1.flip()),
    )?;
    out.l = chart.n.as_ref().map(|n| tr(n, -1.0));
    out.m = chart.m.as_ref().map(|m| tr(m, -1.0));
    out.n = chart.l.as_ref().map(|l| tr(l, -1.0));
    out.k = chart.k.as_ref().map(|k| tr(k, 1.0));
    out.canonical = chart.canonical;
    Ok(out)
}

/// One-dimensional change of parameter `t -> (p(t), dp/dt)`.
pub type LineReparam<'a> = &'a (dyn Fn(f64) -> (f64, f64) + Sync);

/// Pull a chart back through arbitrary numeration-preserving maps
/// `u = phi(u~)`, `v = psi(v~)` onto the grid `(tu, tv)` with base node `base`.
///
/// Requires `phi' psi' > 0`; the transformation law is the one used by
/// [`resample_to_canonical`], and the signs are kept.
pub fn reparametrize(
    chart: &Chart,
    phi: LineReparam<'_>,
    psi: LineReparam<'_>,
    tu: Vec<f64>,
    tv: Vec<f64>,
    base: (usize, usize),
) -> Result<Chart> {
    let grid = Grid::new(tu, tv)?;
    let su: Vec<(f64, f64)> = grid.u.iter().map(|&t| phi(t)).collect();
    let sv: Vec<(f64, f64)> = grid.v.iter().map(|&t| psi(t)).collect();
    if su.iter().chain(&sv).any(|(_, d)| !(*d > 0.0)) {
        return Err(Error::Precondition("reparametrization must be increasing".into()));
    }
    let src = &chart.grid;
    let pull = |field: &Field, law: fn(f64, f64, f64) -> f64| {
        Field::from_indexed(grid.nu(), grid.nv(), |i, j| {
            let ((u, du), (v, dv)) = (su[i], sv[j]);
            law(field.sample(src, u, v), du, dv)
        })
    };
    let mut out = Chart::new(
        grid.clone(),
        pull(&chart.f, |x, du, dv| x * du * dv),
        pull(&chart.h, |x, _, _| x),
        base,
        (chart.eps1, chart.eps2),
    )?;
    out.l = chart.l.as_ref().map(|l| pull(l, |x, du, _| x * du * du));
    out.m = chart.m.as_ref().map(|m| pull(m, |x, du, dv| x * du * dv));
    out.n = chart.n.as_ref().map(|n| pull(n, |x, _, dv| x * dv * dv));
    out.k = chart.k.as_ref().map(|k| pull(k, |x, _, _| x));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, CorpusSurface};
    use crate::numerics::linspace;

    fn cone_origin() -> f64 {
        2.0 * std::f64::consts::SQRT_2 * 3f64.powf(0.25)
    }

    #[test]
    fn cone_map_matches_closed_form() {
        let g = linspace(-1.0, 1.0, 41);
        let c = cone_origin();
        let (mu, mv) = canonical_maps(&CorpusSurface::HyperbolicCone, 0.0, 0.0, &g, &g, c, c).unwrap();
        for (k, &u) in g.iter().enumerate() {
            let exact = c * (0.25 * u).exp();
            assert!((mu.values[k] - exact).abs() < 1e-8, "u={u}");
            assert!((mv.values[k] - exact).abs() < 1e-8);
        }
        assert_eq!(mu.sign, Sign::Plus);
        // inverse exact at knots, and derivative > 0 everywhere
        assert_eq!(mu.invert(mu.values[7]).unwrap(), g[7]);
        assert!(mu.derivative.iter().all(|d| *d > 0.0));
    }

    #[test]
    fn enneper_and_cylinder_maps_are_shifts() {
        let g = linspace(1.0, 2.0, 21);
        let h = linspace(-1.0, 0.0, 21);
        let (mu, mv) = canonical_maps(&CorpusSurface::Enneper1, 1.5, -0.5, &g, &h, 1.5, -0.5).unwrap();
        for k in 0..21 {
            assert!((mu.values[k] - g[k]).abs() < 1e-12);
            assert!((mv.values[k] - h[k]).abs() < 1e-12);
        }
        let t = linspace(0.0, 1.0, 11);
        let (mu, _) = canonical_maps(&CorpusSurface::HyperbolicCylinder, 0.5, 0.5, &t, &t, 3.0, 0.0).unwrap();
        assert!((mu.values[10] - 3.5).abs() < 1e-12);
        assert_eq!(mu.sign, Sign::Minus);
    }

    #[test]
    fn sphere_is_rejected() {
        let g = linspace(-1.0, 1.0, 11);
        let err = canonical_maps(&CorpusSurface::LorentzSphere, 0.0, 0.0, &g, &g, 0.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::NotGeneralType { coefficient: "L", .. }), "{err}");
    }

    #[test]
    fn sign_change_on_base_line_is_an_error() {
        let x = linspace(-1.0, 1.0, 5);
        let err = line_map(&x, &[1.0, 0.5, 0.2, -0.3, -1.0], 0, 0.0, "L", "u").unwrap_err();
        assert!(matches!(err, Error::KindChange { value, .. } if value == 0.5));
        let err = line_map(&x, &[1.0, 0.5, 0.0, 0.3, 1.0], 0, 0.0, "L", "u").unwrap_err();
        assert!(matches!(err, Error::NotGeneralType { value, .. } if value == 0.0));
    }

    #[test]
    fn range_error_outside_map() {
        let g = linspace(-1.0, 1.0, 11);
        let (mu, _) = canonical_maps(&CorpusSurface::Cylinder, 0.0, 0.0, &g, &g, 0.0, 0.0).unwrap();
        assert!(matches!(mu.invert(1.5), Err(Error::Range { .. })));
    }

    #[test]
    fn verify_examples() {
        let g = linspace(1.0, 2.0, 11);
        let h = linspace(-1.0, 0.0, 11);
        let c = corpus::reference_chart("enneper1", g, h, 1.5, -0.5).unwrap();
        let r = verify_canonical(&c, 1e-12).unwrap();
        assert!(r.pass && r.l_line_max_dev == 0.0 && r.n_line_max_dev == 0.0);

        let g = linspace(0.5, 1.5, 11);
        let c = corpus::reference_chart("enneper2", g.clone(), g, 1.0, 1.0).unwrap();
        assert_eq!((c.eps1, c.eps2), (Sign::Plus, Sign::Minus));
        assert!(verify_canonical(&c, 1e-12).unwrap().pass);

        let g = linspace(-1.0, 1.0, 21);
        let c = corpus::reference_chart("hyperbolic_cone", g.clone(), g.clone(), 0.0, 0.0).unwrap();
        let r = verify_canonical(&c, 1e-6).unwrap();
        let expect = g.iter().map(|u| (0.5 * 3f64.sqrt() * (0.5 * u).exp() - 1.0).abs()).fold(0.0, f64::max);
        assert!(!r.pass);
        assert!((r.l_line_max_dev - expect).abs() < 1e-14);
    }

    #[test]
    fn gauge_examples() {
        let g = linspace(1.0, 2.0, 11);
        let h = linspace(-1.0, 0.0, 11);
        let c = corpus::reference_chart("enneper1", g, h, 1.5, -0.5).unwrap();
        let same = canonical_gauge_transform(&c, Sign::Plus, 0.0, 0.0, false).unwrap();
        assert_eq!(same, c);
        let sw = canonical_gauge_transform(&c, Sign::Plus, 0.0, 0.0, true).unwrap();
        assert_eq!((sw.eps1, sw.eps2), (Sign::Minus, Sign::Minus));
        assert!(verify_canonical(&sw, 1e-12).unwrap().pass);
        assert!(sw.h.values().iter().all(|x| *x == 0.0));

        let t = linspace(0.0, 1.0, 9);
        let cyl = corpus::reference_chart("cylinder", t.clone(), t, 0.5, 0.5).unwrap();
        let flipped = canonical_gauge_transform(&cyl, Sign::Minus, 0.0, 0.0, false).unwrap();
        assert_eq!(flipped.grid.u[0], -1.0);
        assert!(verify_canonical(&flipped, 1e-12).unwrap().pass);
        assert!(flipped.f.values().iter().all(|x| *x == 2.0));
    }

    #[test]
    fn cylinder_resample_with_shift_maps() {
        let g = linspace(0.0, 1.0, 21);
        let c = corpus::reference_chart("cylinder", g.clone(), g.clone(), 0.5, 0.5).unwrap();
        let maps = canonical_maps_from_chart(&c, 10.0, 20.0).unwrap();
        let tu = canonical_axis(&maps.0, 21);
        let tv = canonical_axis(&maps.1, 21);
        let out = resample_to_canonical(&c, &maps, &tu, &tv, 1e-9).unwrap();
        assert!(out.canonical);
        assert!(out.f.values().iter().all(|x| (x - 2.0).abs() < 1e-12));
        assert!(out.h.values().iter().all(|x| (x - 0.5).abs() < 1e-12));
        assert_eq!(out.u0(), 10.0);
    }
}

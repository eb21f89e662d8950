//! Closed-form reference surfaces with analytic 2-jets.
//!
//! All six are written in isotropic coordinates. Four of them are functions of
//! `a = u - v` and `b = u + v` only; their jets come from the `(a, b)` partials
//! through [`ab_jet`]. Jets are differentiated by hand so the corpus can serve
//! as an oracle for the finite-difference machinery.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Chart, Field, Grid, Sign};
use crate::minkowski::MinkowskiVec;
use crate::surface::{Domain, SurfaceJet2, SurfaceProvider};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusSurface {
    Enneper1,
    Enneper2,
    LorentzSphere,
    Cylinder,
    HyperbolicCylinder,
    HyperbolicCone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    First,
    Second,
    Degenerate,
}

/// Closed-form coefficients and invariants at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct ReferenceForms {
    pub E: f64,
    pub F: f64,
    pub G: f64,
    pub L: f64,
    pub M: f64,
    pub N: f64,
    pub K: f64,
    pub H: f64,
}

pub const NAMES: [&str; 6] = [
    "enneper1",
    "enneper2",
    "lorentz_sphere",
    "cylinder",
    "hyperbolic_cylinder",
    "hyperbolic_cone",
];

impl CorpusSurface {
    pub const ALL: [CorpusSurface; 6] = [
        CorpusSurface::Enneper1,
        CorpusSurface::Enneper2,
        CorpusSurface::LorentzSphere,
        CorpusSurface::Cylinder,
        CorpusSurface::HyperbolicCylinder,
        CorpusSurface::HyperbolicCone,
    ];

    pub fn name(self) -> &'static str {
        NAMES[self as usize]
    }

    pub fn from_name(name: &str) -> Result<Self> {
        NAMES
            .iter()
            .position(|n| *n == name)
            .map(|k| Self::ALL[k])
            .ok_or_else(|| Error::UnknownSurface(name.to_string()))
    }

    pub fn kind(self) -> ReferenceKind {
        match self {
            CorpusSurface::Enneper2 => ReferenceKind::Second,
            CorpusSurface::LorentzSphere => ReferenceKind::Degenerate,
            _ => ReferenceKind::First,
        }
    }

    pub fn default_domain(self) -> Domain {
        use std::f64::consts::TAU;
        match self {
            CorpusSurface::Enneper1 => Domain::new((1.0, 2.0), (-1.0, 0.0)),
            CorpusSurface::Enneper2 => Domain::new((0.5, 1.5), (0.5, 1.5)),
            CorpusSurface::LorentzSphere => Domain::new((-1.0, 1.0), (-1.0, 1.0)),
            CorpusSurface::Cylinder | CorpusSurface::HyperbolicCylinder => {
                Domain::new((0.0, TAU), (0.0, TAU))
            }
            CorpusSurface::HyperbolicCone => Domain::new((-1.0, 1.0), (-1.0, 1.0)),
        }
    }

    pub fn parametrization(self) -> &'static str {
        match self {
            CorpusSurface::Enneper1 => "(u^3 - v^3 + 3u - 3v, -u^3 + v^3 + 3u - 3v, 3u^2 - 3v^2) / 6",
            CorpusSurface::Enneper2 => "(u^3 - v^3 + 3u - 3v, -u^3 + v^3 + 3u - 3v, 3u^2 + 3v^2) / 6",
            CorpusSurface::LorentzSphere => "(sinh(u-v) sech(u+v), cosh(u-v) sech(u+v), tanh(u+v))",
            CorpusSurface::Cylinder => "(u - v, cos(u+v), sin(u+v))",
            CorpusSurface::HyperbolicCylinder => "(sinh(u-v), cosh(u-v), u + v)",
            CorpusSurface::HyperbolicCone => {
                "(e^((u+v)/2) sinh(u-v), sqrt(3) e^((u+v)/2), e^((u+v)/2) cosh(u-v))"
            }
        }
    }

    pub fn notes(self) -> &'static str {
        match self {
            CorpusSurface::Enneper1 => "minimal Enneper-type surface, first kind, canonical (L = N = 1); singular on u = v",
            CorpusSurface::Enneper2 => "minimal Enneper-type surface, second kind, canonical (L = 1, N = -1); singular on u + v = 0",
            CorpusSurface::LorentzSphere => "constant H = 1, K = 1; H^2 - K = 0, not of general type",
            CorpusSurface::Cylinder => "constant H = 1/2, K = 0, canonical with L = M = N = 1",
            CorpusSurface::HyperbolicCylinder => "constant H = 1/2, K = 0, canonical with L = N = -1, M = 1",
            CorpusSurface::HyperbolicCone => "non-constant H, K = 0; isotropic but not canonical",
        }
    }

    pub fn reference(self, u: f64, v: f64) -> ReferenceForms {
        let (a, b) = (u - v, u + v);
        let zero = ReferenceForms { E: 0.0, F: 0.0, G: 0.0, L: 0.0, M: 0.0, N: 0.0, K: 0.0, H: 0.0 };
        match self {
            CorpusSurface::Enneper1 => ReferenceForms {
                F: 0.5 * a * a,
                L: 1.0,
                N: 1.0,
                K: -4.0 / a.powi(4),
                ..zero
            },
            CorpusSurface::Enneper2 => ReferenceForms {
                F: 0.5 * b * b,
                L: 1.0,
                N: -1.0,
                K: 4.0 / b.powi(4),
                ..zero
            },
            CorpusSurface::LorentzSphere => {
                let s2 = 2.0 / b.cosh().powi(2);
                ReferenceForms { F: s2, M: s2, K: 1.0, H: 1.0, ..zero }
            }
            CorpusSurface::Cylinder => {
                ReferenceForms { F: 2.0, L: 1.0, M: 1.0, N: 1.0, H: 0.5, ..zero }
            }
            CorpusSurface::HyperbolicCylinder => {
                ReferenceForms { F: 2.0, L: -1.0, M: 1.0, N: -1.0, H: 0.5, ..zero }
            }
            CorpusSurface::HyperbolicCone => {
                let e = (0.5 * b).exp();
                ReferenceForms {
                    F: 2.0 * b.exp(),
                    L: 0.5 * SQRT3 * e,
                    M: -0.5 * SQRT3 * e,
                    N: 0.5 * SQRT3 * e,
                    H: -0.25 * SQRT3 / e,
                    ..zero
                }
            }
        }
    }

    /// Closed-form canonical coordinates with initial point `(u0, v0)`, or
    /// `None` when the surface is not of general type.
    pub fn exact_canonical_map(
        self,
        (u0, v0): (f64, f64),
        (tu0, tv0): (f64, f64),
    ) -> Option<ExactCanonicalMap> {
        let shift = |p0: f64, t0: f64| LineMap::Shift { p0, t0 };
        match self {
            CorpusSurface::LorentzSphere => None,
            CorpusSurface::HyperbolicCone => {
                // sqrt(L(s, v0)) = 3^(1/4)/sqrt(2) e^((s + v0)/4), and symmetrically for N
                let c = 2.0 * std::f64::consts::SQRT_2 * 3f64.powf(0.25);
                Some(ExactCanonicalMap {
                    u: LineMap::Exp { p0: u0, t0: tu0, scale: c * (0.25 * v0).exp() },
                    v: LineMap::Exp { p0: v0, t0: tv0, scale: c * (0.25 * u0).exp() },
                })
            }
            _ => Some(ExactCanonicalMap { u: shift(u0, tu0), v: shift(v0, tv0) }),
        }
    }
}

/// Closed-form one-dimensional canonical map `p -> t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineMap {
    /// `t = t0 + (p - p0)`.
    Shift { p0: f64, t0: f64 },
    /// `t = t0 + scale (e^(p/4) - e^(p0/4))`.
    Exp { p0: f64, t0: f64, scale: f64 },
}

impl LineMap {
    pub fn forward(&self, p: f64) -> f64 {
        match *self {
            LineMap::Shift { p0, t0 } => t0 + (p - p0),
            LineMap::Exp { p0, t0, scale } => t0 + scale * ((0.25 * p).exp() - (0.25 * p0).exp()),
        }
    }

    pub fn inverse(&self, t: f64) -> f64 {
        match *self {
            LineMap::Shift { p0, t0 } => p0 + (t - t0),
            LineMap::Exp { p0, t0, scale } => 4.0 * ((0.25 * p0).exp() + (t - t0) / scale).ln(),
        }
    }

    /// `dt/dp` at `p`.
    pub fn derivative(&self, p: f64) -> f64 {
        match *self {
            LineMap::Shift { .. } => 1.0,
            LineMap::Exp { scale, .. } => 0.25 * scale * (0.25 * p).exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCanonicalMap {
    pub u: LineMap,
    pub v: LineMap,
}

impl SurfaceProvider for CorpusSurface {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet2> {
        Ok(match self {
            CorpusSurface::Enneper1 | CorpusSurface::Enneper2 => {
                let s = if *self == CorpusSurface::Enneper1 { -1.0 } else { 1.0 };
                let x = (1.0 / 6.0)
                    * MinkowskiVec::new(
                        u * u * u - v * v * v + 3.0 * u - 3.0 * v,
                        -u * u * u + v * v * v + 3.0 * u - 3.0 * v,
                        3.0 * u * u + s * 3.0 * v * v,
                    );
                SurfaceJet2 {
                    x,
                    x_u: MinkowskiVec::new(0.5 * (u * u + 1.0), 0.5 * (1.0 - u * u), u),
                    x_v: MinkowskiVec::new(-0.5 * (v * v + 1.0), 0.5 * (v * v - 1.0), s * v),
                    x_uu: MinkowskiVec::new(u, -u, 1.0),
                    x_uv: MinkowskiVec::ZERO,
                    x_vv: MinkowskiVec::new(-v, v, s),
                }
            }
            CorpusSurface::LorentzSphere => {
                let (a, b) = (u - v, u + v);
                let (sha, cha) = (a.sinh(), a.cosh());
                let s = 1.0 / b.cosh();
                let t = b.tanh();
                let s1 = -s * t;
                let s2 = s * (2.0 * t * t - 1.0);
                let g = MinkowskiVec::new(sha * s, cha * s, t);
                let g_a = MinkowskiVec::new(cha * s, sha * s, 0.0);
                let g_b = MinkowskiVec::new(sha * s1, cha * s1, s * s);
                let g_aa = MinkowskiVec::new(sha * s, cha * s, 0.0);
                let g_ab = MinkowskiVec::new(cha * s1, sha * s1, 0.0);
                let g_bb = MinkowskiVec::new(sha * s2, cha * s2, -2.0 * t * s * s);
                ab_jet(g, g_a, g_b, g_aa, g_ab, g_bb)
            }
            CorpusSurface::Cylinder => {
                let (a, b) = (u - v, u + v);
                let (sb, cb) = b.sin_cos();
                let z = MinkowskiVec::ZERO;
                ab_jet(
                    MinkowskiVec::new(a, cb, sb),
                    MinkowskiVec::new(1.0, 0.0, 0.0),
                    MinkowskiVec::new(0.0, -sb, cb),
                    z,
                    z,
                    MinkowskiVec::new(0.0, -cb, -sb),
                )
            }
            CorpusSurface::HyperbolicCylinder => {
                let (a, b) = (u - v, u + v);
                let (sha, cha) = (a.sinh(), a.cosh());
                let z = MinkowskiVec::ZERO;
                ab_jet(
                    MinkowskiVec::new(sha, cha, b),
                    MinkowskiVec::new(cha, sha, 0.0),
                    MinkowskiVec::new(0.0, 0.0, 1.0),
                    MinkowskiVec::new(sha, cha, 0.0),
                    z,
                    z,
                )
            }
            CorpusSurface::HyperbolicCone => {
                let (a, b) = (u - v, u + v);
                let e = (0.5 * b).exp();
                let (sha, cha) = (a.sinh(), a.cosh());
                let g = MinkowskiVec::new(e * sha, SQRT3 * e, e * cha);
                let g_a = MinkowskiVec::new(e * cha, 0.0, e * sha);
                let g_aa = MinkowskiVec::new(e * sha, 0.0, e * cha);
                ab_jet(g, g_a, 0.5 * g, g_aa, 0.5 * g_a, 0.25 * g)
            }
        })
    }

    fn domain(&self) -> Domain {
        // analytic everywhere; the default domain only guides grid choice
        Domain::new((f64::NEG_INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::INFINITY))
    }

    fn is_singular(&self, u: f64, v: f64) -> bool {
        let tol = 1e-9 * (1.0 + u.abs() + v.abs());
        match self {
            CorpusSurface::Enneper1 => (u - v).abs() <= tol,
            CorpusSurface::Enneper2 => (u + v).abs() <= tol,
            _ => false,
        }
    }
}

/// Jet of `x(u, v) = g(u - v, u + v)` from the partials of `g` in `(a, b)`.
fn ab_jet(
    g: MinkowskiVec,
    g_a: MinkowskiVec,
    g_b: MinkowskiVec,
    g_aa: MinkowskiVec,
    g_ab: MinkowskiVec,
    g_bb: MinkowskiVec,
) -> SurfaceJet2 {
    SurfaceJet2 {
        x: g,
        x_u: g_a + g_b,
        x_v: g_b - g_a,
        x_uu: g_aa + 2.0 * g_ab + g_bb,
        x_uv: g_bb - g_aa,
        x_vv: g_aa - 2.0 * g_ab + g_bb,
    }
}

/// A corpus surface with its metadata.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub surface: CorpusSurface,
    pub parametrization: &'static str,
    pub default_domain: Domain,
    pub kind: ReferenceKind,
    pub notes: &'static str,
}

impl CorpusEntry {
    pub fn reference(&self, u: f64, v: f64) -> ReferenceForms {
        self.surface.reference(u, v)
    }

    pub fn provider(&self) -> &dyn SurfaceProvider {
        &self.surface
    }
}

pub fn get(name: &str) -> Result<CorpusEntry> {
    let surface = CorpusSurface::from_name(name)?;
    Ok(CorpusEntry {
        name: surface.name(),
        surface,
        parametrization: surface.parametrization(),
        default_domain: surface.default_domain(),
        kind: surface.kind(),
        notes: surface.notes(),
    })
}

pub fn list() -> Vec<CorpusEntry> {
    NAMES.iter().map(|n| get(n).expect("registered")).collect()
}

fn singular_check(surface: CorpusSurface, grid: &Grid) -> Result<()> {
    let mut hits = Vec::new();
    for j in 0..grid.nv() {
        for i in 0..grid.nu() {
            if surface.is_singular(grid.u[i], grid.v[j]) {
                hits.push(grid.node(i, j));
            }
        }
    }
    match hits.first() {
        Some(&first) => Err(Error::SingularGrid { count: hits.len(), first }),
        None => Ok(()),
    }
}

fn base_indices(grid: &Grid, u0: f64, v0: f64) -> Result<(usize, usize)> {
    let i = Grid::index_of(&grid.u, u0)
        .ok_or_else(|| Error::Precondition(format!("u0 = {u0} is not a grid node")))?;
    let j = Grid::index_of(&grid.v, v0)
        .ok_or_else(|| Error::Precondition(format!("v0 = {v0} is not a grid node")))?;
    Ok((i, j))
}

/// Chart of closed-form `F, H, L, M, N, K`; signs from `L`, `N` at `(u0, v0)`.
pub fn reference_chart(name: &str, u_grid: Vec<f64>, v_grid: Vec<f64>, u0: f64, v0: f64) -> Result<Chart> {
    let surface = CorpusSurface::from_name(name)?;
    let grid = Grid::new(u_grid, v_grid)?;
    singular_check(surface, &grid)?;
    let base = base_indices(&grid, u0, v0)?;
    let r0 = surface.reference(u0, v0);
    let eps1 = Sign::of(r0.L).ok_or(Error::NotGeneralType { coefficient: "L", param: "u", value: u0 })?;
    let eps2 = Sign::of(r0.N).ok_or(Error::NotGeneralType { coefficient: "N", param: "v", value: v0 })?;
    let pick = |f: fn(&ReferenceForms) -> f64| Field::from_fn(&grid, |u, v| f(&surface.reference(u, v)));
    let mut chart = Chart::new(grid.clone(), pick(|r| r.F), pick(|r| r.H), base, (eps1, eps2))?
        .with_second_form(pick(|r| r.L), pick(|r| r.M), pick(|r| r.N));
    chart.k = Some(pick(|r| r.K));
    Ok(chart)
}

/// Chart in closed-form canonical coordinates with initial point `(u0, v0)`.
///
/// The canonical grids must contain `tilde_u0`, `tilde_v0`. Fields follow the
/// transformation law for `u = u(u~)`, `v = v(v~)` evaluated through the exact
/// inverse maps, so this is independent of the quadrature pipeline.
pub fn canonical_reference_chart(
    name: &str,
    tu_grid: Vec<f64>,
    tv_grid: Vec<f64>,
    (u0, v0): (f64, f64),
    (tu0, tv0): (f64, f64),
) -> Result<Chart> {
    let surface = CorpusSurface::from_name(name)?;
    let map = surface
        .exact_canonical_map((u0, v0), (tu0, tv0))
        .ok_or(Error::NotGeneralType { coefficient: "L", param: "u", value: u0 })?;
    let grid = Grid::new(tu_grid, tv_grid)?;
    let base = base_indices(&grid, tu0, tv0)?;
    let at = |s: f64, t: f64| {
        let (u, v) = (map.u.inverse(s), map.v.inverse(t));
        let du = 1.0 / map.u.derivative(u);
        let dv = 1.0 / map.v.derivative(v);
        (surface.reference(u, v), du, dv)
    };
    let mut nodes = Vec::with_capacity(grid.nu() * grid.nv());
    for &t in &grid.v {
        for &s in &grid.u {
            nodes.push(at(s, t));
        }
    }
    let nu = grid.nu();
    let pick = |f: &dyn Fn(&(ReferenceForms, f64, f64)) -> f64| {
        Field::from_indexed(nu, grid.nv(), |i, j| f(&nodes[j * nu + i]))
    };
    let f = pick(&|(r, du, dv)| r.F * du * dv);
    let h = pick(&|(r, _, _)| r.H);
    let l = pick(&|(r, du, _)| r.L * du * du);
    let m = pick(&|(r, du, dv)| r.M * du * dv);
    let n = pick(&|(r, _, dv)| r.N * dv * dv);
    let k = pick(&|(r, _, _)| r.K);
    let eps1 = Sign::of(l.at(base.0, base.1)).expect("general type");
    let eps2 = Sign::of(n.at(base.0, base.1)).expect("general type");
    let mut chart = Chart::new(grid, f, h, base, (eps1, eps2))?.with_second_form(l, m, n);
    chart.k = Some(k);
    Ok(chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{fundamental_forms, jet_from_position};

    #[test]
    fn lookup() {
        assert_eq!(get("enneper1").unwrap().reference(1.0, 0.0).K, -4.0);
        let h = get("hyperbolic_cone").unwrap().reference(0.0, 0.0).H;
        assert!((h + SQRT3 / 4.0).abs() < 1e-15);
        assert_eq!(get("lorentz_sphere").unwrap().kind, ReferenceKind::Degenerate);
        assert!(matches!(get("torus"), Err(Error::UnknownSurface(_))));
        assert_eq!(list().len(), 6);
    }

    #[test]
    fn analytic_jets_match_finite_differences() {
        for s in CorpusSurface::ALL {
            let d = s.default_domain();
            let (u, v) = (d.u_min + 0.37 * (d.u_max - d.u_min), d.v_min + 0.61 * (d.v_max - d.v_min));
            let fd = jet_from_position(move |u, v| s.jet(u, v).unwrap().x, 1e-4, d).unwrap();
            let (a, b) = (s.jet(u, v).unwrap(), fd.jet(u, v).unwrap());
            for (p, q) in [(a.x_u, b.x_u), (a.x_v, b.x_v), (a.x_uu, b.x_uu), (a.x_uv, b.x_uv), (a.x_vv, b.x_vv)] {
                assert!((p - q).max_abs() < 1e-6, "{}: {p:?} vs {q:?}", s.name());
            }
        }
    }

    #[test]
    fn reference_chart_enneper() {
        let g = crate::numerics::linspace(1.0, 2.0, 11);
        let h = crate::numerics::linspace(-1.0, 0.0, 11);
        let c = reference_chart("enneper1", g.clone(), h.clone(), 1.5, -0.5).unwrap();
        assert_eq!(c.f.at(3, 7), 0.5 * (g[3] - h[7]).powi(2));
        assert_eq!((c.eps1, c.eps2), (Sign::Plus, Sign::Plus));
        let bad = crate::numerics::linspace(0.0, 1.0, 11);
        assert!(matches!(
            reference_chart("enneper1", bad.clone(), bad, 0.5, 0.5),
            Err(Error::SingularGrid { count: 11, .. })
        ));
    }

    #[test]
    fn cone_canonical_closed_form() {
        let c = 2.0 * std::f64::consts::SQRT_2 * 3f64.powf(0.25);
        let tu = crate::numerics::anchored_grid(3.3, 4.7, c, 0.1);
        let chart = canonical_reference_chart("hyperbolic_cone", tu.clone(), tu.clone(), (0.0, 0.0), (c, c)).unwrap();
        for (j, &t) in tu.iter().enumerate() {
            for (i, &s) in tu.iter().enumerate() {
                let f = s.powi(3) * t.powi(3) / 1152.0;
                let h = -48.0 * SQRT3 / (s * s * t * t);
                assert!((chart.f.at(i, j) / f - 1.0).abs() < 1e-13);
                assert!((chart.h.at(i, j) / h - 1.0).abs() < 1e-13);
            }
        }
        // canonical along the base lines
        let (i0, j0) = (chart.u0_index, chart.v0_index);
        let l = chart.l.as_ref().unwrap();
        let n = chart.n.as_ref().unwrap();
        for i in 0..tu.len() {
            assert!((l.at(i, j0) - 1.0).abs() < 1e-13);
            assert!((n.at(i0, i) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn sphere_point_values() {
        let fd = fundamental_forms(&CorpusSurface::LorentzSphere.jet(0.0, 0.0).unwrap()).unwrap();
        assert!((fd.F - 2.0).abs() < 1e-14 && (fd.M - 2.0).abs() < 1e-14);
        assert!(fd.L.abs() < 1e-14 && fd.N.abs() < 1e-14);
        assert!((fd.K - 1.0).abs() < 1e-14 && (fd.H - 1.0).abs() < 1e-14);
    }
}

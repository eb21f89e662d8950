//! Pointwise differential geometry of parametrized Lorentz surfaces.
//!
//! A surface enters as a [`SurfaceProvider`] returning 2-jets. From a jet we
//! get the fundamental forms, the unit normal and the invariants `K`, `H`,
//! then classify the point and test the isotropic / pseudo-arc-length
//! conditions that characterize canonical coordinates.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Chart, Field, Grid, Sign};
use crate::minkowski::{cross, inner, MinkowskiVec};

/// Position and first and second partial derivatives at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet2 {
    pub x: MinkowskiVec,
    pub x_u: MinkowskiVec,
    pub x_v: MinkowskiVec,
    pub x_uu: MinkowskiVec,
    pub x_uv: MinkowskiVec,
    pub x_vv: MinkowskiVec,
}

impl SurfaceJet2 {
    /// Jet of `x(v, u)`: the two parameters exchange roles.
    pub fn swapped(&self) -> Self {
        Self {
            x: self.x,
            x_u: self.x_v,
            x_v: self.x_u,
            x_uu: self.x_vv,
            x_uv: self.x_uv,
            x_vv: self.x_uu,
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.x, self.x_u, self.x_v, self.x_uu, self.x_uv, self.x_vv]
            .iter()
            .all(MinkowskiVec::is_finite)
    }
}

/// Fundamental-form coefficients, invariants and unit normal at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct FundamentalData {
    pub E: f64,
    pub F: f64,
    pub G: f64,
    pub L: f64,
    pub M: f64,
    pub N: f64,
    pub K: f64,
    pub H: f64,
    pub normal: MinkowskiVec,
}

/// Closed parameter rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Domain {
    pub const fn new(u: (f64, f64), v: (f64, f64)) -> Self {
        Self { u_min: u.0, u_max: u.1, v_min: v.0, v_max: v.1 }
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        let slack = 1e-12 * (1.0 + self.diameter());
        u >= self.u_min - slack
            && u <= self.u_max + slack
            && v >= self.v_min - slack
            && v <= self.v_max + slack
    }

    pub fn diameter(&self) -> f64 {
        (self.u_max - self.u_min).hypot(self.v_max - self.v_min)
    }

    pub fn center(&self) -> (f64, f64) {
        (0.5 * (self.u_min + self.u_max), 0.5 * (self.v_min + self.v_max))
    }

    pub fn check(&self, u: f64, v: f64) -> Result<()> {
        if self.contains(u, v) {
            Ok(())
        } else {
            Err(Error::Domain { u, v })
        }
    }
}

/// Source of 2-jets for an immersion `x: D -> R^3_1`.
pub trait SurfaceProvider: Send + Sync {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet2>;

    fn domain(&self) -> Domain;

    /// Points where the immersion degenerates (excluded from grids).
    fn is_singular(&self, _u: f64, _v: f64) -> bool {
        false
    }

    fn position(&self, u: f64, v: f64) -> Result<MinkowskiVec> {
        Ok(self.jet(u, v)?.x)
    }
}

impl<P: SurfaceProvider + ?Sized> SurfaceProvider for Box<P> {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet2> {
        (**self).jet(u, v)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn is_singular(&self, u: f64, v: f64) -> bool {
        (**self).is_singular(u, v)
    }
    fn position(&self, u: f64, v: f64) -> Result<MinkowskiVec> {
        (**self).position(u, v)
    }
}

impl<P: SurfaceProvider + ?Sized> SurfaceProvider for &P {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet2> {
        (**self).jet(u, v)
    }
    fn domain(&self) -> Domain {
        (**self).domain()
    }
    fn is_singular(&self, u: f64, v: f64) -> bool {
        (**self).is_singular(u, v)
    }
    fn position(&self, u: f64, v: f64) -> Result<MinkowskiVec> {
        (**self).position(u, v)
    }
}

type PositionFn = dyn Fn(f64, f64) -> MinkowskiVec + Send + Sync;

/// Surface given only by its position; derivatives by central differences.
pub struct FdSurface {
    position: Box<PositionFn>,
    step: f64,
    domain: Domain,
    singular: Option<Box<dyn Fn(f64, f64) -> bool + Send + Sync>>,
}

impl FdSurface {
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn with_singular_set(
        mut self,
        pred: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.singular = Some(Box::new(pred));
        self
    }
}

/// Wrap a position map as a provider with central-difference jets of step `h`.
///
/// First partials use `(f(u+h) - f(u-h)) / 2h`, second partials the 3-point
/// second difference and the 4-point cross stencil; all are `O(h^2)`.
pub fn jet_from_position(
    f: impl Fn(f64, f64) -> MinkowskiVec + Send + Sync + 'static,
    h: f64,
    domain: Domain,
) -> Result<FdSurface> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Precondition(format!("step h = {h} must be positive")));
    }
    Ok(FdSurface { position: Box::new(f), step: h, domain, singular: None })
}

/// [`jet_from_position`] with the default step `1e-4 * diameter(domain)`.
pub fn jet_from_position_default(
    f: impl Fn(f64, f64) -> MinkowskiVec + Send + Sync + 'static,
    domain: Domain,
) -> Result<FdSurface> {
    jet_from_position(f, 1e-4 * domain.diameter(), domain)
}

impl SurfaceProvider for FdSurface {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet2> {
        self.domain.check(u, v)?;
        let f = &self.position;
        let h = self.step;
        let c = f(u, v);
        let (up, um, vp, vm) = (f(u + h, v), f(u - h, v), f(u, v + h), f(u, v - h));
        let (pp, pm, mp, mm) = (f(u + h, v + h), f(u + h, v - h), f(u - h, v + h), f(u - h, v - h));
        let inv2h = 0.5 / h;
        let invh2 = 1.0 / (h * h);
        Ok(SurfaceJet2 {
            x: c,
            x_u: inv2h * (up - um),
            x_v: inv2h * (vp - vm),
            x_uu: invh2 * (up - 2.0 * c + um),
            x_uv: (0.25 * invh2) * (pp - pm - mp + mm),
            x_vv: invh2 * (vp - 2.0 * c + vm),
        })
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn is_singular(&self, u: f64, v: f64) -> bool {
        self.singular.as_ref().is_some_and(|p| p(u, v))
    }

    fn position(&self, u: f64, v: f64) -> Result<MinkowskiVec> {
        self.domain.check(u, v)?;
        Ok((self.position)(u, v))
    }
}

/// The surface with parameters renumbered: `(u, v) -> (v, u)`.
pub struct Swapped<P>(pub P);

impl<P: SurfaceProvider> SurfaceProvider for Swapped<P> {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet2> {
        Ok(self.0.jet(v, u)?.swapped())
    }
    fn domain(&self) -> Domain {
        let d = self.0.domain();
        Domain::new((d.v_min, d.v_max), (d.u_min, d.u_max))
    }
    fn is_singular(&self, u: f64, v: f64) -> bool {
        self.0.is_singular(v, u)
    }
}

/// The surface with the first parameter reversed: `u -> -u`.
pub struct ReflectedU<P>(pub P);

impl<P: SurfaceProvider> SurfaceProvider for ReflectedU<P> {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet2> {
        let j = self.0.jet(-u, v)?;
        Ok(SurfaceJet2 { x_u: -j.x_u, x_uv: -j.x_uv, ..j })
    }
    fn domain(&self) -> Domain {
        let d = self.0.domain();
        Domain::new((-d.u_max, -d.u_min), (d.v_min, d.v_max))
    }
    fn is_singular(&self, u: f64, v: f64) -> bool {
        self.0.is_singular(-u, v)
    }
}

/// One-dimensional reparametrization `t -> (phi(t), phi'(t), phi''(t))`.
pub type ParamMap = Box<dyn Fn(f64) -> (f64, f64, f64) + Send + Sync>;

/// The surface pulled back by `u = phi(u~)`, `v = psi(v~)`.
pub struct Reparametrized<P> {
    pub inner: P,
    pub phi: ParamMap,
    pub psi: ParamMap,
    pub domain: Domain,
}

impl<P: SurfaceProvider> SurfaceProvider for Reparametrized<P> {
    fn jet(&self, s: f64, t: f64) -> Result<SurfaceJet2> {
        self.domain.check(s, t)?;
        let (u, du, ddu) = (self.phi)(s);
        let (v, dv, ddv) = (self.psi)(t);
        let j = self.inner.jet(u, v)?;
        Ok(SurfaceJet2 {
            x: j.x,
            x_u: du * j.x_u,
            x_v: dv * j.x_v,
            x_uu: (du * du) * j.x_uu + ddu * j.x_u,
            x_uv: (du * dv) * j.x_uv,
            x_vv: (dv * dv) * j.x_vv + ddv * j.x_v,
        })
    }
    fn domain(&self) -> Domain {
        self.domain
    }
    fn is_singular(&self, s: f64, t: f64) -> bool {
        self.inner.is_singular((self.phi)(s).0, (self.psi)(t).0)
    }
}

/// First and second fundamental forms, unit normal, `K` and `H` from a jet.
///
/// The normal is `cross(x_u, x_v) / sqrt(<n, n>)`, which makes `{x_u, x_v, l}`
/// positively oriented.
pub fn fundamental_forms(jet: &SurfaceJet2) -> Result<FundamentalData> {
    let (u_hint, v_hint) = (f64::NAN, f64::NAN);
    fundamental_forms_at(jet, u_hint, v_hint)
}

pub(crate) fn fundamental_forms_at(jet: &SurfaceJet2, u: f64, v: f64) -> Result<FundamentalData> {
    let e = inner(&jet.x_u, &jet.x_u);
    let f = inner(&jet.x_u, &jet.x_v);
    let g = inner(&jet.x_v, &jet.x_v);
    let det = e * g - f * f;
    // |EG - F^2| is bounded by (|x_u| |x_v|)^2 in the Euclidean norm
    let scale = jet.x_u.euclid_norm() * jet.x_v.euclid_norm();
    if det.abs() <= 1e-14 * scale * scale || scale == 0.0 {
        return Err(Error::DegenerateMetric { u, v, det });
    }
    let n = cross(&jet.x_u, &jet.x_v);
    let nn = inner(&n, &n);
    if nn <= 0.0 {
        return Err(Error::NotLorentz { u, v });
    }
    let l = (1.0 / nn.sqrt()) * n;
    let ll = inner(&jet.x_uu, &l);
    let mm = inner(&jet.x_uv, &l);
    let nnn = inner(&jet.x_vv, &l);
    Ok(FundamentalData {
        E: e,
        F: f,
        G: g,
        L: ll,
        M: mm,
        N: nnn,
        K: (ll * nnn - mm * mm) / det,
        H: (e * nnn - 2.0 * f * mm + g * ll) / (2.0 * det),
        normal: l,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    GeneralFirstKind,
    GeneralSecondKind,
    NotGeneralType,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub kind: SurfaceKind,
    /// `H^2 - K`.
    pub discriminant: f64,
    /// `LN / F^2`, equal to the discriminant in isotropic coordinates.
    pub ln_over_f2: f64,
}

/// Default classification tolerance `1e-8 (1 + H^2 + |K|)`.
pub fn default_classify_tol(fd: &FundamentalData) -> f64 {
    1e-8 * (1.0 + fd.H * fd.H + fd.K.abs())
}

/// Classify a point given in isotropic coordinates by the sign of `H^2 - K`.
pub fn classify(fd: &FundamentalData, tol: f64) -> Result<Classification> {
    let iso_tol = tol * (1.0 + fd.F.abs());
    if fd.E.abs() > iso_tol || fd.G.abs() > iso_tol {
        return Err(Error::Precondition(format!(
            "classification needs isotropic coordinates, got E = {}, G = {}",
            fd.E, fd.G
        )));
    }
    let disc = fd.H * fd.H - fd.K;
    let ln_over_f2 = fd.L * fd.N / (fd.F * fd.F);
    if (disc - ln_over_f2).abs() > tol * (1.0 + disc.abs()) {
        return Err(Error::Precondition(format!(
            "H^2 - K = {disc} disagrees with LN/F^2 = {ln_over_f2}"
        )));
    }
    let kind = if disc > tol {
        SurfaceKind::GeneralFirstKind
    } else if disc < -tol {
        SurfaceKind::GeneralSecondKind
    } else {
        SurfaceKind::NotGeneralType
    };
    Ok(Classification { kind, discriminant: disc, ln_over_f2 })
}

/// `|E| <= tol`, `|G| <= tol` and `F > tol`.
pub fn is_isotropic(fd: &FundamentalData, tol: f64) -> bool {
    fd.E.abs() <= tol && fd.G.abs() <= tol && fd.F > tol
}

/// Pseudo-arc-length test of the two null curves through a base point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PseudoArcReport {
    pub u0: f64,
    pub v0: f64,
    /// max over samples of `|<x_uu, x_uu> - 1|` along `v = v0`.
    pub u_line_max_dev: f64,
    /// max over samples of `|<x_vv, x_vv> - 1|` along `u = u0`.
    pub v_line_max_dev: f64,
    /// First `u` where the `u`-line is degenerate (`<x_uu, x_uu> <= tol`).
    pub u_line_degenerate_at: Option<f64>,
    pub v_line_degenerate_at: Option<f64>,
    pub pass: bool,
}

impl PseudoArcReport {
    pub fn is_degenerate(&self) -> bool {
        self.u_line_degenerate_at.is_some() || self.v_line_degenerate_at.is_some()
    }
}

/// Check whether `u` and `v` are natural parameters of the null curves through `(u0, v0)`.
pub fn pseudo_arc_check(
    provider: &dyn SurfaceProvider,
    u0: f64,
    v0: f64,
    u_samples: &[f64],
    v_samples: &[f64],
    tol: f64,
) -> Result<PseudoArcReport> {
    let base = fundamental_forms_at(&provider.jet(u0, v0)?, u0, v0)?;
    let iso_tol = 1e-8 * (1.0 + base.F.abs());
    if !is_isotropic(&base, iso_tol) {
        return Err(Error::Precondition(format!(
            "coordinates are not isotropic at ({u0}, {v0}): E = {}, G = {}, F = {}",
            base.E, base.G, base.F
        )));
    }
    let mut u_dev = 0.0_f64;
    let mut u_deg = None;
    for &u in u_samples {
        let s = provider.jet(u, v0)?.x_uu.square();
        if s <= tol && u_deg.is_none() {
            u_deg = Some(u);
        }
        u_dev = u_dev.max((s - 1.0).abs());
    }
    let mut v_dev = 0.0_f64;
    let mut v_deg = None;
    for &v in v_samples {
        let s = provider.jet(u0, v)?.x_vv.square();
        if s <= tol && v_deg.is_none() {
            v_deg = Some(v);
        }
        v_dev = v_dev.max((s - 1.0).abs());
    }
    let pass = u_deg.is_none() && v_deg.is_none() && u_dev <= tol && v_dev <= tol;
    Ok(PseudoArcReport {
        u0,
        v0,
        u_line_max_dev: u_dev,
        v_line_max_dev: v_dev,
        u_line_degenerate_at: u_deg,
        v_line_degenerate_at: v_deg,
        pass,
    })
}

/// Fundamental data sampled over a grid; singular nodes are `None`.
#[derive(Debug, Clone)]
pub struct GridAnalysis {
    pub grid: Grid,
    pub nodes: Vec<Option<FundamentalData>>,
    pub excluded: usize,
}

/// Sweep `fundamental_forms` over every grid node, skipping the singular set.
pub fn analyze_grid(provider: &dyn SurfaceProvider, grid: &Grid) -> Result<GridAnalysis> {
    let nu = grid.nu();
    let nodes: Vec<Result<Option<FundamentalData>>> = (0..nu * grid.nv())
        .into_par_iter()
        .map(|p| {
            let (u, v) = (grid.u[p % nu], grid.v[p / nu]);
            if provider.is_singular(u, v) {
                return Ok(None);
            }
            let jet = provider.jet(u, v)?;
            if !jet.is_finite() {
                return Err(Error::Domain { u, v });
            }
            fundamental_forms_at(&jet, u, v).map(Some)
        })
        .collect();
    let nodes = nodes.into_iter().collect::<Result<Vec<_>>>()?;
    let excluded = nodes.iter().filter(|n| n.is_none()).count();
    Ok(GridAnalysis { grid: grid.clone(), nodes, excluded })
}

impl GridAnalysis {
    pub fn at(&self, i: usize, j: usize) -> Option<&FundamentalData> {
        self.nodes[j * self.grid.nu() + i].as_ref()
    }

    /// Extract one coefficient as a field (fails if any node was excluded).
    pub fn field(&self, pick: impl Fn(&FundamentalData) -> f64) -> Result<Field> {
        self.require_complete()?;
        Ok(Field::from_indexed(self.grid.nu(), self.grid.nv(), |i, j| {
            pick(self.at(i, j).expect("complete"))
        }))
    }

    fn require_complete(&self) -> Result<()> {
        if self.excluded == 0 {
            return Ok(());
        }
        let nu = self.grid.nu();
        let p = self.nodes.iter().position(Option::is_none).unwrap_or(0);
        Err(Error::SingularGrid { count: self.excluded, first: self.grid.node(p % nu, p / nu) })
    }

    /// Chart with `F, H, L, M, N, K` filled; signs read off `L`, `N` at the base node.
    pub fn to_chart(&self, u0_index: usize, v0_index: usize) -> Result<Chart> {
        self.require_complete()?;
        let base = self.at(u0_index, v0_index).expect("complete");
        let eps1 = Sign::of(base.L).ok_or(Error::NotGeneralType {
            coefficient: "L",
            param: "u",
            value: self.grid.u[u0_index],
        })?;
        let eps2 = Sign::of(base.N).ok_or(Error::NotGeneralType {
            coefficient: "N",
            param: "v",
            value: self.grid.v[v0_index],
        })?;
        let mut chart = Chart::new(
            self.grid.clone(),
            self.field(|d| d.F)?,
            self.field(|d| d.H)?,
            (u0_index, v0_index),
            (eps1, eps2),
        )?
        .with_second_form(self.field(|d| d.L)?, self.field(|d| d.M)?, self.field(|d| d.N)?);
        chart.k = Some(self.field(|d| d.K)?);
        Ok(chart)
    }
}

/// Outcome of enforcing `F > 0` at a base point.
pub struct Oriented<'a> {
    pub provider: Box<dyn SurfaceProvider + 'a>,
    /// `true` when the first parameter was reversed (`u -> -u`) to make `F > 0`.
    pub reversed_u: bool,
}

/// Return a provider with `F > 0` at `(u0, v0)`, reversing `u` when needed.
pub fn orient_positive<'a>(
    provider: &'a dyn SurfaceProvider,
    u0: f64,
    v0: f64,
) -> Result<Oriented<'a>> {
    let fd = fundamental_forms_at(&provider.jet(u0, v0)?, u0, v0)?;
    if fd.F < 0.0 {
        Ok(Oriented { provider: Box::new(ReflectedU(provider)), reversed_u: true })
    } else {
        Ok(Oriented { provider: Box::new(provider), reversed_u: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> FdSurface {
        jet_from_position(
            |u, v| MinkowskiVec::new(u, v, 0.0),
            0.1,
            Domain::new((-1.0, 1.0), (-1.0, 1.0)),
        )
        .unwrap()
    }

    #[test]
    fn linear_map_jets_exact() {
        let j = plane().jet(0.3, -0.2).unwrap();
        assert!((j.x_u - MinkowskiVec::new(1.0, 0.0, 0.0)).max_abs() < 1e-14);
        assert!(j.x_uu.max_abs() < 1e-12);
    }

    #[test]
    fn outside_domain_is_error() {
        assert!(matches!(plane().jet(2.0, 0.0), Err(Error::Domain { .. })));
        assert!(jet_from_position(|u, v| MinkowskiVec::new(u, v, 0.0), 0.0, Domain::new((0.0, 1.0), (0.0, 1.0))).is_err());
    }

    #[test]
    fn graph_plane_is_not_isotropic() {
        let fd = fundamental_forms(&plane().jet(0.0, 0.0).unwrap()).unwrap();
        assert_eq!(fd.E, -1.0);
        assert_eq!(fd.G, 1.0);
        assert!(!is_isotropic(&fd, 1e-9));
    }

    #[test]
    fn degenerate_and_non_lorentz_detected() {
        let z = MinkowskiVec::ZERO;
        let e1 = MinkowskiVec::new(1.0, 0.0, 0.0);
        let e2 = MinkowskiVec::new(0.0, 1.0, 0.0);
        let e3 = MinkowskiVec::new(0.0, 0.0, 1.0);
        let jet = |xu, xv| SurfaceJet2 { x: z, x_u: xu, x_v: xv, x_uu: z, x_uv: z, x_vv: z };
        assert!(matches!(fundamental_forms(&jet(e2, e2)), Err(Error::DegenerateMetric { .. })));
        // spacelike tangent plane: normal is timelike
        assert!(matches!(fundamental_forms(&jet(e2, e3)), Err(Error::NotLorentz { .. })));
        assert!(fundamental_forms(&jet(e1, e2)).is_ok());
    }

    #[test]
    fn classify_requires_isotropic() {
        let fd = fundamental_forms(&plane().jet(0.0, 0.0).unwrap()).unwrap();
        assert!(matches!(classify(&fd, 1e-8), Err(Error::Precondition(_))));
    }
}

//! Surface reconstruction from `(F, H, eps1, eps2)`.
//!
//! The moving frame `(X, Y, l) = (x_u, x_v, normal)` of an isotropic chart obeys
//!
//! ```text
//! X_u = (F_u/F) X + L l     X_v = M l
//! Y_u = M l                 Y_v = (F_v/F) Y + N l
//! l_u = -(M/F) X - (L/F) Y  l_v = -(N/F) X - (M/F) Y
//! ```
//!
//! with `x_u = X`, `x_v = Y`. [`reconstruct`] marches the `u` system along the
//! base line `v = v0` with classic RK4, then the `v` system up and down every
//! column. Frames are never re-normalized; the drift of the frame invariants
//! and the mismatch of the mixed derivatives are reported instead, since both
//! stay small exactly when the input satisfies the natural equation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Node, Result};
use crate::grid::{Chart, Field, Grid, Sign};
use crate::minkowski::{det3, inner, MinkowskiVec};
use crate::natural::{self, accumulate_LN, diff3, ResidualReport};
use crate::numerics::stencil::{lagrange_at, LineOperator};
use crate::surface::{fundamental_forms_at, SurfaceJet2};

/// Frame `(X, Y, l)` and position `x` at one node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameState {
    #[serde(rename = "X")]
    pub x_tan: MinkowskiVec,
    #[serde(rename = "Y")]
    pub y_tan: MinkowskiVec,
    #[serde(rename = "l")]
    pub normal: MinkowskiVec,
    #[serde(rename = "x")]
    pub position: MinkowskiVec,
}

impl FrameState {
    fn is_finite(&self) -> bool {
        self.x_tan.is_finite() && self.y_tan.is_finite() && self.normal.is_finite() && self.position.is_finite()
    }

    /// Largest deviation of the six frame invariants from their values for metric `f`.
    pub fn invariant_deviation(&self, f: f64) -> f64 {
        let (x, y, l) = (&self.x_tan, &self.y_tan, &self.normal);
        [
            inner(x, x),
            inner(y, y),
            inner(x, y) - f,
            inner(l, l) - 1.0,
            inner(x, l),
            inner(y, l),
        ]
        .iter()
        .fold(0.0_f64, |m, d| m.max(d.abs()))
    }

    fn axpy(&self, h: f64, d: &FrameState) -> FrameState {
        FrameState {
            x_tan: self.x_tan + h * d.x_tan,
            y_tan: self.y_tan + h * d.y_tan,
            normal: self.normal + h * d.normal,
            position: self.position + h * d.position,
        }
    }
}

/// Initial frame choice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Seed {
    /// `X = (1,1,0)`, `Y = (F0/2)(-1,1,0)`, `l = (0,0,1)`, `x = 0`.
    Standard,
    Custom(FrameState),
}

/// Frame at the initial point for metric value `f0`.
pub fn initial_frame(f0: f64, seed: &Seed) -> Result<FrameState> {
    if !(f0 > 0.0) || !f0.is_finite() {
        return Err(Error::Precondition(format!("initial F = {f0} must be positive")));
    }
    match seed {
        Seed::Standard => Ok(FrameState {
            x_tan: MinkowskiVec::new(1.0, 1.0, 0.0),
            y_tan: MinkowskiVec::new(-0.5 * f0, 0.5 * f0, 0.0),
            normal: MinkowskiVec::new(0.0, 0.0, 1.0),
            position: MinkowskiVec::ZERO,
        }),
        Seed::Custom(s) => {
            let tol = 1e-10 * (1.0 + f0);
            let (x, y, l) = (&s.x_tan, &s.y_tan, &s.normal);
            let checks = [
                ("<X,X> = 0", inner(x, x)),
                ("<Y,Y> = 0", inner(y, y)),
                ("<X,Y> = F0", inner(x, y) - f0),
                ("<l,l> = 1", inner(l, l) - 1.0),
                ("<X,l> = 0", inner(x, l)),
                ("<Y,l> = 0", inner(y, l)),
                ("det(X,Y,l) = F0", det3(x, y, l) - f0),
            ];
            if !s.is_finite() {
                return Err(Error::InvalidFrame("non-finite component".into()));
            }
            for (name, dev) in checks {
                if dev.abs() > tol {
                    return Err(Error::InvalidFrame(format!("{name} violated by {dev:e}")));
                }
            }
            Ok(*s)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Dir {
    U,
    V,
}

/// Coefficients `(F, F_t, A, M)` along one line, `A = L` for `u`, `N` for `v`.
#[derive(Clone, Copy)]
struct Coeffs {
    f: f64,
    fd: f64,
    a: f64,
    m: f64,
}

fn rhs(dir: Dir, s: &FrameState, c: Coeffs) -> FrameState {
    let (x, y, l) = (s.x_tan, s.y_tan, s.normal);
    match dir {
        Dir::U => FrameState {
            x_tan: (c.fd / c.f) * x + c.a * l,
            y_tan: c.m * l,
            normal: (-c.m / c.f) * x + (-c.a / c.f) * y,
            position: x,
        },
        Dir::V => FrameState {
            x_tan: c.m * l,
            y_tan: (c.fd / c.f) * y + c.a * l,
            normal: (-c.a / c.f) * x + (-c.m / c.f) * y,
            position: y,
        },
    }
}

struct Line<'a> {
    dir: Dir,
    t: &'a [f64],
    f: Vec<f64>,
    fd: Vec<f64>,
    a: Vec<f64>,
    m: Vec<f64>,
}

impl Line<'_> {
    fn node(&self, k: usize) -> Coeffs {
        Coeffs { f: self.f[k], fd: self.fd[k], a: self.a[k], m: self.m[k] }
    }

    fn at(&self, t: f64) -> Coeffs {
        let s = |v: &[f64]| lagrange_at(self.t, v, t, 4);
        Coeffs { f: s(&self.f), fd: s(&self.fd), a: s(&self.a), m: s(&self.m) }
    }

    /// States at every node, starting from `s0` at node `start`.
    fn march(&self, start: usize, s0: FrameState, node_of: impl Fn(usize) -> Node) -> Result<Vec<FrameState>> {
        let n = self.t.len();
        let mut out = vec![s0; n];
        let step = |from: usize, to: usize, out: &mut Vec<FrameState>| -> Result<()> {
            let h = self.t[to] - self.t[from];
            let (c0, c1) = (self.node(from), self.node(to));
            let cm = self.at(0.5 * (self.t[from] + self.t[to]));
            for c in [c0, cm, c1] {
                if !(c.f > 0.0) {
                    return Err(Error::Abort { node: node_of(to), reason: format!("F = {} <= 0", c.f) });
                }
            }
            let s = out[from];
            let k1 = rhs(self.dir, &s, c0);
            let k2 = rhs(self.dir, &s.axpy(0.5 * h, &k1), cm);
            let k3 = rhs(self.dir, &s.axpy(0.5 * h, &k2), cm);
            let k4 = rhs(self.dir, &s.axpy(h, &k3), c1);
            let next = FrameState {
                x_tan: s.x_tan + (h / 6.0) * (k1.x_tan + 2.0 * k2.x_tan + 2.0 * k3.x_tan + k4.x_tan),
                y_tan: s.y_tan + (h / 6.0) * (k1.y_tan + 2.0 * k2.y_tan + 2.0 * k3.y_tan + k4.y_tan),
                normal: s.normal + (h / 6.0) * (k1.normal + 2.0 * k2.normal + 2.0 * k3.normal + k4.normal),
                position: s.position
                    + (h / 6.0) * (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position),
            };
            if !next.is_finite() {
                return Err(Error::Abort { node: node_of(to), reason: "non-finite frame".into() });
            }
            out[to] = next;
            Ok(())
        };
        for k in start..n - 1 {
            step(k, k + 1, &mut out)?;
        }
        for k in (1..=start).rev() {
            step(k, k - 1, &mut out)?;
        }
        Ok(out)
    }
}

/// Grid fields driving the march.
struct Drive<'a> {
    grid: &'a Grid,
    f: &'a Field,
    fu: Field,
    fv: Field,
    l: &'a Field,
    m: &'a Field,
    n: &'a Field,
}

impl Drive<'_> {
    fn row(&self, j: usize) -> Line<'_> {
        Line {
            dir: Dir::U,
            t: &self.grid.u,
            f: self.f.row(j).to_vec(),
            fd: self.fu.row(j).to_vec(),
            a: self.l.row(j).to_vec(),
            m: self.m.row(j).to_vec(),
        }
    }

    fn column(&self, i: usize) -> Line<'_> {
        Line {
            dir: Dir::V,
            t: &self.grid.v,
            f: self.f.column(i),
            fd: self.fv.column(i),
            a: self.n.column(i),
            m: self.m.column(i),
        }
    }

    /// Base row then columns (`transposed = false`), or base column then rows.
    fn sweep(&self, (i0, j0): (usize, usize), s0: FrameState, transposed: bool) -> Result<Vec<FrameState>> {
        let (nu, nv) = (self.grid.nu(), self.grid.nv());
        if !transposed {
            let base = self.row(j0).march(i0, s0, |k| self.grid.node(k, j0))?;
            let cols: Vec<Vec<FrameState>> = (0..nu)
                .into_par_iter()
                .map(|i| self.column(i).march(j0, base[i], |k| self.grid.node(i, k)))
                .collect::<Result<_>>()?;
            Ok((0..nu * nv).map(|p| cols[p % nu][p / nu]).collect())
        } else {
            let base = self.column(i0).march(j0, s0, |k| self.grid.node(i0, k))?;
            let rows: Vec<Vec<FrameState>> = (0..nv)
                .into_par_iter()
                .map(|j| self.row(j).march(i0, base[j], |k| self.grid.node(k, j)))
                .collect::<Result<_>>()?;
            Ok(rows.into_iter().flatten().collect())
        }
    }
}

/// Fundamental forms recomputed from a position mesh by five-point differences.
///
/// Fields cover the nodes at distance at least `border` from the grid edge.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshForms {
    pub border: usize,
    pub e: Field,
    pub f: Field,
    pub g: Field,
    pub l: Field,
    pub m: Field,
    pub n: Field,
    pub h: Field,
    pub k: Field,
}

/// Recompute `E, F, G, L, M, N, H, K` from positions on `grid` (row-major by `v`).
pub fn analyze_mesh(mesh: &[MinkowskiVec], grid: &Grid) -> Result<MeshForms> {
    let (nu, nv) = (grid.nu(), grid.nv());
    grid.require(5)?;
    if mesh.len() != nu * nv {
        return Err(Error::Precondition(format!("mesh has {} nodes, grid {}", mesh.len(), nu * nv)));
    }
    let border = 2;
    let du = LineOperator::new(&grid.u, 1, 5);
    let duu = LineOperator::new(&grid.u, 2, 5);
    let dv = LineOperator::new(&grid.v, 1, 5);
    let dvv = LineOperator::new(&grid.v, 2, 5);
    let at = |i: usize, j: usize| mesh[j * nu + i];
    let comb = |op: &LineOperator, k: usize, f: &dyn Fn(usize) -> MinkowskiVec| {
        let s = op.starts[k];
        op.weights[k].iter().enumerate().fold(MinkowskiVec::ZERO, |acc, (q, w)| acc + *w * f(s + q))
    };
    let (ni, nj) = (nu - 2 * border, nv - 2 * border);
    let data: Vec<_> = (0..ni * nj)
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p % ni + border, p / ni + border);
            let jet = SurfaceJet2 {
                x: at(i, j),
                x_u: comb(&du, i, &|k| at(k, j)),
                x_v: comb(&dv, j, &|k| at(i, k)),
                x_uu: comb(&duu, i, &|k| at(k, j)),
                x_uv: comb(&du, i, &|k| comb(&dv, j, &|q| at(k, q))),
                x_vv: comb(&dvv, j, &|k| at(i, k)),
            };
            fundamental_forms_at(&jet, grid.u[i], grid.v[j])
        })
        .collect::<Result<_>>()?;
    let pick = |g: fn(&crate::surface::FundamentalData) -> f64| {
        Field::from_indexed(ni, nj, |i, j| g(&data[j * ni + i]))
    };
    Ok(MeshForms {
        border,
        e: pick(|d| d.E),
        f: pick(|d| d.F),
        g: pick(|d| d.G),
        l: pick(|d| d.L),
        m: pick(|d| d.M),
        n: pick(|d| d.N),
        h: pick(|d| d.H),
        k: pick(|d| d.K),
    })
}

/// Recovered `F` and `H` against the input chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormMismatch {
    /// `max |F_rec - F| / F`.
    pub f_max_rel: f64,
    /// `max |H_rec - H| / (1 + |H|)`.
    pub h_max_rel: f64,
    /// `max (|E_rec|, |G_rec|) / F`.
    pub isotropy_max_rel: f64,
    pub border: usize,
}

#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub grid: Grid,
    /// The input chart with `L, M, N` filled in.
    pub chart: Chart,
    /// Positions, row-major by `v`.
    pub mesh: Vec<MinkowskiVec>,
    pub frames: Vec<FrameState>,
    /// `|X_v - Y_u|` (Euclidean norm of components), three-point differences.
    pub compat_residual: Field,
    /// `|l_u + (M/F) X + (L/F) Y|`; the `u` equation for `l` holds off the base line only for integrable data.
    pub normal_compat_residual: Field,
    /// Largest deviation of the six frame invariants at each node.
    pub invariant_drift: Field,
    /// `max |x - x'|` against the mesh marched in the transposed order.
    pub transposed_mismatch: f64,
    pub form_mismatch: Option<FormMismatch>,
    pub natural: ResidualReport,
    pub warnings: Vec<String>,
}

impl ReconstructionResult {
    pub fn position(&self, i: usize, j: usize) -> MinkowskiVec {
        self.mesh[j * self.grid.nu() + i]
    }

    pub fn max_drift(&self) -> f64 {
        self.invariant_drift.max_abs()
    }
}

/// Natural-residual level above which reconstruction warns.
pub const NATURAL_WARN_REL: f64 = 1e-3;

/// March the frame system over the whole chart.
pub fn reconstruct(chart: &Chart, seed: &Seed) -> Result<ReconstructionResult> {
    let full = accumulate_LN(chart)?;
    let grid = &full.grid;
    let (nu, nv) = (grid.nu(), grid.nv());
    let (i0, j0) = (full.u0_index, full.v0_index);
    let s0 = initial_frame(full.f.at(i0, j0), seed)?;
    let (l, m, n) = (full.l.as_ref().unwrap(), full.m.as_ref().unwrap(), full.n.as_ref().unwrap());
    let drive = Drive {
        grid,
        f: &full.f,
        fu: full.f.d_u(grid, 5),
        fv: full.f.d_v(grid, 5),
        l,
        m,
        n,
    };
    let frames = drive.sweep((i0, j0), s0, false)?;
    let other = drive.sweep((i0, j0), s0, true)?;
    let transposed_mismatch = frames
        .iter()
        .zip(&other)
        .fold(0.0_f64, |acc, (a, b)| acc.max((a.position - b.position).euclid_norm()));

    let fr = |i: usize, j: usize| &frames[j * nu + i];
    let invariant_drift = Field::from_indexed(nu, nv, |i, j| fr(i, j).invariant_deviation(full.f.at(i, j)));
    let comp = |i: usize, j: usize, pick: fn(&FrameState) -> MinkowskiVec, axis: Dir| {
        let c = |q: usize| match axis {
            Dir::U => diff3(&grid.u, |k| pick(fr(k, j)).0[q], i),
            Dir::V => diff3(&grid.v, |k| pick(fr(i, k)).0[q], j),
        };
        MinkowskiVec::new(c(0), c(1), c(2))
    };
    let compat_residual = Field::from_indexed(nu, nv, |i, j| {
        (comp(i, j, |s| s.x_tan, Dir::V) - comp(i, j, |s| s.y_tan, Dir::U)).euclid_norm()
    });
    let normal_compat_residual = Field::from_indexed(nu, nv, |i, j| {
        let s = fr(i, j);
        let (f, ll, mm) = (full.f.at(i, j), l.at(i, j), m.at(i, j));
        let sys = (-mm / f) * s.x_tan + (-ll / f) * s.y_tan;
        (comp(i, j, |s| s.normal, Dir::U) - sys).euclid_norm()
    });

    let mesh: Vec<MinkowskiVec> = frames.iter().map(|s| s.position).collect();
    let form_mismatch = if nu >= 5 && nv >= 5 {
        let forms = analyze_mesh(&mesh, grid)?;
        let b = forms.border;
        let (ni, nj) = forms.f.dims();
        let (mut fm, mut hm, mut iso) = (0.0_f64, 0.0_f64, 0.0_f64);
        for q in 0..nj {
            for p in 0..ni {
                let (fi, hi) = (full.f.at(p + b, q + b), full.h.at(p + b, q + b));
                fm = fm.max((forms.f.at(p, q) - fi).abs() / fi);
                hm = hm.max((forms.h.at(p, q) - hi).abs() / (1.0 + hi.abs()));
                iso = iso.max(forms.e.at(p, q).abs().max(forms.g.at(p, q).abs()) / fi);
            }
        }
        Some(FormMismatch { f_max_rel: fm, h_max_rel: hm, isotropy_max_rel: iso, border: b })
    } else {
        None
    };

    let natural = natural::gauss_residual(&full)?;
    let scale = 1.0 + Field::from_indexed(nu, nv, |i, j| l.at(i, j) * n.at(i, j) - m.at(i, j).powi(2)).max_abs();
    let mut warnings = Vec::new();
    if natural.max_abs > NATURAL_WARN_REL * scale {
        warnings.push(format!(
            "natural-equation residual {:.3e} exceeds {:.1e} x scale {:.3e}; the input is not integrable",
            natural.max_abs, NATURAL_WARN_REL, scale
        ));
    }
    Ok(ReconstructionResult {
        grid: grid.clone(),
        chart: full,
        mesh,
        frames,
        compat_residual,
        normal_compat_residual,
        invariant_drift,
        transposed_mismatch,
        form_mismatch,
        natural,
        warnings,
    })
}

/// Reconstruct both surfaces with constant `H != 0` and curvature `K`.
///
/// Returns the results for the two admissible sign pairs, `eps1 = +1` first.
pub fn cmc_pair(
    k: &Field,
    h: f64,
    grid: &Grid,
    base: (usize, usize),
    seed: &Seed,
) -> Result<(ReconstructionResult, ReconstructionResult)> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::Precondition("constant H must be nonzero; use minimal_from_K".into()));
    }
    let (f, prod) = natural::F_from_K_cmc(k, h, grid)?;
    let cmc = natural::cmc_residual(k, h, grid)?;
    let [p, q] = natural::admissible_pairs(prod);
    let run = |eps: (Sign, Sign)| {
        let hf = Field::constant(grid.nu(), grid.nv(), h);
        let mut chart = Chart::new(grid.clone(), f.clone(), hf, base, eps)?;
        chart.k = Some(k.clone());
        let mut r = reconstruct(&chart, seed)?;
        if cmc.max_abs > NATURAL_WARN_REL * (1.0 + k.max_abs()) {
            r.warnings.push(format!("constant-H residual {:.3e} is large", cmc.max_abs));
        }
        Ok::<_, Error>(r)
    };
    Ok((run(p)?, run(q)?))
}

/// Default acceptance level for the minimal residual, relative to `1 + max |K|`.
pub const MINIMAL_TOL_REL: f64 = 1e-3;

/// Reconstruct the minimal surface (`H = 0`) with curvature `K`, signs `(+1, sign(-K))`.
///
/// Refuses with [`Error::ResidualTooLarge`] when the minimal residual exceeds
/// `tol` unless `force` is set.
#[allow(non_snake_case)]
pub fn minimal_from_K(
    k: &Field,
    grid: &Grid,
    base: (usize, usize),
    seed: &Seed,
    tol: Option<f64>,
    force: bool,
) -> Result<ReconstructionResult> {
    let res = natural::minimal_residual(k, grid)?;
    let tol = tol.unwrap_or(MINIMAL_TOL_REL * (1.0 + k.max_abs()));
    if res.max_abs > tol && !force {
        return Err(Error::ResidualTooLarge { residual: res.max_abs, tolerance: tol });
    }
    let (f, prod) = natural::F_from_K_cmc(k, 0.0, grid)?;
    let mut chart = Chart::new(
        grid.clone(),
        f,
        Field::zeros(grid.nu(), grid.nv()),
        base,
        (Sign::Plus, prod),
    )?;
    chart.k = Some(k.clone());
    let mut r = reconstruct(&chart, seed)?;
    if res.max_abs > tol {
        r.warnings.push(format!("minimal residual {:.3e} exceeds {tol:.3e}; forced", res.max_abs));
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Same `F, L, M, N`: related by a proper motion.
    Congruent,
    /// Same `F`, opposite `L, M, N`.
    NonProper,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CongruenceReport {
    pub f_mismatch: f64,
    pub lmn_mismatch: f64,
    pub lmn_flipped_mismatch: f64,
    pub tolerance: f64,
    pub relation: Relation,
}

/// Compare two meshes on the same grid through their fundamental forms.
///
/// Mismatches are `max |a - b| / (1 + |a|)` over the nodes [`analyze_mesh`] covers.
pub fn congruence_check(a: &[MinkowskiVec], b: &[MinkowskiVec], grid: &Grid, tol: f64) -> Result<CongruenceReport> {
    let fa = analyze_mesh(a, grid)?;
    let fb = analyze_mesh(b, grid)?;
    let dev = |x: &Field, y: &Field, s: f64| {
        x.values()
            .iter()
            .zip(y.values())
            .fold(0.0_f64, |m, (p, q)| m.max((p - s * q).abs() / (1.0 + p.abs())))
    };
    let f_mismatch = dev(&fa.f, &fb.f, 1.0);
    let lmn = |s: f64| dev(&fa.l, &fb.l, s).max(dev(&fa.m, &fb.m, s)).max(dev(&fa.n, &fb.n, s));
    let (same, flipped) = (lmn(1.0), lmn(-1.0));
    let relation = if f_mismatch <= tol && same <= tol {
        Relation::Congruent
    } else if f_mismatch <= tol && flipped <= tol {
        Relation::NonProper
    } else {
        Relation::Neither
    };
    Ok(CongruenceReport { f_mismatch, lmn_mismatch: same, lmn_flipped_mismatch: flipped, tolerance: tol, relation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::boost;
    use crate::numerics::linspace;

    #[test]
    fn standard_seed() {
        let s = initial_frame(2.0, &Seed::Standard).unwrap();
        assert_eq!(s.y_tan, MinkowskiVec::new(-1.0, 1.0, 0.0));
        assert_eq!(inner(&s.x_tan, &s.y_tan), 2.0);
        assert_eq!(s.invariant_deviation(2.0), 0.0);
        assert_eq!(det3(&s.x_tan, &s.y_tan, &s.normal), 2.0);
        let s = initial_frame(0.5, &Seed::Standard).unwrap();
        assert_eq!(s.y_tan, MinkowskiVec::new(-0.25, 0.25, 0.0));
    }

    #[test]
    fn custom_seed_validation() {
        let good = initial_frame(2.0, &Seed::Standard).unwrap();
        assert!(initial_frame(2.0, &Seed::Custom(good)).is_ok());
        let bad = FrameState { x_tan: MinkowskiVec::new(1.0, 0.0, 0.0), ..good };
        assert!(matches!(initial_frame(2.0, &Seed::Custom(bad)), Err(Error::InvalidFrame(_))));
        // orientation reversed
        let flipped = FrameState { normal: -good.normal, ..good };
        assert!(matches!(initial_frame(2.0, &Seed::Custom(flipped)), Err(Error::InvalidFrame(_))));
        assert!(initial_frame(0.0, &Seed::Standard).is_err());
    }

    fn cylinder_chart(n: usize, f: f64, eps: Sign) -> Chart {
        let g = Grid::new(linspace(0.0, 1.0, n), linspace(0.0, 1.0, n)).unwrap();
        Chart::new(g, Field::constant(n, n, f), Field::constant(n, n, 0.5), (n / 2, n / 2), (eps, eps)).unwrap()
    }

    #[test]
    fn cylinder_recovered() {
        let r = reconstruct(&cylinder_chart(21, 2.0, Sign::Plus), &Seed::Standard).unwrap();
        let forms = analyze_mesh(&r.mesh, &r.grid).unwrap();
        for (fld, want) in [(&forms.f, 2.0), (&forms.l, 1.0), (&forms.m, 1.0), (&forms.n, 1.0)] {
            assert!(fld.values().iter().all(|x| (x - want).abs() < 1e-5), "{want}");
        }
        assert!(r.warnings.is_empty());
        assert!(r.max_drift() < 1e-8);

        let r = reconstruct(&cylinder_chart(21, 2.0, Sign::Minus), &Seed::Standard).unwrap();
        let forms = analyze_mesh(&r.mesh, &r.grid).unwrap();
        assert!(forms.l.values().iter().all(|x| (x + 1.0).abs() < 1e-5));
        assert!(forms.m.values().iter().all(|x| (x - 1.0).abs() < 1e-5));
        assert!(forms.n.values().iter().all(|x| (x + 1.0).abs() < 1e-5));
    }

    #[test]
    fn planted_defect_warns() {
        let r = reconstruct(&cylinder_chart(21, 2.1, Sign::Plus), &Seed::Standard).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert!(r.compat_residual.max_abs() > 1e-2);
    }

    #[test]
    fn boosted_mesh_is_congruent() {
        let r = reconstruct(&cylinder_chart(15, 2.0, Sign::Plus), &Seed::Standard).unwrap();
        let shift = MinkowskiVec::new(0.3, -1.0, 2.0);
        let moved: Vec<_> = r.mesh.iter().map(|x| boost(x, 2, 0.7) + shift).collect();
        let c = congruence_check(&r.mesh, &moved, &r.grid, 1e-9).unwrap();
        assert_eq!(c.relation, Relation::Congruent, "{c:?}");
        let mirrored: Vec<_> = r.mesh.iter().map(|x| MinkowskiVec::new(x.a1(), x.a2(), -x.a3())).collect();
        let c = congruence_check(&r.mesh, &mirrored, &r.grid, 1e-9).unwrap();
        assert_eq!(c.relation, Relation::NonProper, "{c:?}");
    }

    #[test]
    fn minimal_refuses_constant_curvature() {
        let g = Grid::uniform((0.0, 1.0), (0.0, 1.0), 9, 9);
        let k = Field::constant(9, 9, -1.0);
        let err = minimal_from_K(&k, &g, (4, 4), &Seed::Standard, None, false).unwrap_err();
        assert!(matches!(err, Error::ResidualTooLarge { residual, .. } if residual == 1.0));
        let r = minimal_from_K(&k, &g, (4, 4), &Seed::Standard, None, true).unwrap();
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn cmc_pair_degenerate() {
        let g = Grid::uniform((0.0, 1.0), (0.0, 1.0), 9, 9);
        let err = cmc_pair(&Field::constant(9, 9, 1.0), 1.0, &g, (4, 4), &Seed::Standard).unwrap_err();
        assert!(matches!(err, Error::Degeneracy { .. }));
    }
}

//! The natural equation of Lorentz surfaces of general type.
//!
//! In canonical coordinates the Codazzi equations reduce to `L_v = F H_u`,
//! `N_u = F H_v`, so
//!
//! ```text
//! L = eps1 + int_{v0}^{v} F H_u ds,   M = F H,   N = eps2 + int_{u0}^{u} F H_v ds
//! ```
//!
//! and the Gauss equation `(F F_uv - F_u F_v) / F = L N - M^2` becomes an
//! integro-differential equation for `(F, H)`. For constant `H` it collapses to
//! `sqrt|H^2 - K| (ln sqrt|H^2 - K|)_uv = K`.
//!
//! Derivatives are three-point (central inside, one-sided at borders), written
//! in divided-difference form so constant data differentiate to exactly zero.
//! Running integrals are cumulative trapezoid sums. Residuals are reported on
//! interior nodes only.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Chart, Field, Grid, Sign};
use crate::numerics::quadrature::cumulative_trapezoid;
use crate::numerics::two_grid_order;

/// Residual of one equation on the interior of a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Values on interior nodes, `(nu - 2) x (nv - 2)`.
    #[serde(skip)]
    pub residual: Field,
    pub max_abs: f64,
    /// Area-weighted RMS over the interior.
    pub l2: f64,
    pub h_order_estimate: Option<f64>,
}

impl ResidualReport {
    fn from_interior(grid: &Grid, residual: Field) -> Self {
        let (ni, nj) = residual.dims();
        let (mut num, mut den) = (0.0, 0.0);
        for j in 0..nj {
            for i in 0..ni {
                let w = grid.interior_weight(i + 1, j + 1);
                num += w * residual.at(i, j).powi(2);
                den += w;
            }
        }
        Self {
            max_abs: residual.max_abs(),
            l2: if den > 0.0 { (num / den).sqrt() } else { 0.0 },
            residual,
            h_order_estimate: None,
        }
    }

    /// Attach the observed order from this (coarse) report and one on a grid with half the step.
    pub fn with_refinement(mut self, fine: &ResidualReport) -> Self {
        self.h_order_estimate = two_grid_order(self.max_abs, fine.max_abs);
        self
    }
}

/// Three-point derivative of `f` at node `i` in divided-difference form.
pub(crate) fn diff3(x: &[f64], f: impl Fn(usize) -> f64, i: usize) -> f64 {
    let n = x.len();
    let slope = |k: usize| (f(k + 1) - f(k)) / (x[k + 1] - x[k]);
    if i == 0 {
        let (h1, h2) = (x[1] - x[0], x[2] - x[1]);
        let (d1, d2) = (slope(0), slope(1));
        d1 - h1 * (d2 - d1) / (h1 + h2)
    } else if i == n - 1 {
        let (hp, hl) = (x[n - 2] - x[n - 3], x[n - 1] - x[n - 2]);
        let (dp, dl) = (slope(n - 3), slope(n - 2));
        dl + hl * (dl - dp) / (hp + hl)
    } else {
        let (hm, hp) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        (hm * slope(i) + hp * slope(i - 1)) / (hm + hp)
    }
}

pub(crate) fn d_u3(f: &Field, grid: &Grid) -> Field {
    let (nu, nv) = f.dims();
    Field::from_indexed(nu, nv, |i, j| diff3(&grid.u, |k| f.at(k, j), i))
}

pub(crate) fn d_v3(f: &Field, grid: &Grid) -> Field {
    let (nu, nv) = f.dims();
    Field::from_indexed(nu, nv, |i, j| diff3(&grid.v, |k| f.at(i, k), j))
}

/// Mixed derivative on interior nodes: tensor product of the central operators.
fn d_uv_interior(f: &Field, grid: &Grid, i: usize, j: usize) -> f64 {
    diff3(&grid.u, |k| diff3(&grid.v, |l| f.at(k, l), j), i)
}

/// Fill `L`, `M`, `N` from `(F, H, eps1, eps2)` and the base point.
#[allow(non_snake_case)]
pub fn accumulate_LN(chart: &Chart) -> Result<Chart> {
    chart.validate()?;
    let grid = &chart.grid;
    grid.require(3)?;
    let (nu, nv) = (grid.nu(), grid.nv());
    let fhu = chart.f.zip_map(&d_u3(&chart.h, grid), |f, h| f * h);
    let fhv = chart.f.zip_map(&d_v3(&chart.h, grid), |f, h| f * h);
    let (e1, e2) = (chart.eps1.value(), chart.eps2.value());

    let l_cols: Vec<Vec<f64>> = (0..nu)
        .into_par_iter()
        .map(|i| cumulative_trapezoid(&grid.v, &fhu.column(i), chart.v0_index))
        .collect();
    let n_rows: Vec<Vec<f64>> = (0..nv)
        .into_par_iter()
        .map(|j| cumulative_trapezoid(&grid.u, fhv.row(j), chart.u0_index))
        .collect();
    let l = Field::from_indexed(nu, nv, |i, j| e1 + l_cols[i][j]);
    let n = Field::from_indexed(nu, nv, |i, j| e2 + n_rows[j][i]);
    let m = chart.f.zip_map(&chart.h, |f, h| f * h);
    Ok(chart.clone().with_second_form(l, m, n))
}

/// Gauss-equation residual `(F F_uv - F_u F_v) / F - (L N - M^2)` for a chart carrying `L, M, N`.
pub fn gauss_residual(chart: &Chart) -> Result<ResidualReport> {
    let grid = &chart.grid;
    grid.require(3)?;
    let (l, m, n) = match (&chart.l, &chart.m, &chart.n) {
        (Some(l), Some(m), Some(n)) => (l, m, n),
        _ => return Err(Error::Precondition("chart carries no second fundamental form".into())),
    };
    let f = &chart.f;
    let (ni, nj) = grid.interior_dims();
    let data: Vec<f64> = (0..ni * nj)
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p % ni + 1, p / ni + 1);
            let fu = diff3(&grid.u, |k| f.at(k, j), i);
            let fv = diff3(&grid.v, |k| f.at(i, k), j);
            let fuv = d_uv_interior(f, grid, i, j);
            let fij = f.at(i, j);
            (fij * fuv - fu * fv) / fij - (l.at(i, j) * n.at(i, j) - m.at(i, j).powi(2))
        })
        .collect();
    Ok(ResidualReport::from_interior(grid, Field::from_vec(ni, nj, data)?))
}

/// Residual of the natural equation for `(F, H, eps1, eps2)`.
pub fn natural_residual(chart: &Chart) -> Result<ResidualReport> {
    gauss_residual(&accumulate_LN(chart)?)
}

/// Degeneracy tolerance for `H^2 - K` at one node.
pub fn degeneracy_tol(h: f64, k: f64) -> f64 {
    1e-10 * (1.0 + h * h + k.abs())
}

fn check_nondegenerate(k: &Field, h: f64, grid: &Grid, quantity: &'static str) -> Result<()> {
    let (nu, nv) = k.dims();
    if (nu, nv) != (grid.nu(), grid.nv()) {
        return Err(Error::Precondition(format!(
            "K field is {nu} x {nv} but the grid is {} x {}",
            grid.nu(),
            grid.nv()
        )));
    }
    for j in 0..nv {
        for i in 0..nu {
            let kij = k.at(i, j);
            let d = h * h - kij;
            if !d.is_finite() || d.abs() <= degeneracy_tol(h, kij) {
                return Err(Error::Degeneracy { node: grid.node(i, j), quantity, value: d });
            }
        }
    }
    Ok(())
}

/// Residual of `sqrt|H^2 - K| (ln sqrt|H^2 - K|)_uv - K` for constant `H`.
pub fn cmc_residual(k: &Field, h: f64, grid: &Grid) -> Result<ResidualReport> {
    grid.require(3)?;
    check_nondegenerate(k, h, grid, "H^2 - K")?;
    residual_with_h(k, h, grid)
}

fn residual_with_h(k: &Field, h: f64, grid: &Grid) -> Result<ResidualReport> {
    let root = k.map(|kk| (h * h - kk).abs().sqrt());
    let log = root.map(f64::ln);
    let (ni, nj) = grid.interior_dims();
    let data: Vec<f64> = (0..ni * nj)
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p % ni + 1, p / ni + 1);
            root.at(i, j) * d_uv_interior(&log, grid, i, j) - k.at(i, j)
        })
        .collect();
    Ok(ResidualReport::from_interior(grid, Field::from_vec(ni, nj, data)?))
}

/// Residual of `sqrt|K| (ln sqrt|K|)_uv - K`, the minimal case `H = 0`.
pub fn minimal_residual(k: &Field, grid: &Grid) -> Result<ResidualReport> {
    grid.require(3)?;
    check_nondegenerate(k, 0.0, grid, "K")?;
    residual_with_h(k, 0.0, grid)
}

/// `F = 1 / sqrt|H^2 - K|` and `eps1 eps2 = sign(H^2 - K)` for constant `H`.
#[allow(non_snake_case)]
pub fn F_from_K_cmc(k: &Field, h: f64, grid: &Grid) -> Result<(Field, Sign)> {
    check_nondegenerate(k, h, grid, "H^2 - K")?;
    let d = k.map(|kk| h * h - kk);
    let sign = Sign::of(d.at(0, 0)).expect("nonzero");
    let (nu, nv) = d.dims();
    for j in 0..nv {
        for i in 0..nu {
            if Sign::of(d.at(i, j)) != Some(sign) {
                return Err(Error::Precondition(format!(
                    "H^2 - K changes sign on the grid, first at {}",
                    grid.node(i, j)
                )));
            }
        }
    }
    Ok((d.map(|x| 1.0 / x.abs().sqrt()), sign))
}

/// The two sign pairs admissible for a given `eps1 eps2`.
pub fn admissible_pairs(eps_product: Sign) -> [(Sign, Sign); 2] {
    match eps_product {
        Sign::Plus => [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus)],
        Sign::Minus => [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)],
    }
}

//! Rectangular parameter grids, scalar fields on them, and charts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Node, Result};
use crate::numerics::stencil::{fornberg_weights, interval_window_start, locate, LineOperator};

/// Sign constant `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: f64) -> Option<Sign> {
        if x > 0.0 {
            Some(Sign::Plus)
        } else if x < 0.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl TryFrom<i32> for Sign {
    type Error = String;
    fn try_from(v: i32) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i32 {
    fn from(s: Sign) -> i32 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Tensor grid `u[i] x v[j]`, both strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl Grid {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        for (name, axis) in [("u", &u), ("v", &v)] {
            if axis.is_empty() {
                return Err(Error::Format(format!("{name} grid is empty")));
            }
            if axis.iter().any(|x| !x.is_finite()) {
                return Err(Error::Format(format!("{name} grid has non-finite entries")));
            }
            if axis.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Format(format!("{name} grid is not strictly increasing")));
            }
        }
        Ok(Self { u, v })
    }

    pub fn uniform(u_range: (f64, f64), v_range: (f64, f64), nu: usize, nv: usize) -> Self {
        Self {
            u: crate::numerics::linspace(u_range.0, u_range.1, nu),
            v: crate::numerics::linspace(v_range.0, v_range.1, nv),
        }
    }

    pub fn nu(&self) -> usize {
        self.u.len()
    }

    pub fn nv(&self) -> usize {
        self.v.len()
    }

    pub fn node(&self, i: usize, j: usize) -> Node {
        Node { i, j, u: self.u[i], v: self.v[j] }
    }

    /// Largest spacing along either axis.
    pub fn max_step(&self) -> f64 {
        self.u
            .windows(2)
            .chain(self.v.windows(2))
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    pub fn require(&self, needed: usize) -> Result<()> {
        if self.nu() < needed || self.nv() < needed {
            return Err(Error::Stencil { needed, nu: self.nu(), nv: self.nv() });
        }
        Ok(())
    }

    /// Node count `(nu, nv)` of the interior (nodes with both neighbours).
    pub fn interior_dims(&self) -> (usize, usize) {
        (self.nu().saturating_sub(2), self.nv().saturating_sub(2))
    }

    /// Index of the node equal to `x` up to a relative `1e-12`.
    pub fn index_of(axis: &[f64], x: f64) -> Option<usize> {
        let scale = 1.0 + axis.iter().fold(0.0_f64, |m, a| m.max(a.abs()));
        axis.iter().position(|a| (a - x).abs() <= 1e-12 * scale)
    }

    /// Quadrature weights for interior nodes (products of half neighbour spans).
    pub fn interior_weight(&self, i: usize, j: usize) -> f64 {
        0.25 * (self.u[i + 1] - self.u[i - 1]) * (self.v[j + 1] - self.v[j - 1])
    }
}

/// Scalar field sampled on a grid, row-major by `v` then `u`: `data[j * nu + i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    nu: usize,
    nv: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(nu: usize, nv: usize) -> Self {
        Self { nu, nv, data: vec![0.0; nu * nv] }
    }

    pub fn constant(nu: usize, nv: usize, c: f64) -> Self {
        Self { nu, nv, data: vec![c; nu * nv] }
    }

    pub fn from_fn(grid: &Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut data = Vec::with_capacity(grid.nu() * grid.nv());
        for &v in &grid.v {
            for &u in &grid.u {
                data.push(f(u, v));
            }
        }
        Self { nu: grid.nu(), nv: grid.nv(), data }
    }

    pub fn from_indexed(nu: usize, nv: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(nu * nv);
        for j in 0..nv {
            for i in 0..nu {
                data.push(f(i, j));
            }
        }
        Self { nu, nv, data }
    }

    pub fn from_vec(nu: usize, nv: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != nu * nv {
            return Err(Error::Format(format!(
                "field has {} values, expected {nu} x {nv}",
                data.len()
            )));
        }
        Ok(Self { nu, nv, data })
    }

    /// From rows indexed by `v` (each row runs over `u`).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nv = rows.len();
        let nu = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != nu) {
            return Err(Error::Format("ragged field rows".into()));
        }
        Ok(Self { nu, nv, data: rows.concat() })
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.nu).map(<[f64]>::to_vec).collect()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nu, self.nv)
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.nu + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[j * self.nu + i] = x;
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.data[j * self.nu..(j + 1) * self.nu]
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        (0..self.nv).map(|j| self.at(i, j)).collect()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { nu: self.nu, nv: self.nv, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn zip_map(&self, other: &Field, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.dims(), other.dims());
        Self {
            nu: self.nu,
            nv: self.nv,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Swap the roles of `u` and `v`.
    pub fn transpose(&self) -> Self {
        Self::from_indexed(self.nv, self.nu, |i, j| self.at(j, i))
    }

    /// Derivative along `u` with a `width`-point stencil.
    pub fn d_u(&self, grid: &Grid, width: usize) -> Self {
        let op = LineOperator::new(&grid.u, 1, width);
        Self::from_indexed(self.nu, self.nv, |i, j| op.apply_at(i, |k| self.at(k, j)))
    }

    /// Derivative along `v` with a `width`-point stencil.
    pub fn d_v(&self, grid: &Grid, width: usize) -> Self {
        let op = LineOperator::new(&grid.v, 1, width);
        Self::from_indexed(self.nu, self.nv, |i, j| op.apply_at(j, |k| self.at(i, k)))
    }

    /// Tensor-product cubic (4x4 Lagrange) interpolation at `(u, v)`.
    pub fn sample(&self, grid: &Grid, u: f64, v: f64) -> f64 {
        let (wu, su) = interp_weights(&grid.u, u);
        let (wv, sv) = interp_weights(&grid.v, v);
        let mut acc = 0.0;
        for (b, wb) in wv.iter().enumerate() {
            let mut row = 0.0;
            for (a, wa) in wu.iter().enumerate() {
                row += wa * self.at(su + a, sv + b);
            }
            acc += wb * row;
        }
        acc
    }
}

fn interp_weights(axis: &[f64], t: f64) -> (Vec<f64>, usize) {
    let width = axis.len().min(4);
    let k = locate(axis, t);
    let s = interval_window_start(k, width, axis.len());
    (fornberg_weights(t, &axis[s..s + width], 0), s)
}

/// Parameter chart carrying `F`, `H` and optionally the second fundamental form.
///
/// `(u0_index, v0_index)` is the initial point; `eps1`, `eps2` are the signs of
/// `L` along `v = v0` and `N` along `u = u0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub grid: Grid,
    pub f: Field,
    pub h: Field,
    pub l: Option<Field>,
    pub m: Option<Field>,
    pub n: Option<Field>,
    pub k: Option<Field>,
    pub u0_index: usize,
    pub v0_index: usize,
    pub eps1: Sign,
    pub eps2: Sign,
    /// Set once `verify_canonical` has passed on this chart.
    pub canonical: bool,
}

impl Chart {
    pub fn new(
        grid: Grid,
        f: Field,
        h: Field,
        (u0_index, v0_index): (usize, usize),
        (eps1, eps2): (Sign, Sign),
    ) -> Result<Self> {
        let chart = Self {
            grid,
            f,
            h,
            l: None,
            m: None,
            n: None,
            k: None,
            u0_index,
            v0_index,
            eps1,
            eps2,
            canonical: false,
        };
        chart.validate()?;
        Ok(chart)
    }

    /// Shapes, base indices, finiteness, and `F > 0` at every node.
    pub fn validate(&self) -> Result<()> {
        let dims = (self.grid.nu(), self.grid.nv());
        let named = [
            ("F", Some(&self.f)),
            ("H", Some(&self.h)),
            ("L", self.l.as_ref()),
            ("M", self.m.as_ref()),
            ("N", self.n.as_ref()),
            ("K", self.k.as_ref()),
        ];
        for (name, field) in named {
            let Some(field) = field else { continue };
            if field.dims() != dims {
                return Err(Error::Format(format!(
                    "{name} has shape {:?}, grid is {:?}",
                    field.dims(),
                    dims
                )));
            }
            if let Some(p) = field.values().iter().position(|x| !x.is_finite()) {
                let node = self.grid.node(p % dims.0, p / dims.0);
                return Err(Error::Format(format!("{name} is not finite at {node}")));
            }
        }
        if self.u0_index >= dims.0 || self.v0_index >= dims.1 {
            return Err(Error::Format(format!(
                "base indices ({}, {}) outside grid {:?}",
                self.u0_index, self.v0_index, dims
            )));
        }
        for j in 0..dims.1 {
            for i in 0..dims.0 {
                let f = self.f.at(i, j);
                if f <= 0.0 {
                    return Err(Error::Precondition(format!(
                        "F = {f} <= 0 at {}",
                        self.grid.node(i, j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn u0(&self) -> f64 {
        self.grid.u[self.u0_index]
    }

    pub fn v0(&self) -> f64 {
        self.grid.v[self.v0_index]
    }

    pub fn with_second_form(mut self, l: Field, m: Field, n: Field) -> Self {
        self.l = Some(l);
        self.m = Some(m);
        self.n = Some(n);
        self
    }
}

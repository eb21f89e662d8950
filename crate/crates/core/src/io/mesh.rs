//! Mesh export.
//!
//! Positions are written in coordinate order `(x1, x2, x3)` of `R^3_1` with
//! the metric `-dx1^2 + dx2^2 + dx3^2`. Vertex `(i, j)` of the grid has OBJ
//! index `j * nu + i + 1`; each cell becomes two counter-clockwise triangles in
//! the `(u, v)` plane.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::minkowski::MinkowskiVec;

fn check(grid: &Grid, mesh: &[MinkowskiVec]) -> Result<()> {
    if mesh.len() != grid.nu() * grid.nv() {
        return Err(Error::Precondition(format!(
            "mesh has {} vertices for a {} x {} grid",
            mesh.len(),
            grid.nu(),
            grid.nv()
        )));
    }
    Ok(())
}

pub fn obj_string(grid: &Grid, mesh: &[MinkowskiVec]) -> Result<String> {
    check(grid, mesh)?;
    let (nu, nv) = (grid.nu(), grid.nv());
    let mut s = String::new();
    s.push_str("# Lorentz surface in R^3_1, metric -dx1^2 + dx2^2 + dx3^2\n");
    s.push_str("# vertices are (x1, x2, x3); x1 is the timelike coordinate\n");
    let _ = writeln!(s, "# grid {nu} x {nv}, vertex (i, j) has index j*{nu} + i + 1");
    for p in mesh {
        let _ = writeln!(s, "v {} {} {}", p.0[0], p.0[1], p.0[2]);
    }
    for j in 0..nv.saturating_sub(1) {
        for i in 0..nu.saturating_sub(1) {
            let a = j * nu + i + 1;
            let (b, c, d) = (a + 1, a + nu + 1, a + nu);
            let _ = writeln!(s, "f {a} {b} {c}");
            let _ = writeln!(s, "f {a} {c} {d}");
        }
    }
    Ok(s)
}

pub fn csv_string(grid: &Grid, mesh: &[MinkowskiVec]) -> Result<String> {
    check(grid, mesh)?;
    let nu = grid.nu();
    let mut s = String::from("u,v,x1,x2,x3\n");
    for (p, x) in mesh.iter().enumerate() {
        let _ = writeln!(s, "{},{},{},{},{}", grid.u[p % nu], grid.v[p / nu], x.0[0], x.0[1], x.0[2]);
    }
    Ok(s)
}

pub fn write_obj(path: &Path, grid: &Grid, mesh: &[MinkowskiVec]) -> Result<()> {
    super::write_atomic(path, obj_string(grid, mesh)?.as_bytes())
}

pub fn write_csv(path: &Path, grid: &Grid, mesh: &[MinkowskiVec]) -> Result<()> {
    super::write_atomic(path, csv_string(grid, mesh)?.as_bytes())
}

/// Write `<stem>.obj` and `<stem>.csv`; returns both paths.
pub fn write_mesh(stem: &Path, grid: &Grid, mesh: &[MinkowskiVec]) -> Result<(PathBuf, PathBuf)> {
    let with = |ext: &str| {
        let mut s = stem.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    let (obj, csv) = (with(".obj"), with(".csv"));
    write_obj(&obj, grid, mesh)?;
    write_csv(&csv, grid, mesh)?;
    Ok((obj, csv))
}

/// Parse the CSV written by [`write_csv`] back into `(u, v, x)` rows.
pub fn read_csv(text: &str) -> Result<Vec<(f64, f64, MinkowskiVec)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate().skip(1) {
        let vals: Vec<f64> = line
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Format(format!("line {}: {e}", k + 1)))?;
        if vals.len() != 5 {
            return Err(Error::Format(format!("line {}: expected 5 columns", k + 1)));
        }
        out.push((vals[0], vals[1], MinkowskiVec::new(vals[2], vals[3], vals[4])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_mesh() {
        let g = Grid::uniform((0.0, 1.0), (0.0, 1.0), 3, 2);
        let mesh: Vec<_> = (0..6).map(|k| MinkowskiVec::new(k as f64, 0.5, -1.0)).collect();
        let obj = obj_string(&g, &mesh).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 6);
        let faces: Vec<_> = obj.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces, ["f 1 2 5", "f 1 5 4", "f 2 3 6", "f 2 6 5"]);
        let back = read_csv(&csv_string(&g, &mesh).unwrap()).unwrap();
        assert_eq!(back.len(), 6);
        assert_eq!(back[4], (0.5, 1.0, mesh[4]));
    }
}

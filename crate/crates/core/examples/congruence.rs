//! Congruence of meshes under Lorentz motions and reflections.

use lorentz_surfaces::bonnet::congruence_check;
use lorentz_surfaces::corpus::CorpusSurface;
use lorentz_surfaces::minkowski::{boost, rotate_spatial};
use lorentz_surfaces::{Grid, MinkowskiVec, SurfaceProvider};

fn main() -> lorentz_surfaces::Result<()> {
    let n = 41;
    let grid = Grid::uniform((1.0, 2.0), (-1.0, 0.0), n, n);
    let mesh: Vec<MinkowskiVec> = (0..n * n)
        .map(|p| CorpusSurface::Enneper1.position(grid.u[p % n], grid.v[p / n]))
        .collect::<lorentz_surfaces::Result<_>>()?;

    let moved: Vec<_> = mesh.iter().map(|x| rotate_spatial(&boost(x, 1, 0.8), 0.4) + MinkowskiVec::new(1.0, 2.0, 3.0)).collect();
    let flipped: Vec<_> = mesh.iter().map(|x| MinkowskiVec::new(-x.a1(), x.a2(), x.a3())).collect();
    let other: Vec<_> = (0..n * n)
        .map(|p| CorpusSurface::Enneper2.position(grid.u[p % n] - 0.5, grid.v[p / n] + 1.5))
        .collect::<lorentz_surfaces::Result<_>>()?;

    for (name, b) in [("boosted and rotated", &moved), ("time-reflected", &flipped), ("enneper2", &other)] {
        let c = congruence_check(&mesh, b, &grid, 1e-6)?;
        println!("{name:<20} {:?}  (F {:.1e}, LMN {:.1e}, flipped {:.1e})", c.relation, c.f_mismatch, c.lmn_mismatch, c.lmn_flipped_mismatch);
    }
    Ok(())
}

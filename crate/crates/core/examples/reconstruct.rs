//! Rebuild the first Enneper surface from F = (u - v)^2 / 2 and H = 0.

use lorentz_surfaces::bonnet::{reconstruct, Seed};
use lorentz_surfaces::numerics::linspace;
use lorentz_surfaces::{Chart, Field, Grid, Sign};

fn main() -> lorentz_surfaces::Result<()> {
    for n in [51, 101, 201] {
        let grid = Grid::new(linspace(1.0, 2.0, n), linspace(-1.0, 0.0, n))?;
        let f = Field::from_fn(&grid, |u, v| 0.5 * (u - v).powi(2));
        let chart = Chart::new(grid, f, Field::zeros(n, n), (n / 2, n / 2), (Sign::Plus, Sign::Plus))?;
        let r = reconstruct(&chart, &Seed::Standard)?;
        let fm = r.form_mismatch.expect("grid is large enough");
        println!(
            "n={n:<4} drift {:.2e}  compat {:.2e}  F err {:.2e}  H err {:.2e}  x(corner) = {:?}",
            r.max_drift(),
            r.compat_residual.max_abs(),
            fm.f_max_rel,
            fm.h_max_rel,
            r.position(n - 1, n - 1)
        );
    }
    Ok(())
}

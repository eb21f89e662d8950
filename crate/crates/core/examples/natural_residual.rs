//! Residuals of the natural equation and its constant-H reductions.

use lorentz_surfaces::corpus;
use lorentz_surfaces::natural::{cmc_residual, minimal_residual, natural_residual};
use lorentz_surfaces::numerics::linspace;

fn main() -> lorentz_surfaces::Result<()> {
    for n in [25, 51, 101, 201] {
        let chart = corpus::reference_chart("enneper1", linspace(1.0, 2.0, n), linspace(-1.0, 0.0, n), 1.5, -0.5)?;
        let general = natural_residual(&chart)?;
        let minimal = minimal_residual(chart.k.as_ref().unwrap(), &chart.grid)?;
        println!("enneper1 n={n:<4} general {:.2e}  minimal {:.3e} (l2 {:.3e})", general.max_abs, minimal.max_abs, minimal.l2);
    }
    let g = linspace(0.0, 1.0, 51);
    let cyl = corpus::reference_chart("cylinder", g.clone(), g, 0.5, 0.5)?;
    println!("cylinder cmc residual {:e}", cmc_residual(cyl.k.as_ref().unwrap(), 0.5, &cyl.grid)?.max_abs);

    let mut bad = cyl.clone();
    bad.f = bad.f.map(|f| 1.05 * f);
    println!("cylinder with F scaled by 1.05: natural residual {:.3e}", natural_residual(&bad)?.max_abs);
    Ok(())
}

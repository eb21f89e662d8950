//! Two non-congruent surfaces with K = 0 and H = 1/2.

use lorentz_surfaces::bonnet::{analyze_mesh, cmc_pair, congruence_check, Seed};
use lorentz_surfaces::{Field, Grid};

fn main() -> lorentz_surfaces::Result<()> {
    let n = 81;
    let grid = Grid::uniform((0.0, 1.0), (0.0, 1.0), n, n);
    let (p, m) = cmc_pair(&Field::zeros(n, n), 0.5, &grid, (n / 2, n / 2), &Seed::Standard)?;
    for (tag, r) in [("p", &p), ("m", &m)] {
        let forms = analyze_mesh(&r.mesh, &r.grid)?;
        let (i, j) = (n / 2, n / 2);
        println!(
            "{tag}: eps = ({:?}, {:?})  (L, M, N) at centre = ({:+.6}, {:+.6}, {:+.6})",
            r.chart.eps1,
            r.chart.eps2,
            forms.l.at(i, j),
            forms.m.at(i, j),
            forms.n.at(i, j)
        );
    }
    let c = congruence_check(&p.mesh, &m.mesh, &grid, 1e-4)?;
    println!("relation: {:?} (L, M, N mismatch {:.3})", c.relation, c.lmn_mismatch);
    Ok(())
}

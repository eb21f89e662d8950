//! Fundamental forms of a user-supplied surface given only by its position.
//!
//! Run with `cargo run --example forms`.

use lorentz_surfaces::surface::{classify, default_classify_tol, fundamental_forms, jet_from_position_default, Domain};
use lorentz_surfaces::{MinkowskiVec, SurfaceProvider};

fn main() -> lorentz_surfaces::Result<()> {
    // the first Enneper surface, differentiated numerically
    let enneper = |u: f64, v: f64| {
        let (u3, v3) = (u * u * u, v * v * v);
        MinkowskiVec::new(
            (u3 - v3 + 3.0 * u - 3.0 * v) / 6.0,
            (-u3 + v3 + 3.0 * u - 3.0 * v) / 6.0,
            (u * u - v * v) / 2.0,
        )
    };
    let surface = jet_from_position_default(enneper, Domain::new((1.0, 2.0), (-1.0, 0.0)))?;
    for (u, v) in [(1.0, 0.0), (1.5, -0.5), (2.0, -1.0)] {
        let fd = fundamental_forms(&surface.jet(u, v)?)?;
        let kind = classify(&fd, default_classify_tol(&fd)).map(|c| format!("{:?}", c.kind));
        println!(
            "({u:4}, {v:4})  E={:+.2e} F={:.6} G={:+.2e}  L={:+.5} M={:+.5} N={:+.5}  K={:+.5} H={:+.1e}  {}",
            fd.E, fd.F, fd.G, fd.L, fd.M, fd.N, fd.K, fd.H,
            kind.unwrap_or_else(|e| e.to_string())
        );
    }
    Ok(())
}

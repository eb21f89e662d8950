//! Classify every corpus surface at the centre of its domain.

use lorentz_surfaces::corpus;
use lorentz_surfaces::surface::{classify, default_classify_tol, fundamental_forms};

fn main() -> lorentz_surfaces::Result<()> {
    for entry in corpus::list() {
        let (u, v) = entry.default_domain.center();
        let fd = fundamental_forms(&entry.provider().jet(u, v)?)?;
        let c = classify(&fd, default_classify_tol(&fd))?;
        println!("{:<20} H^2-K = {:+.6}  {:?}", entry.name, c.discriminant, c.kind);
    }
    Ok(())
}

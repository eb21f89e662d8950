//! Print the corpus and a few closed-form values.

use lorentz_surfaces::corpus;

fn main() -> lorentz_surfaces::Result<()> {
    for e in corpus::list() {
        let d = e.default_domain;
        println!("{} [{:?}]", e.name, e.kind);
        println!("  x(u, v) = {}", e.parametrization);
        println!("  domain [{}, {}] x [{}, {}]; {}", d.u_min, d.u_max, d.v_min, d.v_max, e.notes);
    }
    let r = corpus::get("enneper1")?.reference(1.0, 0.0);
    println!("enneper1 at (1, 0): F = {}, K = {}, H = {}", r.F, r.K, r.H);
    Ok(())
}

//! Write a chart and a mesh, read them back.

use std::collections::BTreeMap;

use lorentz_surfaces::bonnet::{reconstruct, Seed};
use lorentz_surfaces::corpus;
use lorentz_surfaces::io::{mesh::read_csv, read_chart, write_chart, write_mesh};
use lorentz_surfaces::numerics::linspace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("lsl-chart-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let chart = corpus::reference_chart("enneper2", linspace(0.5, 1.5, 21), linspace(0.5, 1.5, 21), 1.0, 1.0)?;
    let path = dir.join("enneper2.json");
    let mut meta = BTreeMap::new();
    meta.insert("note".to_string(), serde_json::json!("example"));
    write_chart(&path, &chart, meta)?;
    let back = read_chart(&path)?;
    println!("{} bytes, round trip exact: {}", std::fs::metadata(&path)?.len(), back == chart);

    let r = reconstruct(&back, &Seed::Standard)?;
    let (obj, csv) = write_mesh(&dir.join("enneper2"), &r.grid, &r.mesh)?;
    let rows = read_csv(&std::fs::read_to_string(&csv)?)?;
    println!("wrote {} and {} ({} vertices)", obj.display(), csv.display(), rows.len());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

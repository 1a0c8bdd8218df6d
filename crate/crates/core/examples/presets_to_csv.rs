//! Writes every preset to `<dir>/<name>.csv` (default `target/presets`).
//!
//!     cargo run --release --example presets_to_csv -- out/

use std::path::PathBuf;

use detune::cli;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "target/presets".into());
    std::fs::create_dir_all(&dir)?;
    for p in cli::catalog() {
        let out = cli::run(&p.config)?;
        let path = dir.join(format!("{}.csv", p.name));
        std::fs::write(&path, out.to_csv())?;
        let last = out.last().unwrap();
        println!("{:24} tau {:6.1}  C {:.4}  -> {}", p.name, last.tau, last.concurrence_clamped, path.display());
    }
    Ok(())
}

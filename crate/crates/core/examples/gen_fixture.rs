//! Writes the 17-dimensional model to `fixtures/appendixB.json`.

use parasym::extension::model::k17_model;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/appendixB.json")
    });
    let e = k17_model()?;
    let text = serde_json::to_string_pretty(&e.to_json())?;
    std::fs::write(&out, text + "\n")?;
    eprintln!("wrote {}", out.display());
    Ok(())
}

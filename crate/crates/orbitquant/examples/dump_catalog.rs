//! Regenerates `data/catalog.json` from the built-in model bases:
//! `cargo run -p orbitquant --example dump_catalog > crates/orbitquant/data/catalog.json`

fn main() {
    let doc = orbitquant::catalog::CatalogDoc::builtin();
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
}

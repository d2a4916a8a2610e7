use std::env;
use std::fs;
use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap()).join("corpus");
    println!("cargo:rerun-if-changed={}", dir.display());
    let mut names: Vec<String> = fs::read_dir(&dir)
        .expect("corpus directory")
        .filter_map(|e| {
            let p = e.ok()?.path();
            println!("cargo:rerun-if-changed={}", p.display());
            (p.extension()? == "poly").then(|| p.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort();
    let mut out = String::from("pub(super) static FILES: &[(&str, &str)] = &[\n");
    for n in &names {
        let path = dir.join(format!("{n}.poly"));
        out.push_str(&format!("    ({n:?}, include_str!({:?})),\n", path.display().to_string()));
    }
    out.push_str("];\n");
    let manifest = dir.join("MANIFEST.sha256");
    out.push_str(&format!(
        "pub(super) static MANIFEST: &str = include_str!({:?});\n",
        manifest.display().to_string()
    ));
    fs::write(PathBuf::from(env::var("OUT_DIR").unwrap()).join("corpus_files.rs"), out).unwrap();
}

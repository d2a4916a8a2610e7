//! Named polynomial files with a SHA-256 manifest.
//!
//! A file `<name>.poly` starts with `name: <name> vars: <v1> <v2> …` and
//! continues with the canonical text, wrapped eight terms per line with a
//! trailing ` +` on every line but the last. The manifest holds one
//! `<name> <sha256 of the file>` line per entry.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::{parse_with_vars, MvPoly, MvPolyError};

pub const MANIFEST_FILE: &str = "MANIFEST.sha256";
const TERMS_PER_LINE: usize = 8;

mod embedded {
    include!(concat!(env!("OUT_DIR"), "/corpus_files.rs"));
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub poly: MvPoly,
}

impl CorpusEntry {
    pub fn new(name: &str, poly: MvPoly) -> CorpusEntry {
        CorpusEntry {
            name: name.to_string(),
            poly,
        }
    }

    pub fn to_file_text(&self) -> String {
        let mut out = format!("name: {} vars:", self.name);
        for v in self.poly.vars() {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        if self.poly.is_zero() {
            out.push_str("0\n");
            return out;
        }
        let terms = self.poly.term_strings();
        let lines: Vec<String> = terms
            .chunks(TERMS_PER_LINE)
            .map(|c| c.join(" + "))
            .collect();
        out.push_str(&lines.join(" +\n"));
        out.push('\n');
        out
    }

    pub fn parse_file(text: &str) -> Result<CorpusEntry, MvPolyError> {
        let bad = |m: &str| MvPolyError::Corpus(m.to_string());
        let (header, body) = text.split_once('\n').ok_or_else(|| bad("missing header line"))?;
        let rest = header
            .strip_prefix("name: ")
            .ok_or_else(|| bad("header must start with 'name: '"))?;
        let (name, vars) = rest
            .split_once(" vars:")
            .ok_or_else(|| bad("header lacks 'vars:'"))?;
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad("malformed name"));
        }
        let vars: Vec<&str> = vars.split_whitespace().collect();
        if !MvPoly::is_canonical_var_list(&vars) {
            return Err(bad("variable list is not in canonical order"));
        }
        let poly = parse_with_vars(body, &vars)?;
        if poly.vars() != vars.as_slice() {
            return Err(MvPolyError::Corpus(format!(
                "{name}: header lists {vars:?} but the body uses {:?}",
                poly.vars()
            )));
        }
        Ok(CorpusEntry::new(name, poly))
    }

    pub fn digest(&self) -> String {
        digest_text(&self.to_file_text())
    }
}

pub fn digest_text(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// A set of named polynomials and the digests they are expected to have.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    entries: BTreeMap<String, CorpusEntry>,
    manifest: BTreeMap<String, String>,
}

impl Corpus {
    /// The corpus compiled into the library.
    pub fn builtin() -> Corpus {
        let mut c = Corpus::default();
        for (name, text) in embedded::FILES {
            let e = CorpusEntry::parse_file(text)
                .unwrap_or_else(|err| panic!("embedded corpus file {name}: {err}"));
            c.entries.insert(e.name.clone(), e);
        }
        c.manifest = parse_manifest(embedded::MANIFEST).expect("embedded manifest");
        c
    }

    pub fn load_dir(dir: &Path) -> Result<Corpus, MvPolyError> {
        let io = |e: std::io::Error| MvPolyError::Corpus(format!("{}: {e}", dir.display()));
        let mut c = Corpus::default();
        let mut paths: Vec<_> = fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "poly"))
            .collect();
        paths.sort();
        for p in paths {
            let text = fs::read_to_string(&p).map_err(io)?;
            let e = CorpusEntry::parse_file(&text)?;
            c.entries.insert(e.name.clone(), e);
        }
        let manifest = fs::read_to_string(dir.join(MANIFEST_FILE)).map_err(io)?;
        c.manifest = parse_manifest(&manifest)?;
        Ok(c)
    }

    /// Writes every entry plus a manifest of the current digests.
    pub fn write_dir(&self, dir: &Path) -> Result<(), MvPolyError> {
        let io = |e: std::io::Error| MvPolyError::Corpus(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        for e in self.entries.values() {
            fs::write(dir.join(format!("{}.poly", e.name)), e.to_file_text()).map_err(io)?;
        }
        fs::write(dir.join(MANIFEST_FILE), self.current_manifest_text()).map_err(io)?;
        Ok(())
    }

    pub fn insert(&mut self, entry: CorpusEntry) {
        self.entries.insert(entry.name.clone(), entry);
    }

    /// Replaces a polynomial without touching the manifest.
    pub fn replace(&mut self, name: &str, poly: MvPoly) {
        self.insert(CorpusEntry::new(name, poly));
    }

    pub fn get(&self, name: &str) -> Result<&MvPoly, MvPolyError> {
        self.entries
            .get(name)
            .map(|e| &e.poly)
            .ok_or_else(|| MvPolyError::Corpus(format!("no entry named {name}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Manifest text for the entries as they are now.
    pub fn current_manifest_text(&self) -> String {
        self.entries
            .values()
            .map(|e| format!("{} {}\n", e.name, e.digest()))
            .collect()
    }

    /// Compares each entry with the manifest; entries missing from either side count as mismatches.
    pub fn verify_digests(&self) -> Vec<MvPolyError> {
        let mut out = Vec::new();
        for e in self.entries.values() {
            let actual = e.digest();
            match self.manifest.get(&e.name) {
                Some(expected) if *expected == actual => {}
                expected => out.push(MvPolyError::DigestMismatch {
                    name: e.name.clone(),
                    expected: expected.cloned().unwrap_or_else(|| "absent".to_string()),
                    actual,
                }),
            }
        }
        for name in self.manifest.keys() {
            if !self.entries.contains_key(name) {
                out.push(MvPolyError::Corpus(format!("manifest lists missing entry {name}")));
            }
        }
        out
    }
}

fn parse_manifest(text: &str) -> Result<BTreeMap<String, String>, MvPolyError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (n, d) = l
                .split_once(' ')
                .ok_or_else(|| MvPolyError::Corpus(format!("bad manifest line {l:?}")))?;
            Ok((n.to_string(), d.trim().to_string()))
        })
        .collect()
}

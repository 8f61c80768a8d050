//! The bundled fixture corpus: `.pcp` files whose header comments record
//! expected values, plus a `MANIFEST` of SHA-256 hashes.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pcp::{parse_pcp, PcPresentation};

/// Expected values from a fixture header (`# expect.<key>: <value>`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub order: Option<String>,
    pub class: Option<usize>,
    pub maximal_class: Option<bool>,
    pub exponent: Option<u64>,
    pub multiplier: Option<Vec<u64>>,
    pub source: Option<String>,
}

impl Expected {
    pub fn is_empty(&self) -> bool {
        *self == Expected::default()
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub path: PathBuf,
    pub pres: PcPresentation,
    pub expected: Expected,
}

pub fn parse_expected(text: &str) -> Result<Expected> {
    let mut e = Expected::default();
    for (k, line) in text.lines().enumerate() {
        let Some(rest) = line.trim().strip_prefix('#') else { continue };
        let Some((key, value)) = rest.split_once(':') else { continue };
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| Error::Parse { line: k + 1, msg: format!("bad {what} `{value}`") };
        match key {
            "source" => e.source = Some(value.to_string()),
            "expect.order" => e.order = Some(value.to_string()),
            "expect.class" => e.class = Some(value.parse().map_err(|_| bad("class"))?),
            "expect.maximal_class" => e.maximal_class = Some(value.parse().map_err(|_| bad("flag"))?),
            "expect.exponent" => e.exponent = Some(value.parse().map_err(|_| bad("exponent"))?),
            "expect.multiplier" => {
                let factors = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("multiplier"))?;
                e.multiplier = Some(factors);
            }
            _ => {}
        }
    }
    Ok(e)
}

/// Reads one fixture file.
pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(Fixture { name, path: path.to_path_buf(), pres: parse_pcp(&text)?, expected: parse_expected(&text)? })
}

/// `PGM_FIXTURES` if set, else the repository's `fixtures/` directory.
pub fn default_dir() -> PathBuf {
    match std::env::var_os("PGM_FIXTURES") {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `MANIFEST` body for the `.pcp` files currently in `dir`.
pub fn manifest_for(dir: &Path) -> Result<String> {
    let mut out = String::new();
    for path in pcp_files(dir)? {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        out.push_str(&format!("{}  {name}\n", sha256_hex(&std::fs::read(&path)?)));
    }
    Ok(out)
}

fn pcp_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "pcp"))
        .collect();
    files.sort();
    Ok(files)
}

/// Loads every fixture listed in `dir/MANIFEST`, checking hashes. Files
/// missing from the manifest, or listed but absent, are integrity failures.
pub fn load_corpus(dir: &Path) -> Result<Vec<Fixture>> {
    let manifest = std::fs::read_to_string(dir.join("MANIFEST"))
        .map_err(|e| Error::Corpus(format!("cannot read {}/MANIFEST: {e}", dir.display())))?;
    let mut listed = Vec::new();
    for line in manifest.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (hash, name) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Corpus(format!("malformed manifest line `{line}`")))?;
        listed.push((hash.to_string(), name.trim().to_string()));
    }
    let on_disk: Vec<String> =
        pcp_files(dir)?.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    if let Some(extra) = on_disk.iter().find(|f| !listed.iter().any(|(_, n)| n == *f)) {
        return Err(Error::Corpus(format!("{extra} is not listed in MANIFEST")));
    }
    let mut out = Vec::with_capacity(listed.len());
    for (hash, name) in listed {
        let path = dir.join(&name);
        let bytes = std::fs::read(&path).map_err(|e| Error::Corpus(format!("{name}: {e}")))?;
        if sha256_hex(&bytes) != hash {
            return Err(Error::Corpus(format!("hash mismatch for {name}")));
        }
        out.push(load_fixture(&path)?);
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_parsing() {
        let text = "pcgroup\n# source: GAP\n# expect.order: 3^3\n# expect.class: 2\n# expect.maximal_class: true\n# expect.multiplier: 3,3\n# expect.exponent: 3\nprime 3\ngens 0\nend\n";
        let e = parse_expected(text).unwrap();
        assert_eq!(e.order.as_deref(), Some("3^3"));
        assert_eq!(e.class, Some(2));
        assert_eq!(e.maximal_class, Some(true));
        assert_eq!(e.multiplier, Some(vec![3, 3]));
        assert_eq!(e.exponent, Some(3));
        let empty = parse_expected("# expect.multiplier: \n").unwrap();
        assert_eq!(empty.multiplier, Some(vec![]));
        assert!(parse_expected("# expect.class: two\n").is_err());
    }
}

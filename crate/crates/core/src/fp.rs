//! Finitely presented groups: an alphabet and a list of relators.
//!
//! Text format, one relator per line, tokens `<gen>^<exp>` with 1-based
//! generator indices and signed exponents:
//!
//! ```text
//! fpgroup
//! gens 2
//! rel 1^3
//! rel 2^3
//! rel 2^-1 1^-1 2^1 1^1
//! end
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcp::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpPresentation {
    pub ngens: usize,
    /// Display names, one per generator.
    pub names: Vec<String>,
    pub relators: Vec<Word>,
}

impl FpPresentation {
    pub fn new(ngens: usize, relators: Vec<Word>) -> Result<Self> {
        let names = (1..=ngens).map(|i| format!("a{i}")).collect();
        Self::with_names(names, relators)
    }

    pub fn with_names(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let ngens = names.len();
        if let Some(w) = relators.iter().find(|w| w.max_gen().is_some_and(|g| g >= ngens)) {
            return Err(Error::Input(format!(
                "relator uses generator {} outside the alphabet of {ngens}",
                w.max_gen().unwrap() + 1
            )));
        }
        Ok(FpPresentation { ngens, names, relators })
    }

    /// Human-readable form of a word over this alphabet.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters
            .iter()
            .map(|l| if l.exp == 1 { self.names[l.gen].clone() } else { format!("{}^{}", self.names[l.gen], l.exp) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for FpPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fpgroup")?;
        writeln!(f, "# generators: {}", self.names.join(" "))?;
        writeln!(f, "gens {}", self.ngens)?;
        for r in &self.relators {
            write!(f, "rel")?;
            for l in &r.letters {
                write!(f, " {}^{}", l.gen + 1, l.exp)?;
            }
            writeln!(f)?;
        }
        writeln!(f, "end")
    }
}

/// Parses the `fpgroup` text format.
pub fn parse_fp(text: &str) -> Result<FpPresentation> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "fpgroup")) => {}
        Some((n, _)) => return Err(perr(n, "expected `fpgroup`".into())),
        None => return Err(perr(1, "empty input".into())),
    }
    let mut ngens: Option<usize> = None;
    let mut relators = Vec::new();
    let mut ended = false;
    for (n, line) in lines {
        if ended {
            return Err(perr(n, "content after `end`".into()));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "gens" if toks.len() == 2 && ngens.is_none() => {
                ngens = Some(toks[1].parse().map_err(|_| perr(n, format!("bad count `{}`", toks[1])))?);
            }
            "rel" => {
                let m = ngens.ok_or_else(|| perr(n, "`rel` before `gens`".into()))?;
                let mut w = Word::new();
                for tok in &toks[1..] {
                    let (g, e) = tok.split_once('^').ok_or_else(|| perr(n, format!("expected <gen>^<exp>, got `{tok}`")))?;
                    let g: usize = g.parse().map_err(|_| perr(n, format!("bad generator `{g}`")))?;
                    let e: i64 = e.parse().map_err(|_| perr(n, format!("bad exponent `{e}`")))?;
                    if g == 0 || g > m {
                        return Err(perr(n, format!("generator {g} outside 1..{m}")));
                    }
                    w.push(g - 1, e);
                }
                relators.push(w);
            }
            "end" => ended = true,
            other => return Err(perr(n, format!("unexpected `{other}`"))),
        }
    }
    if !ended {
        return Err(perr(text.lines().count(), "missing `end`".into()));
    }
    FpPresentation::new(ngens.ok_or_else(|| perr(1, "missing `gens`".into()))?, relators)
}

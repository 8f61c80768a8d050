//! The `pcgroup` text format.
//!
//! ```text
//! pcgroup
//! # comment
//! prime 3
//! gens 3
//! comm 2 1 := 3^1
//! end
//! ```
//!
//! Indices are 1-based; omitted relations are trivial.

use std::fmt;

use super::presentation::{NormalWord, PcPresentation};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_index(tok: &str, line: usize, ngens: usize) -> Result<usize> {
    let i: usize = tok.parse().map_err(|_| perr(line, format!("bad generator index `{tok}`")))?;
    if i == 0 || i > ngens {
        return Err(perr(line, format!("generator index {i} outside 1..{ngens}")));
    }
    Ok(i - 1)
}

/// Parses `k1^e1 k2^e2 ...` into a 0-based normal word.
fn parse_rhs(toks: &[&str], line: usize, ngens: usize, prime: u32, above: usize) -> Result<NormalWord> {
    let mut w = NormalWord::new();
    for tok in toks {
        let (g, e) = tok
            .split_once('^')
            .ok_or_else(|| perr(line, format!("expected <gen>^<exp>, got `{tok}`")))?;
        let g = parse_index(g, line, ngens)?;
        let e: u32 = e.parse().map_err(|_| perr(line, format!("bad exponent in `{tok}`")))?;
        if e == 0 || e >= prime {
            return Err(perr(line, format!("exponent {e} outside [1, {}]", prime - 1)));
        }
        if g <= above {
            return Err(perr(
                line,
                format!("right side uses g{} but must use generators above g{}", g + 1, above + 1),
            ));
        }
        if let Some(&(last, _)) = w.last() {
            if g <= last {
                return Err(perr(line, "right side generators must be strictly increasing"));
            }
        }
        w.push((g, e));
    }
    Ok(w)
}

/// Parses the `pcgroup` text format.
pub fn parse_pcp(text: &str) -> Result<PcPresentation> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, "pcgroup")) => {}
        _ => return Err(perr(1, "first line must be `pcgroup`")),
    }
    let mut prime: Option<u32> = None;
    let mut ngens: Option<usize> = None;
    let mut powers: Vec<Option<NormalWord>> = Vec::new();
    let mut comms: Vec<(usize, usize, NormalWord)> = Vec::new();
    let mut seen_comm = std::collections::HashSet::new();
    let mut ended = false;
    for (ln, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return Err(perr(ln, "content after `end`"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "prime" => {
                if prime.is_some() || toks.len() != 2 {
                    return Err(perr(ln, "expected a single `prime <p>` line"));
                }
                let p: u32 = toks[1].parse().map_err(|_| perr(ln, "bad prime"))?;
                if !super::is_prime(p) {
                    return Err(perr(ln, format!("{p} is not prime")));
                }
                prime = Some(p);
            }
            "gens" => {
                if prime.is_none() {
                    return Err(perr(ln, "`gens` must follow `prime`"));
                }
                if ngens.is_some() || toks.len() != 2 {
                    return Err(perr(ln, "expected a single `gens <n>` line"));
                }
                let n: usize = toks[1].parse().map_err(|_| perr(ln, "bad generator count"))?;
                ngens = Some(n);
                powers = vec![None; n];
            }
            "pow" => {
                let (p, n) = prime.zip(ngens).ok_or_else(|| perr(ln, "`pow` before `prime`/`gens`"))?;
                if toks.len() < 3 || toks[2] != ":=" {
                    return Err(perr(ln, "expected `pow <i> := ...`"));
                }
                let i = parse_index(toks[1], ln, n)?;
                if powers[i].is_some() {
                    return Err(perr(ln, format!("duplicate power relation for g{}", i + 1)));
                }
                powers[i] = Some(parse_rhs(&toks[3..], ln, n, p, i)?);
            }
            "comm" => {
                let (p, n) = prime.zip(ngens).ok_or_else(|| perr(ln, "`comm` before `prime`/`gens`"))?;
                if toks.len() < 4 || toks[3] != ":=" {
                    return Err(perr(ln, "expected `comm <j> <i> := ...`"));
                }
                let j = parse_index(toks[1], ln, n)?;
                let i = parse_index(toks[2], ln, n)?;
                if j <= i {
                    return Err(perr(ln, "commutator relation needs j > i"));
                }
                if !seen_comm.insert((j, i)) {
                    return Err(perr(ln, format!("duplicate relation for [g{}, g{}]", j + 1, i + 1)));
                }
                comms.push((j, i, parse_rhs(&toks[4..], ln, n, p, j)?));
            }
            "end" => ended = true,
            other => return Err(perr(ln, format!("unknown keyword `{other}`"))),
        }
    }
    if !ended {
        return Err(perr(text.lines().count(), "missing `end`"));
    }
    let prime = prime.ok_or_else(|| perr(1, "missing `prime`"))?;
    let ngens = ngens.ok_or_else(|| perr(1, "missing `gens`"))?;
    PcPresentation::new(
        prime,
        ngens,
        powers.into_iter().map(Option::unwrap_or_default).collect(),
        comms,
    )
}

fn write_rhs(f: &mut fmt::Formatter<'_>, w: &NormalWord) -> fmt::Result {
    for (g, e) in w {
        write!(f, " {}^{}", g + 1, e)?;
    }
    Ok(())
}

impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pcgroup")?;
        writeln!(f, "prime {}", self.prime())?;
        writeln!(f, "gens {}", self.ngens())?;
        for i in 0..self.ngens() {
            if !self.power_rhs(i).is_empty() {
                write!(f, "pow {} :=", i + 1)?;
                write_rhs(f, self.power_rhs(i))?;
                writeln!(f)?;
            }
        }
        for j in 0..self.ngens() {
            for i in 0..j {
                if !self.comm_rhs(j, i).is_empty() {
                    write!(f, "comm {} {} :=", j + 1, i + 1)?;
                    write_rhs(f, self.comm_rhs(j, i))?;
                    writeln!(f)?;
                }
            }
        }
        writeln!(f, "end")
    }
}

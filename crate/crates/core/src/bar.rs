//! `H_2(G, Z)` from a multiplication table via the normalized bar
//! resolution, as an oracle independent of the `nu(G)` route.
//!
//! Table text format (1-based indices, row `a`, column `b` holds `ab`):
//!
//! ```text
//! multable
//! order 2
//! 1 2
//! 2 1
//! end
//! ```

use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::analysis::AbelianInvariants;
use crate::error::{Error, Result};
use crate::linalg::{sparse_elementary_divisors, SparseRow};
use crate::pcp::PcPresentation;

/// Largest group turned into a table by default.
pub const DEFAULT_TABLE_CAP: u64 = 243;
/// Largest group whose bar complex is built by default. Memory grows like
/// `|G|^3`; 81 works but needs several GB.
pub const DEFAULT_BAR_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    order: usize,
    /// Row-major products, 0-based.
    table: Vec<u32>,
    identity: usize,
}

impl MultiplicationTable {
    /// Builds a table and checks the group laws.
    pub fn new(order: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != order * order || table.iter().any(|&x| x as usize >= order) {
            return Err(Error::Input("table entries do not match the order".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] as usize == a && table[a * order + e] as usize == a))
            .ok_or(Error::TableLaw("identity"))?;
        let t = MultiplicationTable { order, table, identity };
        t.check_laws()?;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    fn check_laws(&self) -> Result<()> {
        let m = self.order;
        for a in 0..m {
            if !(0..m).any(|b| self.mul(a, b) == self.identity) {
                return Err(Error::TableLaw("inverse"));
            }
        }
        let assoc = (0..m).into_par_iter().all(|a| {
            (0..m).all(|b| {
                let ab = self.mul(a, b);
                (0..m).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        });
        if !assoc {
            return Err(Error::TableLaw("associativity"));
        }
        Ok(())
    }
}

impl fmt::Display for MultiplicationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "multable")?;
        writeln!(f, "order {}", self.order)?;
        for row in self.table.chunks(self.order.max(1)).take(self.order) {
            let cells: Vec<String> = row.iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        writeln!(f, "end")
    }
}

pub fn parse_multable(text: &str) -> Result<MultiplicationTable> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "multable")) => {}
        Some((n, _)) => return Err(perr(n, "expected `multable`".into())),
        None => return Err(perr(1, "empty input".into())),
    }
    let (n, line) = lines.next().ok_or_else(|| perr(1, "missing `order`".into()))?;
    let m: usize = line
        .strip_prefix("order ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| perr(n, "expected `order <m>`".into()))?;
    let mut table = Vec::with_capacity(m * m);
    for _ in 0..m {
        let (n, line) = lines.next().ok_or_else(|| perr(n, "table ends early".into()))?;
        let row: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().ok().filter(|&x| x >= 1 && x as usize <= m).map(|x| x - 1))
            .collect::<Option<_>>()
            .ok_or_else(|| perr(n, "entries must be integers in 1..=order".into()))?;
        if row.len() != m {
            return Err(perr(n, format!("expected {m} entries, got {}", row.len())));
        }
        table.extend(row);
    }
    match lines.next() {
        Some((_, "end")) => {}
        Some((n, _)) => return Err(perr(n, "expected `end`".into())),
        None => return Err(perr(text.lines().count(), "missing `end`".into())),
    }
    MultiplicationTable::new(m, table)
}

/// Exhaustive table of a pc-presented group, elements in index order.
pub fn table_from_pcp(pres: &PcPresentation, cap: u64) -> Result<MultiplicationTable> {
    let m = pres.order().to_u128().filter(|&m| m <= cap as u128).ok_or_else(|| Error::CapExceeded {
        what: "group order for a multiplication table",
        actual: pres.order().to_string(),
        cap: cap.to_string(),
    })? as usize;
    let elems: Vec<_> = (0..m as u64).map(|i| pres.element_from_index(i)).collect();
    let rows: Vec<Vec<u32>> = elems
        .par_iter()
        .map(|a| elems.iter().map(|b| pres.index_of(&pres.multiply(a, b)) as u32).collect())
        .collect();
    MultiplicationTable::new(m, rows.concat())
}

/// The normalized bar complex in degrees 1..3 over the non-identity
/// elements, numbered `0..m-1`.
struct Bar<'a> {
    t: &'a MultiplicationTable,
    /// element index -> position among non-identity elements
    pos: Vec<Option<usize>>,
    elems: Vec<usize>,
}

impl Bar<'_> {
    fn d(&self) -> usize {
        self.elems.len()
    }

    /// Adds `sign * [tuple]` to `acc`, dropping degenerate tuples.
    fn add(&self, acc: &mut Vec<(usize, i64)>, tuple: &[usize], sign: i64) {
        let mut idx = 0;
        for &g in tuple {
            match self.pos[g] {
                Some(k) => idx = idx * self.d() + k,
                None => return,
            }
        }
        acc.push((idx, sign));
    }

    fn boundary(&self, tuple: &[usize]) -> SparseRow {
        let n = tuple.len();
        let mut acc = Vec::with_capacity(n + 1);
        self.add(&mut acc, &tuple[1..], 1);
        let mut buf = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            buf.clear();
            buf.extend_from_slice(&tuple[..i]);
            buf.push(self.t.mul(tuple[i], tuple[i + 1]));
            buf.extend_from_slice(&tuple[i + 2..]);
            self.add(&mut acc, &buf, if i % 2 == 0 { -1 } else { 1 });
        }
        self.add(&mut acc, &tuple[..n - 1], if n.is_multiple_of(2) { 1 } else { -1 });
        normalize(acc)
    }

    fn tuple(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = self.elems[idx % self.d()];
            idx /= self.d();
        }
        out
    }

    fn matrix(&self, degree: usize) -> Vec<SparseRow> {
        let count = self.d().pow(degree as u32);
        (0..count).into_par_iter().map(|i| self.boundary(&self.tuple(i, degree))).collect()
    }
}

fn normalize(mut row: Vec<(usize, i64)>) -> SparseRow {
    row.sort_unstable_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

fn apply(rows: &[SparseRow], v: &SparseRow) -> SparseRow {
    normalize(v.iter().flat_map(|&(k, a)| rows[k].iter().map(move |&(c, b)| (c, a * b))).collect())
}

/// `H_2(G, Z)` as `ker d_2 / im d_3`; refuses groups above `cap`.
pub fn h2_bar(t: &MultiplicationTable, cap: usize) -> Result<AbelianInvariants> {
    let m = t.order();
    if m > cap {
        return Err(Error::CapExceeded { what: "group order for the bar complex", actual: m.to_string(), cap: cap.to_string() });
    }
    let elems: Vec<usize> = (0..m).filter(|&g| g != t.identity()).collect();
    let mut pos = vec![None; m];
    for (k, &g) in elems.iter().enumerate() {
        pos[g] = Some(k);
    }
    let bar = Bar { t, pos, elems };
    let d = bar.d();
    if d == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    let d2 = bar.matrix(2);
    let d3 = bar.matrix(3);
    // d2 d3 = 0, checked on every row
    if let Some(r) = d3.par_iter().position_any(|row| !apply(&d2, row).is_empty()) {
        return Err(Error::Input(format!("bar complex: d2 d3 != 0 on basis tuple {r}")));
    }
    let rank2 = sparse_elementary_divisors(d2, d)?.rank;
    let snf3 = sparse_elementary_divisors(d3, d * d)?;
    // H_2 is finite: rank d3 = dim C_2 - rank d2
    if snf3.rank + rank2 != d * d {
        return Err(Error::Input("bar complex: H_2 has positive free rank".into()));
    }
    let factors = snf3
        .torsion
        .iter()
        .map(|x| x.to_u64().ok_or(Error::Overflow("H_2 invariant")))
        .collect::<Result<Vec<u64>>>()?;
    Ok(AbelianInvariants(factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pcp;

    fn cyclic(m: usize) -> MultiplicationTable {
        let table = (0..m * m).map(|k| ((k / m + k % m) % m) as u32).collect();
        MultiplicationTable::new(m, table).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(h2_bar(&cyclic(2), 32).unwrap().is_trivial());
        assert!(h2_bar(&cyclic(6), 32).unwrap().is_trivial());
        let c33 = parse_pcp("pcgroup\nprime 3\ngens 2\nend\n").unwrap();
        let t = table_from_pcp(&c33, 243).unwrap();
        assert_eq!(h2_bar(&t, 32).unwrap().factors(), &[3]);
        // C_2 x C_4: M = C_2
        let c2c4 = parse_pcp("pcgroup\nprime 2\ngens 3\npow 2 := 3^1\nend\n").unwrap();
        assert_eq!(h2_bar(&table_from_pcp(&c2c4, 243).unwrap(), 32).unwrap().factors(), &[2]);
    }

    #[test]
    fn text_round_trip_and_laws() {
        let t = cyclic(3);
        assert_eq!(parse_multable(&t.to_string()).unwrap(), t);
        // not associative: a Latin square that is not a group table
        let bad = "multable\norder 3\n1 2 3\n2 1 3\n3 3 1\nend\n";
        assert!(parse_multable(bad).is_err());
        assert!(parse_multable("multable\norder 2\n1 2\n2 1\n").is_err());
    }

    #[test]
    fn caps() {
        let g = parse_pcp("pcgroup\nprime 3\ngens 6\nend\n").unwrap();
        assert!(matches!(table_from_pcp(&g, DEFAULT_TABLE_CAP), Err(Error::CapExceeded { .. })));
        assert!(matches!(h2_bar(&cyclic(40), DEFAULT_BAR_CAP), Err(Error::CapExceeded { .. })));
    }
}

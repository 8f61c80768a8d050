use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{elementary_divisors, Matrix};
use crate::error::{Error, Result};

/// Sparse integer row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

/// Rank and non-unit elementary divisors of a sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSnf {
    pub rank: usize,
    /// Nonzero elementary divisors greater than one, ascending.
    pub torsion: Vec<BigInt>,
}

fn overflow() -> Error {
    Error::Overflow("sparse elimination")
}

/// `a - q * b` on sorted sparse rows.
fn axpy(a: &SparseRow, q: i64, b: &SparseRow) -> Result<SparseRow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else {
            let qb = q.checked_mul(b[j].1).ok_or_else(overflow)?;
            let v = if ca == cb {
                let v = a[i].1.checked_sub(qb).ok_or_else(overflow)?;
                i += 1;
                v
            } else {
                qb.checked_neg().ok_or_else(overflow)?
            };
            if v != 0 {
                out.push((cb, v));
            }
            j += 1;
        }
    }
    Ok(out)
}

/// Elementary divisors of the matrix with the given rows.
///
/// Unit pivots are eliminated first, always taking the sparsest column that
/// still has a `±1` entry; each such pivot contributes a divisor 1 and
/// removes one row and one column. The remaining core is dense and goes
/// through the Smith normal form over `BigInt`.
pub fn sparse_elementary_divisors(rows: Vec<SparseRow>, ncols: usize) -> Result<SparseSnf> {
    let mut rows: Vec<Option<SparseRow>> =
        rows.into_iter().map(|r| (!r.is_empty()).then_some(r)).collect();
    let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r.iter().flatten() {
            cols[c].insert(i);
        }
    }
    let mut alive = vec![true; ncols];
    let mut unit_rank = 0usize;

    loop {
        // sparsest column with a unit entry; tie broken by shortest row
        let mut best: Option<(usize, usize, usize)> = None; // (col count, row len, row) + col
        let mut best_col = 0;
        for c in 0..ncols {
            if !alive[c] || cols[c].is_empty() {
                continue;
            }
            if best.is_some_and(|b| cols[c].len() > b.0) {
                continue;
            }
            for &r in &cols[c] {
                let row = rows[r].as_ref().unwrap();
                let v = row.binary_search_by_key(&c, |x| x.0).map(|k| row[k].1).unwrap();
                if v.abs() == 1 {
                    let key = (cols[c].len(), row.len(), r);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                        best_col = c;
                    }
                }
            }
        }
        let Some((_, _, pr)) = best else { break };
        let pc = best_col;
        let prow = rows[pr].take().unwrap();
        for &(c, _) in &prow {
            cols[c].remove(&pr);
        }
        let pval = prow.binary_search_by_key(&pc, |x| x.0).map(|k| prow[k].1).unwrap();
        let targets: Vec<usize> = cols[pc].iter().copied().collect();
        for r in targets {
            let old = rows[r].take().unwrap();
            let v = old.binary_search_by_key(&pc, |x| x.0).map(|k| old[k].1).unwrap();
            let new = axpy(&old, v * pval, &prow)?;
            for &(c, _) in &prow {
                if new.binary_search_by_key(&c, |x| x.0).is_err() {
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r);
                }
            }
            if !new.is_empty() {
                rows[r] = Some(new);
            }
        }
        debug_assert!(cols[pc].is_empty());
        // Column pc is now zero outside the pivot row, so column operations
        // clear the rest of the pivot row without touching anything else.
        alive[pc] = false;
        unit_rank += 1;
    }

    let live_cols: Vec<usize> = (0..ncols).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    let index: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut dense: Vec<Vec<BigInt>> = Vec::new();
    for r in rows.into_iter().flatten() {
        let mut d = vec![BigInt::zero(); live_cols.len()];
        for (c, v) in r {
            d[index[&c]] = BigInt::from(v);
        }
        dense.push(d);
    }
    let mut rank = unit_rank;
    let mut torsion = Vec::new();
    if !dense.is_empty() && !live_cols.is_empty() {
        for d in elementary_divisors(&Matrix::from_rows(dense)?)? {
            if !d.is_zero() {
                rank += 1;
                if !d.is_one() {
                    torsion.push(d.abs());
                }
            }
        }
    }
    Ok(SparseSnf { rank, torsion })
}

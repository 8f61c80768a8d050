use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors, Matrix};
use crate::subgroup::Subgroup;

/// Invariant factors `d_1 | d_2 | ...` of a finite abelian group; empty for
/// the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants(pub Vec<u64>);

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants(Vec::new())
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Group order, if it fits.
    pub fn order(&self) -> Option<u128> {
        self.0.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    /// Nontrivial with every factor equal to `p`.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&d| d == p)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// Invariants of `Z^cols / rowspace(rows)`; fails if the quotient is infinite.
pub fn invariants_from_relations(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<AbelianInvariants> {
    if cols == 0 {
        return Ok(AbelianInvariants::trivial());
    }
    let mut rows = rows;
    if rows.is_empty() {
        rows.push(vec![BigInt::zero(); cols]);
    }
    let diag = elementary_divisors(&Matrix::from_rows(rows)?)?;
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    if nonzero < cols {
        return Err(Error::Input(format!("abelian group has free rank {}", cols - nonzero)));
    }
    let mut out = Vec::new();
    for d in diag {
        if !d.is_one() {
            out.push(d.to_u64().ok_or(Error::Overflow("invariant factor"))?);
        }
    }
    Ok(AbelianInvariants(out))
}

/// Invariant factors of an abelian subgroup, from the relation matrix of its
/// pc sequence: row `k` is `p e_k - coords(h_k^p)`.
pub fn abelian_invariants(h: &Subgroup<'_>) -> Result<AbelianInvariants> {
    if !h.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let amb = h.ambient();
    let p = amb.prime();
    let k = h.len();
    let mut rows = Vec::with_capacity(k);
    for (i, x) in h.pc_sequence().iter().enumerate() {
        let coords = h.coordinates(&amb.power(x, p as i64)).expect("closed under powers");
        let mut row: Vec<BigInt> = coords.iter().map(|&c| -BigInt::from(c)).collect();
        row[i] += BigInt::from(p);
        rows.push(row);
    }
    invariants_from_relations(rows, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::{parse_pcp, PcPresentation};

    /// Independent oracle: the invariants of a finite abelian p-group are
    /// determined by how many elements have order dividing `p^k`.
    fn invariants_by_counting(pres: &PcPresentation) -> Vec<u64> {
        let p = pres.prime() as u64;
        let n = pres.order().to_u128().unwrap() as u64;
        let orders: Vec<u64> = (0..n).map(|i| pres.order_of(&pres.element_from_index(i))).collect();
        // number of cyclic factors of order >= p^k is log_p(|Omega_k| / |Omega_{k-1}|)
        let count = |q: u64| orders.iter().filter(|&&o| q.is_multiple_of(o)).count() as u64;
        let mut ge = Vec::new();
        let mut q = 1u64;
        loop {
            let a = count(q * p);
            let b = count(q);
            if a == b {
                break;
            }
            ge.push((a / b).ilog(p) as usize);
            q *= p;
        }
        let mut out = Vec::new();
        for (k, &c) in ge.iter().enumerate() {
            let next = ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..c - next {
                out.push(p.pow(k as u32 + 1));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_counting_oracle() {
        for text in [
            "pcgroup\nprime 3\ngens 2\npow 1 := 2^1\nend\n",
            "pcgroup\nprime 3\ngens 2\nend\n",
            "pcgroup\nprime 3\ngens 3\npow 2 := 3^1\nend\n",
            "pcgroup\nprime 2\ngens 4\npow 1 := 2^1\npow 2 := 3^1\nend\n",
        ] {
            let g = parse_pcp(text).unwrap();
            let inv = abelian_invariants(&Subgroup::whole(&g)).unwrap();
            assert_eq!(inv.0, invariants_by_counting(&g), "{text}");
            assert_eq!(inv.order().unwrap(), g.order().to_u128().unwrap());
        }
    }

    #[test]
    fn examples() {
        let h = parse_pcp("pcgroup\nprime 3\ngens 3\ncomm 2 1 := 3^1\nend\n").unwrap();
        assert!(abelian_invariants(&Subgroup::trivial(&h)).unwrap().is_trivial());
        let z = Subgroup::generated(&h, &[h.generator(2)]);
        assert_eq!(abelian_invariants(&z).unwrap().0, vec![3]);
        assert!(matches!(abelian_invariants(&Subgroup::whole(&h)), Err(Error::NotAbelian)));
        let c = parse_pcp("pcgroup\nprime 3\ngens 3\npow 2 := 3^1\nend\n").unwrap();
        assert_eq!(abelian_invariants(&Subgroup::whole(&c)).unwrap().0, vec![3, 9]);
    }
}

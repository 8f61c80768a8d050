//! Arithmetic in the central extension of a pc presentation by free tails.
//!
//! Every non-defining relation `lhs = rhs` of the current quotient becomes
//! `lhs = rhs * t` with `t` a new central generator of infinite order. An
//! element is a normal word of the old presentation times a tail vector;
//! collection runs in the old presentation and the sink counts how often
//! each tailed relation fires.

use crate::pcp::{Element, PcPresentation, RelationSink, TestArith, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Tailed {
    pub exps: Vec<u32>,
    pub tail: Vec<i64>,
}

pub(crate) struct Extension<'a> {
    pub pres: &'a PcPresentation,
    pub width: usize,
    pub power_col: &'a [Option<usize>],
    /// `comm_col[j][i]` for `i < j`.
    pub comm_col: &'a [Vec<Option<usize>>],
}

struct Sink<'a, 'b> {
    ext: &'b Extension<'a>,
    tail: &'b mut [i64],
}

impl RelationSink for Sink<'_, '_> {
    #[inline]
    fn power(&mut self, i: usize) {
        if let Some(c) = self.ext.power_col[i] {
            self.tail[c] += 1;
        }
    }

    #[inline]
    fn conjugate(&mut self, j: usize, i: usize, count: u32) {
        if let Some(c) = self.ext.comm_col[j][i] {
            self.tail[c] += count as i64;
        }
    }

    #[inline]
    fn has_tail(&self, j: usize, i: usize) -> bool {
        self.ext.comm_col[j][i].is_some()
    }
}

fn normal_word(exps: &[u32]) -> Vec<(usize, u32)> {
    exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect()
}

impl<'a> Extension<'a> {
    pub fn identity(&self) -> Tailed {
        Tailed { exps: vec![0; self.pres.ngens()], tail: vec![0; self.width] }
    }

    /// The normal word `exps` with a given tail.
    pub fn element(&self, exps: &[u32], tail: Vec<i64>) -> Tailed {
        Tailed { exps: exps.to_vec(), tail }
    }

    fn collect_onto(&self, exps: &mut [u32], tail: &mut [i64], word: &[(usize, u32)]) {
        let mut sink = Sink { ext: self, tail };
        self.pres.collect_into(exps, word, &mut sink);
    }

    pub fn multiply(&self, a: &Tailed, b: &Tailed) -> Tailed {
        let mut exps = a.exps.clone();
        let mut tail: Vec<i64> = a.tail.iter().zip(&b.tail).map(|(x, y)| x + y).collect();
        self.collect_onto(&mut exps, &mut tail, &normal_word(&b.exps));
        Tailed { exps, tail }
    }

    pub fn inverse(&self, a: &Tailed) -> Tailed {
        let x = self.pres.solve_inverse(&Element::from_exponents(a.exps.clone()));
        let mut exps = a.exps.clone();
        let mut tau = vec![0i64; self.width];
        self.collect_onto(&mut exps, &mut tau, &x.normal_word());
        debug_assert!(exps.iter().all(|&e| e == 0));
        let tail = a.tail.iter().zip(&tau).map(|(t, s)| -t - s).collect();
        Tailed { exps: x.exponents().to_vec(), tail }
    }

    pub fn power(&self, a: &Tailed, k: i64) -> Tailed {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// Value of a word whose letter `t` maps to `images[t]`.
    pub fn evaluate(&self, w: &Word, images: &[Tailed]) -> Tailed {
        let mut acc = self.identity();
        for l in &w.letters {
            let x = if l.exp == 1 { images[l.gen].clone() } else { self.power(&images[l.gen], l.exp) };
            acc = self.multiply(&acc, &x);
        }
        acc
    }
}

impl TestArith for Extension<'_> {
    type E = Tailed;

    fn gen_pow(&self, i: usize, k: u32) -> Tailed {
        let mut e = self.identity();
        e.exps[i] = k;
        e
    }

    fn mul(&self, a: &Tailed, b: &Tailed) -> Tailed {
        self.multiply(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pcp;

    #[test]
    fn abelian_power_tail() {
        // C_3 with a tail on g^3: (g^2)^{-1} * g^2 = 1 and g^3 = t
        let c3 = parse_pcp("pcgroup\nprime 3\ngens 1\nend\n").unwrap();
        let power_col = [Some(0)];
        let comm_col: Vec<Vec<Option<usize>>> = vec![vec![]];
        let ext = Extension { pres: &c3, width: 1, power_col: &power_col, comm_col: &comm_col };
        let g = ext.gen_pow(0, 1);
        assert_eq!(ext.power(&g, 3).tail, vec![1]);
        assert_eq!(ext.power(&g, 6).tail, vec![2]);
        assert_eq!(ext.power(&g, -3).tail, vec![-1]);
        let g2 = ext.gen_pow(0, 2);
        assert_eq!(ext.multiply(&ext.inverse(&g2), &g2), ext.identity());
    }

    #[test]
    fn commutator_tail() {
        // C_3 x C_3 with a tail t on [g2, g1]. The free extension is only a
        // group after imposing 3t = 0, so the value is t up to multiples of 3.
        let c = parse_pcp("pcgroup\nprime 3\ngens 2\nend\n").unwrap();
        let power_col = [None, None];
        let comm_col = vec![vec![], vec![Some(0)]];
        let ext = Extension { pres: &c, width: 1, power_col: &power_col, comm_col: &comm_col };
        let w = Word::commutator(&Word::gen(1), &Word::gen(0));
        let images = [ext.gen_pow(0, 1), ext.gen_pow(1, 1)];
        let v = ext.evaluate(&w, &images);
        assert_eq!(v.exps, vec![0, 0]);
        assert_eq!(v.tail[0].rem_euclid(3), 1);
    }
}

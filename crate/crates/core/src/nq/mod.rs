//! Nilpotent quotients of finitely presented groups by the tails method.
//!
//! Class `k + 1` is built from class `k` as a central extension: every
//! non-defining relation receives a free central tail, the consistency test
//! words and the relators give integer linear equations on the tails, and
//! the Hermite form of that lattice describes the new section
//! `gamma_{k+1} / gamma_{k+2}`. Sections are refined to prime-order steps
//! so the result is again a refined pc presentation.

mod tails;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::FpPresentation;
use crate::hom::Homomorphism;
use crate::linalg::Echelon;
use crate::pcp::{test_words, Element, NormalWord, PcPresentation, Word};
use tails::{Extension, Tailed};

/// The relation that introduced a pc generator `a`: `a = rhs_old^-1 * X`
/// with `X` given by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definition {
    pub kind: DefinitionKind,
    pub rhs_old: NormalWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DefinitionKind {
    /// `X` is the image of an abstract generator.
    Generator(usize),
    /// `X = [a_j, a_i]`, `j > i`.
    Commutator(usize, usize),
    /// `X = a_i^p`.
    Power(usize),
}

#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: PcPresentation,
    /// Image of each abstract generator.
    pub images: Vec<Element>,
    pub definitions: Vec<Definition>,
    pub class_reached: usize,
    /// `(p, e)` with `|gamma_k / gamma_{k+1}| = p^e`, one entry per class.
    pub section_ranks: Vec<(u32, usize)>,
}

impl QuotientResult {
    /// Image of a word over the abstract alphabet.
    pub fn evaluate_relator(&self, r: &Word) -> Element {
        let q = &self.quotient;
        r.letters.iter().fold(q.identity(), |acc, l| q.multiply(&acc, &q.power(&self.images[l.gen], l.exp)))
    }

    /// Images of the pc generators under the map that sends abstract
    /// generator `t` to `targets[t]`, obtained by replaying the definitions.
    /// Only meaningful if the assignment respects the relators; wrap the
    /// result in [`Homomorphism::new`] to check.
    pub fn induced_images(&self, target: &PcPresentation, targets: &[Element]) -> Vec<Element> {
        let p = self.quotient.prime() as i64;
        let mut img: Vec<Element> = Vec::with_capacity(self.definitions.len());
        for d in &self.definitions {
            let x = match d.kind {
                DefinitionKind::Generator(t) => targets[t].clone(),
                DefinitionKind::Commutator(j, i) => target.commutator(&img[j], &img[i]),
                DefinitionKind::Power(i) => target.power(&img[i], p),
            };
            let rhs = d.rhs_old.iter().fold(target.identity(), |acc, &(g, e)| {
                target.multiply(&acc, &target.power(&img[g], e as i64))
            });
            img.push(target.multiply(&target.inverse(&rhs), &x));
        }
        img
    }

    /// The homomorphism from the quotient induced by `targets`.
    pub fn homomorphism_to<'a>(
        &'a self,
        target: &'a PcPresentation,
        targets: &[Element],
    ) -> Result<Homomorphism<'a>> {
        Homomorphism::new(&self.quotient, target, self.induced_images(target, targets))
    }

    /// One line per class: `class k: p^e`.
    pub fn trace(&self) -> String {
        self.section_ranks
            .iter()
            .enumerate()
            .map(|(k, (p, e))| format!("class {}: {p}^{e}\n", k + 1))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
enum Column {
    Comm(usize, usize),
    Power(usize),
    Image(usize),
}

impl Column {
    fn kind(self) -> DefinitionKind {
        match self {
            Column::Comm(j, i) => DefinitionKind::Commutator(j, i),
            Column::Power(i) => DefinitionKind::Power(i),
            Column::Image(t) => DefinitionKind::Generator(t),
        }
    }
}

/// Quotient of class `k` together with the bookkeeping for the next step.
struct State<'f> {
    fp: &'f FpPresentation,
    prime: u32,
    pres: PcPresentation,
    powers: Vec<NormalWord>,
    comms: Vec<Vec<NormalWord>>,
    power_def: Vec<bool>,
    comm_def: Vec<Vec<bool>>,
    images: Vec<Vec<u32>>,
    image_def: Vec<bool>,
    weights: Vec<u32>,
    definitions: Vec<Definition>,
}

/// Largest quotient of class at most `class_bound` of `fp`, which must be a
/// finite `prime`-group.
pub fn nilpotent_quotient(fp: &FpPresentation, class_bound: usize, prime: u32) -> Result<QuotientResult> {
    let pres = PcPresentation::new(prime, 0, Vec::new(), Vec::new())?;
    let mut st = State {
        fp,
        prime,
        pres,
        powers: Vec::new(),
        comms: Vec::new(),
        power_def: Vec::new(),
        comm_def: Vec::new(),
        images: vec![Vec::new(); fp.ngens],
        image_def: vec![false; fp.ngens],
        weights: Vec::new(),
        definitions: Vec::new(),
    };
    let mut section_ranks = Vec::new();
    for k in 0..class_bound {
        let grown = st.step(k)?;
        if grown == 0 {
            break;
        }
        section_ranks.push((prime, grown));
    }
    let quotient = st.pres.with_weights(st.weights)?;
    let images = st.images.into_iter().map(Element::from_exponents).collect();
    Ok(QuotientResult {
        quotient,
        images,
        definitions: st.definitions,
        class_reached: section_ranks.len(),
        section_ranks,
    })
}

/// Hermite basis of the tail relations, with entries reduced below the
/// pivots. Falls back to big integers when `i128` overflows.
fn solve(rows: &[Vec<i64>], width: usize) -> Result<Echelon<i128>> {
    let mut small = Echelon::<i128>::new(width);
    let attempt = rows.iter().try_for_each(|r| small.insert(r.iter().map(|&x| x as i128).collect()).map(|_| ()));
    let attempt = attempt.and_then(|_| small.hermite());
    if attempt.is_ok() {
        return Ok(small);
    }
    let mut big = Echelon::<BigInt>::new(width);
    for r in rows {
        big.insert(r.iter().map(|&x| BigInt::from(x)).collect())?;
    }
    if big.rank() < width {
        // reported by the caller; entries past the pivots may be huge
        return Ok(Echelon::new(width));
    }
    big.hermite()?;
    big.try_map(|x| x.to_i128()).ok_or(Error::Overflow("tail relation lattice"))
}

fn p_power_exponent(mut d: u128, p: u128) -> Option<usize> {
    let mut e = 0;
    while d.is_multiple_of(p) {
        d /= p;
        e += 1;
    }
    (d == 1).then_some(e)
}

impl State<'_> {
    fn columns(&self, k: usize) -> Vec<Column> {
        let n = self.pres.ngens();
        let mut cols = Vec::new();
        for j in 0..n {
            for i in 0..j {
                if !self.comm_def[j][i] && (self.weights[i] + self.weights[j]) as usize <= k + 1 {
                    cols.push(Column::Comm(j, i));
                }
            }
        }
        cols.extend((0..n).filter(|&i| !self.power_def[i]).map(Column::Power));
        cols.extend((0..self.fp.ngens).filter(|&t| !self.image_def[t]).map(Column::Image));
        cols
    }

    /// Extends the class-`k` quotient by one class; returns the number of
    /// new pc generators.
    fn step(&mut self, k: usize) -> Result<usize> {
        let n = self.pres.ngens();
        let p = self.prime;
        let cols = self.columns(k);
        let width = cols.len();
        if width == 0 {
            return Ok(0);
        }
        let mut power_col = vec![None; n];
        let mut comm_col: Vec<Vec<Option<usize>>> = (0..n).map(|j| vec![None; j]).collect();
        let mut image_col = vec![None; self.fp.ngens];
        for (c, col) in cols.iter().enumerate() {
            match *col {
                Column::Comm(j, i) => comm_col[j][i] = Some(c),
                Column::Power(i) => power_col[i] = Some(c),
                Column::Image(t) => image_col[t] = Some(c),
            }
        }
        let ext = Extension { pres: &self.pres, width, power_col: &power_col, comm_col: &comm_col };

        let consistency: Vec<Result<Vec<i64>>> = test_words(n)
            .par_iter()
            .map(|t| {
                let (left, right) = t.evaluate(&ext, p);
                if left.exps != right.exps {
                    return Err(Error::InconsistentTails(format!("test word {t} differs outside the tails")));
                }
                Ok(left.tail.iter().zip(&right.tail).map(|(a, b)| a - b).collect())
            })
            .collect();
        let images: Vec<Tailed> = (0..self.fp.ngens)
            .map(|t| {
                let mut tail = vec![0; width];
                if let Some(c) = image_col[t] {
                    tail[c] = 1;
                }
                ext.element(&self.images[t], tail)
            })
            .collect();
        let relators: Vec<Result<Vec<i64>>> = self
            .fp
            .relators
            .par_iter()
            .enumerate()
            .map(|(r, w)| {
                let v = ext.evaluate(w, &images);
                if v.exps.iter().any(|&e| e != 0) {
                    return Err(Error::InconsistentTails(format!("relator {} fails in the class {k} quotient", r + 1)));
                }
                Ok(v.tail)
            })
            .collect();
        let mut rows = Vec::new();
        for r in consistency.into_iter().chain(relators) {
            let r = r?;
            if r.iter().any(|&x| x != 0) {
                rows.push(r);
            }
        }

        let lattice = solve(&rows, width)?;
        let free = width - lattice.rank();
        if free > 0 {
            return Err(Error::InfiniteSection { class: k + 1, rank: free });
        }
        let mut first_gen = vec![usize::MAX; width];
        let mut rank = vec![0usize; width];
        let mut next = n;
        for c in 0..width {
            let d = *lattice.pivot(c).expect("full rank") as u128;
            let e = p_power_exponent(d, p as u128).ok_or_else(|| Error::NonPTorsion {
                class: k + 1,
                order: d.to_string(),
                prime: p,
            })?;
            if e > 0 {
                first_gen[c] = next;
                rank[c] = e;
                next += e;
            }
        }
        let grown = next - n;
        if grown == 0 {
            return Ok(0);
        }

        let tail_word = |mut v: Vec<i128>| -> Result<NormalWord> {
            lattice.reduce(&mut v)?;
            let mut w = Vec::new();
            for c in 0..width {
                let mut x = v[c];
                debug_assert!(x == 0 || rank[c] > 0);
                let mut g = first_gen[c];
                while x != 0 {
                    let digit = (x % p as i128) as u32;
                    if digit != 0 {
                        w.push((g, digit));
                    }
                    x /= p as i128;
                    g += 1;
                }
            }
            Ok(w)
        };
        let unit = |c: usize| {
            let mut v = vec![0i128; width];
            v[c] = 1;
            v
        };

        // new generators, relations and definitions, column by column
        let total = next;
        self.comms.extend((n..total).map(|j| vec![Vec::new(); j]));
        self.comm_def.extend((n..total).map(|j| vec![false; j]));
        self.power_def.resize(total, false);
        self.weights.resize(total, k as u32 + 1);
        let mut new_powers = vec![Vec::new(); grown];
        for (c, col) in cols.iter().enumerate() {
            let word = tail_word(unit(c))?;
            let rhs_old = match *col {
                Column::Comm(j, i) => std::mem::take(&mut self.comms[j][i]),
                Column::Power(i) => std::mem::take(&mut self.powers[i]),
                Column::Image(t) => self.images[t].iter().enumerate().filter(|(_, &e)| e != 0).map(|(g, &e)| (g, e)).collect(),
            };
            let mut rhs = rhs_old.clone();
            rhs.extend_from_slice(&word);
            match *col {
                Column::Comm(j, i) => self.comms[j][i] = rhs,
                Column::Power(i) => self.powers[i] = rhs,
                Column::Image(t) => {
                    self.images[t].resize(total, 0);
                    for &(g, e) in &word {
                        self.images[t][g] = e;
                    }
                }
            }
            if rank[c] == 0 {
                continue;
            }
            match *col {
                Column::Comm(j, i) => self.comm_def[j][i] = true,
                Column::Power(i) => self.power_def[i] = true,
                Column::Image(t) => self.image_def[t] = true,
            }
            let g0 = first_gen[c];
            self.definitions.push(Definition { kind: col.kind(), rhs_old });
            for s in 1..rank[c] {
                self.definitions.push(Definition { kind: DefinitionKind::Power(g0 + s - 1), rhs_old: Vec::new() });
                self.power_def[g0 + s - 1] = true;
                new_powers[g0 + s - 1 - n] = vec![(g0 + s, 1)];
            }
            let mut top = vec![0i128; width];
            top[c] = *lattice.pivot(c).unwrap();
            new_powers[g0 + rank[c] - 1 - n] = tail_word(top)?;
        }
        for img in &mut self.images {
            img.resize(total, 0);
        }
        self.powers.extend(new_powers);

        let comms: Vec<(usize, usize, NormalWord)> = (0..total)
            .flat_map(|j| (0..j).map(move |i| (j, i)))
            .filter(|&(j, i)| !self.comms[j][i].is_empty())
            .map(|(j, i)| (j, i, self.comms[j][i].clone()))
            .collect();
        self.pres = PcPresentation::new(p, total, self.powers.clone(), comms)?;
        if let Some(v) = self.pres.check_consistency().first() {
            return Err(Error::InconsistentTails(format!("class {} presentation fails test word {}", k + 1, v.test)));
        }
        Ok(grown)
    }
}

/// Convenience check used by tests and the harness: every relator of `fp`
/// is trivial under the result's images.
pub fn relators_hold(result: &QuotientResult, fp: &FpPresentation) -> bool {
    fp.relators.par_iter().all(|r| result.evaluate_relator(r).is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(ngens: usize, rels: &[&[(usize, i64)]]) -> FpPresentation {
        FpPresentation::new(ngens, rels.iter().map(|r| Word::from_pairs(r.iter().copied())).collect()).unwrap()
    }

    #[test]
    fn abelian_presentation() {
        // <a, b | a^3, b^3, [b, a]>
        let g = fp(2, &[&[(0, 3)], &[(1, 3)], &[(1, -1), (0, -1), (1, 1), (0, 1)]]);
        let q = nilpotent_quotient(&g, 2, 3).unwrap();
        assert_eq!(q.quotient.ngens(), 2);
        assert_eq!(q.class_reached, 1);
        assert!(relators_hold(&q, &g));
    }

    #[test]
    fn cyclic_of_order_nine() {
        let g = fp(1, &[&[(0, 9)]]);
        let q = nilpotent_quotient(&g, 3, 3).unwrap();
        assert_eq!(q.quotient.ngens(), 2);
        assert_eq!(q.section_ranks, vec![(3, 2)]);
        assert_eq!(q.quotient.order_of(&q.images[0]), 9);
    }

    #[test]
    fn infinite_and_wrong_prime() {
        let free = fp(1, &[]);
        assert!(matches!(nilpotent_quotient(&free, 1, 3), Err(Error::InfiniteSection { class: 1, rank: 1 })));
        let c2 = fp(1, &[&[(0, 2)]]);
        assert!(matches!(nilpotent_quotient(&c2, 1, 3), Err(Error::NonPTorsion { .. })));
        let c6 = fp(1, &[&[(0, 6)]]);
        assert!(matches!(nilpotent_quotient(&c6, 1, 3), Err(Error::NonPTorsion { .. })));
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A normal word: `(generator, exponent)` pairs with strictly increasing
/// generators and exponents in `[1, p)`.
pub type NormalWord = Vec<(usize, u32)>;

/// One syllable of a free word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

/// A word in the free group on an alphabet of generators, as a list of
/// syllables with nonzero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        let mut w = Word::new();
        for (gen, exp) in pairs {
            w.push(gen, exp);
        }
        w
    }

    pub fn gen(g: usize) -> Self {
        Word::from_pairs([(g, 1)])
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Appends `g^exp`, merging with the last syllable and dropping zero
    /// exponents.
    pub fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter { gen, exp });
    }

    pub fn append(&mut self, other: &Word) {
        for l in &other.letters {
            self.push(l.gen, l.exp);
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_pairs(self.letters.iter().rev().map(|l| (l.gen, -l.exp)))
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::new();
        for _ in 0..k.unsigned_abs() {
            w.append(&base);
        }
        w
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        let mut w = a.inverse();
        w.append(&b.inverse());
        w.append(a);
        w.append(b);
        w
    }

    /// `b^-1 a b`.
    pub fn conjugate(a: &Word, b: &Word) -> Word {
        let mut w = b.inverse();
        w.append(a);
        w.append(b);
        w
    }

    /// Left-normed commutator `[w_1, ..., w_r]`.
    pub fn left_normed(parts: &[Word]) -> Word {
        let mut it = parts.iter();
        let mut acc = it.next().cloned().unwrap_or_default();
        for w in it {
            acc = Word::commutator(&acc, w);
        }
        acc
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

/// Exponent vector of a group element relative to a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(pub(crate) Vec<u32>);

impl Element {
    pub fn identity(ngens: usize) -> Self {
        Element(vec![0; ngens])
    }

    pub fn generator(ngens: usize, i: usize) -> Self {
        let mut v = vec![0; ngens];
        v[i] = 1;
        Element(v)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Element(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    pub fn normal_word(&self) -> NormalWord {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect()
    }

    pub fn to_word(&self) -> Word {
        Word::from_pairs(self.normal_word().into_iter().map(|(g, e)| (g, e as i64)))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The order `p^n` of a p-group, kept as a pair so it never overflows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupOrder {
    pub prime: u32,
    pub exponent: usize,
}

impl GroupOrder {
    pub fn new(prime: u32, exponent: usize) -> Self {
        GroupOrder { prime, exponent }
    }

    pub fn to_u128(&self) -> Option<u128> {
        (self.prime as u128).checked_pow(self.exponent as u32)
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.prime, self.exponent)
    }
}

/// A consistent (checked separately) refined power-commutator presentation
///
/// ```text
/// g_i^p = w_i            (w_i a normal word in g_{i+1}, ..., g_n)
/// [g_j, g_i] = w_ji      (j > i, w_ji a normal word in g_{j+1}, ..., g_n)
/// ```
///
/// with every relative order equal to `p`. Generators are 0-based here; the
/// text format uses 1-based indices.
#[derive(Debug, Clone)]
pub struct PcPresentation {
    prime: u32,
    ngens: usize,
    powers: Vec<NormalWord>,
    /// `comms[j][i]` for `i < j`.
    comms: Vec<Vec<NormalWord>>,
    weights: Option<Vec<u32>>,
    /// `conjugates[j][i]` is the normal word of `g_j^{g_i} = g_j [g_j, g_i]`.
    pub(crate) conjugates: Vec<Vec<NormalWord>>,
    /// `gen_words[i] = [(i, 1)]`, referenced by the collector's stack frames.
    pub(crate) gen_words: Vec<NormalWord>,
    /// Normal form of `g_i^{-1}`.
    pub(crate) inverses: Vec<Element>,
}

impl PcPresentation {
    /// Builds a presentation; relations not listed are trivial.
    ///
    /// `powers[i]` is the right side of `g_i^p`; `comms` lists
    /// `(j, i, rhs)` with `j > i` for `[g_j, g_i] = rhs`.
    pub fn new(
        prime: u32,
        ngens: usize,
        powers: Vec<NormalWord>,
        comms: Vec<(usize, usize, NormalWord)>,
    ) -> Result<Self> {
        if !super::is_prime(prime) {
            return Err(Error::Input(format!("{prime} is not prime")));
        }
        if powers.len() != ngens {
            return Err(Error::Input(format!(
                "expected {ngens} power relations, got {}",
                powers.len()
            )));
        }
        let mut table: Vec<Vec<NormalWord>> = (0..ngens).map(|j| vec![Vec::new(); j]).collect();
        for (j, i, rhs) in comms {
            if i >= j || j >= ngens {
                return Err(Error::Input(format!(
                    "commutator relation [g{}, g{}] needs j > i within 1..{ngens}",
                    j + 1,
                    i + 1
                )));
            }
            table[j][i] = rhs;
        }
        let mut pres = PcPresentation {
            prime,
            ngens,
            powers,
            comms: table,
            weights: None,
            conjugates: Vec::new(),
            gen_words: (0..ngens).map(|i| vec![(i, 1)]).collect(),
            inverses: Vec::new(),
        };
        for i in 0..ngens {
            pres.validate_rhs(&pres.powers[i], i, &format!("g{}^p", i + 1))?;
            for k in 0..i {
                let what = format!("[g{}, g{}]", i + 1, k + 1);
                pres.validate_rhs(&pres.comms[i][k], i, &what)?;
            }
        }
        pres.build_caches();
        Ok(pres)
    }

    fn validate_rhs(&self, w: &NormalWord, above: usize, what: &str) -> Result<()> {
        let mut last: Option<usize> = None;
        for &(g, e) in w {
            if g <= above || g >= self.ngens {
                return Err(Error::Input(format!(
                    "right side of {what} uses g{} but must use generators above g{}",
                    g + 1,
                    above + 1
                )));
            }
            if e == 0 || e >= self.prime {
                return Err(Error::Input(format!(
                    "right side of {what} has exponent {e} outside [1, {}]",
                    self.prime - 1
                )));
            }
            if let Some(l) = last {
                if g <= l {
                    return Err(Error::Input(format!(
                        "right side of {what} is not a normal word"
                    )));
                }
            }
            last = Some(g);
        }
        Ok(())
    }

    fn build_caches(&mut self) {
        self.conjugates = (0..self.ngens)
            .map(|j| {
                (0..j)
                    .map(|i| {
                        let mut w = vec![(j, 1)];
                        w.extend_from_slice(&self.comms[j][i]);
                        w
                    })
                    .collect()
            })
            .collect();
        // g_i^{-1} solved bottom-up: a * x = 1 only ever multiplies by
        // positive generator powers.
        self.inverses = (0..self.ngens)
            .map(|i| self.solve_inverse(&Element::generator(self.ngens, i)))
            .collect();
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn order(&self) -> GroupOrder {
        GroupOrder::new(self.prime, self.ngens)
    }

    pub fn power_rhs(&self, i: usize) -> &NormalWord {
        &self.powers[i]
    }

    /// Right side of `[g_j, g_i]` for `j > i`.
    pub fn comm_rhs(&self, j: usize, i: usize) -> &NormalWord {
        &self.comms[j][i]
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.ngens {
            return Err(Error::Input("weight vector has the wrong length".into()));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.ngens)
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.ngens, i)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.ngens).map(|i| self.generator(i)).collect()
    }

    /// Checks that `e` is an exponent vector for this presentation.
    pub fn element(&self, exps: Vec<u32>) -> Result<Element> {
        if exps.len() != self.ngens {
            return Err(Error::Input(format!(
                "element has {} exponents, presentation has {} generators",
                exps.len(),
                self.ngens
            )));
        }
        if let Some(&e) = exps.iter().find(|&&e| e >= self.prime) {
            return Err(Error::Input(format!("exponent {e} outside [0, {})", self.prime)));
        }
        Ok(Element(exps))
    }

    /// Normal form of the group element represented by `w`.
    pub fn collect(&self, w: &Word) -> Result<Element> {
        if let Some(l) = w.letters.iter().find(|l| l.gen >= self.ngens) {
            return Err(Error::Input(format!(
                "word uses generator {} but the presentation has {}",
                l.gen + 1,
                self.ngens
            )));
        }
        let mut exps = vec![0u32; self.ngens];
        for l in &w.letters {
            let e = l.exp.unsigned_abs();
            if l.exp > 0 {
                let mut rest = e;
                while rest > 0 {
                    let chunk = rest.min((self.prime - 1) as u64) as u32;
                    self.collect_into(&mut exps, &[(l.gen, chunk)], &mut ());
                    rest -= chunk as u64;
                }
            } else {
                let inv = self.inverses[l.gen].normal_word();
                for _ in 0..e {
                    self.collect_into(&mut exps, &inv, &mut ());
                }
            }
        }
        Ok(Element(exps))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut exps = a.0.clone();
        self.collect_into(&mut exps, &b.normal_word(), &mut ());
        Element(exps)
    }

    /// Solves `a * x = 1` generator by generator.
    pub(crate) fn solve_inverse(&self, a: &Element) -> Element {
        let mut cur = a.0.clone();
        let mut x = vec![0u32; self.ngens];
        for i in 0..self.ngens {
            if cur[i] != 0 {
                let k = self.prime - cur[i];
                x[i] = k;
                self.collect_into(&mut cur, &[(i, k)], &mut ());
            }
        }
        debug_assert!(cur.iter().all(|&e| e == 0));
        Element(x)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        self.solve_inverse(a)
    }

    /// `a^k`, negative `k` allowed.
    pub fn power(&self, a: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut n = k.unsigned_abs();
        let mut result = self.identity();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                result = self.multiply(&result, &sq);
            }
            n >>= 1;
            if n > 0 {
                sq = self.multiply(&sq, &sq);
            }
        }
        result
    }

    /// `[a, b] = a^-1 b^-1 a b`, computed as `(ba)^-1 (ab)`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(&self.inverse(&ba), &ab)
    }

    /// Left-normed commutator `[a_1, ..., a_r]`.
    pub fn left_normed(&self, parts: &[Element]) -> Element {
        let mut it = parts.iter();
        let mut acc = it.next().cloned().unwrap_or_else(|| self.identity());
        for x in it {
            acc = self.commutator(&acc, x);
        }
        acc
    }

    /// `a^b = b^-1 a b`.
    pub fn conjugate(&self, a: &Element, b: &Element) -> Element {
        let ab = self.multiply(a, b);
        self.multiply(&self.inverse(b), &ab)
    }

    /// Least `k >= 1` with `a^k = 1`; always a power of `p`.
    pub fn order_of(&self, a: &Element) -> u64 {
        let mut order = 1u64;
        let mut x = a.clone();
        while !x.is_identity() {
            x = self.power(&x, self.prime as i64);
            order *= self.prime as u64;
        }
        order
    }

    /// Element with the given index in `0..p^n`, last generator fastest.
    pub fn element_from_index(&self, mut index: u64) -> Element {
        let mut exps = vec![0u32; self.ngens];
        for slot in exps.iter_mut().rev() {
            *slot = (index % self.prime as u64) as u32;
            index /= self.prime as u64;
        }
        Element(exps)
    }

    pub fn index_of(&self, a: &Element) -> u64 {
        a.0.iter().fold(0u64, |acc, &e| acc * self.prime as u64 + e as u64)
    }

    /// Direct product `self x other` with `self`'s generators first.
    pub fn direct_product(&self, other: &PcPresentation) -> Result<PcPresentation> {
        if self.prime != other.prime {
            return Err(Error::Input("direct product of groups with different primes".into()));
        }
        let off = self.ngens;
        let shift = |w: &NormalWord| w.iter().map(|&(g, e)| (g + off, e)).collect::<NormalWord>();
        let mut powers = self.powers.clone();
        powers.extend(other.powers.iter().map(shift));
        let mut comms = Vec::new();
        for j in 0..self.ngens {
            for i in 0..j {
                if !self.comms[j][i].is_empty() {
                    comms.push((j, i, self.comms[j][i].clone()));
                }
            }
        }
        for j in 0..other.ngens {
            for i in 0..j {
                if !other.comms[j][i].is_empty() {
                    comms.push((j + off, i + off, shift(&other.comms[j][i])));
                }
            }
        }
        PcPresentation::new(self.prime, self.ngens + other.ngens, powers, comms)
    }

    /// Embeds an element of the first factor of `self x other`.
    pub fn embed_left(a: &Element, other_ngens: usize) -> Element {
        let mut v = a.0.clone();
        v.extend(std::iter::repeat_n(0, other_ngens));
        Element(v)
    }

    pub fn embed_right(self_ngens: usize, b: &Element) -> Element {
        let mut v = vec![0; self_ngens];
        v.extend_from_slice(&b.0);
        Element(v)
    }

    /// Whether the relation `[g_j, g_i]` is trivial.
    pub fn commutes(&self, j: usize, i: usize) -> bool {
        if j == i {
            return true;
        }
        let (j, i) = if j > i { (j, i) } else { (i, j) };
        self.comms[j][i].is_empty()
    }
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self.ngens == other.ngens
            && self.powers == other.powers
            && self.comms == other.comms
    }
}

impl Eq for PcPresentation {}

//! Subgroups of pc-presented groups via induced pc sequences.
//!
//! A sequence `h_1, ..., h_k` with strictly increasing leading generators and
//! leading exponent 1 is an induced pc sequence of `H` when every `h_i^p` and
//! `[h_j, h_i]` sifts to the identity; then each element of `H` is uniquely
//! `h_1^{e_1} ... h_k^{e_k}` and `|H| = p^k`.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pcp::{Element, GroupOrder, NormalWord, PcPresentation};

#[derive(Debug, Clone)]
pub struct Subgroup<'a> {
    ambient: &'a PcPresentation,
    /// Sorted by leading generator; leading exponent 1.
    seq: Vec<Element>,
    normal: bool,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (a as u64 * x as u64) % p as u64 == 1).expect("p prime")
}

impl<'a> Subgroup<'a> {
    pub fn trivial(ambient: &'a PcPresentation) -> Self {
        Subgroup { ambient, seq: Vec::new(), normal: true }
    }

    pub fn whole(ambient: &'a PcPresentation) -> Self {
        Subgroup { ambient, seq: ambient.generators(), normal: true }
    }

    /// `<gens>`.
    pub fn generated(ambient: &'a PcPresentation, gens: &[Element]) -> Self {
        let mut h = Self { ambient, seq: Vec::new(), normal: false };
        h.extend(gens, &[]);
        h
    }

    /// Normal closure of `gens` in the ambient group.
    pub fn normal_closure(ambient: &'a PcPresentation, gens: &[Element]) -> Self {
        let conj = ambient.generators();
        let mut h = Self { ambient, seq: Vec::new(), normal: true };
        h.extend(gens, &conj);
        h
    }

    /// Smallest subgroup containing `gens` and normalized by `conj`.
    pub fn closure_under(ambient: &'a PcPresentation, gens: &[Element], conj: &[Element]) -> Self {
        let mut h = Self { ambient, seq: Vec::new(), normal: false };
        h.extend(gens, conj);
        h.normal = h.ambient.generators().iter().all(|g| h.normalized_by(g));
        h
    }

    /// `[A, B]`, the subgroup generated by all `[a, b]`.
    pub fn commutator(a: &Subgroup<'a>, b: &Subgroup<'a>) -> Self {
        let amb = a.ambient;
        let mut gens = Vec::with_capacity(a.seq.len() * b.seq.len());
        for x in &a.seq {
            for y in &b.seq {
                gens.push(amb.commutator(x, y));
            }
        }
        let mut conj = a.seq.clone();
        conj.extend(b.seq.iter().cloned());
        Self::closure_under(amb, &gens, &conj)
    }

    pub fn ambient(&self) -> &'a PcPresentation {
        self.ambient
    }

    pub fn pc_sequence(&self) -> &[Element] {
        &self.seq
    }

    /// Number of pc generators, so `|H| = p^len`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn order(&self) -> GroupOrder {
        GroupOrder::new(self.ambient.prime(), self.seq.len())
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    fn position_of_lead(&self, lead: usize) -> std::result::Result<usize, usize> {
        self.seq.binary_search_by_key(&lead, |h| h.leading().unwrap())
    }

    /// Divides out sequence elements from the left; returns the remainder and
    /// the exponents used. The remainder is trivial iff `g` lies in `H`.
    pub fn sift_with_exponents(&self, g: &Element) -> (Element, Vec<u32>) {
        let mut cur = g.clone();
        let mut exps = vec![0u32; self.seq.len()];
        for (k, h) in self.seq.iter().enumerate() {
            let l = h.leading().unwrap();
            let e = cur.0[l];
            if e != 0 {
                exps[k] = e;
                // cur <- h^{-e} cur keeps positions < l and clears l
                let hinv = self.ambient.power(h, -(e as i64));
                cur = self.ambient.multiply(&hinv, &cur);
            }
        }
        (cur, exps)
    }

    pub fn sift(&self, g: &Element) -> Element {
        self.sift_with_exponents(g).0
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.sift(g).is_identity()
    }

    /// Exponents of `g` over the sequence, if `g` is in `H`.
    pub fn coordinates(&self, g: &Element) -> Option<Vec<u32>> {
        let (rest, exps) = self.sift_with_exponents(g);
        rest.is_identity().then_some(exps)
    }

    fn normalized_by(&self, g: &Element) -> bool {
        self.seq.iter().all(|h| self.contains(&self.ambient.conjugate(h, g)))
    }

    /// Adds `gens` and closes under powers, commutators and conjugation by
    /// `conj`.
    fn extend(&mut self, gens: &[Element], conj: &[Element]) {
        let amb = self.ambient;
        let p = amb.prime();
        let mut queue: Vec<Element> = gens.to_vec();
        while let Some(g) = queue.pop() {
            let r = self.sift(&g);
            let Some(l) = r.leading() else { continue };
            let r = amb.power(&r, inv_mod(r.0[l], p) as i64);
            queue.push(amb.power(&r, p as i64));
            for h in &self.seq {
                queue.push(amb.commutator(&r, h));
            }
            for c in conj {
                queue.push(amb.commutator(&r, c));
            }
            let pos = self.position_of_lead(l).unwrap_err();
            self.seq.insert(pos, r);
        }
    }

    /// Reduces every sequence element at the other leading positions, giving
    /// a canonical sequence for `H`.
    pub fn canonical(&self) -> Self {
        let amb = self.ambient;
        let mut seq = self.seq.clone();
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                let l = seq[j].leading().unwrap();
                let e = seq[i].0[l];
                if e != 0 {
                    let hj = amb.power(&seq[j], -(e as i64));
                    seq[i] = amb.multiply(&seq[i], &hj);
                }
            }
        }
        Subgroup { ambient: amb, seq, normal: self.normal }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.seq.iter().all(|h| other.contains(h))
    }

    pub fn equals(&self, other: &Subgroup<'_>) -> bool {
        self.seq.len() == other.seq.len() && self.is_subgroup_of(other)
    }

    /// `h_1^{e_1} ... h_k^{e_k}`.
    pub fn element_from_exponents(&self, exps: &[u32]) -> Element {
        let mut acc = self.ambient.identity();
        for (h, &e) in self.seq.iter().zip(exps) {
            if e != 0 {
                acc = self.ambient.multiply(&acc, &self.ambient.power(h, e as i64));
            }
        }
        acc
    }

    /// Element number `index` in `0..|H|`, last sequence element fastest.
    pub fn element_at(&self, mut index: u64) -> Element {
        let p = self.ambient.prime() as u64;
        let mut exps = vec![0u32; self.seq.len()];
        for slot in exps.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        self.element_from_exponents(&exps)
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Element {
        let p = self.ambient.prime();
        let exps: Vec<u32> = (0..self.seq.len()).map(|_| rng.gen_range(0..p)).collect();
        self.element_from_exponents(&exps)
    }

    /// All elements; `None` if `|H|` exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Option<Vec<Element>> {
        let n = self.order().to_u128().filter(|&n| n <= cap as u128)? as u64;
        Some((0..n).into_par_iter().map(|i| self.element_at(i)).collect())
    }

    /// Whether all sequence elements commute pairwise.
    pub fn is_abelian(&self) -> bool {
        let amb = self.ambient;
        self.seq.iter().enumerate().all(|(j, a)| {
            self.seq[..j].iter().all(|b| amb.commutator(a, b).is_identity())
        })
    }

    /// The presentation on the sequence itself: generator `k` is `h_k`.
    pub fn presentation(&self) -> Result<PcPresentation> {
        self.quotient_by(&Subgroup::trivial(self.ambient)).map(|q| q.presentation)
    }

    /// `H / N` for a subgroup `N <= H` normal in `H`.
    pub fn quotient_by(&self, n: &Subgroup<'a>) -> Result<Quotient<'a>> {
        let amb = self.ambient;
        if !n.is_subgroup_of(self) {
            return Err(Error::Input("quotient by a subgroup that is not contained".into()));
        }
        // Combined sequence: N's elements first, then the rest of H sifted
        // against everything already present.
        let mut combined = Subgroup { ambient: amb, seq: n.seq.clone(), normal: false };
        let in_kernel: std::collections::HashSet<usize> =
            n.seq.iter().map(|h| h.leading().unwrap()).collect();
        combined.extend(&self.seq, &[]);
        debug_assert_eq!(combined.seq.len(), self.seq.len());
        let reps: Vec<Element> = combined
            .seq
            .iter()
            .filter(|h| !in_kernel.contains(&h.leading().unwrap()))
            .cloned()
            .collect();
        let slot: std::collections::HashMap<usize, usize> =
            reps.iter().enumerate().map(|(k, h)| (h.leading().unwrap(), k)).collect();
        let project = |g: &Element| -> Result<NormalWord> {
            let (rest, exps) = combined.sift_with_exponents(g);
            if !rest.is_identity() {
                return Err(Error::Input("element outside the subgroup".into()));
            }
            Ok(combined
                .seq
                .iter()
                .zip(exps)
                .filter_map(|(h, e)| {
                    let k = *slot.get(&h.leading().unwrap())?;
                    (e != 0).then_some((k, e))
                })
                .collect())
        };
        let p = amb.prime();
        let m = reps.len();
        let powers = reps.iter().map(|h| project(&amb.power(h, p as i64))).collect::<Result<Vec<_>>>()?;
        let mut comms = Vec::new();
        for j in 0..m {
            for i in 0..j {
                let w = project(&amb.commutator(&reps[j], &reps[i]))?;
                if !w.is_empty() {
                    comms.push((j, i, w));
                }
            }
        }
        let presentation = PcPresentation::new(p, m, powers, comms)?;
        Ok(Quotient { combined, kernel_leads: in_kernel, slot, reps, presentation })
    }
}

/// `H / N` as its own presentation, with the projection from `H`.
#[derive(Debug, Clone)]
pub struct Quotient<'a> {
    combined: Subgroup<'a>,
    kernel_leads: std::collections::HashSet<usize>,
    slot: std::collections::HashMap<usize, usize>,
    reps: Vec<Element>,
    pub presentation: PcPresentation,
}

impl<'a> Quotient<'a> {
    /// Preimages in the ambient group of the quotient's generators.
    pub fn representatives(&self) -> &[Element] {
        &self.reps
    }

    /// Image of `g in H` in the quotient presentation.
    pub fn project(&self, g: &Element) -> Option<Element> {
        let (rest, exps) = self.combined.sift_with_exponents(g);
        if !rest.is_identity() {
            return None;
        }
        let mut out = vec![0u32; self.reps.len()];
        for (h, e) in self.combined.seq.iter().zip(exps) {
            let l = h.leading().unwrap();
            if !self.kernel_leads.contains(&l) {
                out[self.slot[&l]] = e;
            }
        }
        Some(Element::from_exponents(out))
    }

    /// A preimage of a quotient element.
    pub fn lift(&self, q: &Element) -> Element {
        let amb = self.combined.ambient;
        let mut acc = amb.identity();
        for (h, &e) in self.reps.iter().zip(q.exponents()) {
            if e != 0 {
                acc = amb.multiply(&acc, &amb.power(h, e as i64));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pcp;

    fn h27() -> PcPresentation {
        parse_pcp("pcgroup\nprime 3\ngens 3\ncomm 2 1 := 3^1\nend\n").unwrap()
    }

    #[test]
    fn basic_subgroups() {
        let h = h27();
        assert_eq!(Subgroup::generated(&h, &[h.identity()]).len(), 0);
        let z = Subgroup::generated(&h, &[h.generator(2)]);
        assert_eq!(z.len(), 1);
        assert!(z.is_normal() || Subgroup::normal_closure(&h, &[h.generator(2)]).equals(&z));
        let a = Subgroup::generated(&h, &[h.generator(0), h.generator(1)]);
        assert_eq!(a.len(), 3);
        let n = Subgroup::normal_closure(&h, &[h.generator(1)]);
        assert_eq!(n.len(), 2);
        let d = Subgroup::commutator(&Subgroup::whole(&h), &Subgroup::whole(&h));
        assert!(d.equals(&z));
        assert!(Subgroup::generated(&h, &[h.generator(1)]).len() == 1);
    }

    #[test]
    fn quotient_and_presentation() {
        let h = h27();
        let whole = Subgroup::whole(&h);
        let z = Subgroup::generated(&h, &[h.generator(2)]);
        let q = whole.quotient_by(&z).unwrap();
        assert_eq!(q.presentation.ngens(), 2);
        assert!(q.presentation.is_consistent());
        assert!(q.presentation.comm_rhs(1, 0).is_empty());
        let g = h.element(vec![1, 2, 1]).unwrap();
        assert_eq!(q.project(&g).unwrap().exponents(), &[1, 2]);
        let sub = Subgroup::generated(&h, &[h.element(vec![1, 1, 0]).unwrap(), h.generator(2)]);
        let pres = sub.presentation().unwrap();
        assert_eq!(pres.ngens(), 2);
        assert!(pres.is_consistent());
    }
}

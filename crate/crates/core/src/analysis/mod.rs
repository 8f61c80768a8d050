//! Series, section centralizers, exponents and maximal-class structure.

mod abelian;
mod frame;

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::pcp::{Element, PcPresentation};
use crate::subgroup::Subgroup;

pub use abelian::{abelian_invariants, invariants_from_relations, AbelianInvariants};
pub use frame::{exponent_check_p2, maximal_class_frame, maximal_class_frame_with_choice, MaximalClassFrame};

/// Descending chain of subgroups ending in the trivial group.
#[derive(Debug, Clone)]
pub struct SubgroupSeries<'a> {
    pub terms: Vec<Subgroup<'a>>,
    pub labels: Vec<String>,
}

impl<'a> SubgroupSeries<'a> {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::len).collect()
    }
}

/// `gamma_1 = G`, `gamma_{k+1} = [gamma_k, G]`, down to the trivial group.
pub fn lower_central_series(pres: &PcPresentation) -> SubgroupSeries<'_> {
    let whole = Subgroup::whole(pres);
    let mut terms = vec![whole.clone()];
    while !terms.last().unwrap().is_trivial() {
        let next = Subgroup::commutator(terms.last().unwrap(), &whole);
        terms.push(next);
    }
    let labels = (1..=terms.len()).map(|k| format!("gamma_{k}")).collect();
    SubgroupSeries { terms, labels }
}

/// Nilpotency class (0 for the trivial group).
pub fn nilpotency_class(pres: &PcPresentation) -> usize {
    lower_central_series(pres).terms.len() - 1
}

/// Class `n - 1` for a group of order `p^n`. Abelian groups of order `p^2`
/// are excluded, so `n >= 3`.
pub fn is_maximal_class(pres: &PcPresentation) -> bool {
    pres.ngens() >= 3 && nilpotency_class(pres) == pres.ngens() - 1
}

/// Lower central weights of the pc generators (1-based class of the first
/// `gamma_k` containing `g_i` but not `gamma_{k+1}`), when the presentation
/// refines the lower central series.
pub fn lower_central_weights(pres: &PcPresentation) -> Option<Vec<u32>> {
    let series = lower_central_series(pres);
    let mut weights = vec![0u32; pres.ngens()];
    for (i, w) in weights.iter_mut().enumerate() {
        let g = pres.generator(i);
        let k = series.terms.iter().rposition(|t| t.contains(&g))?;
        *w = k as u32 + 1;
    }
    // refinement: gamma_k must be spanned by a tail of the generators
    for (k, t) in series.terms.iter().enumerate() {
        let tail = weights.iter().filter(|&&w| w as usize > k).count();
        if t.len() != tail {
            return None;
        }
    }
    Some(weights)
}

/// `C_A(M/N) = { a in A : [a, m] in N for all m in M }` for `N <= M` normal
/// in the ambient group.
///
/// Computed as the pointwise stabilizer of the tuple of generator cosets of
/// `M/N` under conjugation, walking the pc sequence of `A` from the bottom:
/// each step either grows the orbit by a factor `p` or contributes one new
/// stabilizer generator.
pub fn section_centralizer<'a>(a: &Subgroup<'a>, m: &Subgroup<'a>, n: &Subgroup<'a>) -> Subgroup<'a> {
    let amb = a.ambient();
    let quo = m.quotient_by(n).expect("N <= M");
    let reps: Vec<Element> = (0..quo.presentation.ngens()).map(|k| quo.representatives()[k].clone()).collect();
    type Point = Vec<Element>;
    let act = |pt: &Point, g: &Element| -> Point {
        pt.iter()
            .map(|q| quo.project(&amb.conjugate(&quo.lift(q), g)).expect("M normal"))
            .collect()
    };
    let start: Point = reps.iter().map(|r| quo.project(r).unwrap()).collect();
    let p = amb.prime();
    let mut orbit: HashMap<Point, Element> = HashMap::from([(start.clone(), amb.identity())]);
    let mut stab: Vec<Element> = Vec::new();
    for g in a.pc_sequence().iter().rev() {
        let y = act(&start, g);
        if let Some(t) = orbit.get(&y) {
            stab.push(amb.multiply(g, &amb.inverse(t)));
        } else {
            let base: Vec<(Point, Element)> = orbit.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            for (pt, t) in base {
                let (mut pt, mut t) = (pt, t);
                for _ in 1..p {
                    pt = act(&pt, g);
                    t = amb.multiply(&t, g);
                    orbit.insert(pt.clone(), t.clone());
                }
            }
        }
    }
    Subgroup::generated(amb, &stab)
}

/// Enumeration policy for exponent checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumPolicy {
    /// Subgroups up to this order are enumerated exactly.
    pub max_enum: u64,
    /// Random elements tested above the cap.
    pub samples: usize,
    pub seed: u64,
}

impl Default for EnumPolicy {
    fn default() -> Self {
        EnumPolicy { max_enum: 1_000_000, samples: 10_000, seed: 0 }
    }
}

/// Exponent of a subgroup; `sampled` means a lower bound from the pc
/// sequence plus random elements rather than an exact value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub value: u64,
    pub sampled: bool,
    /// An element of maximal observed order.
    pub witness: Option<Element>,
}

pub fn exponent(h: &Subgroup<'_>, policy: &EnumPolicy) -> ExponentReport {
    let amb = h.ambient();
    let candidates: Vec<Element> = match h.elements(policy.max_enum) {
        Some(all) => all,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
            let mut v = h.pc_sequence().to_vec();
            v.extend((0..policy.samples).map(|_| h.random_element(&mut rng)));
            v
        }
    };
    let sampled = h.order().to_u128().is_none_or(|n| n > policy.max_enum as u128);
    let best = candidates
        .par_iter()
        .map(|x| (amb.order_of(x), x))
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)));
    match best {
        Some((value, x)) => ExponentReport { value, sampled, witness: Some(x.clone()) },
        None => ExponentReport { value: 1, sampled, witness: None },
    }
}

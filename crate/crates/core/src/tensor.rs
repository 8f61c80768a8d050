//! Tensor and exterior squares inside `nu(G)`, and the Schur multiplier.
//!
//! `G (x) G` is identified with `[G, G^phi] <= nu(G)` through
//! `a (x) b -> [a, b^phi]`, and `G ^ G` with `[G, G^phi] / kappa(G)`. The
//! multiplier is the kernel of `Psi: [G, G^phi] / kappa(G) -> [G, G]`,
//! `[a, b^phi] kappa -> [a, b]`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{abelian_invariants, lower_central_series, nilpotency_class, AbelianInvariants, MaximalClassFrame};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::nq::{nilpotent_quotient, QuotientResult};
use crate::nu::build_nu_presentation;
use crate::pcp::{Element, PcPresentation};
use crate::subgroup::Subgroup;

/// `nu(G)` together with `G` and the projection `rho: x_i, y_i -> g_i`.
#[derive(Debug, Clone)]
pub struct NuGroup {
    pub group: PcPresentation,
    pub result: QuotientResult,
    rho: Vec<Element>,
}

/// Which factor carries the `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiSide {
    /// `[H, K^phi]`
    Right,
    /// `[H^phi, K]`
    Left,
}

impl NuGroup {
    /// `nu(G)` as the class `c + 1` quotient of its finite presentation,
    /// `c` the class of `G`.
    pub fn new(group: &PcPresentation) -> Result<Self> {
        Self::with_class_bound(group, nilpotency_class(group) + 1)
    }

    pub fn with_class_bound(group: &PcPresentation, bound: usize) -> Result<Self> {
        let fp = build_nu_presentation(group);
        let result = nilpotent_quotient(&fp, bound, group.prime())?;
        let n = group.ngens();
        let targets: Vec<Element> = (0..2 * n).map(|t| group.generator(t % n)).collect();
        let rho = result.induced_images(group, &targets);
        Homomorphism::new(&result.quotient, group, rho.clone())?;
        Ok(NuGroup { group: group.clone(), result, rho })
    }

    pub fn nu(&self) -> &PcPresentation {
        &self.result.quotient
    }

    pub fn rho(&self) -> Homomorphism<'_> {
        Homomorphism::new(self.nu(), &self.group, self.rho.clone()).expect("checked on construction")
    }

    fn embed(&self, a: &Element, offset: usize) -> Element {
        let nu = self.nu();
        a.normal_word().iter().fold(nu.identity(), |acc, &(g, e)| {
            nu.multiply(&acc, &nu.power(&self.result.images[g + offset], e as i64))
        })
    }

    /// `a` in the copy of `G`.
    pub fn x(&self, a: &Element) -> Element {
        self.embed(a, 0)
    }

    /// `a^phi` in the copy `G^phi`.
    pub fn y(&self, a: &Element) -> Element {
        self.embed(a, self.group.ngens())
    }

    /// `[a, b^phi]`.
    pub fn comm_phi(&self, a: &Element, b: &Element) -> Element {
        self.nu().commutator(&self.x(a), &self.y(b))
    }

    /// `[H, K^phi]` (or `[H^phi, K]`) for normal subgroups `H`, `K` of `G`
    /// given by generators, as the normal closure of the generator
    /// commutators.
    pub fn commutator_subgroup_phi(&self, h: &[Element], k: &[Element], side: PhiSide) -> Subgroup<'_> {
        let gens: Vec<Element> = h
            .iter()
            .flat_map(|a| k.iter().map(move |b| (a, b)))
            .map(|(a, b)| match side {
                PhiSide::Right => self.comm_phi(a, b),
                PhiSide::Left => self.nu().commutator(&self.y(a), &self.x(b)),
            })
            .collect();
        Subgroup::normal_closure(self.nu(), &gens)
    }

    /// `[G, G^phi]`, the image of `G (x) G`.
    pub fn tensor_square(&self) -> Subgroup<'_> {
        let g = self.group.generators();
        self.commutator_subgroup_phi(&g, &g, PhiSide::Right)
    }

    /// `kappa(G)` from `[g_i, g_i^phi]` and `[g_i, g_j^phi][g_j, g_i^phi]`.
    pub fn kappa(&self) -> Subgroup<'_> {
        let n = self.group.ngens();
        let g = self.group.generators();
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push(self.comm_phi(&g[i], &g[i]));
            for j in i + 1..n {
                gens.push(self.nu().multiply(&self.comm_phi(&g[i], &g[j]), &self.comm_phi(&g[j], &g[i])));
            }
        }
        Subgroup::normal_closure(self.nu(), &gens)
    }

    /// Checks `[g, g^phi] in kappa` for random `g`.
    pub fn certify_kappa(&self, kappa: &Subgroup<'_>, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let whole = Subgroup::whole(&self.group);
        for _ in 0..samples {
            let g = whole.random_element(&mut rng);
            if !kappa.contains(&self.comm_phi(&g, &g)) {
                return Err(Error::KappaInsufficient { witness: g.to_string() });
            }
        }
        Ok(())
    }

    /// `M(G) = ker Psi` with the surrounding order bookkeeping.
    pub fn schur_multiplier(&self) -> Result<MultiplierReport> {
        let s = self.tensor_square();
        let kappa = self.kappa();
        let quo = s.quotient_by(&kappa)?;
        let q = &quo.presentation;
        let rho = self.rho();
        let psi_images: Vec<Element> = quo.representatives().iter().map(|r| rho.image(r)).collect();
        let psi = Homomorphism::new(q, &self.group, psi_images).map_err(|e| match e {
            Error::NotHomomorphism(rel) => Error::PsiNotHomomorphism(rel),
            other => other,
        })?;
        let m = psi.kernel()?;
        let central = m.pc_sequence().iter().all(|z| q.generators().iter().all(|g| q.commutator(z, g).is_identity()));
        let whole = Subgroup::whole(&self.group);
        let derived = Subgroup::commutator(&whole, &whole);
        let image = psi.image_subgroup(&Subgroup::whole(q));
        Ok(MultiplierReport {
            invariants: abelian_invariants(&m)?,
            prime: self.group.prime(),
            tensor_square: s.len(),
            kappa: kappa.len(),
            exterior_square: q.ngens(),
            derived: derived.len(),
            multiplier: m.len(),
            central,
            psi_onto_derived: image.equals(&derived),
        })
    }
}

/// `M(G)` and the orders around it, as exponents of `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierReport {
    pub invariants: AbelianInvariants,
    pub prime: u32,
    /// `|[G, G^phi]|`
    pub tensor_square: usize,
    pub kappa: usize,
    /// `|[G, G^phi] / kappa(G)|`
    pub exterior_square: usize,
    /// `|[G, G]|`
    pub derived: usize,
    pub multiplier: usize,
    /// `M(G)` commutes with the whole exterior square.
    pub central: bool,
    pub psi_onto_derived: bool,
}

impl MultiplierReport {
    /// `|[G, G^phi]| = |kappa| |M(G)| |[G, G]|`.
    pub fn bookkeeping_holds(&self) -> bool {
        self.tensor_square == self.kappa + self.multiplier + self.derived
            && self.exterior_square == self.multiplier + self.derived
    }
}

/// `M(G)` via `nu(G)`.
pub fn schur_multiplier(group: &PcPresentation) -> Result<AbelianInvariants> {
    Ok(NuGroup::new(group)?.schur_multiplier()?.invariants)
}

/// Outcome of the section check `[P_i, G^phi] / [P_{i+1}, G^phi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionReport {
    pub i: usize,
    pub abelian: bool,
    /// Generated by the classes of `[s_i, s_j^phi]`, `0 <= j < n`.
    pub generated: bool,
    /// `log_p` of the section order.
    pub rank: usize,
}

impl SectionReport {
    pub fn passed(&self) -> bool {
        self.abelian && self.generated
    }
}

impl NuGroup {
    /// `[P_i, G^phi]` (or `[P_i^phi, G]`) for a frame of this group.
    pub fn p_i_phi(&self, frame: &MaximalClassFrame<'_>, i: usize, side: PhiSide) -> Subgroup<'_> {
        let h = frame.p(i).pc_sequence().to_vec();
        self.commutator_subgroup_phi(&h, &self.group.generators(), side)
    }

    /// Whether `[P_i, G^phi] / [P_{i+1}, G^phi]` is abelian and generated by
    /// the classes of `[s_i, s_j^phi]` (for `PhiSide::Left`, the same with
    /// `phi` on the other factor).
    pub fn section_generators_check(&self, frame: &MaximalClassFrame<'_>, i: usize, side: PhiSide) -> SectionReport {
        let nu = self.nu();
        let top = self.p_i_phi(frame, i, side);
        let bottom = self.p_i_phi(frame, i + 1, side);
        let seq = top.pc_sequence();
        let abelian = seq.iter().enumerate().all(|(k, a)| seq[..k].iter().all(|b| bottom.contains(&nu.commutator(a, b))));
        let mut gens = bottom.pc_sequence().to_vec();
        gens.extend((0..frame.n).map(|j| match side {
            PhiSide::Right => self.comm_phi(&frame.s[i], &frame.s[j]),
            PhiSide::Left => nu.commutator(&self.y(&frame.s[i]), &self.x(&frame.s[j])),
        }));
        let generated = Subgroup::generated(nu, &gens).equals(&top);
        SectionReport { i, abelian, generated, rank: top.len() - bottom.len() }
    }

    /// Nilpotency class of `nu(G)`.
    pub fn class(&self) -> usize {
        lower_central_series(self.nu()).terms.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pcp;

    #[test]
    fn cyclic_and_elementary() {
        let c3 = parse_pcp("pcgroup\nprime 3\ngens 1\nend\n").unwrap();
        let nu = NuGroup::new(&c3).unwrap();
        let r = nu.schur_multiplier().unwrap();
        assert!(r.invariants.is_trivial());
        assert_eq!((r.tensor_square, r.kappa, r.exterior_square), (1, 1, 0));
        let c33 = parse_pcp("pcgroup\nprime 3\ngens 2\nend\n").unwrap();
        let nu = NuGroup::new(&c33).unwrap();
        assert_eq!(nu.tensor_square().len(), 4);
        let r = nu.schur_multiplier().unwrap();
        assert_eq!(r.invariants.factors(), &[3]);
        assert_eq!(r.exterior_square, 1);
        assert!(r.bookkeeping_holds() && r.central && r.psi_onto_derived);
        nu.certify_kappa(&nu.kappa(), 200, 1).unwrap();
    }

    #[test]
    fn trivial_group() {
        let t = parse_pcp("pcgroup\nprime 3\ngens 0\nend\n").unwrap();
        let nu = NuGroup::new(&t).unwrap();
        assert_eq!(nu.nu().ngens(), 0);
        assert!(nu.kappa().is_trivial());
        assert!(nu.schur_multiplier().unwrap().invariants.is_trivial());
    }
}

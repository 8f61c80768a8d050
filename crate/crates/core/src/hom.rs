//! Homomorphisms between pc-presented groups.

use crate::error::{Error, Result};
use crate::pcp::{Element, NormalWord, PcPresentation};
use crate::subgroup::Subgroup;

/// A homomorphism given by the images of the domain's pc generators.
#[derive(Debug, Clone)]
pub struct Homomorphism<'a> {
    domain: &'a PcPresentation,
    codomain: &'a PcPresentation,
    images: Vec<Element>,
}

impl<'a> Homomorphism<'a> {
    /// Checks every power and commutator relation of `domain` against the
    /// images before accepting them.
    pub fn new(
        domain: &'a PcPresentation,
        codomain: &'a PcPresentation,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != domain.ngens() || images.iter().any(|x| x.len() != codomain.ngens()) {
            return Err(Error::Input("generator images do not match the presentations".into()));
        }
        let hom = Homomorphism { domain, codomain, images };
        if let Some(bad) = hom.failed_relation() {
            return Err(Error::NotHomomorphism(bad));
        }
        Ok(hom)
    }

    fn failed_relation(&self) -> Option<String> {
        let (d, c) = (self.domain, self.codomain);
        let p = d.prime() as i64;
        for i in 0..d.ngens() {
            let lhs = c.power(&self.images[i], p);
            if lhs != self.image_of_word(d.power_rhs(i)) {
                return Some(format!("g{}^{}", i + 1, p));
            }
            for k in 0..i {
                let lhs = c.commutator(&self.images[i], &self.images[k]);
                if lhs != self.image_of_word(d.comm_rhs(i, k)) {
                    return Some(format!("[g{}, g{}]", i + 1, k + 1));
                }
            }
        }
        None
    }

    fn image_of_word(&self, w: &NormalWord) -> Element {
        let c = self.codomain;
        let mut acc = c.identity();
        for &(g, e) in w {
            acc = c.multiply(&acc, &c.power(&self.images[g], e as i64));
        }
        acc
    }

    pub fn domain(&self) -> &'a PcPresentation {
        self.domain
    }

    pub fn codomain(&self) -> &'a PcPresentation {
        self.codomain
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, g: &Element) -> Element {
        self.image_of_word(&g.normal_word())
    }

    pub fn image_subgroup(&self, h: &Subgroup<'_>) -> Subgroup<'a> {
        let gens: Vec<Element> = h.pc_sequence().iter().map(|x| self.image(x)).collect();
        Subgroup::generated(self.codomain, &gens)
    }

    /// Kernel restricted to `h`, computed from the graph subgroup
    /// `{(f(x), x) : x in h}` of `codomain x domain`: with the codomain's
    /// generators first, the graph elements whose leading generator falls in
    /// the domain part are exactly the graph's intersection with `1 x domain`.
    pub fn kernel_on(&self, h: &Subgroup<'_>) -> Result<Vec<Element>> {
        let product = self.codomain.direct_product(self.domain)?;
        let off = self.codomain.ngens();
        let gens: Vec<Element> = h
            .pc_sequence()
            .iter()
            .map(|x| {
                let mut v = self.image(x).exponents().to_vec();
                v.extend_from_slice(x.exponents());
                Element::from_exponents(v)
            })
            .collect();
        let graph = Subgroup::generated(&product, &gens);
        Ok(graph
            .pc_sequence()
            .iter()
            .filter(|e| e.leading().unwrap() >= off)
            .map(|e| Element::from_exponents(e.exponents()[off..].to_vec()))
            .collect())
    }

    pub fn kernel(&self) -> Result<Subgroup<'a>> {
        let gens = self.kernel_on(&Subgroup::whole(self.domain))?;
        Ok(Subgroup::generated(self.domain, &gens))
    }

    pub fn is_surjective(&self) -> bool {
        Subgroup::generated(self.codomain, &self.images).len() == self.codomain.ngens()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pcp;

    #[test]
    fn projection_of_heisenberg() {
        let h = parse_pcp("pcgroup\nprime 3\ngens 3\ncomm 2 1 := 3^1\nend\n").unwrap();
        let c = parse_pcp("pcgroup\nprime 3\ngens 2\nend\n").unwrap();
        let f = Homomorphism::new(&h, &c, vec![c.generator(0), c.generator(1), c.identity()]).unwrap();
        assert!(f.is_surjective());
        let k = f.kernel().unwrap();
        assert_eq!(k.len(), 1);
        assert!(k.contains(&h.generator(2)));
        // g3 -> nontrivial is not a homomorphism: [g2,g1] = g3 but the image is abelian
        let bad = Homomorphism::new(&h, &c, vec![c.generator(0), c.generator(1), c.generator(0)]);
        assert!(matches!(bad, Err(Error::NotHomomorphism(_))));
    }
}

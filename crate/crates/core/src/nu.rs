//! A finite presentation of Rocco's group `nu(G)`.
//!
//! `nu(G)` is the free product of `G` and an isomorphic copy `G^phi`
//! modulo the normal closure of
//! `[g1, g2^phi]^{g3} = [g1^{g3}, (g2^{g3})^phi] = [g1, g2^phi]^{g3^phi}`.
//! Here the relation is instantiated on pc generator triples only; the
//! quotient computed from it is certified separately by sampling.
//!
//! Alphabet: `x_i = i` for the copy of `G`, `y_i = n + i` for `G^phi`.

use rayon::prelude::*;

use crate::fp::FpPresentation;
use crate::pcp::{NormalWord, PcPresentation, Word};

/// Exchanges `x_i` and `y_i` in a word over the `2n`-letter alphabet.
pub fn phi_swap(w: &Word, n: usize) -> Word {
    Word::from_pairs(w.letters.iter().map(|l| (if l.gen < n { l.gen + n } else { l.gen - n }, l.exp)))
}

fn shifted(w: &NormalWord, offset: usize) -> Word {
    Word::from_pairs(w.iter().map(|&(g, e)| (g + offset, e as i64)))
}

/// The power and commutator relators of `pres` on the letters
/// `offset .. offset + n`, trivial right sides included.
fn copy_relators(pres: &PcPresentation, offset: usize) -> Vec<Word> {
    let n = pres.ngens();
    let p = pres.prime() as i64;
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        out.push(Word::from_pairs([(i + offset, p)]).mul(&shifted(pres.power_rhs(i), offset).inverse()));
    }
    for j in 0..n {
        for i in 0..j {
            let lhs = Word::commutator(&Word::gen(j + offset), &Word::gen(i + offset));
            out.push(lhs.mul(&shifted(pres.comm_rhs(j, i), offset).inverse()));
        }
    }
    out
}

pub fn build_nu_presentation(pres: &PcPresentation) -> FpPresentation {
    let n = pres.ngens();
    let mut relators = copy_relators(pres, 0);
    relators.extend(copy_relators(pres, n));

    // x_i^{x_k} as a normal word over the x letters
    let conj: Vec<Vec<Word>> = (0..n)
        .map(|i| (0..n).map(|k| shifted(&pres.conjugate(&pres.generator(i), &pres.generator(k)).normal_word(), 0)).collect())
        .collect();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    let mixed: Vec<[Word; 2]> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let c = Word::commutator(&Word::gen(i), &Word::gen(n + j));
            let by_x = Word::conjugate(&c, &Word::gen(k));
            let by_y = Word::conjugate(&c, &Word::gen(n + k));
            let moved = Word::commutator(&conj[i][k], &phi_swap(&conj[j][k], n));
            [by_x.mul(&moved.inverse()), by_x.mul(&by_y.inverse())]
        })
        .collect();
    relators.extend(mixed.into_iter().flatten());

    let names = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect();
    FpPresentation::with_names(names, relators).expect("relators stay within the alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pcp;
    use proptest::prelude::*;

    #[test]
    fn swap_examples() {
        let x1 = Word::gen(0);
        let y2 = Word::gen(4);
        let c = Word::commutator(&x1, &y2);
        assert_eq!(phi_swap(&c, 3), Word::commutator(&Word::gen(3), &Word::gen(1)));
        assert!(phi_swap(&Word::new(), 3).is_empty());
        let w = Word::from_pairs([(0, 2), (5, 1)]);
        assert_eq!(phi_swap(&w, 3), Word::from_pairs([(3, 2), (2, 1)]));
    }

    #[test]
    fn shape() {
        let triv = parse_pcp("pcgroup\nprime 3\ngens 0\nend\n").unwrap();
        let fp = build_nu_presentation(&triv);
        assert_eq!((fp.ngens, fp.relators.len()), (0, 0));
        let h = parse_pcp("pcgroup\nprime 3\ngens 3\ncomm 2 1 := 3^1\nend\n").unwrap();
        let fp = build_nu_presentation(&h);
        assert_eq!(fp.ngens, 6);
        assert_eq!(fp.relators.len(), 2 * (3 + 3) + 2 * 27);
        // the y relators are the swapped x relators
        for k in 0..6 {
            assert_eq!(phi_swap(&fp.relators[k], 3), fp.relators[k + 6]);
        }
    }

    proptest! {
        #[test]
        fn swap_is_involution(pairs in proptest::collection::vec((0usize..8, -5i64..5), 0..20)) {
            let w = Word::from_pairs(pairs);
            prop_assert_eq!(phi_swap(&phi_swap(&w, 4), 4), w);
        }
    }
}

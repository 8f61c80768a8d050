use std::collections::HashSet;

use pgm_core::analysis::nilpotency_class;
use pgm_core::fp::parse_fp;
use pgm_core::nq::relators_hold;
use pgm_core::pcp::parse_pcp;
use pgm_core::{build_nu_presentation, nilpotent_quotient, Element, FpPresentation, PcPresentation, Word};

fn fixture(name: &str) -> PcPresentation {
    let path = format!("{}/../../fixtures/{name}.pcp", env!("CARGO_MANIFEST_DIR"));
    parse_pcp(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// `|A (x) A| = prod gcd(d_i, d_j)` over ordered pairs of cyclic factors.
fn abelian_tensor_square_order(factors: &[u64]) -> u64 {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    factors.iter().flat_map(|&a| factors.iter().map(move |&b| gcd(a, b))).product()
}

#[test]
fn abelian_input_stops_at_class_one() {
    let fp = parse_fp("fpgroup\ngens 2\nrel 1^3\nrel 2^3\nrel 2^-1 1^-1 2^1 1^1\nend\n").unwrap();
    let q = nilpotent_quotient(&fp, 2, 3).unwrap();
    assert_eq!(q.quotient.ngens(), 2);
    assert_eq!(q.class_reached, 1);
    assert_eq!(q.section_ranks, vec![(3, 2)]);
}

/// Hand derivation: in a class-2 group generated by `a`, `b` of order 3,
/// `[b, a]` is central, so `[b, a]^3 = [b^3, a] = 1`; the quotient is the
/// extraspecial group of order 27 with `a^3 = b^3 = 1` and exponent 3.
#[test]
fn two_generator_exponent_three_class_two() {
    let fp = parse_fp("fpgroup\ngens 2\nrel 1^3\nrel 2^3\nend\n").unwrap();
    let q = nilpotent_quotient(&fp, 2, 3).unwrap();
    assert_eq!(q.section_ranks, vec![(3, 2), (3, 1)]);
    let g = &q.quotient;
    assert_eq!(nilpotency_class(g), 2);
    // brute-force: 27 distinct elements, all of order dividing 3
    let all: HashSet<Element> = (0..27).map(|i| g.element_from_index(i)).collect();
    assert_eq!(all.len(), 27);
    assert!(all.iter().all(|x| g.power(x, 3).is_identity()));
    assert!(relators_hold(&q, &fp));
}

#[test]
fn images_generate_and_kill_relators() {
    for name in ["h27", "c9", "d8", "sg_81_9"] {
        let g = fixture(name);
        let fp = build_nu_presentation(&g);
        let q = nilpotent_quotient(&fp, nilpotency_class(&g) + 1, g.prime()).unwrap();
        assert!(relators_hold(&q, &fp), "{name}");
        let sub = pgm_core::Subgroup::generated(&q.quotient, &q.images);
        assert_eq!(sub.len(), q.quotient.ngens(), "{name}");
        assert!(q.quotient.is_consistent());
    }
}

#[test]
fn nu_of_small_abelian_groups() {
    // |nu(A)| = |A|^2 |A (x) A|
    for (name, factors) in [("c3", vec![3u64]), ("c3xc3", vec![3, 3]), ("c9", vec![9]), ("c2xc2", vec![2, 2]), ("c5xc5", vec![5, 5])] {
        let g = fixture(name);
        let fp = build_nu_presentation(&g);
        let q = nilpotent_quotient(&fp, 2, g.prime()).unwrap();
        let order = g.order().to_u128().unwrap() as u64;
        let expected = order * order * abelian_tensor_square_order(&factors);
        assert_eq!((g.prime() as u64).pow(q.quotient.ngens() as u32), expected, "{name}");
    }
    let c3c3 = nilpotent_quotient(&build_nu_presentation(&fixture("c3xc3")), 2, 3).unwrap();
    assert_eq!(c3c3.quotient.ngens(), 8);
}

#[test]
fn no_growth_past_class_bound() {
    for name in ["c3xc3", "h27", "d8", "sg_81_7", "sg_81_10"] {
        let g = fixture(name);
        let c = nilpotency_class(&g);
        let fp = build_nu_presentation(&g);
        let a = nilpotent_quotient(&fp, c + 1, g.prime()).unwrap();
        let b = nilpotent_quotient(&fp, c + 2, g.prime()).unwrap();
        assert_eq!(a.quotient.ngens(), b.quotient.ngens(), "{name}");
        assert!(b.class_reached <= c + 1, "{name}");
    }
}

#[test]
fn homomorphism_onto_the_group() {
    // x_i, y_i -> g_i defines nu(G) -> G
    for name in ["h27", "sg_81_8"] {
        let g = fixture(name);
        let fp = build_nu_presentation(&g);
        let q = nilpotent_quotient(&fp, nilpotency_class(&g) + 1, g.prime()).unwrap();
        let n = g.ngens();
        let targets: Vec<Element> = (0..2 * n).map(|t| g.generator(t % n)).collect();
        let rho = q.homomorphism_to(&g, &targets).unwrap();
        assert!(rho.is_surjective());
        for (t, img) in q.images.iter().enumerate() {
            assert_eq!(rho.image(img), targets[t]);
        }
    }
}

#[test]
fn text_dump_round_trip() {
    let fp = build_nu_presentation(&fixture("h27"));
    let back = parse_fp(&fp.to_string()).unwrap();
    assert_eq!(back.relators, fp.relators);
    let fp2 = FpPresentation::new(1, vec![Word::from_pairs([(0, 3)])]).unwrap();
    assert_eq!(nilpotent_quotient(&fp2, 1, 3).unwrap().quotient.ngens(), 1);
}

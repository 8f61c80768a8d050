use pgm_core::pcp::parse_pcp;
use pgm_core::{Element, PcPresentation, Word};
use proptest::prelude::*;

fn fixture(name: &str) -> PcPresentation {
    let path = format!("{}/../../fixtures/{name}.pcp", env!("CARGO_MANIFEST_DIR"));
    parse_pcp(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn h27() -> PcPresentation {
    parse_pcp("pcgroup\nprime 3\ngens 3\ncomm 2 1 := 3^1\nend\n").unwrap()
}

fn c9() -> PcPresentation {
    parse_pcp("pcgroup\nprime 3\ngens 2\npow 1 := 2^1\nend\n").unwrap()
}

fn el(p: &PcPresentation, e: &[u32]) -> Element {
    p.element(e.to_vec()).unwrap()
}

// 3x3 upper unitriangular matrices over F_3; g1 = E12, g2 = E23.
type Mat3 = [[u32; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u32>() % 3;
        }
    }
    c
}

fn mat_pow(a: &Mat3, k: u32) -> Mat3 {
    let mut r = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..k {
        r = mat_mul(&r, a);
    }
    r
}

fn heisenberg_matrix(e: &[u32]) -> Mat3 {
    let g1 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
    let g2 = [[1, 0, 0], [0, 1, 1], [0, 0, 1]];
    // [g2, g1] = g2^-1 g1^-1 g2 g1
    let g3 = mat_mul(
        &mat_mul(&mat_pow(&g2, 2), &mat_pow(&g1, 2)),
        &mat_mul(&g2, &g1),
    );
    mat_mul(&mat_mul(&mat_pow(&g1, e[0]), &mat_pow(&g2, e[1])), &mat_pow(&g3, e[2]))
}

#[test]
fn heisenberg_table_matches_matrix_oracle() {
    let h = h27();
    let all: Vec<Element> = (0..27).map(|i| h.element_from_index(i)).collect();
    let mut by_matrix = std::collections::HashMap::new();
    for a in &all {
        assert!(by_matrix.insert(heisenberg_matrix(a.exponents()), a.clone()).is_none());
    }
    for a in &all {
        for b in &all {
            let m = mat_mul(&heisenberg_matrix(a.exponents()), &heisenberg_matrix(b.exponents()));
            assert_eq!(&h.multiply(a, b), &by_matrix[&m]);
        }
    }
}

#[test]
fn m27_matches_affine_oracle() {
    // M_27 acts faithfully on Z/9 by affine maps x -> u x + v. With maps
    // composed left to right, g1 = x + 1, g2 = 7x, g3 = g1^3 = x + 3 satisfy
    // [g2, g1] = x - 7 + 1 = x + 3 = g3.
    type Aff = (u32, u32);
    let compose = |f: Aff, g: Aff| -> Aff { ((f.0 * g.0) % 9, (g.0 * f.1 + g.1) % 9) };
    let imgs: [Aff; 3] = [(1, 1), (7, 0), (1, 3)];
    let m = fixture("m27");
    let img = |e: &Element| {
        let mut f = (1, 0);
        for (k, &x) in e.exponents().iter().enumerate() {
            for _ in 0..x {
                f = compose(f, imgs[k]);
            }
        }
        f
    };
    let all: Vec<Element> = (0..27).map(|i| m.element_from_index(i)).collect();
    let images: std::collections::HashSet<Aff> = all.iter().map(img).collect();
    assert_eq!(images.len(), 27);
    for a in &all {
        for b in &all {
            assert_eq!(img(&m.multiply(a, b)), compose(img(a), img(b)));
        }
    }
}

#[test]
fn collect_examples() {
    let c = c9();
    assert_eq!(c.collect(&Word::from_pairs([(0, 1), (0, 1), (0, 1)])).unwrap(), el(&c, &[0, 1]));
    let h = h27();
    assert_eq!(h.collect(&Word::from_pairs([(1, 1), (0, 1)])).unwrap(), el(&h, &[1, 1, 1]));
    let g1g2 = Word::from_pairs([(0, 1), (1, 1)]);
    assert!(h.collect(&g1g2.pow(3)).unwrap().is_identity());
    assert!(h.collect(&Word::gen(3)).is_err());
}

#[test]
fn group_law_examples() {
    let h = h27();
    let a = el(&h, &[2, 1, 0]);
    assert_eq!(h.multiply(&h.identity(), &a), a);
    assert_eq!(h.commutator(&h.generator(0), &h.generator(1)), el(&h, &[0, 0, 2]));
    let c = c9();
    assert_eq!(c.power(&c.generator(0), 3), el(&c, &[0, 1]));
    assert_eq!(c.power(&c.generator(0), -1), c.inverse(&c.generator(0)));
    assert_eq!(c.multiply(&c.power(&c.generator(0), -4), &c.power(&c.generator(0), 4)), c.identity());
}

#[test]
fn order_examples() {
    let h = h27();
    assert_eq!(h.order_of(&h.identity()), 1);
    assert_eq!(h.order_of(&el(&h, &[1, 1, 0])), 3);
    let c = c9();
    assert_eq!(c.order_of(&c.generator(0)), 9);
    // exponent-3 group: every element has order dividing 3 (table oracle above)
    assert!((0..27).all(|i| h.order_of(&h.element_from_index(i)) <= 3));
}

#[test]
fn consistency_examples() {
    assert!(h27().check_consistency().is_empty());
    assert!(c9().check_consistency().is_empty());
    // g1^3 = g2 forces g2 to commute with g1, contradicting [g2, g1] = g3.
    // By hand: (g1^2 g1) g1 = g2 g1 = g1 g2 g3 while g1 (g1^2 g1) = g1 g2.
    let bad = parse_pcp("pcgroup\nprime 3\ngens 3\npow 1 := 2^1\ncomm 2 1 := 3^1\nend\n").unwrap();
    let report = bad.check_consistency();
    assert!(!report.is_empty());
    let v = report.iter().find(|v| v.test == "g1^(p+1)").unwrap();
    assert_eq!(v.left, el(&bad, &[1, 1, 1]));
    assert_eq!(v.right, el(&bad, &[1, 1, 0]));
}

#[test]
fn shipped_fixtures_are_consistent() {
    let dir = format!("{}/../../fixtures", env!("CARGO_MANIFEST_DIR"));
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "pcp") {
            let pres = parse_pcp(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert!(pres.check_consistency().is_empty(), "{}", path.display());
            count += 1;
        }
    }
    assert!(count >= 15);
}

fn fixtures_for_props() -> Vec<PcPresentation> {
    ["h27", "m27", "d16", "sg_81_9", "sg_243_26", "sg_625_8"].iter().map(|n| fixture(n)).collect()
}

fn arb_case() -> impl Strategy<Value = (usize, u64, u64, u64)> {
    (0usize..6, any::<u64>(), any::<u64>(), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn group_laws_hold((gi, x, y, z) in arb_case()) {
        let fx = fixtures_for_props();
        let g = &fx[gi];
        let size = g.order().to_u128().unwrap() as u64;
        let (a, b, c) = (g.element_from_index(x % size), g.element_from_index(y % size), g.element_from_index(z % size));
        prop_assert_eq!(g.multiply(&g.multiply(&a, &b), &c), g.multiply(&a, &g.multiply(&b, &c)));
        prop_assert_eq!(g.multiply(&a, &g.inverse(&a)), g.identity());
        prop_assert_eq!(g.multiply(&g.inverse(&a), &a), g.identity());
        prop_assert_eq!(g.multiply(&g.identity(), &a), a.clone());
        prop_assert_eq!(g.multiply(&a, &g.identity()), a.clone());
        // collect is idempotent on normal forms and a homomorphism on words
        prop_assert_eq!(g.collect(&a.to_word()).unwrap(), a.clone());
        let uv = a.to_word().mul(&b.to_word().inverse());
        prop_assert_eq!(g.collect(&uv).unwrap(), g.multiply(&a, &g.inverse(&b)));
        // conventions
        let comm = g.commutator(&a, &b);
        let expect = g.multiply(&g.multiply(&g.inverse(&a), &g.inverse(&b)), &g.multiply(&a, &b));
        prop_assert_eq!(comm, expect);
        prop_assert_eq!(g.conjugate(&a, &b), g.multiply(&g.multiply(&g.inverse(&b), &a), &b));
        let ord = g.order_of(&a);
        prop_assert!(ord.is_power_of_two() || g.prime() != 2);
        prop_assert!(g.power(&a, ord as i64).is_identity());
    }
}

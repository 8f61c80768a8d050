use std::time::Instant;

use pgm_core::pcp::parse_pcp;
use pgm_core::{NuGroup, PcPresentation};

fn fixture_text(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}.pcp", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn header(text: &str, key: &str) -> Option<String> {
    text.lines().find_map(|l| l.strip_prefix(&format!("# {key}: ")).map(str::to_string))
}

fn expected_multiplier(text: &str) -> Vec<u64> {
    let h = header(text, "expect.multiplier").unwrap();
    h.split(',').filter(|s| !s.is_empty()).map(|s| s.trim().parse().unwrap()).collect()
}

fn check(name: &str) {
    let text = fixture_text(name);
    let g: PcPresentation = parse_pcp(&text).unwrap();
    let t = Instant::now();
    let nu = NuGroup::new(&g).unwrap();
    let r = nu.schur_multiplier().unwrap();
    eprintln!("{name}: |nu| = {}^{}, M = {} in {:?}", g.prime(), nu.nu().ngens(), r.invariants, t.elapsed());
    assert_eq!(r.invariants.factors(), expected_multiplier(&text).as_slice(), "{name}");
    assert!(r.bookkeeping_holds(), "{name}: {r:?}");
    assert!(r.central && r.psi_onto_derived, "{name}");
}

#[test]
fn classic_groups() {
    for name in ["c3", "c9", "c27", "c25", "c2", "c4", "c2xc2", "c3xc3", "c5xc5", "h27", "m27", "d8", "d16", "q8", "q16", "sd16"] {
        check(name);
    }
}

#[test]
fn order_81() {
    for name in ["sg_81_7", "sg_81_8", "sg_81_9", "sg_81_10"] {
        check(name);
    }
}

#[test]
fn order_625_and_3125() {
    for name in ["sg_625_7", "sg_625_8", "sg_3125_30", "sg_3125_31"] {
        check(name);
    }
}

#[test]
fn order_243() {
    for name in ["sg_243_25", "sg_243_26", "sg_243_28"] {
        check(name);
    }
}

#[test]
fn order_15625() {
    for name in ["sg_15625_630", "sg_15625_631", "sg_15625_632"] {
        check(name);
    }
}

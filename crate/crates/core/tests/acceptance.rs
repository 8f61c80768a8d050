//! One test per acceptance criterion. Each prints a single
//! `criterion N: pass|FAIL ...` line to stderr and asserts the outcome.

use std::time::{Duration, Instant};

use pgm_core::bar::{h2_bar, table_from_pcp, DEFAULT_BAR_CAP, DEFAULT_TABLE_CAP};
use pgm_core::harness::corpus::{default_dir, load_corpus};
use pgm_core::harness::{in_theorem_range, run_suite, Check, Expected, Fixture, Options, Status, Suite};
use pgm_core::{schur_multiplier, NuGroup};

fn corpus() -> Vec<Fixture> {
    load_corpus(&default_dir()).expect("fixture corpus loads")
}

fn fixture(name: &str) -> Fixture {
    corpus().into_iter().find(|f| f.name == name).unwrap_or_else(|| panic!("fixture {name} missing"))
}

fn report(n: u32, ok: bool, detail: &str) {
    eprintln!("criterion {n}: {} ({})", if ok { "pass" } else { "FAIL" }, detail.trim_end());
    assert!(ok, "criterion {n} failed: {detail}");
}

fn invariants(f: &Fixture) -> Vec<u64> {
    schur_multiplier(&f.pres).unwrap().factors().to_vec()
}

fn failures(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed()).map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect()
}

#[test]
fn criterion_01_classic_multipliers() {
    let cases: [(&str, &[u64]); 9] = [
        ("c9", &[]),
        ("c25", &[]),
        ("c3xc3", &[3]),
        ("c5xc5", &[5]),
        ("h27", &[3, 3]),
        ("m27", &[]),
        ("d16", &[2]),
        ("q16", &[]),
        ("sd16", &[]),
    ];
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for (name, want) in cases {
        let start = Instant::now();
        let got = invariants(&fixture(name));
        let took = start.elapsed();
        slowest = slowest.max(took);
        if got != want || took > Duration::from_secs(5) {
            bad.push(format!("{name}: got {got:?} in {took:?}"));
        }
    }
    report(1, bad.is_empty(), &format!("9 groups, slowest {slowest:?} {}", bad.join("; ")));
}

#[test]
fn criterion_02_bar_route_agrees_up_to_order_27() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for f in corpus().iter().filter(|f| f.pres.order().to_u128().is_some_and(|o| o <= 27)) {
        let bar = h2_bar(&table_from_pcp(&f.pres, DEFAULT_TABLE_CAP).unwrap(), DEFAULT_BAR_CAP).unwrap();
        let nu = invariants(f);
        if bar.factors() != nu.as_slice() {
            bad.push(format!("{}: bar {:?} nu {nu:?}", f.name, bar.factors()));
        }
        count += 1;
    }
    let took = start.elapsed();
    let ok = bad.is_empty() && count >= 12 && took < Duration::from_secs(60);
    report(2, ok, &format!("{count} groups in {took:?} {}", bad.join("; ")));
}

#[test]
fn criterion_03_order_243_table_rows() {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, want) in [("sg_243_26", vec![3, 9]), ("sg_243_28", vec![9])] {
        let start = Instant::now();
        let got = invariants(&fixture(name));
        let took = start.elapsed();
        ok &= got == want && took < Duration::from_secs(600);
        lines.push(format!("{name} -> {got:?} in {took:?}"));
    }
    report(3, ok, &lines.join("; "));
}

#[test]
fn criterion_04_maximal_class_multipliers_are_elementary_abelian() {
    let limits = [(81u128, 60u64), (625, 60), (3125, 900), (15625, 3600)];
    let mut seen = [0usize; 4];
    let mut bad = Vec::new();
    for f in corpus() {
        let order = f.pres.order().to_u128().unwrap();
        let Some(slot) = limits.iter().position(|(o, _)| *o == order) else { continue };
        if !in_theorem_range(&f.pres) {
            continue;
        }
        let start = Instant::now();
        let got = invariants(&f);
        let took = start.elapsed();
        let p = f.pres.prime() as u64;
        if got.is_empty() || got.iter().any(|&x| x != p) || took > Duration::from_secs(limits[slot].1) {
            bad.push(format!("{}: {got:?} in {took:?}", f.name));
        }
        seen[slot] += 1;
    }
    let ok = bad.is_empty() && seen.iter().all(|&k| k > 0);
    report(4, ok, &format!("groups per order 3^4,5^4,5^5,5^6: {seen:?} {}", bad.join("; ")));
}

fn theorem1_fixtures() -> Vec<(Fixture, Vec<Check>)> {
    let opts = Options::default();
    corpus()
        .into_iter()
        .filter(|f| in_theorem_range(&f.pres))
        .map(|f| {
            let checks = run_suite(Suite::Theorem1, &f.name, &f.pres, &Expected::default(), &opts).unwrap().checks;
            (f, checks)
        })
        .collect()
}

#[test]
fn criterion_05_commutator_subgroups_have_exponent_p() {
    let mut bad = Vec::new();
    let mut counted = (0, 0, 0);
    for (f, checks) in theorem1_fixtures() {
        for i in 2..f.pres.ngens() {
            for name in [format!("exp [P_{i},G^phi] <= p"), format!("[P_{i},G^phi] = [P_{i}^phi,G]")] {
                match checks.iter().find(|c| c.name == name) {
                    Some(c) if c.status == Status::Pass => counted.0 += 1,
                    Some(c) if c.status == Status::Sampled => counted.1 += 1,
                    Some(_) => bad.push(format!("{}: {name}", f.name)),
                    None => bad.push(format!("{}: {name} not run", f.name)),
                }
            }
        }
        counted.2 += 1;
    }
    let ok = bad.is_empty() && counted.2 >= 5;
    let detail = format!("{} groups, {} exact and {} sampled checks {}", counted.2, counted.0, counted.1, bad.join("; "));
    report(5, ok, &detail);
}

#[test]
fn criterion_06_exponent_p_squared_identities() {
    let names = ["[s_1,s_0^phi]^(p^2) = 1 = [s_0,s_1^phi]^(p^2)", "([s_0,s_1^phi][s_1,s_0^phi])^p = 1"];
    let mut groups = Vec::new();
    let mut bad = Vec::new();
    for (f, checks) in theorem1_fixtures() {
        let p = f.pres.prime() as u64;
        if f.expected.exponent != Some(p * p) {
            continue;
        }
        for name in names {
            match checks.iter().find(|c| c.name == name) {
                Some(c) if c.status == Status::Pass => {}
                other => bad.push(format!("{}: {name} -> {:?}", f.name, other.map(|c| c.status))),
            }
        }
        groups.push(f.name);
    }
    report(6, bad.is_empty() && !groups.is_empty(), &format!("exact on {} {}", groups.join(","), bad.join("; ")));
}

#[test]
fn criterion_07_lemma_identities_on_random_samples() {
    let opts = Options::default();
    assert_eq!(opts.samples, 10_000);
    let families = [
        "six phi-placements of [g1,g2,g3] agree",
        "mixed phi-placements of weight-4 commutators agree",
        "mixed phi-placements of weight-5 commutators agree",
        "[g1 g2, h^phi] = [g1^g2, (h^g2)^phi] [g2, h^phi]",
        "[g, (h1 h2)^phi] = [g, h2^phi] [g^h2, (h1^h2)^phi]",
    ];
    let mut bad = Vec::new();
    let start = Instant::now();
    for name in ["h27", "sg_81_8", "sg_625_8", "sg_3125_30"] {
        let f = fixture(name);
        let a = run_suite(Suite::Lemmas, &f.name, &f.pres, &f.expected, &opts).unwrap();
        bad.extend(failures(&a.checks).into_iter().map(|e| format!("{name}: {e}")));
        for fam in families {
            if !a.checks.iter().any(|c| c.name == fam && c.status == Status::Sampled) {
                bad.push(format!("{name}: {fam} missing"));
            }
        }
        if name == "h27" {
            let b = run_suite(Suite::Lemmas, &f.name, &f.pres, &f.expected, &opts).unwrap();
            if a.checks != b.checks {
                bad.push("h27: rerun with the same seed differs".into());
            }
        }
    }
    report(7, bad.is_empty(), &format!("4 groups x 10^4 samples per family in {:?} {}", start.elapsed(), bad.join("; ")));
}

#[test]
fn criterion_08_no_growth_past_class_c_plus_1() {
    let mut bad = Vec::new();
    let mut gamma_checked = 0;
    let all = corpus();
    for f in &all {
        let c = pgm_core::analysis::nilpotency_class(&f.pres);
        let nu = NuGroup::new(&f.pres).unwrap();
        let grown = NuGroup::with_class_bound(&f.pres, c + 2).unwrap();
        if grown.nu().ngens() != nu.nu().ngens() {
            bad.push(format!("{}: p^{} -> p^{}", f.name, nu.nu().ngens(), grown.nu().ngens()));
        }
        let p = f.pres.prime() as usize;
        if f.pres.ngens() == p + 1 {
            gamma_checked += 1;
            if nu.class() > p + 1 {
                bad.push(format!("{}: nu(G) has class {}", f.name, nu.class()));
            }
        }
    }
    let ok = bad.is_empty() && gamma_checked > 0;
    report(8, ok, &format!("{} fixtures, gamma_(p+2) checked on {gamma_checked} {}", all.len(), bad.join("; ")));
}

#[test]
fn criterion_09_order_bookkeeping() {
    let mut bad = Vec::new();
    let all = corpus();
    for f in &all {
        let r = NuGroup::new(&f.pres).unwrap().schur_multiplier().unwrap();
        if !(r.bookkeeping_holds() && r.central && r.psi_onto_derived) {
            bad.push(format!("{}: {r:?}", f.name));
        }
    }
    report(9, bad.is_empty(), &format!("{} fixtures {}", all.len(), bad.join("; ")));
}

#[test]
fn criterion_10_declared_out_of_range() {
    // The 5^7 table rows and the 7^9 census need groups that are neither in
    // the corpus nor computable here; this criterion only records that, with
    // criteria 3 to 5 as the scaled-down substitutes.
    let largest = corpus().iter().map(|f| f.pres.order().to_u128().unwrap()).max().unwrap();
    assert!(largest < 78_125);
    eprintln!("criterion 10: not reproducible (declared; largest fixture has order {largest}, substitutes are criteria 3-5)");
}

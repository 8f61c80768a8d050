use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::basic::{basic_commutators, evaluate, BasicCommutator};
use super::corpus::Expected;
use super::{bookkeeping_check, in_theorem_range, multiplier, Check, Method, Options};
use crate::analysis::{
    exponent, exponent_check_p2, is_maximal_class, maximal_class_frame_with_choice, nilpotency_class, EnumPolicy,
};
use crate::error::Result;
use crate::pcp::{Element, PcPresentation, Word};
use crate::subgroup::Subgroup;
use crate::tensor::{NuGroup, PhiSide};

/// Fresh generator per check so that adding a check does not shift the
/// samples of the others.
fn rng(opts: &Options, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_tuples(g: &PcPresentation, k: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Element>> {
    let whole = Subgroup::whole(g);
    (0..count).map(|_| (0..k).map(|_| whole.random_element(rng)).collect()).collect()
}

fn show(labels: &[&str], tuple: &[Element]) -> String {
    labels.iter().zip(tuple).map(|(l, x)| format!("{l}={x}")).collect::<Vec<_>>().join(" ")
}

/// First failing sample (in sample order), checked in parallel.
fn sampled<T: Sync>(name: &str, samples: &[T], ok: impl Fn(&T) -> bool + Sync, witness: impl Fn(&T) -> String) -> Check {
    let failure = samples.par_iter().position_first(|t| !ok(t)).map(|k| witness(&samples[k]));
    Check::sampled(name, failure).with_detail(format!("{} samples", samples.len()))
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as i64
}

/// `K(a, b)` inside `<x, y>`: basic commutators in `a < b` with `b`-weight
/// at least 2, of weight at least `p^r`, together with the `p^(r-k+1)`-th
/// powers of those of weight below `p^k`, closed under conjugation by `x`, `y`.
fn k_subgroup<'a>(
    g: &'a PcPresentation,
    list: &[BasicCommutator],
    (a, b): (&Element, &Element),
    (x, y): (&Element, &Element),
    r: u32,
) -> Subgroup<'a> {
    let p = g.prime() as u64;
    let vals = evaluate(g, list, a, b);
    let mut gens = Vec::new();
    for (c, v) in list.iter().zip(&vals) {
        if c.weight_b < 2 || v.is_identity() {
            continue;
        }
        if c.weight as u64 >= p.pow(r) {
            gens.push(v.clone());
        }
        for k in 1..=r {
            if (c.weight as u64) < p.pow(k) {
                gens.push(g.power(v, p.pow(r - k + 1) as i64));
            }
        }
    }
    Subgroup::closure_under(g, &gens, &[x.clone(), y.clone()])
}

/// `(xy)^(p^r)` times the inverse of `x^(p^r) y^(p^r) [y,x]^C(p^r,2) ... [y,_(p^r-1) x]`.
fn power_residue(g: &PcPresentation, x: &Element, y: &Element, r: u32) -> Element {
    let q = (g.prime() as u64).pow(r);
    let c = nilpotency_class(g) as u64;
    let lhs = g.power(&g.multiply(x, y), q as i64);
    let mut rhs = g.multiply(&g.power(x, q as i64), &g.power(y, q as i64));
    let mut term = y.clone();
    for k in 2..=q.min(c + 1) {
        term = g.commutator(&term, x);
        rhs = g.multiply(&rhs, &g.power(&term, binomial(q, k)));
    }
    g.multiply(&lhs, &g.inverse(&rhs))
}

fn power_congruence(g: &PcPresentation, list: &[BasicCommutator], x: &Element, y: &Element, r: u32) -> bool {
    let diff = power_residue(g, x, y, r);
    diff.is_identity() || k_subgroup(g, list, (x, y), (x, y), r).contains(&diff)
}

/// `[x^(p^r), y]` against `[x,y]^(p^r) [x,y,x]^C(p^r,2) ... [[x,y],_(p^r-1) x]`.
fn commutator_congruence(g: &PcPresentation, list: &[BasicCommutator], x: &Element, y: &Element, r: u32) -> bool {
    let q = (g.prime() as u64).pow(r);
    let c = nilpotency_class(g) as u64;
    let xy = g.commutator(x, y);
    let lhs = g.commutator(&g.power(x, q as i64), y);
    let mut rhs = g.power(&xy, q as i64);
    let mut term = xy.clone();
    for k in 2..=q.min(c + 1) {
        term = g.commutator(&term, x);
        rhs = g.multiply(&rhs, &g.power(&term, binomial(q, k)));
    }
    let diff = g.multiply(&lhs, &g.inverse(&rhs));
    diff.is_identity() || k_subgroup(g, list, (x, &xy), (x, y), r).contains(&diff)
}

fn random_word(g: &PcPresentation, rng: &mut ChaCha8Rng) -> Word {
    let p = g.prime() as i64;
    let len = rng.gen_range(0..=12);
    Word::from_pairs((0..len).map(|_| {
        let e = rng.gen_range(1..=p) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (rng.gen_range(0..g.ngens()), e)
    }))
}

pub(crate) fn collection(g: &PcPresentation, opts: &Options) -> Vec<Check> {
    let violations = g.check_consistency();
    let mut checks = vec![Check::new("consistency", violations.is_empty(), || {
        let v = &violations[0];
        format!("{}: {} vs {}", v.test, v.left, v.right)
    })];
    if g.ngens() == 0 {
        return checks;
    }
    let mut r = rng(opts, 1);
    let words: Vec<(Word, Word)> = (0..opts.samples).map(|_| (random_word(g, &mut r), random_word(g, &mut r))).collect();
    checks.push(sampled(
        "collect(uv) = collect(u) collect(v)",
        &words,
        |(u, v)| {
            let (a, b) = (g.collect(u).unwrap(), g.collect(v).unwrap());
            g.collect(&u.mul(v)).unwrap() == g.multiply(&a, &b)
        },
        |(u, v)| format!("u={u:?} v={v:?}"),
    ));
    let list = basic_commutators(nilpotency_class(g).max(2));
    for rr in 1..=2u32 {
        let pairs = random_tuples(g, 2, opts.samples, &mut rng(opts, 10 + rr as u64));
        checks.push(sampled(
            &format!("(xy)^(p^{rr}) congruence mod K(x,y)"),
            &pairs,
            |t| power_congruence(g, &list, &t[0], &t[1], rr),
            |t| show(&["x", "y"], t),
        ));
        checks.push(sampled(
            &format!("[x^(p^{rr}),y] congruence mod K(x,[x,y])"),
            &pairs,
            |t| commutator_congruence(g, &list, &t[0], &t[1], rr),
            |t| show(&["x", "y"], t),
        ));
    }
    checks
}

pub(crate) fn lemmas(nu: &NuGroup, opts: &Options) -> Vec<Check> {
    let g = &nu.group;
    let v = nu.nu();
    let n = opts.samples;
    let mut checks = Vec::new();
    let (x, y) = (|a: &Element| nu.x(a), |a: &Element| nu.y(a));

    let t = random_tuples(g, 3, n, &mut rng(opts, 20));
    checks.push(sampled(
        "defining relations [g1,g2^phi]^g3 = [g1^g3,(g2^g3)^phi] = [g1,g2^phi]^(g3^phi)",
        &t,
        |t| {
            let c = nu.comm_phi(&t[0], &t[1]);
            let lhs = v.conjugate(&c, &x(&t[2]));
            let mid = nu.comm_phi(&g.conjugate(&t[0], &t[2]), &g.conjugate(&t[1], &t[2]));
            lhs == mid && lhs == v.conjugate(&c, &y(&t[2]))
        },
        |t| show(&["g1", "g2", "g3"], t),
    ));

    let t = random_tuples(g, 3, n, &mut rng(opts, 21));
    checks.push(sampled(
        "six phi-placements of [g1,g2,g3] agree",
        &t,
        |t| {
            let placements: Vec<Element> = (1..7u32)
                .map(|mask| {
                    let parts: Vec<Element> =
                        (0..3).map(|k| if mask >> k & 1 == 1 { y(&t[k]) } else { x(&t[k]) }).collect();
                    v.left_normed(&parts)
                })
                .collect();
            placements.iter().all(|e| *e == placements[0])
        },
        |t| show(&["g1", "g2", "g3"], t),
    ));

    let t = random_tuples(g, 4, n, &mut rng(opts, 22));
    checks.push(sampled(
        "[[g1,g2^phi],[h1,h2^phi]] = [[g1,g2],[h1,h2^phi]]",
        &t,
        |t| {
            let h = nu.comm_phi(&t[2], &t[3]);
            v.commutator(&nu.comm_phi(&t[0], &t[1]), &h) == v.commutator(&x(&g.commutator(&t[0], &t[1])), &h)
        },
        |t| show(&["g1", "g2", "h1", "h2"], t),
    ));

    for r in [4usize, 5] {
        let mut rg = rng(opts, 30 + r as u64);
        let full = (1u32 << r) - 1;
        let samples: Vec<(Vec<Element>, u32, u32)> = random_tuples(g, r, n, &mut rg)
            .into_iter()
            .map(|tuple| {
                let eps = rg.gen_range(1..full);
                let mut delta = rg.gen_range(1..full - 1);
                if delta >= eps {
                    delta += 1;
                }
                (tuple, eps, delta)
            })
            .collect();
        let placed = |t: &[Element], mask: u32| {
            let parts: Vec<Element> = (0..t.len()).map(|k| if mask >> k & 1 == 1 { y(&t[k]) } else { x(&t[k]) }).collect();
            v.left_normed(&parts)
        };
        checks.push(sampled(
            &format!("mixed phi-placements of weight-{r} commutators agree"),
            &samples,
            |(t, e, d)| placed(t, *e) == placed(t, *d),
            |(t, e, d)| format!("{} eps={e:0r$b} delta={d:0r$b}", show(&["g1", "g2", "g3", "g4", "g5"], t)),
        ));
    }

    let t = random_tuples(g, 3, n, &mut rng(opts, 40));
    checks.push(sampled(
        "[g1 g2, h^phi] = [g1^g2, (h^g2)^phi] [g2, h^phi]",
        &t,
        |t| {
            let lhs = nu.comm_phi(&g.multiply(&t[0], &t[1]), &t[2]);
            let rhs = nu.comm_phi(&g.conjugate(&t[0], &t[1]), &g.conjugate(&t[2], &t[1]));
            lhs == v.multiply(&rhs, &nu.comm_phi(&t[1], &t[2]))
        },
        |t| show(&["g1", "g2", "h"], t),
    ));
    let t = random_tuples(g, 3, n, &mut rng(opts, 41));
    checks.push(sampled(
        "[g, (h1 h2)^phi] = [g, h2^phi] [g^h2, (h1^h2)^phi]",
        &t,
        |t| {
            let lhs = nu.comm_phi(&t[0], &g.multiply(&t[1], &t[2]));
            let second = nu.comm_phi(&g.conjugate(&t[0], &t[2]), &g.conjugate(&t[1], &t[2]));
            lhs == v.multiply(&nu.comm_phi(&t[0], &t[2]), &second)
        },
        |t| show(&["g", "h1", "h2"], t),
    ));

    let kappa = nu.kappa();
    let cert = nu.certify_kappa(&kappa, opts.kappa_samples, opts.seed);
    checks.push(
        Check::sampled("[g,g^phi] lies in kappa", cert.err().map(|e| e.to_string()))
            .with_detail(format!("{} samples", opts.kappa_samples)),
    );
    checks
}

fn precondition(g: &PcPresentation) -> Option<Check> {
    (!in_theorem_range(g)).then(|| {
        Check::new("precondition: p odd, maximal class, 4 <= n <= p+1", false, || {
            format!("p={} n={} maximal_class={}", g.prime(), g.ngens(), is_maximal_class(g))
        })
    })
}

fn exponent_at_most(name: &str, h: &Subgroup<'_>, bound: u64, policy: &EnumPolicy) -> Check {
    let e = exponent(h, policy);
    Check::new(name, e.value <= bound, || {
        format!("element {} of order {}", e.witness.as_ref().map_or("-".into(), |w| w.to_string()), e.value)
    })
    .with_detail(format!("exponent {}", e.value))
    .mark_sampled(e.sampled)
}

pub(crate) fn theorem1(nu: &NuGroup, opts: &Options) -> Result<Vec<Check>> {
    let g = &nu.group;
    if let Some(c) = precondition(g) {
        return Ok(vec![c]);
    }
    let v = nu.nu();
    let p = g.prime() as u64;
    let policy = opts.policy();
    let frame = maximal_class_frame_with_choice(g, 0, &policy)?;
    let n = frame.n;
    let mut checks = Vec::new();
    let bad = frame.check();
    checks.push(Check::new("frame s_0..s_(n-1) spans the P_i series", bad.is_empty(), || bad.join("; ")));

    let (p2, whole) = exponent_check_p2(&frame, &policy);
    checks.push(
        Check::new("exp P_2 = p", p2.value == p, || format!("exp P_2 = {}", p2.value)).mark_sampled(p2.sampled),
    );
    let top = Subgroup::whole(g).quotient_by(frame.p(n - 1))?;
    let e = exponent(&Subgroup::whole(&top.presentation), &policy);
    checks.push(
        Check::new("exp G/P_(n-1) = p", e.value == p, || format!("exp G/P_(n-1) = {}", e.value)).mark_sampled(e.sampled),
    );

    let sections: Vec<Check> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            [PhiSide::Right, PhiSide::Left].map(|side| {
                let r = nu.section_generators_check(&frame, i, side);
                let (section, gens) = match side {
                    PhiSide::Right => (format!("[P_{i},G^phi]/[P_{},G^phi]", i + 1), format!("[s_{i},s_j^phi]")),
                    PhiSide::Left => (format!("[P_{i}^phi,G]/[P_{}^phi,G]", i + 1), format!("[s_{i}^phi,s_j]")),
                };
                Check::new(format!("{section} abelian, generated by {gens}"), r.passed(), || {
                    format!("abelian={} generated={}", r.abelian, r.generated)
                })
                .with_detail(format!("rank {}", r.rank))
            })
        })
        .collect();
    checks.extend(sections);

    let depth = nu.class().max(2);
    let list = basic_commutators(depth);
    let pairs: Vec<(usize, usize)> = (2..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let per_pair: Vec<Vec<Check>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let a = nu.x(&frame.s[i]);
            let b = nu.comm_phi(&frame.s[i], &frame.s[j]);
            let vals = evaluate(v, &list, &a, &b);
            let mixed = |c: &BasicCommutator| c.weight_b >= 1 && c.weight > c.weight_b;
            let heavy = list.iter().zip(&vals).position(|(c, x)| mixed(c) && c.weight as u64 >= p && !x.is_identity());
            let light = list
                .iter()
                .zip(&vals)
                .position(|(c, x)| mixed(c) && (c.weight as u64) < p && !v.power(x, p as i64).is_identity());
            vec![
                Check::new(format!("[s_{i},s_{j}^phi]^p = 1"), v.power(&b, p as i64).is_identity(), || {
                    format!("[s_{i},s_{j}^phi] = {b}")
                }),
                Check::new(format!("basic commutators in s_{i}, [s_{i},s_{j}^phi] of weight >= p vanish"), heavy.is_none(), || {
                    format!("basic commutator #{} is {}", heavy.unwrap(), vals[heavy.unwrap()])
                }),
                Check::new(format!("p-th powers of lighter basic commutators in s_{i}, [s_{i},s_{j}^phi] vanish"), light.is_none(), || {
                    format!("basic commutator #{} is {}", light.unwrap(), vals[light.unwrap()])
                }),
            ]
        })
        .collect();
    checks.extend(per_pair.into_iter().flatten());

    for i in 2..n {
        let right = nu.p_i_phi(&frame, i, PhiSide::Right);
        let left = nu.p_i_phi(&frame, i, PhiSide::Left);
        checks.push(exponent_at_most(&format!("exp [P_{i},G^phi] <= p"), &right, p, &policy));
        checks.push(Check::new(format!("[P_{i},G^phi] = [P_{i}^phi,G]"), right.equals(&left), || {
            format!("orders p^{} and p^{}", right.len(), left.len())
        }));
        checks.push(exponent_at_most(&format!("exp [P_{i}^phi,G] <= p"), &left, p, &policy));
    }

    if whole.value == p * p {
        let (s0, s1) = (&frame.s[0], &frame.s[1]);
        let a = nu.comm_phi(s1, s0);
        let b = nu.comm_phi(s0, s1);
        let pp = (p * p) as i64;
        checks.push(Check::new("[s_1,s_0^phi]^(p^2) = 1 = [s_0,s_1^phi]^(p^2)", v.power(&a, pp).is_identity() && v.power(&b, pp).is_identity(), || {
            format!("[s_1,s_0^phi]={a} [s_0,s_1^phi]={b}")
        }).mark_sampled(whole.sampled));
        let prod = v.multiply(&b, &a);
        checks.push(Check::new("([s_0,s_1^phi][s_1,s_0^phi])^p = 1", v.power(&prod, p as i64).is_identity(), || {
            format!("product = {prod}")
        }).mark_sampled(whole.sampled));
    }
    if n as u64 == p + 1 {
        checks.push(gamma_check(nu, p));
    }
    Ok(checks)
}

fn gamma_check(nu: &NuGroup, p: u64) -> Check {
    let class = nu.class();
    Check::new("gamma_(p+2)(nu(G)) = 1", class as u64 <= p + 1, || format!("nu(G) has class {class}"))
}

pub(crate) fn theorem2(nu: &NuGroup) -> Result<Vec<Check>> {
    let g = &nu.group;
    if let Some(c) = precondition(g) {
        return Ok(vec![c]);
    }
    let p = g.prime() as u64;
    let report = nu.schur_multiplier()?;
    let inv = report.invariants.factors().to_vec();
    Ok(vec![
        Check::new("M(G) is elementary abelian", inv.iter().all(|&f| f == p), || format!("invariants {inv:?}"))
            .with_detail(format!("invariants {inv:?}")),
        Check::new("M(G) is nontrivial", !inv.is_empty(), || "M(G) = 1".into()),
        bookkeeping_check(&report),
    ])
}

pub(crate) fn table(g: &PcPresentation, expected: &Expected, opts: &Options) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let p = g.prime() as u64;
    if let Some(order) = &expected.order {
        let got = g.order().to_string();
        checks.push(Check::new("order", *order == got, || format!("expected {order}, got {got}")));
    }
    let class = nilpotency_class(g);
    if let Some(c) = expected.class {
        checks.push(Check::new("class", c == class, || format!("expected {c}, got {class}")));
    }
    if let Some(m) = expected.maximal_class {
        let got = is_maximal_class(g);
        checks.push(Check::new("maximal class", m == got, || format!("expected {m}, got {got}")));
    }
    if let Some(e) = expected.exponent {
        let got = exponent(&Subgroup::whole(g), &opts.policy());
        checks.push(
            Check::new("exponent", got.value == e, || format!("expected {e}, got {}", got.value)).mark_sampled(got.sampled),
        );
    }

    let nu = NuGroup::new(g)?;
    let report = nu.schur_multiplier()?;
    let inv = report.invariants.factors().to_vec();
    if let Some(m) = &expected.multiplier {
        checks.push(
            Check::new("multiplier (nu route)", *m == inv, || format!("expected {m:?}, got {inv:?}"))
                .with_detail(format!("{inv:?}")),
        );
    }
    if g.order().to_u128().is_some_and(|o| o <= opts.bar_cap as u128) {
        let bar = multiplier(g, Method::Bar, opts)?.invariants;
        checks.push(Check::new("bar route agrees", bar == inv, || format!("bar {bar:?}, nu {inv:?}")));
    }
    checks.push(bookkeeping_check(&report));
    checks.push(Check::new("M(G) central in the exterior square", report.central, String::new));
    checks.push(Check::new("Psi maps onto [G,G]", report.psi_onto_derived, String::new));

    let grown = NuGroup::with_class_bound(g, class + 2)?;
    checks.push(Check::new("nu(G) stops growing at class c+1", grown.nu().ngens() == nu.nu().ngens(), || {
        format!("p^{} at c+1, p^{} at c+2", nu.nu().ngens(), grown.nu().ngens())
    }));

    if in_theorem_range(g) {
        let policy = opts.policy();
        let frame = maximal_class_frame_with_choice(g, 0, &policy)?;
        let (p2, _) = exponent_check_p2(&frame, &policy);
        checks.push(
            Check::new("exp P_2 = p", p2.value == p, || format!("exp P_2 = {}", p2.value)).mark_sampled(p2.sampled),
        );
        if g.ngens() as u64 == p + 1 {
            checks.push(gamma_check(&nu, p));
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_congruence_needs_k() {
        // class 3 = p, so the residue is not always trivial
        let g = crate::pcp::parse_pcp(include_str!("../../../../fixtures/sg_81_8.pcp")).unwrap();
        let list = basic_commutators(3);
        let mut r = ChaCha8Rng::seed_from_u64(3);
        let pairs = random_tuples(&g, 2, 300, &mut r);
        let nontrivial = pairs.iter().filter(|t| !power_residue(&g, &t[0], &t[1], 1).is_identity()).count();
        assert!(nontrivial > 0);
        assert!(pairs.iter().all(|t| power_congruence(&g, &list, &t[0], &t[1], 1)));
        // dropping the correction terms breaks the congruence somewhere
        let wrong = pairs.iter().any(|t| {
            let (x, y) = (&t[0], &t[1]);
            let lhs = g.power(&g.multiply(x, y), 3);
            let diff = g.multiply(&lhs, &g.inverse(&g.multiply(&g.power(x, 3), &g.power(y, 3))));
            !k_subgroup(&g, &list, (x, y), (x, y), 1).contains(&diff)
        });
        assert!(wrong);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 2), 36);
        assert_eq!(binomial(25, 12), 5_200_300);
        assert_eq!(binomial(3, 3), 1);
    }
}

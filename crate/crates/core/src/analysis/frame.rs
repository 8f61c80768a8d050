use super::{exponent, lower_central_series, section_centralizer, EnumPolicy, ExponentReport, SubgroupSeries};
use crate::error::{Error, Result};
use crate::pcp::{Element, PcPresentation};
use crate::subgroup::Subgroup;

/// The standard data attached to a p-group of maximal class of order `p^n`.
#[derive(Debug, Clone)]
pub struct MaximalClassFrame<'a> {
    pub pres: &'a PcPresentation,
    pub n: usize,
    /// `P_0 = G, P_1, P_2 = [G, G], ..., P_n = 1`.
    pub series: SubgroupSeries<'a>,
    /// `C_G(P_{n-2})`; `P_1` itself is `series.terms[1]`.
    pub centralizer_n2: Subgroup<'a>,
    /// `s_0, ..., s_{n-1}`.
    pub s: Vec<Element>,
    pub exponent_of_g: ExponentReport,
}

impl<'a> MaximalClassFrame<'a> {
    /// `P_i`, `0 <= i <= n`.
    pub fn p(&self, i: usize) -> &Subgroup<'a> {
        &self.series.terms[i]
    }

    /// Violated frame invariants, if any.
    pub fn check(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for i in 0..self.n {
            if self.p(i).len() != self.p(i + 1).len() + 1 {
                bad.push(format!("|P_{i} / P_{}| != p", i + 1));
            }
            if !self.p(i).contains(&self.s[i]) || self.p(i + 1).contains(&self.s[i]) {
                bad.push(format!("s_{i} not in P_{i} \\ P_{}", i + 1));
            }
        }
        if self.p(1).contains(&self.s[0]) || self.centralizer_n2.contains(&self.s[0]) {
            bad.push("s_0 in P_1 or C_G(P_{n-2})".into());
        }
        for i in 2..self.n {
            if self.pres.commutator(&self.s[i - 1], &self.s[0]) != self.s[i] {
                bad.push(format!("s_{i} != [s_{}, s_0]", i - 1));
            }
        }
        bad
    }
}

/// Frame with the first admissible `s_0`, `s_1` in lexicographic order.
pub fn maximal_class_frame(pres: &PcPresentation) -> Result<MaximalClassFrame<'_>> {
    maximal_class_frame_with_choice(pres, 0, &EnumPolicy::default())
}

/// Frame whose `s_0` and `s_1` are the `choice`-th admissible elements
/// (0-based) in lexicographic order of exponent vectors.
pub fn maximal_class_frame_with_choice<'a>(
    pres: &'a PcPresentation,
    choice: usize,
    policy: &EnumPolicy,
) -> Result<MaximalClassFrame<'a>> {
    let n = pres.ngens();
    let lcs = lower_central_series(pres);
    if n < 3 || lcs.terms.len() != n {
        return Err(Error::NotMaximalClass);
    }
    if n <= 3 {
        return Err(Error::NTooSmall(n));
    }
    if pres.prime() == 2 {
        return Err(Error::PEven);
    }
    let whole = &lcs.terms[0];
    let gamma = |i: usize| lcs.terms[i - 1].clone();
    let trivial = Subgroup::trivial(pres);
    let p1 = section_centralizer(whole, &gamma(2), &gamma(4));
    let c_n2 = section_centralizer(whole, &gamma(n - 2), &trivial);

    let mut terms = vec![whole.clone(), p1.clone()];
    terms.extend((2..=n).map(gamma));
    let labels = (0..=n).map(|i| format!("P_{i}")).collect();
    let series = SubgroupSeries { terms, labels };

    let size = pres.order().to_u128().ok_or(Error::Overflow("group order"))? as u64;
    let pick = |ok: &dyn Fn(&Element) -> bool| {
        (1..size).map(|i| pres.element_from_index(i)).filter(|g| ok(g)).nth(choice)
    };
    let s0 = pick(&|g| !p1.contains(g) && !c_n2.contains(g)).ok_or(Error::NotMaximalClass)?;
    let p2 = &series.terms[2];
    let s1 = pick(&|g| p1.contains(g) && !p2.contains(g)).ok_or(Error::NotMaximalClass)?;
    let mut s = vec![s0, s1];
    for i in 2..n {
        let next = pres.commutator(&s[i - 1], &s[0]);
        s.push(next);
    }
    let exponent_of_g = exponent(whole, policy);
    Ok(MaximalClassFrame { pres, n, series, centralizer_n2: c_n2, s, exponent_of_g })
}

/// `(exp P_2(G), exp G)`.
pub fn exponent_check_p2(frame: &MaximalClassFrame<'_>, policy: &EnumPolicy) -> (ExponentReport, ExponentReport) {
    (exponent(frame.p(2), policy), frame.exponent_of_g.clone())
}

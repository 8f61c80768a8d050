use crate::pcp::{Element, PcPresentation};

/// A basic commutator on two letters `a < b`, as an index tree into the
/// list returned by [`basic_commutators`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicCommutator {
    /// `None` for the letters themselves.
    pub parts: Option<(usize, usize)>,
    pub weight: usize,
    /// Occurrences of `b`.
    pub weight_b: usize,
}

/// Hall's basic commutators on `a < b` up to `max_weight`, ordered by
/// weight: `[c_i, c_j]` is basic when `c_i > c_j` are basic and, if
/// `c_i = [c_k, c_l]`, also `c_l <= c_j`.
pub fn basic_commutators(max_weight: usize) -> Vec<BasicCommutator> {
    let mut out = vec![
        BasicCommutator { parts: None, weight: 1, weight_b: 0 },
        BasicCommutator { parts: None, weight: 1, weight_b: 1 },
    ];
    for w in 2..=max_weight {
        let before = out.len();
        for i in 0..before {
            for j in 0..i {
                let (ci, cj) = (out[i], out[j]);
                if ci.weight + cj.weight != w {
                    continue;
                }
                if let Some((_, l)) = ci.parts {
                    if l > j {
                        continue;
                    }
                }
                out.push(BasicCommutator { parts: Some((i, j)), weight: w, weight_b: ci.weight_b + cj.weight_b });
            }
        }
    }
    out
}

/// Values of the basic commutators at `a`, `b` in `g`.
pub(crate) fn evaluate(g: &PcPresentation, list: &[BasicCommutator], a: &Element, b: &Element) -> Vec<Element> {
    let mut vals: Vec<Element> = Vec::with_capacity(list.len());
    for (k, c) in list.iter().enumerate() {
        let v = match c.parts {
            None if k == 0 => a.clone(),
            None => b.clone(),
            Some((i, j)) => g.commutator(&vals[i], &vals[j]),
        };
        vals.push(v);
    }
    vals
}

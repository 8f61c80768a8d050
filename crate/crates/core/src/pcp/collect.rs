//! Collection from the left with an explicit work stack.
//!
//! To multiply a normal word `u g_1^{e_1} ... g_n^{e_n}` by `g_i`, split it as
//! `u' * v` with `v` the part above `g_i`; then `u' v g_i = u' g_i v^{g_i}`
//! and `v^{g_i}` is the product of the precomputed conjugates
//! `g_k^{g_i} = g_k [g_k, g_i]`, pushed onto the stack and collected in turn.

use super::presentation::PcPresentation;

/// Observer of the relations applied during collection. The nilpotent
/// quotient uses it to accumulate central tails; plain collection uses `()`.
pub trait RelationSink {
    /// `g_i^p` was replaced by its right side.
    fn power(&mut self, i: usize);
    /// `g_j^{g_i}` was replaced by `g_j [g_j, g_i]` `count` times (`j > i`).
    fn conjugate(&mut self, j: usize, i: usize, count: u32);
    /// Whether `[g_j, g_i]` carries extra data even when its right side is
    /// empty, so that the pair must not be treated as commuting.
    fn has_tail(&self, j: usize, i: usize) -> bool;
}

impl RelationSink for () {
    #[inline]
    fn power(&mut self, _: usize) {}
    #[inline]
    fn conjugate(&mut self, _: usize, _: usize, _: u32) {}
    #[inline]
    fn has_tail(&self, _: usize, _: usize) -> bool {
        false
    }
}

struct Frame<'a> {
    word: &'a [(usize, u32)],
    pos: usize,
    reps: u32,
}

impl PcPresentation {
    /// Multiplies the normal form `exps` in place by the positive word
    /// `word` (exponents in `[1, p)`).
    pub fn collect_into<S: RelationSink>(&self, exps: &mut [u32], word: &[(usize, u32)], sink: &mut S) {
        let p = self.prime();
        let n = self.ngens();
        let mut stack: Vec<Frame<'_>> = Vec::with_capacity(16);
        if !word.is_empty() {
            stack.push(Frame { word, pos: 0, reps: 1 });
        }
        while let Some(top) = stack.last_mut() {
            if top.pos == top.word.len() {
                top.reps -= 1;
                if top.reps == 0 {
                    stack.pop();
                } else {
                    top.pos = 0;
                }
                continue;
            }
            let (g, e) = top.word[top.pos];
            top.pos += 1;

            // Fast path: nothing above g, so g^e lands in place.
            if exps[g + 1..].iter().all(|&x| x == 0) {
                self.add_in_place(exps, g, e, sink);
                continue;
            }
            // Fast path: everything above g commutes with g and no power
            // relation fires.
            if exps[g] + e < p
                && (g + 1..n).all(|k| exps[k] == 0 || (self.commutes(k, g) && !sink.has_tail(k, g)))
            {
                exps[g] += e;
                continue;
            }
            if e > 1 {
                stack.push(Frame { word: &self.gen_words[g], pos: 0, reps: e - 1 });
            }
            // Move one g past the suffix: zero the suffix, bump g, then
            // push the conjugated suffix (leftmost generator on top).
            let first_frame = stack.len();
            for k in g + 1..n {
                let ek = exps[k];
                if ek != 0 {
                    exps[k] = 0;
                    sink.conjugate(k, g, ek);
                    stack.push(Frame { word: &self.conjugates[k][g], pos: 0, reps: ek });
                }
            }
            stack[first_frame..].reverse();
            self.add_in_place(exps, g, 1, sink);
        }
    }

    /// `exps * g^e` assuming every exponent above `g` is zero.
    #[inline]
    fn add_in_place<S: RelationSink>(&self, exps: &mut [u32], g: usize, e: u32, sink: &mut S) {
        let p = self.prime();
        let total = exps[g] + e;
        if total < p {
            exps[g] = total;
        } else {
            exps[g] = total - p;
            sink.power(g);
            for &(k, x) in self.power_rhs(g) {
                exps[k] = x;
            }
        }
    }
}

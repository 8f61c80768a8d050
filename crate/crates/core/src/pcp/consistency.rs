use std::fmt;

use super::presentation::{Element, PcPresentation};

/// One associativity test word; both bracketings must collect to the same
/// normal form in a consistent presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestWord {
    /// `g_k (g_j g_i)` vs `(g_k g_j) g_i`, `k > j > i`.
    Overlap { k: usize, j: usize, i: usize },
    /// `(g_j^{p-1} g_j) g_i` vs `g_j^{p-1} (g_j g_i)`, `j > i`.
    PowerLeft { j: usize, i: usize },
    /// `g_j (g_i^{p-1} g_i)` vs `(g_j g_i) g_i^{p-1}`, `j > i`.
    PowerRight { j: usize, i: usize },
    /// `(g_i^{p-1} g_i) g_i` vs `g_i (g_i^{p-1} g_i)`.
    PowerSelf { i: usize },
}

impl fmt::Display for TestWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestWord::Overlap { k, j, i } => write!(f, "g{} g{} g{}", k + 1, j + 1, i + 1),
            TestWord::PowerLeft { j, i } => write!(f, "g{}^p g{}", j + 1, i + 1),
            TestWord::PowerRight { j, i } => write!(f, "g{} g{}^p", j + 1, i + 1),
            TestWord::PowerSelf { i } => write!(f, "g{}^(p+1)", i + 1),
        }
    }
}

/// The complete overlap family for a triangular presentation on `n`
/// generators.
pub(crate) fn test_words(n: usize) -> Vec<TestWord> {
    let mut out = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                out.push(TestWord::Overlap { k, j, i });
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            out.push(TestWord::PowerLeft { j, i });
            out.push(TestWord::PowerRight { j, i });
        }
    }
    for i in 0..n {
        out.push(TestWord::PowerSelf { i });
    }
    out
}

/// Group arithmetic needed to evaluate test words.
pub(crate) trait TestArith {
    type E: Clone;
    /// `g_i^k` for `1 <= k < p` (no relation fires).
    fn gen_pow(&self, i: usize, k: u32) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

impl TestWord {
    pub(crate) fn evaluate<A: TestArith>(&self, a: &A, p: u32) -> (A::E, A::E) {
        let g = |i| a.gen_pow(i, 1);
        match *self {
            TestWord::Overlap { k, j, i } => {
                let left = a.mul(&g(k), &a.mul(&g(j), &g(i)));
                let right = a.mul(&a.mul(&g(k), &g(j)), &g(i));
                (left, right)
            }
            TestWord::PowerLeft { j, i } => {
                let top = a.gen_pow(j, p - 1);
                let left = a.mul(&a.mul(&top, &g(j)), &g(i));
                let right = a.mul(&top, &a.mul(&g(j), &g(i)));
                (left, right)
            }
            TestWord::PowerRight { j, i } => {
                let top = a.gen_pow(i, p - 1);
                let left = a.mul(&g(j), &a.mul(&top, &g(i)));
                let right = a.mul(&a.mul(&g(j), &g(i)), &top);
                (left, right)
            }
            TestWord::PowerSelf { i } => {
                let top = a.gen_pow(i, p - 1);
                let left = a.mul(&a.mul(&top, &g(i)), &g(i));
                let right = a.mul(&g(i), &a.mul(&top, &g(i)));
                (left, right)
            }
        }
    }
}

struct Plain<'a>(&'a PcPresentation);

impl TestArith for Plain<'_> {
    type E = Element;
    fn gen_pow(&self, i: usize, k: u32) -> Element {
        let mut e = self.0.identity();
        e.0[i] = k;
        e
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.0.multiply(a, b)
    }
}

/// A failed consistency test: the two bracketings of `test` collect to
/// different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub test: String,
    pub left: Element,
    pub right: Element,
}

impl PcPresentation {
    /// Evaluates every test word; an empty report means the presentation
    /// defines a group of order `p^n`.
    pub fn check_consistency(&self) -> Vec<Violation> {
        let arith = Plain(self);
        test_words(self.ngens())
            .into_iter()
            .filter_map(|t| {
                let (left, right) = t.evaluate(&arith, self.prime());
                (left != right).then(|| Violation { test: t.to_string(), left, right })
            })
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.check_consistency().is_empty()
    }
}

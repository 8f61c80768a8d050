//! Finite p-groups given by refined power-commutator presentations.
//!
//! Every generator has relative order `p`, so an element is an exponent
//! vector with entries in `[0, p)`. Products are computed by collection from
//! the left (see [`collect`]).

mod collect;
mod consistency;
mod parse;
mod presentation;

pub use collect::RelationSink;
pub use consistency::Violation;
pub use parse::parse_pcp;
pub use presentation::{Element, GroupOrder, Letter, NormalWord, PcPresentation, Word};

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) use consistency::{test_words, TestArith};

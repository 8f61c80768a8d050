use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("not maximal class")]
    NotMaximalClass,

    #[error("n too small: maximal-class analysis needs n >= 4, got n = {0}")]
    NTooSmall(usize),

    #[error("p even: maximal-class analysis needs an odd prime")]
    PEven,

    #[error("not abelian")]
    NotAbelian,

    #[error("infinite section at class {class}: the presentation has a free abelian section of rank {rank}")]
    InfiniteSection { class: usize, rank: usize },

    #[error("section at class {class} has torsion {order} that is not a power of p = {prime}")]
    NonPTorsion { class: usize, order: String, prime: u32 },

    #[error("inconsistent tails system: {0}")]
    InconsistentTails(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("cap exceeded: {what} is {actual}, cap is {cap}")]
    CapExceeded { what: &'static str, actual: String, cap: String },

    #[error("multiplication table fails the {0} law")]
    TableLaw(&'static str),

    #[error("psi not a homomorphism: {0}")]
    PsiNotHomomorphism(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("kappa generators insufficient: [g, g^phi] not in kappa for g = {witness}")]
    KappaInsufficient { witness: String },

    #[error("corpus integrity failure: {0}")]
    Corpus(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

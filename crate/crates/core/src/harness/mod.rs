//! Fixture corpus, verification suites and machine-readable reports.
//!
//! Reports are deterministic for a given group and seed, apart from the
//! `elapsed_ms` fields.

mod basic;
pub mod corpus;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::{is_maximal_class, nilpotency_class, EnumPolicy};
use crate::bar::{h2_bar, table_from_pcp, DEFAULT_BAR_CAP, DEFAULT_TABLE_CAP};
use crate::error::{Error, Result};
use crate::pcp::PcPresentation;
use crate::tensor::{MultiplierReport, NuGroup};

pub use basic::{basic_commutators, BasicCommutator};
pub use corpus::{load_corpus, load_fixture, Expected, Fixture};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub seed: u64,
    /// Random tuples per sampled identity.
    pub samples: usize,
    /// Random `g` for the `kappa` certification.
    pub kappa_samples: usize,
    pub max_enum: u64,
    pub bar_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, samples: 10_000, kappa_samples: 1_000, max_enum: 1_000_000, bar_cap: DEFAULT_BAR_CAP }
    }
}

impl Options {
    pub fn policy(&self) -> EnumPolicy {
        EnumPolicy { max_enum: self.max_enum, samples: self.samples, seed: self.seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Passed on random samples rather than exhaustively.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, witness: (!ok).then(witness), detail: None }
    }

    /// A check over random samples: `failure` is the first counterexample.
    pub fn sampled(name: impl Into<String>, failure: Option<String>) -> Self {
        let status = if failure.is_some() { Status::Fail } else { Status::Sampled };
        Check { name: name.into(), status, witness: failure, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Downgrades a pass to `sampled`.
    pub fn mark_sampled(mut self, sampled: bool) -> Self {
        if sampled && self.status == Status::Pass {
            self.status = Status::Sampled;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Collection,
    Theorem1,
    Theorem2,
    Table,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Lemmas, Suite::Collection, Suite::Theorem1, Suite::Theorem2, Suite::Table];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Collection => "collection",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Table => "table",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite `{s}` (lemmas, collection, theorem1, theorem2, table)")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub group: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Nu,
    Bar,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu" => Ok(Method::Nu),
            "bar" => Ok(Method::Bar),
            _ => Err(Error::Input(format!("unknown method `{s}` (nu, bar)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierSummary {
    pub invariants: Vec<u64>,
    pub elementary_abelian: bool,
    pub method: Method,
}

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub group: String,
    pub order: String,
    pub class: usize,
    pub maximal_class: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<MultiplierSummary>,
    pub suites: Vec<VerificationReport>,
}

impl GroupReport {
    pub fn new(name: &str, pres: &PcPresentation) -> Self {
        GroupReport {
            group: name.to_string(),
            order: pres.order().to_string(),
            class: nilpotency_class(pres),
            maximal_class: is_maximal_class(pres),
            multiplier: None,
            suites: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(VerificationReport::passed)
    }
}

/// `M(G)` by the chosen route.
pub fn multiplier(pres: &PcPresentation, method: Method, opts: &Options) -> Result<MultiplierSummary> {
    let invariants = match method {
        Method::Nu => NuGroup::new(pres)?.schur_multiplier()?.invariants,
        Method::Bar => h2_bar(&table_from_pcp(pres, DEFAULT_TABLE_CAP)?, opts.bar_cap)?,
    };
    let p = pres.prime() as u64;
    Ok(MultiplierSummary {
        elementary_abelian: invariants.is_elementary_abelian(p),
        invariants: invariants.0,
        method,
    })
}

/// Runs one suite. `expected` feeds the `table` suite.
pub fn run_suite(
    suite: Suite,
    name: &str,
    pres: &PcPresentation,
    expected: &Expected,
    opts: &Options,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let checks = match suite {
        Suite::Collection => suites::collection(pres, opts),
        Suite::Lemmas => suites::lemmas(&NuGroup::new(pres)?, opts),
        Suite::Theorem1 => suites::theorem1(&NuGroup::new(pres)?, opts)?,
        Suite::Theorem2 => suites::theorem2(&NuGroup::new(pres)?)?,
        Suite::Table => suites::table(pres, expected, opts)?,
    };
    Ok(VerificationReport {
        suite,
        group: name.to_string(),
        seed: opts.seed,
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Whether the maximal-class suites apply: `p` odd, maximal class,
/// `4 <= n <= p + 1`.
pub fn in_theorem_range(pres: &PcPresentation) -> bool {
    let (p, n) = (pres.prime() as usize, pres.ngens());
    p != 2 && (4..=p + 1).contains(&n) && is_maximal_class(pres)
}

pub(crate) fn bookkeeping_check(r: &MultiplierReport) -> Check {
    Check::new("order bookkeeping |[G,G^phi]| = |kappa| |M| |[G,G]|", r.bookkeeping_holds(), || {
        format!(
            "p^{} vs p^{} * p^{} * p^{}",
            r.tensor_square, r.kappa, r.multiplier, r.derived
        )
    })
}

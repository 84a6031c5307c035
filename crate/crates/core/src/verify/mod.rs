//! Seeded identity checking: every itemized lift property becomes a clause
//! evaluated on random corpora, and each closed-form proposition is compared
//! against the solver's definitional lift.
//!
//! Report format, one clause per line:
//!
//! ```text
//! # suite=functions m=1 k=2 seed=7 samples=25 corpus=t-free
//! F05  functions:ii   PASS      25/25  (f.g)^{c^r} = sum_j C(r,j) f^{c^{r-j}v^j}.g^{c^j v^{r-j}}
//! F08  functions:iii  CONFLICT  1/25   (df/dt)^{v^r} = df^{c^r}/dt | f = t*z0_1, r = 1: z0_1 vs z0_1 + z1_1
//! # summary: 10 PASS, 0 FAIL, 2 CONFLICT
//! ```

mod compare;
mod gen;
mod suites;

use std::fmt;
use std::str::FromStr;

pub use compare::{compare_proposition, CompareLine, CompareReport, Proposition};
pub use gen::{Draw, FieldGen, COEFF_BOUND};
pub use suites::run_suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Functions,
    Vectors,
    Oneforms,
    Tensors,
    Structures,
    Brackets,
    Frames,
    All,
}

impl SuiteId {
    pub const EACH: [SuiteId; 7] = [
        SuiteId::Functions,
        SuiteId::Vectors,
        SuiteId::Oneforms,
        SuiteId::Tensors,
        SuiteId::Structures,
        SuiteId::Brackets,
        SuiteId::Frames,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Functions => "functions",
            SuiteId::Vectors => "vectors",
            SuiteId::Oneforms => "oneforms",
            SuiteId::Tensors => "tensors",
            SuiteId::Structures => "structures",
            SuiteId::Brackets => "brackets",
            SuiteId::Frames => "frames",
            SuiteId::All => "all",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::EACH
            .iter()
            .chain([SuiteId::All].iter())
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A failure the artifact documents as a conflict inside the source
    /// text, not a defect of the implementation.
    Conflict,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Conflict => "CONFLICT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseResult {
    pub id: String,
    pub locus: String,
    pub statement: String,
    pub status: Status,
    pub passed: usize,
    pub samples: usize,
    /// First counterexample: inputs and both sides in canonical text.
    pub witness: Option<String>,
}

impl fmt::Display for ClauseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let count = format!("{}/{}", self.passed, self.samples);
        write!(
            f,
            "{:<4} {:<20} {:<8}  {:<6} {}",
            self.id, self.locus, self.status, count, self.statement
        )?;
        if let Some(w) = &self.witness {
            write!(f, " | {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub header: String,
    pub results: Vec<ClauseResult>,
}

impl CheckReport {
    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn has_conflicts(&self) -> bool {
        self.count(Status::Conflict) > 0
    }

    pub fn result(&self, id: &str) -> Option<&ClauseResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.header)?;
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        writeln!(
            f,
            "# summary: {} PASS, {} FAIL, {} CONFLICT",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Conflict)
        )
    }
}

//! Three-valued answers with replayable certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::catalog::CatalogEntry;
use crate::diagram::{SlopeTemplate, TrisectionDiagram, TrisectionParams};
use crate::gprc_ac::{AcMove, BalancedPresentation};
use crate::moves::standardize::DecompositionStep;
use crate::surface_core::homology::HomologyClass;
use crate::surface_core::matrix::IntegerMatrix;
use crate::surface_core::tietze::{GroupPresentation, TietzeStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VerdictStatus {
    Verified,
    Refuted,
    Unknown,
}

impl VerdictStatus {
    /// Exit code used by the command line.
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictStatus::Verified => 0,
            VerdictStatus::Refuted => 1,
            VerdictStatus::Unknown => 2,
        }
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Verified => "Verified",
            VerdictStatus::Refuted => "Refuted",
            VerdictStatus::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub reason: String,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn verified(reason: impl Into<String>, witness: Witness) -> Self {
        Verdict {
            status: VerdictStatus::Verified,
            reason: reason.into(),
            witness: Some(witness),
        }
    }

    pub fn refuted(reason: impl Into<String>, witness: Witness) -> Self {
        Verdict {
            status: VerdictStatus::Refuted,
            reason: reason.into(),
            witness: Some(witness),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            status: VerdictStatus::Unknown,
            reason: reason.into(),
            witness: None,
        }
    }

    /// Unknown, but carrying partial data (e.g. the diagram a search got stuck on).
    pub fn unknown_with(reason: impl Into<String>, witness: Witness) -> Self {
        Verdict {
            status: VerdictStatus::Unknown,
            reason: reason.into(),
            witness: Some(witness),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == VerdictStatus::Verified
    }

    pub fn is_refuted(&self) -> bool {
        self.status == VerdictStatus::Refuted
    }

    pub fn is_unknown(&self) -> bool {
        self.status == VerdictStatus::Unknown
    }
}

/// What a cokernel computation is expected to show.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomologyClaim {
    /// Free abelian of exactly this rank.
    FreeOfRank(usize),
    /// Free abelian of any rank.
    Free,
}

/// Structured evidence behind a verdict. Every variant can be re-checked by
/// [`crate::replay`] without repeating the search that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    /// The classes themselves; the Lagrangian conditions are recomputed.
    Lagrangian { genus: usize, classes: Vec<HomologyClass> },
    /// Cokernel of `matrix` against a claim about its shape.
    Homology {
        matrix: IntegerMatrix,
        claim: HomologyClaim,
    },
    /// A sequence of Tietze moves reducing `start` to a free group of rank `rank`.
    Tietze {
        start: GroupPresentation,
        steps: Vec<TietzeStep>,
        rank: usize,
    },
    /// `β` re-indexed by `matching` shows the standard intersection pattern.
    StandardPairing {
        alpha: Vec<SlopeTemplate>,
        beta: Vec<SlopeTemplate>,
        matching: Vec<usize>,
    },
    /// Exact templates for which no pairing is standard.
    NoStandardPairing {
        alpha: Vec<SlopeTemplate>,
        beta: Vec<SlopeTemplate>,
    },
    /// One free-group witness per boundary pair, in parameter order.
    Params {
        diagram: Box<TrisectionDiagram>,
        params: TrisectionParams,
        evidence: Vec<Witness>,
    },
    /// Conjunction: every part must replay to `Verified`.
    All(Vec<Witness>),
    /// Parameters violating the classification constraints.
    ParamConstraint { params: TrisectionParams },
    /// Steps splitting `input` into the listed genus-one summands.
    Decomposition {
        input: Box<TrisectionDiagram>,
        steps: Vec<DecompositionStep>,
        summands: Vec<CatalogEntry>,
    },
    /// The piece a search could not simplify further.
    Stuck { diagram: Box<TrisectionDiagram> },
    /// Andrews–Curtis moves taking `start` to the trivial presentation.
    AcPath {
        start: BalancedPresentation,
        moves: Vec<AcMove>,
    },
    /// The abelianization determinant is not `±1`, so no AC path exists.
    AbelianObstruction {
        presentation: BalancedPresentation,
        det: num_bigint::BigInt,
    },
    /// Link templates against `β`; `matching` gives the dual `β` curve of each
    /// component, or `None` when no assignment exists.
    Primitive {
        link: Vec<SlopeTemplate>,
        beta: Vec<SlopeTemplate>,
        matching: Option<Vec<usize>>,
    },
    /// A linking matrix that must vanish identically.
    ZeroMatrix { matrix: IntegerMatrix },
}

//! The six genus-one trisection diagrams: three balanced, three unbalanced.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{SlopeTemplate, System, TrisectionDiagram, TrisectionParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CatalogEntry {
    /// `α = (1,0), β = (0,1), γ = (1,1)`.
    Cp2,
    /// `α = (1,0), β = (0,1), γ = (1,-1)`.
    Cp2Bar,
    /// All three curves equal.
    S1xS3,
    /// `α = β`, `γ` dual: the 1-stabilization summand of `S⁴`.
    Stab1,
    /// `β = γ`, `α` dual.
    Stab2,
    /// `γ = α`, `β` dual.
    Stab3,
}

impl CatalogEntry {
    pub const ALL: [CatalogEntry; 6] = [
        CatalogEntry::Cp2,
        CatalogEntry::Cp2Bar,
        CatalogEntry::S1xS3,
        CatalogEntry::Stab1,
        CatalogEntry::Stab2,
        CatalogEntry::Stab3,
    ];

    /// Balanced entries, left to right.
    pub const FIGURE1: [CatalogEntry; 3] = [CatalogEntry::Cp2, CatalogEntry::Cp2Bar, CatalogEntry::S1xS3];

    /// Unbalanced entries, in stabilization-index order.
    pub const FIGURE2: [CatalogEntry; 3] = [CatalogEntry::Stab1, CatalogEntry::Stab2, CatalogEntry::Stab3];

    pub fn name(self) -> &'static str {
        match self {
            CatalogEntry::Cp2 => "CP²",
            CatalogEntry::Cp2Bar => "-CP²",
            CatalogEntry::S1xS3 => "S¹×S³",
            CatalogEntry::Stab1 => "S⁴ (1-stabilization)",
            CatalogEntry::Stab2 => "S⁴ (2-stabilization)",
            CatalogEntry::Stab3 => "S⁴ (3-stabilization)",
        }
    }

    /// Short identifier used on the command line and in file names.
    pub fn slug(self) -> &'static str {
        match self {
            CatalogEntry::Cp2 => "cp2",
            CatalogEntry::Cp2Bar => "cp2bar",
            CatalogEntry::S1xS3 => "s1xs3",
            CatalogEntry::Stab1 => "stab1",
            CatalogEntry::Stab2 => "stab2",
            CatalogEntry::Stab3 => "stab3",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        CatalogEntry::ALL
            .into_iter()
            .find(|e| e.name() == name || e.slug() == name)
    }

    pub fn params(self) -> TrisectionParams {
        let (k1, k2, k3) = match self {
            CatalogEntry::Cp2 | CatalogEntry::Cp2Bar => (0, 0, 0),
            CatalogEntry::S1xS3 => (1, 1, 1),
            CatalogEntry::Stab1 => (1, 0, 0),
            CatalogEntry::Stab2 => (0, 1, 0),
            CatalogEntry::Stab3 => (0, 0, 1),
        };
        TrisectionParams { g: 1, k1, k2, k3 }
    }

    /// Slopes of `α, β, γ` on the single handle.
    pub fn slopes(self) -> [(i64, i64); 3] {
        match self {
            CatalogEntry::Cp2 => [(1, 0), (0, 1), (1, 1)],
            CatalogEntry::Cp2Bar => [(1, 0), (0, 1), (1, -1)],
            CatalogEntry::S1xS3 => [(1, 0), (1, 0), (1, 0)],
            CatalogEntry::Stab1 => [(1, 0), (1, 0), (0, 1)],
            CatalogEntry::Stab2 => [(1, 0), (0, 1), (0, 1)],
            CatalogEntry::Stab3 => [(1, 0), (0, 1), (1, 0)],
        }
    }

    /// Stabilization index for the unbalanced entries.
    pub fn stabilization_index(self) -> Option<usize> {
        match self {
            CatalogEntry::Stab1 => Some(1),
            CatalogEntry::Stab2 => Some(2),
            CatalogEntry::Stab3 => Some(3),
            _ => None,
        }
    }

    pub fn stabilization(i: usize) -> Option<Self> {
        CatalogEntry::FIGURE2.get(i.checked_sub(1)?).copied()
    }

    /// A summand of `S⁴` that vanishes from connected-sum names.
    pub fn is_s4(self) -> bool {
        self.stabilization_index().is_some()
    }

    pub fn diagram(self) -> TrisectionDiagram {
        let [a, b, c] = self.slopes();
        TrisectionDiagram::from_slopes(1, &[(1, a.0, a.1)], &[(1, b.0, b.1)], &[(1, c.0, c.1)])
            .and_then(|t| t.with_declared_params(Some(self.params())))
            .expect("catalog slopes are valid")
    }

    /// Identifies a genus-one template diagram from its pairwise intersection
    /// numbers; `None` if the pattern is not one of the six.
    pub fn classify(t: &TrisectionDiagram) -> Option<Self> {
        if t.genus() != 1 {
            return None;
        }
        let s = |sys: System| -> Option<SlopeTemplate> { t.system(sys).curves()[0].template().copied() };
        let (a, b, c) = (s(System::Alpha)?, s(System::Beta)?, s(System::Gamma)?);
        let (ab, bc, ca) = (a.pairing(&b), b.pairing(&c), c.pairing(&a));
        match (ab.abs(), bc.abs(), ca.abs()) {
            (1, 1, 1) if ab * bc * ca > 0 => Some(CatalogEntry::Cp2),
            (1, 1, 1) => Some(CatalogEntry::Cp2Bar),
            (0, 0, 0) => Some(CatalogEntry::S1xS3),
            (0, 1, 1) => Some(CatalogEntry::Stab1),
            (1, 0, 1) => Some(CatalogEntry::Stab2),
            (1, 1, 0) => Some(CatalogEntry::Stab3),
            _ => None,
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Connected-sum name of a multiset of summands, e.g. `#²(S¹×S³) # CP²`.
/// `S⁴` summands are dropped; the empty sum is `S⁴`.
pub fn manifold_name(summands: &[CatalogEntry]) -> String {
    let count = |e: CatalogEntry| summands.iter().filter(|&&s| s == e).count();
    let mut parts = Vec::new();
    for (entry, label) in [
        (CatalogEntry::S1xS3, "(S¹×S³)"),
        (CatalogEntry::Cp2, "CP²"),
        (CatalogEntry::Cp2Bar, "-CP²"),
    ] {
        match count(entry) {
            0 => {}
            1 => parts.push(entry.name().to_string()),
            n => parts.push(format!("#{}{label}", superscript(n))),
        }
    }
    if parts.is_empty() {
        "S⁴".to_string()
    } else {
        parts.join(" # ")
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

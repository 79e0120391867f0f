//! Connected sum and stabilization.

use crate::diagram::catalog::CatalogEntry;
use crate::diagram::{CutSystem, HeegaardDiagram, SlopeTemplate, TrisectionDiagram};
use crate::error::{Error, Result};

/// `T1 # T2`: the handles of `T2` are numbered after those of `T1`.
pub fn connected_sum(t1: &TrisectionDiagram, t2: &TrisectionDiagram) -> TrisectionDiagram {
    let params = match (t1.declared_params(), t2.declared_params()) {
        (Some(a), Some(b)) => Some(a.plus(&b)),
        _ => None,
    };
    TrisectionDiagram::new(
        t1.alpha().juxtaposed(t2.alpha()),
        t1.beta().juxtaposed(t2.beta()),
        t1.gamma().juxtaposed(t2.gamma()),
        params,
    )
    .expect("juxtaposed systems share a genus")
}

/// Connected sum with the `i`-th unbalanced genus-one diagram of `S⁴`.
pub fn i_stabilize(t: &TrisectionDiagram, i: usize) -> Result<TrisectionDiagram> {
    let entry = CatalogEntry::stabilization(i)
        .ok_or_else(|| Error::InvalidMove(format!("stabilization index {i} is not 1, 2 or 3")))?;
    Ok(connected_sum(t, &entry.diagram()))
}

/// The balanced stabilization: 1-, 2- and 3-stabilization in turn.
pub fn balanced_stabilize(t: &TrisectionDiagram) -> TrisectionDiagram {
    (1..=3).fold(t.clone(), |acc, i| i_stabilize(&acc, i).expect("valid index"))
}

/// Adds a handle with `α = @(1,0)`, `β = @(0,1)`.
pub fn heegaard_stabilize(d: &HeegaardDiagram) -> HeegaardDiagram {
    let extra = |p, q| CutSystem::from_templates(1, &[SlopeTemplate::new(1, p, q).expect("primitive")]).expect("valid");
    HeegaardDiagram::new(d.alpha.juxtaposed(&extra(1, 0)), d.beta.juxtaposed(&extra(0, 1))).expect("same genus")
}

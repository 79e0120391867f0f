//! Moves on diagrams: handleslides, connected sum, stabilization and the
//! certificates that undo them.

pub mod certificates;
pub mod slide;
pub mod standardize;
pub mod sum;

pub use certificates::{
    destabilize, find_reducing_certificate, find_stabilization_certificate, split, stabilization_certificate_at,
    ReducingCertificate, StabilizationCertificate, StabilizationEvidence,
};
pub use slide::{apply_slide, handleslide, random_slides, Sign, Slide};
pub use standardize::{
    check_classified_range, check_param_constraints, decompose, standardize, Decomposition, DecompositionStep,
    Standardization, StandardizeConfig,
};
pub use sum::{balanced_stabilize, connected_sum, heegaard_stabilize, i_stabilize};

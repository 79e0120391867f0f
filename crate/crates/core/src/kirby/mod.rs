//! Heegaard–Kirby diagrams and the linking-matrix calculus of framed links.

pub mod hk;
pub mod linking;

pub use hk::{
    find_primitive_pairs, hk_to_trisection, max_primitive_system, trisection_to_hk, validate_hk, FramedComponent,
    Framing, HeegaardKirbyDiagram, PrimitivePairs,
};
pub use linking::{
    gprc_necessary_check, matrix_handleslide, stabilize_link, surgery_h1, LinkStabilization, LinkingMatrix,
};

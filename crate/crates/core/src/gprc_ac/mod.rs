//! Balanced presentations, Andrews–Curtis moves and a bounded trivialization search.

pub mod presentation;
pub mod search;

pub use presentation::{
    ab_det, ak_presentation, apply_ac_move, canonical_key, inverse_moves, AcMove, BalancedPresentation,
};
pub use search::{
    ac_search, replay_path, AcSearchConfig, AcSearchOutcome, AcSearchResult, AcSearchStats, ExhaustReason,
};

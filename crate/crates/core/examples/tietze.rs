//! Tietze simplification of a group presentation, with the replayable steps.

use trisect::replay::check_verdict;
use trisect::surface_core::word::parse_path;
use trisect::surface_core::{tietze_simplify, GroupPresentation, TietzeConfig};

fn main() -> trisect::Result<()> {
    // ⟨x1, y1, x2 | x1 y1 X1, y1 x2⟩ is free of rank one
    let relators = vec![parse_path(2, "x1 y1 X1")?, parse_path(2, "y1 x2")?];
    let p = GroupPresentation::new(3, relators)?;
    let out = tietze_simplify(&p, TietzeConfig::default());
    println!("{p}  ⇒  {}", out.presentation);
    println!(
        "[{}] {} after {} steps",
        out.verdict.status, out.verdict.reason, out.steps_used
    );
    check_verdict(&out.verdict)?;
    println!("witness replays");
    Ok(())
}

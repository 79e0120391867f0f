//! The bridge between trisection diagrams and Heegaard–Kirby diagrams.

use trisect::diagram::{canonical_form, CatalogEntry};
use trisect::kirby::{hk_to_trisection, max_primitive_system, trisection_to_hk, validate_hk};
use trisect::moves::connected_sum;
use trisect::surface_core::TietzeConfig;

fn main() -> trisect::Result<()> {
    let config = TietzeConfig::default();
    let t = connected_sum(&CatalogEntry::Cp2.diagram(), &CatalogEntry::Stab2.diagram());
    let picks = max_primitive_system(&t);
    println!("primitive (γ, β) pairs: {picks:?}");

    let (hk, verdict) = trisection_to_hk(&t, &picks, config)?;
    println!("{hk}[{}] {}", verdict.status, verdict.reason);
    println!("validate: {}", validate_hk(&hk, config).status);

    let (back, verdict) = hk_to_trisection(&hk, config);
    let back = back.expect("constructible");
    println!("back to a trisection [{}]:\n{back}", verdict.status);
    println!(
        "same up to isomorphism: {}",
        canonical_form(&back) == canonical_form(&t)
    );
    Ok(())
}

//! Scrambles a connected sum with random handleslides and recovers its summands.

use rand::SeedableRng;
use trisect::diagram::CatalogEntry;
use trisect::moves::{connected_sum, random_slides, standardize, StandardizeConfig};

fn main() -> trisect::Result<()> {
    let t = [CatalogEntry::S1xS3, CatalogEntry::Stab1, CatalogEntry::Cp2]
        .iter()
        .map(|e| e.diagram())
        .reduce(|a, b| connected_sum(&a, &b))
        .expect("non-empty");
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let (scrambled, slides) = random_slides(&t, 12, &mut rng);
    println!("after {} random handleslides:\n{scrambled}", slides.len());

    let s = standardize(&scrambled, &StandardizeConfig::default())?;
    println!("params {}  [{}] {}", s.params, s.verdict.status, s.verdict.reason);
    let names: Vec<_> = s.summands.iter().map(|e| e.name()).collect();
    println!("summands: {}", names.join(" # "));
    println!("manifold: {}", s.manifold_name());
    Ok(())
}

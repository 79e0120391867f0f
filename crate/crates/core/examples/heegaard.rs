//! Heegaard diagrams: homology, fundamental group and recognition of `#^k(S¹×S²)`.

use trisect::diagram::invariants::heegaard_pi1;
use trisect::diagram::{detect_k, heegaard_h1, is_standard_pair, CutSystem, HeegaardDiagram};
use trisect::moves::heegaard_stabilize;
use trisect::surface_core::TietzeConfig;

fn main() -> trisect::Result<()> {
    let config = TietzeConfig::default();

    let standard = HeegaardDiagram::standard(3, 2)?;
    let (k, verdict) = detect_k(&standard, config);
    println!("(3,2)-standard: k = {k} [{}] {}", verdict.status, verdict.reason);
    println!("  standard pairing: {}", is_standard_pair(&standard).status);

    // the lens space L(5,2): β has slope (2,5) against α = (1,0)
    let lens = HeegaardDiagram::new(
        CutSystem::from_slopes(1, &[(1, 1, 0)])?,
        CutSystem::from_slopes(1, &[(1, 2, 5)])?,
    )?;
    println!("L(5,2): H1 = {}", heegaard_h1(&lens));
    let (_, verdict) = detect_k(&lens, config);
    println!("  #^k(S¹×S²)? {} — {}", verdict.status, verdict.reason);
    println!("  π1 = {}", heegaard_pi1(&lens));

    let stabilized = heegaard_stabilize(&lens);
    println!(
        "stabilized to genus {}: H1 = {}",
        stabilized.genus(),
        heegaard_h1(&stabilized)
    );
    Ok(())
}

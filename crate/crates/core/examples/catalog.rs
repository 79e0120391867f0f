//! Prints the six genus-one diagrams with their computed parameters.

use trisect::diagram::{euler_characteristic, trisection_params, CatalogEntry};
use trisect::surface_core::TietzeConfig;

fn main() {
    for entry in CatalogEntry::ALL {
        let t = entry.diagram();
        let (params, verdict) = trisection_params(&t, TietzeConfig::default());
        println!(
            "{:<22} {params}  χ = {}  [{}]",
            entry.name(),
            euler_characteristic(&params),
            verdict.status
        );
        print!("{t}");
        println!();
    }
}

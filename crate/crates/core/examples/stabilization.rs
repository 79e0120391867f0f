//! i-stabilization, its certificate, and destabilization.

use trisect::diagram::{canonical_form, trisection_params, CatalogEntry};
use trisect::moves::{destabilize, find_stabilization_certificate, i_stabilize};
use trisect::surface_core::TietzeConfig;

fn main() -> trisect::Result<()> {
    let t = CatalogEntry::Cp2.diagram();
    for i in 1..=3 {
        let s = i_stabilize(&t, i)?;
        let (params, _) = trisection_params(&s, TietzeConfig::default());
        let cert = find_stabilization_certificate(&s).expect("the new handle is a stabilization");
        let back = destabilize(&s, &cert)?;
        println!(
            "CP² {i}-stabilized: {params}; certificate index {} on handle {}; destabilized back: {}",
            cert.index,
            cert.handle,
            canonical_form(&back) == canonical_form(&t)
        );
    }
    Ok(())
}

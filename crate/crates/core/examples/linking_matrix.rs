//! Linking-matrix calculus: surgery homology, handleslides and the GPRC necessary check.

use trisect::kirby::{
    gprc_necessary_check, matrix_handleslide, stabilize_link, surgery_h1, LinkStabilization, LinkingMatrix,
};
use trisect::moves::Sign;

fn main() -> trisect::Result<()> {
    let hopf = LinkingMatrix::from_rows(&[vec![0, 1], vec![1, 0]])?;
    let slid = matrix_handleslide(&hopf, 0, 1, Sign::Plus)?;
    print!("Hopf link:\n{hopf}after sliding 1 over 2:\n{slid}");
    println!("H1 of surgery: {} and {}", surgery_h1(&hopf), surgery_h1(&slid));

    let unlink = LinkingMatrix::zero(2);
    for m in [&unlink, &hopf] {
        let v = gprc_necessary_check(m);
        println!("gprc check: {} — {}", v.status, v.reason);
    }
    let weak = stabilize_link(&unlink, LinkStabilization::HopfPair);
    println!("with a Hopf pair: H1 = {}", surgery_h1(&weak));
    Ok(())
}

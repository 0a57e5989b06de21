//! Compute a miniversal unfolding inside the eigenspace: the deformation
//! directions transverse to the orbit, and the codimension.

use linfold::structure::{EigenspaceSpec, Kind, StructureMap};
use linfold::unfolding::miniversal_unfolding;
use linfold::Mat;

fn main() {
    let tol = 1e-9;
    // Reversible double-zero: s L s = -L with a height-2 chain at 0.
    let s = Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let l = Mat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let spec = EigenspaceSpec::new(
        vec![StructureMap::new(Kind::Automorphism, s, tol).unwrap()],
        vec![-1.0],
        tol,
    )
    .unwrap();

    let fam = miniversal_unfolding(&l, &spec).unwrap();
    println!("codimension: {}", fam.codim);
    println!("orbit tangent dimension: {}", fam.tangent_dim);
    for (i, d) in fam.directions.iter().enumerate() {
        println!("direction {}:\n{d:.4}", i + 1);
    }

    // Evaluate the family at a parameter value.
    let m = fam.evaluate(&vec![0.25; fam.codim]).unwrap();
    println!("L(0.25) =\n{m:.4}");
}

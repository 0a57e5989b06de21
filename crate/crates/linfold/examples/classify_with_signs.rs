//! Classify a Hamiltonian (infinitesimally symplectic) nilpotent block and
//! show the sign characteristic distinguishing orbits that share the same
//! Jordan type.

use linfold::normalform::{classify, orbits_equivalent};
use linfold::structure::{EigenspaceSpec, Kind, StructureMap};
use linfold::Mat;

fn spec_with(s: Mat) -> EigenspaceSpec {
    let tol = 1e-9;
    EigenspaceSpec::new(
        vec![StructureMap::new(Kind::AntiAutomorphism, s, tol).unwrap()],
        vec![-1.0],
        tol,
    )
    .unwrap()
}

fn main() {
    let j = Mat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
    // Nilpotent Hamiltonian block of height 2: L^2 = 0, J L symmetric.
    let l_plus = Mat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let l_minus = Mat::from_row_slice(2, 2, &[0.0, -1.0, 0.0, 0.0]);

    let spec = spec_with(j);
    for (name, l) in [("L+", &l_plus), ("L-", &l_minus)] {
        let rep = classify(l, &spec).unwrap();
        for lab in &rep.labels {
            println!(
                "{name}: height {}, signs {:?}, paired {}",
                lab.height, lab.signs, lab.paired
            );
        }
    }

    // Same eigenvalues, same Jordan structure, different orbits.
    let eq = orbits_equivalent(&l_plus, &l_minus, &spec).unwrap();
    println!("L+ and L- in the same orbit: {eq}");
    let eq_self = orbits_equivalent(&l_plus, &(&l_plus * 1.0), &spec).unwrap();
    println!("L+ and L+ in the same orbit: {eq_self}");
}

//! Classify a map that is simultaneously structured for two generators.
//! With p generators an orbit under the full group can split into at most
//! 2^p orbits under the connected identity component.

use linfold::normalform::classify;
use linfold::structure::{EigenspaceSpec, Kind, StructureMap};
use linfold::Mat;

fn main() {
    let tol = 1e-9;
    // Reversible with respect to a reflection and anti-symplectic with
    // respect to the standard form on R^4.
    let s1 = Mat::from_row_slice(4, 4, &[
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, -1.0, 0.0,
        0.0, 0.0, 0.0, -1.0,
    ]);
    let s2 = Mat::from_row_slice(4, 4, &[
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, -1.0, 0.0, 0.0,
    ]);
    let l = Mat::from_row_slice(4, 4, &[
        0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0,
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
    ]);
    let spec = EigenspaceSpec::new(
        vec![
            StructureMap::new(Kind::Automorphism, s1, tol).unwrap(),
            StructureMap::new(Kind::AntiAutomorphism, s2, tol).unwrap(),
        ],
        vec![-1.0, -1.0],
        tol,
    )
    .unwrap();

    let rep = classify(&l, &spec).unwrap();
    println!("orbit-splitting bound: {}", rep.max_orbit_classes);
    for lab in &rep.labels {
        println!(
            "chain at {} + {} i, height {}, joint signs {:?}",
            lab.lambda.alpha, lab.lambda.beta, lab.height, lab.signs
        );
    }
    println!("normal form =\n{:.4}", rep.normal_form_l);
}

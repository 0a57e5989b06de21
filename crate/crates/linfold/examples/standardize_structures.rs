//! Bring a scaled, non-orthogonal family of structure maps to standard form:
//! involutions become diag(I, -I), skew forms become [[0, -I], [I, 0]].

use linfold::structure::{orthogonalize_family, EigenspaceSpec, Kind, StructureMap};
use linfold::Mat;

fn main() {
    let tol = 1e-9;
    // A scaled reflection: s^2 = 9 I, eigenvalue frame tilted.
    let s = Mat::from_row_slice(2, 2, &[1.0, 4.0, 2.0, -1.0]);
    let spec = EigenspaceSpec::new(
        vec![StructureMap::new(Kind::Automorphism, s.clone(), tol).unwrap()],
        vec![-1.0],
        tol,
    )
    .unwrap();

    println!("input s =\n{s:.4}");
    let (spec_n, g) = orthogonalize_family(&spec).unwrap();
    println!("standard s =\n{:.4}", spec_n.generators[0].s);
    println!("basis change g =\n{g:.4}");

    // And an anti-automorphism given by a skewed symplectic form.
    let b = Mat::from_row_slice(4, 4, &[
        0.0, 2.0, 1.0, 0.0,
        -2.0, 0.0, 0.0, 1.0,
        -1.0, 0.0, 0.0, 3.0,
        0.0, -1.0, -3.0, 0.0,
    ]);
    let spec2 = EigenspaceSpec::new(
        vec![StructureMap::new(Kind::AntiAutomorphism, b.clone(), tol).unwrap()],
        vec![-1.0],
        tol,
    )
    .unwrap();
    let (spec2_n, _) = orthogonalize_family(&spec2).unwrap();
    println!("skew form standardized =\n{:.4}", spec2_n.generators[0].s);
}

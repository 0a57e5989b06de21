//! Test whether a map lies in the -1 eigenspace of a reversing involution,
//! and project an arbitrary map into the eigenspace.

use linfold::structure::{self, EigenspaceSpec, Kind, StructureMap};
use linfold::Mat;

fn main() {
    let tol = 1e-9;
    let s = Mat::from_row_slice(4, 4, &[
        1.0, 0.0, 0.0, 0.0,
        0.0, -1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, -1.0,
    ]);
    let spec = EigenspaceSpec::new(
        vec![StructureMap::new(Kind::Automorphism, s, tol).unwrap()],
        vec![-1.0],
        tol,
    )
    .unwrap();

    // A reversible map: anti-commutes with s.
    let l = Mat::from_row_slice(4, 4, &[
        0.0, 1.0, 0.0, 0.0,
        2.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, -1.0,
        0.0, 0.0, 1.0, 0.0,
    ]);
    let (ok, res) = structure::membership(&l, &spec).unwrap();
    println!("reversible map: member = {ok}, residual = {res:.3e}");

    // An arbitrary map is not; the averaged projection fixes that.
    let a = Mat::from_fn(4, 4, |i, j| ((i * 4 + j) as f64).sin());
    let (ok, res) = structure::membership(&a, &spec).unwrap();
    println!("generic map:    member = {ok}, residual = {res:.3e}");

    let p = structure::project(&a, &spec).unwrap();
    let (ok, res) = structure::membership(&p, &spec).unwrap();
    println!("its projection: member = {ok}, residual = {res:.3e}");
    println!(
        "eigenspace dimension = {}",
        structure::eigenspace_dim(&spec).unwrap()
    );
}

//! Split L = S + N with S semi-simple and N nilpotent, then list the
//! invariant Jordan chains per eigenvalue class.

use linfold::decomp::{invariant_blocks, jc_decompose};
use linfold::linalg::fnorm;
use linfold::Mat;

fn main() {
    let tol = 1e-9;
    // A rotation block of height 2: eigenvalues +/- i, one chain of length 2.
    let l = Mat::from_row_slice(4, 4, &[
        0.0, -1.0, 1.0, 0.0,
        1.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 0.0, -1.0,
        0.0, 0.0, 1.0, 0.0,
    ]);
    let jc = jc_decompose(&l, tol).unwrap();
    println!("S =\n{:.4}", jc.s);
    println!("N =\n{:.4}", jc.n);
    println!("height (least h with N^h = 0): {}", jc.height);
    println!("[S, N] residual: {:.3e}", jc.commutator_residual);
    println!("S + N - L residual: {:.3e}", fnorm(&(&jc.s + &jc.n - &l)));
    for c in &jc.classes {
        println!(
            "class {} + {} i, algebraic multiplicity {}",
            c.alpha, c.beta, c.algebraic_multiplicity
        );
    }

    let blocks = invariant_blocks(&l, &jc, tol).unwrap();
    for b in &blocks {
        println!(
            "chain: lambda = {} + {} i, height {}, level width {}",
            b.lambda.alpha, b.lambda.beta, b.height, b.w_dim
        );
    }
}

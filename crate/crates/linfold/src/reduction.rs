//! Reduction of an invariant block to the small space Y with reduced
//! structure map t, and the anti-diagonal standardization of the bilinear
//! form carried by an anti-automorphism.

use crate::decomp::InvariantBlock;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::structure::{Kind, StructureMap};

/// Reduced data of one block: S and the structure map t on the small space Y.
#[derive(Debug, Clone)]
pub struct ReducedForm {
    /// Columns: basis of Y in ambient coordinates.
    pub y: Mat,
    /// Matrix of S in the Y basis.
    pub s_on_y: Mat,
    /// Reduced structure map, in Y coordinates.
    pub t: Mat,
    /// Sign of t^T versus t (equals epsilon * mu^(n-1) in the anti case).
    pub t_symmetry: f64,
    pub mu: f64,
    /// omega(y,x) = epsilon * omega(x,y); +1 for automorphism reductions.
    pub epsilon: f64,
    /// The forms T_j, j = 0..n-1, in W coordinates (anti case only).
    pub t_list: Vec<Mat>,
}

/// The form tau_j(x,y) = omega(N^j x, y) on W, as the matrix (N^j W)^T s W.
pub fn form_t_j(w: &Mat, n_op: &Mat, s_struct: &Mat, j: usize) -> Mat {
    let mut njw = w.clone();
    for _ in 0..j {
        njw = n_op * njw;
    }
    njw.transpose() * s_struct * w
}

/// Rebuilds the chain basis [W, NW, ..., N^(h-1)W] from a level-0 basis.
pub fn chain_from_w(w: &Mat, n_op: &Mat, height: usize) -> Mat {
    let m = w.ncols();
    let mut basis = Mat::zeros(w.nrows(), m * height);
    let mut level = w.clone();
    for j in 0..height {
        basis.columns_mut(j * m, m).copy_from(&level);
        level = n_op * &level;
    }
    basis
}

/// Moves W so that the Gram matrix of omega(x,y) = x^T s y in the chain
/// basis has nonzero m x m blocks only on the main anti-diagonal.
///
/// Runs the n-1 corrections W_j = W_{j-1} + N^(j-1) g W_{j-1} with
/// g = -1/2 mu^(j-1) T_{n-1}^{-1} T_{n-j}, clearing tau_{n-2}, ..., tau_0.
/// Returns the ambient change of basis from the old chain to the new one and
/// the corrected W.
pub fn standardize_bilinear(
    block: &InvariantBlock,
    n_op: &Mat,
    s_struct: &Mat,
    mu: f64,
    tol: f64,
) -> Result<(Mat, Mat)> {
    let n = block.height;
    let mut w = block.level(0);
    let thr = tol * (1.0 + linalg::fnorm(s_struct));
    // T_(n-1) is invariant under the corrections; check it once.
    invert_checked(&form_t_j(&w, n_op, s_struct, n - 1), thr)?;
    let mut npow = n_op.clone(); // N^(j-1) at step j
    for j in 2..=n {
        let t_nj = form_t_j(&w, n_op, s_struct, n - j);
        let t_last = form_t_j(&w, n_op, s_struct, n - 1);
        let t_last_inv = invert_checked(&t_last, thr)?;
        let g = &t_last_inv * &t_nj * (-0.5 * mu.powi(j as i32 - 1));
        w = &w + &npow * &w * &g;
        npow = &npow * n_op;
    }
    let new_chain = chain_from_w(&w, n_op, n);
    let old_inv = block
        .chain_basis
        .clone()
        .svd(true, true)
        .pseudo_inverse(tol)
        .map_err(|e| Error::InvalidBlock(format!("chain basis not invertible: {e}")))?;
    let g_ambient = &new_chain * &old_inv;
    Ok((g_ambient, w))
}

fn invert_checked(t: &Mat, thr: f64) -> Result<Mat> {
    let svd = t.clone().svd(true, true);
    let min_sv = svd
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if min_sv <= thr {
        return Err(Error::InvalidBlock(format!(
            "T_(n-1) is singular (min singular value {min_sv:.3e}): block is mis-decomposed"
        )));
    }
    t.clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidBlock("T_(n-1) is singular".into()))
}

/// Reduces a block to its small space Y with the reduced structure map t.
///
/// Automorphism case: Y = W + sW, t = matrix of s restricted to Y.
/// Anti-automorphism case: Y = W (standardized), t given by
/// tau(x,y) = omega(x, N^(n-1) y) = <x, t y> in W coordinates.
pub fn reduce_block(
    block: &InvariantBlock,
    s_op: &Mat,
    n_op: &Mat,
    sm: &StructureMap,
    mu: f64,
    tol: f64,
) -> Result<ReducedForm> {
    let n = block.height;
    match sm.kind {
        Kind::Automorphism => {
            let w = block.level(0);
            let sw = &sm.s * &w;
            let mut span = Mat::zeros(w.nrows(), 2 * w.ncols());
            span.columns_mut(0, w.ncols()).copy_from(&w);
            span.columns_mut(w.ncols(), sw.ncols()).copy_from(&sw);
            let y = linalg::orthonormal_image(&span, tol);
            let t = y.transpose() * &sm.s * &y;
            let s_on_y = y.transpose() * s_op * &y;
            let sym = linalg::fnorm(&(t.transpose() - &t));
            let skew = linalg::fnorm(&(t.transpose() + &t));
            Ok(ReducedForm {
                y,
                s_on_y,
                t_symmetry: if sym <= skew { 1.0 } else { -1.0 },
                t,
                mu,
                epsilon: 1.0,
                t_list: Vec::new(),
            })
        }
        Kind::AntiAutomorphism => {
            let eps = sm.star_sign.ok_or_else(|| {
                Error::InvalidStructure("anti-automorphism without symmetry sign".into())
            })?;
            let (_, w) = standardize_bilinear(block, n_op, &sm.s, mu, tol)?;
            // tau(x,y) = omega(x, N^(n-1) y): transpose of the appendix form
            // T_(n-1) up to mu^(n-1).
            let mut nw = w.clone();
            for _ in 0..(n - 1) {
                nw = n_op * nw;
            }
            let t = w.transpose() * &sm.s * &nw;
            let thr = tol * (1.0 + linalg::fnorm(&sm.s));
            invert_checked(&t, thr)?;
            let (s_on_y, _) = linalg::solve_least_squares(&w, &(s_op * &w), tol)?;
            let expected_sym = eps * mu.powi(n as i32 - 1);
            let defect = linalg::fnorm(&(t.transpose() - &t * expected_sym));
            if defect > 1e-6 * (1.0 + linalg::fnorm(&t)) {
                return Err(Error::InvalidBlock(format!(
                    "reduced form symmetry defect {defect:.3e} against expected sign {expected_sym}"
                )));
            }
            let t_list = (0..n)
                .map(|j| form_t_j(&w, n_op, &sm.s, j))
                .collect();
            Ok(ReducedForm {
                y: w,
                s_on_y,
                t,
                t_symmetry: expected_sym,
                mu,
                epsilon: eps,
                t_list,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{invariant_blocks, jc_decompose};
    use approx::assert_relative_eq;

    fn jmat() -> Mat {
        Mat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
    }

    /// Off-anti-diagonal mass of the Gram matrix in the chain basis.
    fn off_pattern(chain: &Mat, s: &Mat, height: usize, w_dim: usize) -> f64 {
        let gram = chain.transpose() * s * chain;
        let mut acc = 0.0f64;
        for bi in 0..height {
            for bj in 0..height {
                if bi + bj == height - 1 {
                    continue;
                }
                for a in 0..w_dim {
                    for b in 0..w_dim {
                        acc += gram[(bi * w_dim + a, bj * w_dim + b)].powi(2);
                    }
                }
            }
        }
        acc.sqrt()
    }

    #[test]
    fn height_one_is_untouched() {
        let l = Mat::zeros(1, 1);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let s = Mat::identity(1, 1);
        let (g, w) = standardize_bilinear(&blocks[0], &jc.n, &s, 1.0, 1e-9).unwrap();
        assert_relative_eq!(g, Mat::identity(1, 1), epsilon = 1e-12);
        assert_relative_eq!(w, blocks[0].level(0), epsilon = 1e-12);
    }

    #[test]
    fn symplectic_double_zero_already_standard() {
        // L = [[0,0],[1,0]] in sp(2): chain {e, Ne}, Gram of J anti-diagonal.
        let l = Mat::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        assert_eq!(blocks.len(), 1);
        let (_, w) = standardize_bilinear(&blocks[0], &jc.n, &jmat(), -1.0, 1e-9).unwrap();
        let chain = chain_from_w(&w, &jc.n, 2);
        assert!(off_pattern(&chain, &jmat(), 2, 1) < 1e-12);
        // The correction is trivial here.
        assert_relative_eq!(w, blocks[0].level(0), epsilon = 1e-12);
    }

    #[test]
    fn height_three_defect_is_cleared() {
        // Anti-symmetric 0^3 block; inject a chain defect by moving W into NW.
        let l = Mat::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let s = Mat::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0]);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        assert_eq!(blocks.len(), 1);
        let mut bad = blocks[0].clone();
        // Defective top: w + 0.3 Nw + 0.2 N^2 w.
        let w0 = bad.level(0);
        let defect = &w0 + (&jc.n * &w0) * 0.3 + (&jc.n * &jc.n * &w0) * 0.2;
        bad.chain_basis = chain_from_w(&defect, &jc.n, 3);
        assert!(off_pattern(&bad.chain_basis, &s, 3, 1) > 0.05);
        let (_, w) = standardize_bilinear(&bad, &jc.n, &s, -1.0, 1e-9).unwrap();
        let chain = chain_from_w(&w, &jc.n, 3);
        assert!(off_pattern(&chain, &s, 3, 1) < 1e-9);
        // tau_j vanish on the corrected W for j < n-1.
        for j in 0..2 {
            assert!(linalg::fnorm(&form_t_j(&w, &jc.n, &s, j)) < 1e-9);
        }
    }

    #[test]
    fn reduce_symplectic_double_zero() {
        let l = Mat::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let sm = StructureMap::new(Kind::AntiAutomorphism, jmat(), 1e-9).unwrap();
        let rf = reduce_block(&blocks[0], &jc.s, &jc.n, &sm, -1.0, 1e-9).unwrap();
        assert_eq!(rf.t.nrows(), 1);
        // t^T = eps mu^(n-1) t = (-1)(-1) t: symmetric scalar, here ±1 valued.
        assert_relative_eq!(rf.t[(0, 0)].abs(), 1.0, epsilon = 1e-9);
        assert_relative_eq!(rf.s_on_y, Mat::zeros(1, 1), epsilon = 1e-9);
    }

    #[test]
    fn reduce_simple_symplectic_rotation() {
        // L = beta J with s = J: Y is all of R^2, t = ±J.
        let beta = 2.0;
        let l = jmat() * beta;
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        assert_eq!(blocks.len(), 1);
        let sm = StructureMap::new(Kind::AntiAutomorphism, jmat(), 1e-9).unwrap();
        let rf = reduce_block(&blocks[0], &jc.s, &jc.n, &sm, -1.0, 1e-9).unwrap();
        assert_eq!(rf.t.nrows(), 2);
        // Skew reduced map with entries of unit size.
        assert_relative_eq!(rf.t.transpose(), -rf.t.clone(), epsilon = 1e-9);
        assert_relative_eq!(rf.t[(1, 0)].abs(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn reduce_automorphism_reversible_pair() {
        // L = diag(1,-1) reversible under the swap map: Y = W + sW = R^2.
        let l = Mat::from_diagonal(&crate::Vector::from_vec(vec![1.0, -1.0]));
        let s = Mat::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let sm = StructureMap::new(Kind::Automorphism, s, 1e-9).unwrap();
        let rf = reduce_block(&blocks[0], &jc.s, &jc.n, &sm, -1.0, 1e-9).unwrap();
        assert_eq!(rf.y.ncols(), 2);
        assert_relative_eq!(&rf.t * &rf.t, Mat::identity(2, 2), epsilon = 1e-9);
    }
}

//! Jordan-Chevalley decomposition L = S + N and the splitting of V into
//! Jordan chains per eigenvalue class.
//!
//! S is assembled from Hermite interpolation polynomials on each generalized
//! eigenspace, so the decomposition commutes with any structure map that
//! fixes L's eigenspace: membership of L implies membership of S and N.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::linalg::{self, EigenvalueClass, Mat, Vector};

/// L = S + N with S semi-simple, N nilpotent, [S,N] = 0.
#[derive(Debug, Clone)]
pub struct JCDecomposition {
    pub s: Mat,
    pub n: Mat,
    /// Least h with N^h = 0.
    pub height: usize,
    pub classes: Vec<EigenvalueClass>,
    /// Orthonormal bases of the generalized eigenspaces, aligned with classes.
    pub generalized_bases: Vec<Mat>,
    pub commutator_residual: f64,
    pub nilpotency_defect: f64,
}

/// One Jordan chain: an indecomposable L-invariant subspace. For complex
/// eigenvalue classes the chain carries vector pairs (e, f) with
/// f = (S - alpha)e / beta, so each level has dimension 2.
#[derive(Debug, Clone)]
pub struct InvariantBlock {
    pub lambda: EigenvalueClass,
    pub height: usize,
    /// 1 for real classes, 2 for conjugate pairs.
    pub w_dim: usize,
    /// Columns ordered level by level: [w..., Nw..., ..., N^{h-1}w...].
    pub chain_basis: Mat,
    /// Index of the eigenvalue class in the decomposition's class list.
    pub class_index: usize,
}

impl InvariantBlock {
    pub fn dim(&self) -> usize {
        self.height * self.w_dim
    }

    /// The level-j columns N^j w of the chain.
    pub fn level(&self, j: usize) -> Mat {
        self.chain_basis
            .columns(j * self.w_dim, self.w_dim)
            .into_owned()
    }
}

fn mat_pow(m: &Mat, p: usize) -> Mat {
    let mut acc = Mat::identity(m.nrows(), m.ncols());
    for _ in 0..p {
        acc = &acc * m;
    }
    acc
}

/// Computes the Jordan-Chevalley decomposition of a square real matrix.
pub fn jc_decompose(l: &Mat, tol: f64) -> Result<JCDecomposition> {
    linalg::check_finite(l)?;
    if l.nrows() != l.ncols() {
        return Err(Error::MalformedInput("matrix must be square".into()));
    }
    let dim = l.nrows();
    let scale = tol * (1.0 + linalg::fnorm(l));
    // Defective eigenvalues of height h move by O(eps^(1/h)) under roundoff,
    // so clustering here needs a floor well above the working tolerance.
    let cluster_tol = tol.max(1e-5);
    let classes = linalg::eigen_cluster(l, cluster_tol)?;

    // Distinct classes closer than 10x the merging radius are ambiguous.
    let cluster_scale = cluster_tol * (1.0 + linalg::fnorm(l));
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            let gap = classes[i].dist(&classes[j]);
            if gap < 10.0 * cluster_scale {
                return Err(Error::IllConditionedSpectrum { gap, tol });
            }
        }
    }

    // Generalized eigenspaces.
    let mut bases: Vec<Mat> = Vec::with_capacity(classes.len());
    for c in &classes {
        let poly = class_poly(l, c);
        let power = mat_pow(&poly, c.algebraic_multiplicity);
        let (_, ker) = linalg::rank_kernel(&power, tol)?;
        if ker.dim() != c.algebraic_multiplicity {
            return Err(Error::NumericFailure {
                context: format!(
                    "generalized eigenspace of ({}, {}) has dim {} but multiplicity {}",
                    c.alpha,
                    c.beta,
                    ker.dim(),
                    c.algebraic_multiplicity
                ),
                residual: f64::NAN,
            });
        }
        bases.push(ker.basis);
    }

    // Semi-simple part class by class, assembled through the joint basis.
    let mut p = Mat::zeros(dim, dim);
    let mut col = 0;
    for b in &bases {
        p.columns_mut(col, b.ncols()).copy_from(b);
        col += b.ncols();
    }
    let p_inv = p.clone().try_inverse().ok_or_else(|| Error::NumericFailure {
        context: "generalized eigenspaces do not span V".into(),
        residual: f64::NAN,
    })?;
    let t = &p_inv * l * &p;
    let mut d = Mat::zeros(dim, dim);
    col = 0;
    for (c, b) in classes.iter().zip(&bases) {
        let m = b.ncols();
        let a = t.view((col, col), (m, m)).into_owned();
        let block = if c.is_real() {
            Mat::identity(m, m) * c.alpha
        } else {
            semisimple_part_complex(&a, c)?
        };
        d.view_mut((col, col), (m, m)).copy_from(&block);
        col += m;
    }
    let s = &p * &d * &p_inv;
    let n = l - &s;

    // Height and diagnostics.
    let mut height = 1;
    let mut power = n.clone();
    let nil_thresh = 100.0 * scale.max(tol);
    while linalg::fnorm(&power) > nil_thresh {
        power = &power * &n;
        height += 1;
        if height > dim {
            return Err(Error::NumericFailure {
                context: "nilpotent part fails to vanish".into(),
                residual: linalg::fnorm(&power),
            });
        }
    }
    let commutator_residual = linalg::fnorm(&linalg::commutator(&s, &n));
    let nilpotency_defect = linalg::fnorm(&mat_pow(&n, height));
    Ok(JCDecomposition {
        s,
        n,
        height,
        classes,
        generalized_bases: bases,
        commutator_residual,
        nilpotency_defect,
    })
}

/// (L - alpha I) for real classes, (L - alpha I)^2 + beta^2 I for pairs.
fn class_poly(l: &Mat, c: &EigenvalueClass) -> Mat {
    let dim = l.nrows();
    let shifted = l - Mat::identity(dim, dim) * c.alpha;
    if c.is_real() {
        shifted
    } else {
        &shifted * &shifted + Mat::identity(dim, dim) * (c.beta * c.beta)
    }
}

/// Semi-simple part of a matrix whose only eigenvalue class is the pair
/// alpha ± i beta: the Hermite interpolant q with q = lambda, q' = ... = 0
/// to sufficient order at both points, evaluated at the matrix.
fn semisimple_part_complex(a: &Mat, c: &EigenvalueClass) -> Result<Mat> {
    let m = a.nrows();
    let mult = m / 2; // nilpotency order bound per conjugate point
    let deg = 2 * mult; // number of coefficients
    let lam = Complex::new(c.alpha, c.beta);
    let points = [lam, lam.conj()];
    let mut v = DMatrix::<Complex<f64>>::zeros(deg, deg);
    let mut rhs = DMatrix::<Complex<f64>>::zeros(deg, 1);
    for (pi, &z) in points.iter().enumerate() {
        for r in 0..mult {
            let row = pi * mult + r;
            for k in 0..deg {
                if k >= r {
                    let mut fall = Complex::new(1.0, 0.0);
                    for f in 0..r {
                        fall *= Complex::new((k - f) as f64, 0.0);
                    }
                    v[(row, k)] = fall * z.powu((k - r) as u32);
                }
            }
            if r == 0 {
                rhs[(row, 0)] = z;
            }
        }
    }
    let sol = v.lu().solve(&rhs).ok_or_else(|| Error::NumericFailure {
        context: "Hermite interpolation system singular".into(),
        residual: f64::NAN,
    })?;
    // Conjugate-symmetric data forces real coefficients.
    let coeffs: Vec<f64> = sol.iter().map(|z| z.re).collect();
    let max_im = sol.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
    if max_im > 1e-6 * (1.0 + c.alpha.abs() + c.beta) {
        return Err(Error::NumericFailure {
            context: "Hermite interpolant has non-real coefficients".into(),
            residual: max_im,
        });
    }
    // Horner evaluation at the matrix.
    let mut acc = Mat::zeros(m, m);
    for &ck in coeffs.iter().rev() {
        acc = acc * a + Mat::identity(m, m) * ck;
    }
    Ok(acc)
}

/// Splits each generalized eigenspace into Jordan chains of N, with
/// S-invariant level spaces (pairs (e, (S-alpha)e/beta) for complex classes).
pub fn invariant_blocks(l: &Mat, jc: &JCDecomposition, tol: f64) -> Result<Vec<InvariantBlock>> {
    let dim = l.nrows();
    let mut blocks = Vec::new();
    for (ci, (class, basis)) in jc.classes.iter().zip(&jc.generalized_bases).enumerate() {
        let w_dim = if class.is_real() { 1 } else { 2 };
        // Kernel filtration K_j = ker(N^j) ∩ G.
        let g_dim = basis.ncols();
        let mut filtration: Vec<Mat> = vec![Mat::zeros(dim, 0)];
        let mut j = 1;
        loop {
            let (_, ker) = linalg::rank_kernel(&mat_pow(&jc.n, j), tol)?;
            let kj = linalg::intersect(&ker.basis, basis, tol);
            let stabilized = kj.ncols() == filtration.last().unwrap().ncols();
            filtration.push(kj);
            if filtration.last().unwrap().ncols() >= g_dim || stabilized {
                break;
            }
            j += 1;
            if j > dim {
                return Err(Error::InternalInvariant(
                    "kernel filtration failed to stabilize".into(),
                ));
            }
        }
        let h_max = filtration.len() - 1;
        if filtration[h_max].ncols() != g_dim {
            return Err(Error::NumericFailure {
                context: "nilpotent filtration does not exhaust the eigenspace".into(),
                residual: f64::NAN,
            });
        }

        // Complex structure on G from the semi-simple part.
        let jn = |v: &Vector| -> Vector { (&jc.s * v - v * class.alpha) / class.beta };

        // Chains, tallest first.
        let mut chains: Vec<(usize, Vec<Vector>)> = Vec::new(); // (height, tops-first vectors)
        for h in (1..=h_max).rev() {
            loop {
                // Obstruction space: K_{h-1} plus level-(h'-h) vectors of
                // taller or equal chains already chosen.
                let mut obst_cols: Vec<Vector> = filtration[h - 1]
                    .column_iter()
                    .map(|c| c.into_owned())
                    .collect();
                for (ch_h, vecs) in &chains {
                    if *ch_h >= h {
                        let lvl = ch_h - h;
                        for w in 0..(vecs.len() / ch_h) {
                            obst_cols.push(vecs[lvl * (vecs.len() / ch_h) + w].clone());
                        }
                    }
                }
                let obst = linalg::from_columns(dim, &obst_cols);
                // Candidates in K_h independent of the obstruction.
                let kh = &filtration[h];
                let proj: Vec<Vector> = {
                    let ob = linalg::orthonormal_image(&obst, tol);
                    kh.column_iter()
                        .map(|c| {
                            let c = c.into_owned();
                            &c - &ob * (ob.transpose() * &c)
                        })
                        .collect()
                };
                let cand = linalg::orthonormal_image(&linalg::from_columns(dim, &proj), tol);
                if cand.ncols() == 0 {
                    break;
                }
                let e = cand.column(0).into_owned();
                let mut tops = vec![e.clone()];
                if w_dim == 2 {
                    tops.push(jn(&e));
                }
                // Lay out the chain level by level: [w..., Nw..., ...].
                let mut vecs: Vec<Vector> = Vec::with_capacity(h * w_dim);
                let mut level = tops;
                for _ in 0..h {
                    for v in &level {
                        vecs.push(v.clone());
                    }
                    level = level.iter().map(|v| &jc.n * v).collect();
                }
                chains.push((h, vecs));
            }
        }

        // Sanity: chains fill the eigenspace.
        let total: usize = chains.iter().map(|(h, v)| {
            debug_assert_eq!(v.len(), h * w_dim * v.len() / v.len());
            v.len()
        }).sum();
        if total != g_dim {
            return Err(Error::InternalInvariant(format!(
                "chains span {total} of {g_dim} dims in class ({}, {})",
                class.alpha, class.beta
            )));
        }
        for (h, vecs) in chains {
            blocks.push(InvariantBlock {
                lambda: class.clone(),
                height: h,
                w_dim,
                chain_basis: linalg::from_columns(dim, &vecs),
                class_index: ci,
            });
        }
    }

    // Global independence check.
    let all: Vec<Vector> = blocks
        .iter()
        .flat_map(|b| b.chain_basis.column_iter().map(|c| c.into_owned()))
        .collect();
    if all.len() != dim {
        return Err(Error::InternalInvariant(
            "blocks do not fill the ambient space".into(),
        ));
    }
    let full = linalg::from_columns(dim, &all);
    if full.clone().try_inverse().is_none() {
        return Err(Error::InternalInvariant("chain bases are dependent".into()));
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn diagonalizable_has_zero_nilpotent() {
        let l = Mat::from_diagonal(&Vector::from_vec(vec![1.0, 2.0, 3.0]));
        let jc = jc_decompose(&l, 1e-9).unwrap();
        assert_relative_eq!(jc.s, l, epsilon = 1e-9);
        assert!(linalg::fnorm(&jc.n) < 1e-9);
        assert_eq!(jc.height, 1);
    }

    #[test]
    fn single_jordan_block() {
        let a = 2.5;
        let l = Mat::from_row_slice(2, 2, &[a, 0.0, 1.0, a]);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        assert_relative_eq!(jc.s, Mat::identity(2, 2) * a, epsilon = 1e-9);
        assert_relative_eq!(jc.n, Mat::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]), epsilon = 1e-9);
        assert_eq!(jc.height, 2);
    }

    #[test]
    fn complex_jordan_structure() {
        // rot(0, beta) tiles on the diagonal, I tile below: height 2.
        let b = 1.0;
        let l = Mat::from_row_slice(
            4,
            4,
            &[
                0.0, -b, 0.0, 0.0, //
                b, 0.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, -b, //
                0.0, 1.0, b, 0.0,
            ],
        );
        let jc = jc_decompose(&l, 1e-9).unwrap();
        assert_eq!(jc.height, 2);
        assert_eq!(jc.classes.len(), 1);
        assert_relative_eq!(jc.classes[0].beta, b, epsilon = 1e-6);
        let expected_n = Mat::from_row_slice(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0,
            ],
        );
        assert_relative_eq!(jc.n, expected_n, epsilon = 1e-8);
        assert!(jc.commutator_residual < 1e-8);
    }

    #[test]
    fn rejects_near_collision() {
        let l = Mat::from_diagonal(&Vector::from_vec(vec![1.0, 1.0 + 1e-4]));
        match jc_decompose(&l, 1e-9) {
            Err(Error::IllConditionedSpectrum { .. }) => {}
            other => panic!("expected ill-conditioned spectrum, got {other:?}"),
        }
    }

    #[test]
    fn blocks_for_distinct_real_eigenvalues() {
        let l = Mat::from_diagonal(&Vector::from_vec(vec![1.0, -1.0]));
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.height == 1 && b.w_dim == 1));
    }

    #[test]
    fn blocks_for_nilpotent_heights_2_1() {
        let l = Mat::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let mut heights: Vec<usize> = blocks.iter().map(|b| b.height).collect();
        heights.sort_unstable();
        assert_eq!(heights, vec![1, 2]);
        // The height-2 chain maps level 0 onto level 1 under N.
        let b2 = blocks.iter().find(|b| b.height == 2).unwrap();
        let top = b2.level(0);
        assert_relative_eq!(&jc.n * top, b2.level(1), epsilon = 1e-9);
    }

    #[test]
    fn blocks_for_complex_pair_chain() {
        let b = 1.0;
        let l = Mat::from_row_slice(
            4,
            4,
            &[
                0.0, -b, 0.0, 0.0, //
                b, 0.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, -b, //
                0.0, 1.0, b, 0.0,
            ],
        );
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].height, 2);
        assert_eq!(blocks[0].w_dim, 2);
        assert_eq!(blocks[0].dim(), 4);
        // f = (S - alpha) e / beta holds at the top level.
        let e = blocks[0].chain_basis.column(0).into_owned();
        let f = blocks[0].chain_basis.column(1).into_owned();
        assert_relative_eq!((&jc.s * &e) / b, f, epsilon = 1e-8);
    }

    #[test]
    fn zero_matrix_gives_height_one_blocks() {
        let l = Mat::zeros(3, 3);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.height == 1));
    }
}

//! Tolerance-controlled dense real linear algebra primitives.
//!
//! Everything downstream works with `Mat` (an alias for a dynamically sized
//! real matrix) and makes rank decisions by singular-value thresholding with a
//! single tolerance knob.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

/// Dense real matrix with value semantics.
pub type Mat = DMatrix<f64>;
/// Dense real column vector.
pub type Vector = DVector<f64>;

/// Default relative tolerance used throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A subspace of `R^ambient_dim` stored as an orthonormal column basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Mat,
    pub tol: f64,
}

impl Subspace {
    /// Builds a subspace from a (not necessarily orthonormal) spanning set.
    /// The stored basis is orthonormalized; dependent columns are dropped.
    pub fn from_span(span: &Mat, tol: f64) -> Subspace {
        let basis = orthonormal_image(span, tol);
        Subspace {
            ambient_dim: span.nrows(),
            basis,
            tol,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthogonal projection of a vector onto the subspace.
    pub fn project(&self, v: &Vector) -> Vector {
        &self.basis * (self.basis.transpose() * v)
    }

    /// Distance of `v` to the subspace relative to `1 + |v|`.
    pub fn residual(&self, v: &Vector) -> f64 {
        (v - self.project(v)).norm() / (1.0 + v.norm())
    }

    /// True if `v` lies in the subspace at the stored tolerance.
    pub fn contains(&self, v: &Vector) -> bool {
        self.residual(v) <= self.tol.max(DEFAULT_TOL) * 10.0
    }
}

/// Eigenvalue class `alpha` (beta = 0) or conjugate pair `alpha ± i beta`
/// (beta > 0) together with its total algebraic multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueClass {
    pub alpha: f64,
    pub beta: f64,
    pub algebraic_multiplicity: usize,
}

impl EigenvalueClass {
    pub fn is_real(&self) -> bool {
        self.beta == 0.0
    }

    /// Real dimension of the generalized eigenspace: `m` for real classes,
    /// `m` for conjugate pairs as well (multiplicity counts both members).
    pub fn real_dim(&self) -> usize {
        self.algebraic_multiplicity
    }

    pub fn dist(&self, other: &EigenvalueClass) -> f64 {
        ((self.alpha - other.alpha).powi(2) + (self.beta - other.beta).powi(2)).sqrt()
    }
}

pub fn check_finite(m: &Mat) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::MalformedInput("matrix contains NaN or Inf".into()))
    }
}

/// Frobenius norm shorthand.
pub fn fnorm(m: &Mat) -> f64 {
    m.norm()
}

/// Rank and an orthonormal kernel basis of `M` at tolerance `tol`.
///
/// The rank is the number of singular values above `tol * (1 + |M|)`.
pub fn rank_kernel(m: &Mat, tol: f64) -> Result<(usize, Subspace)> {
    check_finite(m)?;
    if tol <= 0.0 {
        return Err(Error::MalformedInput("tolerance must be positive".into()));
    }
    let cols = m.ncols();
    if cols == 0 || m.nrows() == 0 {
        let basis = Mat::identity(cols, cols);
        return Ok((
            0,
            Subspace {
                ambient_dim: cols,
                basis,
                tol,
            },
        ));
    }
    // Pad with zero rows so the thin SVD still returns all `cols` right
    // singular vectors; the kernel is unchanged.
    let work = if m.nrows() < cols {
        let mut padded = Mat::zeros(cols, cols);
        padded.rows_mut(0, m.nrows()).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let thresh = tol * (1.0 + fnorm(m));
    let rank = svd.singular_values.iter().filter(|&&s| s > thresh).count();
    let v_t = svd.v_t.expect("svd with v requested");
    let mut basis = Mat::zeros(cols, v_t.nrows() - rank);
    for i in rank..v_t.nrows() {
        basis.set_column(i - rank, &v_t.row(i).transpose());
    }
    canonical_sign(&mut basis);
    Ok((
        rank,
        Subspace {
            ambient_dim: cols,
            basis,
            tol,
        },
    ))
}

/// Orthonormal basis of the column space of `m`.
pub fn orthonormal_image(m: &Mat, tol: f64) -> Mat {
    if m.ncols() == 0 {
        return Mat::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let thresh = tol * (1.0 + fnorm(m));
    let rank = svd.singular_values.iter().filter(|&&s| s > thresh).count();
    let u = svd.u.expect("svd with u requested");
    let mut basis = u.columns(0, rank.min(u.ncols())).into_owned();
    canonical_sign(&mut basis);
    basis
}

/// Orthonormal basis of the orthogonal complement of the column span of `m`.
pub fn orthonormal_complement(m: &Mat, tol: f64) -> Mat {
    let n = m.nrows();
    let img = orthonormal_image(m, tol);
    // Kernel of img^T is the complement.
    let (_, ker) = rank_kernel(&img.transpose(), tol).expect("finite by construction");
    let _ = n;
    ker.basis
}

/// Orthonormal basis of the intersection of two column spans.
pub fn intersect(a: &Mat, b: &Mat, tol: f64) -> Mat {
    // x in span(a) ∩ span(b)  <=>  x ⟂ compl(a) and x ⟂ compl(b).
    let ca = orthonormal_complement(a, tol);
    let cb = orthonormal_complement(b, tol);
    let mut stacked = Mat::zeros(ca.ncols() + cb.ncols(), a.nrows());
    stacked.rows_mut(0, ca.ncols()).copy_from(&ca.transpose());
    stacked
        .rows_mut(ca.ncols(), cb.ncols())
        .copy_from(&cb.transpose());
    let (_, ker) = rank_kernel(&stacked, tol).expect("finite by construction");
    ker.basis
}

/// Minimum-norm least-squares solution of `A x = b` and the residual `|Ax-b|`.
pub fn solve_least_squares(a: &Mat, b: &Mat, tol: f64) -> Result<(Mat, f64)> {
    check_finite(a)?;
    check_finite(b)?;
    if a.nrows() != b.nrows() {
        return Err(Error::MalformedInput(format!(
            "incompatible shapes: {}x{} vs {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    if a.ncols() == 0 {
        return Ok((Mat::zeros(0, b.ncols()), fnorm(b)));
    }
    let svd = a.clone().svd(true, true);
    let thresh = tol * (1.0 + fnorm(a));
    let x = svd
        .solve(b, thresh)
        .map_err(|e| Error::NumericFailure {
            context: format!("least squares solve: {e}"),
            residual: f64::NAN,
        })?;
    let residual = fnorm(&(a * &x - b));
    Ok((x, residual))
}

/// Clusters the eigenvalues of a square matrix into [`EigenvalueClass`]es.
///
/// Single-linkage merging with radius `tol * (1 + |M|)`; conjugate pairs are
/// reported once with `beta > 0`; classes sorted by `(alpha, beta)`.
pub fn eigen_cluster(m: &Mat, tol: f64) -> Result<Vec<EigenvalueClass>> {
    check_finite(m)?;
    if m.nrows() != m.ncols() {
        return Err(Error::MalformedInput("matrix must be square".into()));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let eigs = complex_eigenvalues(m)?;
    let radius = tol * (1.0 + fnorm(m));

    // Single-linkage union-find over the 2n points (conjugates included).
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (eigs[i] - eigs[j]).norm();
            let dc = (eigs[i] - eigs[j].conj()).norm();
            if d <= radius || dc <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut classes: Vec<EigenvalueClass> = Vec::new();
    for (_, idx) in groups {
        let mult = idx.len();
        let alpha = idx.iter().map(|&i| eigs[i].re).sum::<f64>() / mult as f64;
        let beta_raw = idx.iter().map(|&i| eigs[i].im.abs()).sum::<f64>() / mult as f64;
        let beta = if beta_raw <= radius { 0.0 } else { beta_raw };
        classes.push(EigenvalueClass {
            alpha: if alpha.abs() <= radius { 0.0 } else { alpha },
            beta,
            algebraic_multiplicity: mult,
        });
    }
    classes.sort_by(|a, b| {
        (a.alpha, a.beta)
            .partial_cmp(&(b.alpha, b.beta))
            .expect("finite eigenvalues")
    });
    Ok(classes)
}

/// Complex eigenvalues via the real Schur form.
pub fn complex_eigenvalues(m: &Mat) -> Result<Vec<Complex<f64>>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    // The QR iteration can stall on exactly structured matrices (e.g. pure
    // shift blocks give zero shifts). A fixed orthogonal similarity leaves
    // the spectrum unchanged and unsticks it.
    let mut attempt = m.clone();
    for seed in 0..4u64 {
        for eps in [f64::EPSILON * 16.0, 1e-12] {
            if let Some(schur) = nalgebra::linalg::Schur::try_new(attempt.clone(), eps, 5_000) {
                return Ok(schur.complex_eigenvalues().iter().copied().collect());
            }
        }
        let q = fixed_orthogonal(n, seed + 1);
        attempt = q.transpose() * m * &q;
    }
    Err(Error::NumericFailure {
        context: "Schur iteration did not converge".into(),
        residual: f64::NAN,
    })
}

/// Deterministic pseudo-random orthogonal matrix (QR of LCG-filled matrix).
fn fixed_orthogonal(n: usize, seed: u64) -> Mat {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    let raw = Mat::from_fn(n, n, |_, _| next());
    let qr = raw.qr();
    qr.q()
}

/// Symmetric positive (semi)definite fractional power via eigendecomposition.
pub fn sym_power(m: &Mat, p: f64) -> Mat {
    let se = nalgebra::linalg::SymmetricEigen::new(m.clone());
    let mut d = se.eigenvalues.clone();
    for x in d.iter_mut() {
        *x = x.max(0.0).powf(p);
    }
    &se.eigenvectors * Mat::from_diagonal(&d) * se.eigenvectors.transpose()
}

/// Fixes the sign of each column so the entry of largest magnitude is positive.
/// Keeps report output and golden tests stable across backends.
pub fn canonical_sign(m: &mut Mat) {
    let ncols = m.ncols();
    for j in 0..ncols {
        let col = m.column(j);
        let mut best = 0usize;
        let mut best_abs = 0.0f64;
        for (i, &x) in col.iter().enumerate() {
            if x.abs() > best_abs {
                best_abs = x.abs();
                best = i;
            }
        }
        if best_abs > 0.0 && m[(best, j)] < 0.0 {
            let neg = -m.column(j);
            m.set_column(j, &neg);
        }
    }
}

/// Commutator `[A, B] = AB - BA`.
pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

/// Builds a matrix from its columns.
pub fn from_columns(ambient: usize, cols: &[Vector]) -> Mat {
    let mut m = Mat::zeros(ambient, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

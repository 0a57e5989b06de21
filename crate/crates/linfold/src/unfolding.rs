//! Centralizer bases, miniversal unfoldings inside an eigenspace, and
//! eigenvalue sweeps along parameter paths.
//!
//! The centralizer of L = S + N is built constructively: a commutant basis of
//! S on the top level W1 of the tallest chain, spread over all chain pairs,
//! extended by the height-shift rule, and multiplied by powers of N. Its
//! dimension per eigenvalue class is r * sum_{i,j} min(n_i, n_j) with heights
//! sorted descending. Projecting the transposed basis onto the eigenspace
//! yields the unfolding directions; the codimension is cross-checked against
//! the tangent-space rank of the structure-preserving group.

use crate::decomp::{invariant_blocks, jc_decompose, InvariantBlock, JCDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{self, EigenvalueClass, Mat};
use crate::structure::{self, EigenspaceSpec};

/// Basis of ker ad_L with per-class bookkeeping.
#[derive(Debug, Clone)]
pub struct CentralizerBasis {
    pub dim: usize,
    pub basis: Vec<Mat>,
    /// (class index, number of basis elements contributed).
    pub per_block_counts: Vec<(usize, usize)>,
}

/// Miniversal unfolding data: L(nu) = L0 + sum nu_i directions_i.
#[derive(Debug, Clone)]
pub struct UnfoldingFamily {
    pub l0: Mat,
    pub directions: Vec<Mat>,
    pub codim: usize,
    /// Dimension of the orbit tangent space {[U, L]} inside the eigenspace.
    pub tangent_dim: usize,
}

impl UnfoldingFamily {
    pub fn evaluate(&self, nu: &[f64]) -> Result<Mat> {
        if nu.len() != self.directions.len() {
            return Err(Error::MalformedInput(format!(
                "parameter vector has length {}, family has {} directions",
                nu.len(),
                self.directions.len()
            )));
        }
        let mut m = self.l0.clone();
        for (c, d) in nu.iter().zip(&self.directions) {
            m += d * *c;
        }
        Ok(m)
    }
}

/// One record of a sweep: the parameter point and its eigenvalue classes.
#[derive(Debug, Clone)]
pub struct SweepStep {
    pub step: usize,
    pub nu: Vec<f64>,
    pub classes: Vec<EigenvalueClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Pass,
    Split,
}

/// A collision event: the class count changed between `step` and `step + 1`.
#[derive(Debug, Clone)]
pub struct SweepEvent {
    pub step: usize,
    pub kind: EventKind,
    pub description: String,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub steps: Vec<SweepStep>,
    pub events: Vec<SweepEvent>,
}

/// Commutant basis of S restricted to one top level: scalars for a real
/// class, the real and rotational units for a complex class.
fn top_commutant(w_dim: usize) -> Vec<Mat> {
    if w_dim == 1 {
        vec![Mat::identity(1, 1)]
    } else {
        vec![
            Mat::identity(2, 2),
            Mat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]),
        ]
    }
}

/// Constructive basis of ker ad_L from the chain decomposition.
pub fn centralizer_basis(
    l: &Mat,
    jc: &JCDecomposition,
    blocks: &[InvariantBlock],
) -> Result<CentralizerBasis> {
    let dim = l.nrows();
    // Chain coordinates: blocks grouped by class, heights descending.
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| {
        (blocks[a].class_index, std::cmp::Reverse(blocks[a].height))
            .cmp(&(blocks[b].class_index, std::cmp::Reverse(blocks[b].height)))
    });
    let mut p_basis = Mat::zeros(dim, dim);
    let mut offsets = vec![0usize; blocks.len()];
    let mut col = 0;
    for &bi in &order {
        offsets[bi] = col;
        p_basis
            .columns_mut(col, blocks[bi].dim())
            .copy_from(&blocks[bi].chain_basis);
        col += blocks[bi].dim();
    }
    if col != dim {
        return Err(Error::InternalInvariant(
            "chains do not fill the space in centralizer_basis".into(),
        ));
    }
    let p_inv = p_basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InternalInvariant("singular chain basis".into()))?;

    let mut basis = Vec::new();
    let mut per_block_counts = Vec::new();
    let n_classes = jc.classes.len();
    for ci in 0..n_classes {
        let class_blocks: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&bi| blocks[bi].class_index == ci)
            .collect();
        if class_blocks.is_empty() {
            continue;
        }
        let q = blocks[class_blocks[0]].w_dim;
        let commutant = top_commutant(q);
        let mut count = 0;
        for &bi in &class_blocks {
            for &bj in &class_blocks {
                let ni = blocks[bi].height;
                let nj = blocks[bj].height;
                // Maps into a taller chain land at its bottom (shift by the
                // height difference); maps into a shorter chain truncate at
                // the top. Both follow from [E, N] = 0.
                let shift: isize = (ni as isize - nj as isize).max(0);
                for bk in &commutant {
                    for extra in 0..ni.min(nj) {
                        let mut e = Mat::zeros(dim, dim);
                        for m in 0..nj {
                            let ts = m as isize + shift + extra as isize;
                            if ts < 0 || ts >= ni as isize {
                                continue;
                            }
                            let t = ts as usize;
                            for lcol in 0..q {
                                for lrow in 0..q {
                                    let v = bk[(lrow, lcol)];
                                    if v != 0.0 {
                                        e[(offsets[bi] + t * q + lrow, offsets[bj] + m * q + lcol)] +=
                                            v;
                                    }
                                }
                            }
                        }
                        if e.iter().all(|&x| x == 0.0) {
                            continue;
                        }
                        basis.push(&p_basis * e * &p_inv);
                        count += 1;
                    }
                }
            }
        }
        per_block_counts.push((ci, count));
    }
    // Postcondition: every element commutes with L.
    let scale = 1.0 + linalg::fnorm(l);
    for b in &basis {
        let r = linalg::fnorm(&linalg::commutator(b, l));
        if r > 1e-7 * scale * (1.0 + linalg::fnorm(b)) {
            return Err(Error::InternalInvariant(format!(
                "centralizer element does not commute (residual {r:.3e})"
            )));
        }
    }
    Ok(CentralizerBasis {
        dim: basis.len(),
        basis,
        per_block_counts,
    })
}

/// dim ker of X -> XL - LX solved as a full linear system (oracle).
pub fn sylvester_centralizer_dim(l: &Mat, tol: f64) -> Result<usize> {
    let n = l.nrows();
    let id = Mat::identity(n, n);
    let m = l.transpose().kronecker(&id) - id.kronecker(l);
    let (rank, _) = linalg::rank_kernel(&m, tol)?;
    Ok(n * n - rank)
}

/// Greedy maximal independent subset of vectorized matrices.
fn independent_subset(candidates: &[Mat], tol: f64) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut ortho: Vec<crate::Vector> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let mut v = crate::Vector::from_column_slice(c.as_slice());
        let norm0 = v.norm();
        if norm0 <= tol {
            continue;
        }
        for u in &ortho {
            let p = u.dot(&v);
            v -= u * p;
        }
        if v.norm() > tol * (1.0 + norm0) {
            ortho.push(v.normalize());
            kept.push(i);
        }
    }
    kept
}

/// Miniversal unfolding of L inside the eigenspace, with the mandatory
/// agreement between the projected-centralizer and tangent-space counts.
pub fn miniversal_unfolding(l: &Mat, spec: &EigenspaceSpec) -> Result<UnfoldingFamily> {
    let tol = spec.tol.max(linalg::DEFAULT_TOL);
    let (is_member, res) = structure::membership(l, spec)?;
    if !is_member {
        return Err(Error::MalformedInput(format!(
            "map is not in the eigenspace (residual {res:.3e})"
        )));
    }
    let jc = jc_decompose(l, tol)?;
    let blocks = invariant_blocks(l, &jc, tol)?;
    let cb = centralizer_basis(l, &jc, &blocks)?;
    let oracle = sylvester_centralizer_dim(l, tol)?;
    if cb.dim != oracle {
        return Err(Error::NumericFailure {
            context: format!(
                "centralizer dimension mismatch: constructive {} vs Sylvester {}",
                cb.dim, oracle
            ),
            residual: (cb.dim as f64 - oracle as f64).abs(),
        });
    }

    // Candidate directions: projections of the transposed centralizer basis.
    let candidates: Vec<Mat> = cb
        .basis
        .iter()
        .map(|b| structure::project(&b.transpose(), spec))
        .collect::<Result<Vec<_>>>()?;
    let kept = independent_subset(&candidates, tol.max(1e-8));
    let directions: Vec<Mat> = kept.iter().map(|&i| candidates[i].clone()).collect();

    // Tangent space of the structure-preserving group orbit.
    let lie = spec.lie_algebra_spec();
    let lie_basis = structure::eigenspace_basis(&lie)?;
    let eig_dim = structure::eigenspace_basis(spec)?.len();
    let n = l.nrows();
    let mut tangent_cols = Vec::new();
    for u in &lie_basis {
        let c = u * l - l * u;
        tangent_cols.push(crate::Vector::from_column_slice(c.as_slice()));
    }
    let tangent = linalg::from_columns(n * n, &tangent_cols);
    let (tangent_dim, _) = linalg::rank_kernel(&tangent, tol.max(1e-8))?;
    let codim = eig_dim - tangent_dim;
    if directions.len() != codim {
        return Err(Error::NumericFailure {
            context: format!(
                "codimension cross-check failed: {} projected directions vs {} = dim eigenspace - dim tangent",
                directions.len(),
                codim
            ),
            residual: (directions.len() as f64 - codim as f64).abs(),
        });
    }
    // Transversality: tangent + directions fill the eigenspace.
    let mut stacked = tangent_cols;
    for d in &directions {
        stacked.push(crate::Vector::from_column_slice(d.as_slice()));
    }
    let all = linalg::from_columns(n * n, &stacked);
    let (full_rank, _) = linalg::rank_kernel(&all, tol.max(1e-8))?;
    if full_rank != eig_dim {
        return Err(Error::NumericFailure {
            context: "transversality check failed".into(),
            residual: (eig_dim as f64 - full_rank as f64).abs(),
        });
    }
    Ok(UnfoldingFamily {
        l0: l.clone(),
        directions,
        codim,
        tangent_dim,
    })
}

/// Eigenvalue trajectories along a parameter path with PASS/SPLIT events at
/// class-count changes. An event is a SPLIT when axis-bound classes acquire
/// off-axis components larger than 10 * tol after the collision.
pub fn sweep_eigenvalues(
    fam: &UnfoldingFamily,
    path: &[Vec<f64>],
    tol: f64,
) -> Result<SweepResult> {
    let atol = 10.0 * tol;
    let mut steps = Vec::with_capacity(path.len());
    for (i, nu) in path.iter().enumerate() {
        let m = fam.evaluate(nu)?;
        let classes = linalg::eigen_cluster(&m, tol.max(1e-8))?;
        steps.push(SweepStep {
            step: i,
            nu: nu.clone(),
            classes,
        });
    }
    let mut events = Vec::new();
    for i in 1..steps.len() {
        let before = &steps[i - 1].classes;
        let after = &steps[i].classes;
        if before.len() == after.len() {
            continue;
        }
        let on_imag = |cs: &[EigenvalueClass]| cs.iter().all(|c| c.alpha.abs() <= atol);
        let on_real = |cs: &[EigenvalueClass]| cs.iter().all(|c| c.beta.abs() <= atol);
        let kind = if (on_imag(before) && !on_imag(after) && !on_real(after))
            || (on_real(before) && !on_real(after) && !on_imag(after))
        {
            EventKind::Split
        } else {
            EventKind::Pass
        };
        let word = match kind {
            EventKind::Pass => "pass",
            EventKind::Split => "split",
        };
        events.push(SweepEvent {
            step: i - 1,
            kind,
            description: format!(
                "class count {} -> {} between steps {} and {} ({word})",
                before.len(),
                after.len(),
                i - 1,
                i
            ),
        });
    }
    Ok(SweepResult { steps, events })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{EigenspaceSpec, Kind, StructureMap};

    fn single_spec(kind: Kind, s: Mat, mu: f64) -> EigenspaceSpec {
        let sm = StructureMap::new(kind, s, 1e-9).unwrap();
        EigenspaceSpec::new(vec![sm], vec![mu], 1e-9).unwrap()
    }

    fn jmat() -> Mat {
        Mat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
    }

    #[test]
    fn centralizer_of_zero_is_everything() {
        let l = Mat::zeros(3, 3);
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let cb = centralizer_basis(&l, &jc, &blocks).unwrap();
        assert_eq!(cb.dim, 9);
        assert_eq!(sylvester_centralizer_dim(&l, 1e-9).unwrap(), 9);
    }

    #[test]
    fn centralizer_of_regular_nilpotent_is_polynomials() {
        let n = 4;
        let mut l = Mat::zeros(n, n);
        for i in 1..n {
            l[(i, i - 1)] = 1.0;
        }
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let cb = centralizer_basis(&l, &jc, &blocks).unwrap();
        assert_eq!(cb.dim, n);
        assert_eq!(sylvester_centralizer_dim(&l, 1e-9).unwrap(), n);
    }

    #[test]
    fn centralizer_heights_two_one() {
        // Heights (2,1): dim = 1*2 + 3*1 = 5.
        let mut l = Mat::zeros(3, 3);
        l[(1, 0)] = 1.0;
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let cb = centralizer_basis(&l, &jc, &blocks).unwrap();
        assert_eq!(cb.dim, 5);
        assert_eq!(sylvester_centralizer_dim(&l, 1e-9).unwrap(), 5);
    }

    #[test]
    fn centralizer_complex_block() {
        // One complex chain of height 2: r=2, dim = 2*2 = 4.
        let l = Mat::from_row_slice(
            4,
            4,
            &[
                0.0, -1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 1.0, 1.0, 0.0,
            ],
        );
        let jc = jc_decompose(&l, 1e-9).unwrap();
        let blocks = invariant_blocks(&l, &jc, 1e-9).unwrap();
        let cb = centralizer_basis(&l, &jc, &blocks).unwrap();
        assert_eq!(cb.dim, sylvester_centralizer_dim(&l, 1e-9).unwrap());
        assert_eq!(cb.dim, 4);
    }

    #[test]
    fn reversible_2b_has_codim_one() {
        let l = Mat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let spec = single_spec(
            Kind::Automorphism,
            Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            -1.0,
        );
        let fam = miniversal_unfolding(&l, &spec).unwrap();
        assert_eq!(fam.codim, 1);
    }

    #[test]
    fn symplectic_8b_has_codim_one() {
        let l = Mat::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let spec = single_spec(Kind::AntiAutomorphism, jmat(), -1.0);
        let fam = miniversal_unfolding(&l, &spec).unwrap();
        assert_eq!(fam.codim, 1);
    }

    #[test]
    fn scalar_1a_has_codim_one() {
        let l = Mat::zeros(1, 1);
        let spec = single_spec(Kind::Automorphism, Mat::identity(1, 1), 1.0);
        let fam = miniversal_unfolding(&l, &spec).unwrap();
        assert_eq!(fam.codim, 1);
    }

    #[test]
    fn sweep_pass_on_scalar_family() {
        let l = Mat::zeros(1, 1);
        let spec = single_spec(Kind::Automorphism, Mat::identity(1, 1), 1.0);
        let fam = miniversal_unfolding(&l, &spec).unwrap();
        let path: Vec<Vec<f64>> = (0..21).map(|i| vec![-0.1 + 0.01 * i as f64]).collect();
        let sw = sweep_eigenvalues(&fam, &path, 1e-9).unwrap();
        assert_eq!(sw.steps.len(), 21);
        assert!(sw.events.is_empty());
    }

    #[test]
    fn sweep_rejects_wrong_parameter_length() {
        let l = Mat::zeros(1, 1);
        let spec = single_spec(Kind::Automorphism, Mat::identity(1, 1), 1.0);
        let fam = miniversal_unfolding(&l, &spec).unwrap();
        assert!(fam.evaluate(&[0.1, 0.2]).is_err());
    }
}

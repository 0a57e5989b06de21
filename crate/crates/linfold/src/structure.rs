//! Structure maps, order-two (anti)-automorphisms of gl(V), eigenspace
//! membership and projection, and normalization of single maps and of
//! commuting families.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, DEFAULT_TOL};

/// Whether the induced map on gl(V) multiplies or anti-multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// gamma(A) = s^-1 A s
    Automorphism,
    /// gamma(A) = s^-1 A^T s
    AntiAutomorphism,
}

/// An invertible matrix s realizing an order-two (anti)-automorphism of gl(V).
///
/// Order two forces s^2 = c I (automorphism case) or s^T = eps s
/// (anti-automorphism case); both are checked at construction.
#[derive(Debug, Clone)]
pub struct StructureMap {
    pub s: Mat,
    pub kind: Kind,
    s_inv: Mat,
    /// eps with s^T = eps s; anti-automorphisms only.
    pub star_sign: Option<f64>,
    /// c with s^2 = c I after unit scaling; automorphisms always, normalized
    /// anti-automorphisms too.
    pub square_sign: Option<f64>,
}

impl StructureMap {
    pub fn new(kind: Kind, s: Mat, tol: f64) -> Result<StructureMap> {
        linalg::check_finite(&s)?;
        if s.nrows() != s.ncols() {
            return Err(Error::InvalidStructure("s must be square".into()));
        }
        let n = s.nrows();
        let s_inv = s
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidStructure("s is singular".into()))?;
        let scale = tol * (1.0 + linalg::fnorm(&s)) * (1.0 + linalg::fnorm(&s));
        let mut star_sign = None;
        let mut square_sign = None;
        match kind {
            Kind::Automorphism => {
                // Order two <=> s^2 is a scalar matrix.
                let s2 = &s * &s;
                let c = s2.trace() / n as f64;
                if linalg::fnorm(&(&s2 - Mat::identity(n, n) * c)) > scale.max(1e-6) {
                    return Err(Error::InvalidStructure(
                        "s^2 is not scalar: the automorphism has order > 2".into(),
                    ));
                }
                square_sign = Some(c.signum());
            }
            Kind::AntiAutomorphism => {
                // Order two <=> s^T = ±s.
                let st = s.transpose();
                let sym = linalg::fnorm(&(&st - &s));
                let skew = linalg::fnorm(&(&st + &s));
                let thr = tol * (1.0 + linalg::fnorm(&s));
                if sym <= thr.max(1e-6) {
                    star_sign = Some(1.0);
                } else if skew <= thr.max(1e-6) {
                    star_sign = Some(-1.0);
                } else {
                    return Err(Error::InvalidStructure(
                        "s is neither symmetric nor skew: the anti-automorphism has order > 2"
                            .into(),
                    ));
                }
                let s2 = &s * &s;
                let c = s2.trace() / n as f64;
                if linalg::fnorm(&(&s2 - Mat::identity(n, n) * c)) <= scale.max(1e-9) && c != 0.0 {
                    square_sign = Some(c.signum());
                }
            }
        }
        Ok(StructureMap {
            s,
            kind,
            s_inv,
            star_sign,
            square_sign,
        })
    }

    pub fn dim(&self) -> usize {
        self.s.nrows()
    }

    /// sigma(gamma): +1 for automorphisms, -1 for anti-automorphisms.
    pub fn sigma(&self) -> f64 {
        match self.kind {
            Kind::Automorphism => 1.0,
            Kind::AntiAutomorphism => -1.0,
        }
    }

    /// gamma_s(A): s^-1 A s (automorphism) or s^-1 A^T s (anti-automorphism).
    pub fn apply_gamma(&self, a: &Mat) -> Result<Mat> {
        if a.nrows() != self.dim() || a.ncols() != self.dim() {
            return Err(Error::MalformedInput("shape mismatch in apply_gamma".into()));
        }
        Ok(match self.kind {
            Kind::Automorphism => &self.s_inv * a * &self.s,
            Kind::AntiAutomorphism => &self.s_inv * a.transpose() * &self.s,
        })
    }

    /// Transports s under the change of basis g: gsg^-1 (automorphism) or
    /// gsg^T (anti-automorphism). This is the action matching L -> gLg^-1.
    pub fn transport(&self, g: &Mat) -> Result<StructureMap> {
        let g_inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::MalformedInput("singular change of basis".into()))?;
        let s = match self.kind {
            Kind::Automorphism => g * &self.s * &g_inv,
            Kind::AntiAutomorphism => g * &self.s * g.transpose(),
        };
        StructureMap::new(self.kind, s, DEFAULT_TOL)
    }

    /// True if s is orthogonal with s^2 = ±I at the given tolerance.
    pub fn is_normalized(&self, tol: f64) -> bool {
        let n = self.dim();
        let id = Mat::identity(n, n);
        let orth = linalg::fnorm(&(self.s.transpose() * &self.s - &id));
        let s2 = &self.s * &self.s;
        let invol = linalg::fnorm(&(&s2 - &id)).min(linalg::fnorm(&(&s2 + &id)));
        orth <= tol * 10.0 * n as f64 && invol <= tol * 10.0 * n as f64
    }
}

/// A simultaneous eigenspace gl_{mu_1..mu_p}(V) of commuting order-two
/// (anti)-automorphisms.
#[derive(Debug, Clone)]
pub struct EigenspaceSpec {
    pub generators: Vec<StructureMap>,
    pub mus: Vec<f64>,
    pub dim: usize,
    pub tol: f64,
}

impl EigenspaceSpec {
    pub fn new(generators: Vec<StructureMap>, mus: Vec<f64>, tol: f64) -> Result<EigenspaceSpec> {
        if generators.is_empty() {
            return Err(Error::MalformedInput("need at least one structure map".into()));
        }
        if generators.len() != mus.len() {
            return Err(Error::MalformedInput(
                "one eigenvalue per structure map required".into(),
            ));
        }
        if mus.iter().any(|&m| m != 1.0 && m != -1.0) {
            return Err(Error::MalformedInput("eigenvalues must be ±1".into()));
        }
        let dim = generators[0].dim();
        if generators.iter().any(|g| g.dim() != dim) {
            return Err(Error::IncompatibleStructures(
                "structure maps have mixed dimensions".into(),
            ));
        }
        let spec = EigenspaceSpec {
            generators,
            mus,
            dim,
            tol,
        };
        spec.check_commuting()?;
        Ok(spec)
    }

    /// Checks gamma_i gamma_j = gamma_j gamma_i on the matrix-unit basis.
    fn check_commuting(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..self.generators.len() {
            for j in (i + 1)..self.generators.len() {
                let gi = &self.generators[i];
                let gj = &self.generators[j];
                for k in 0..n {
                    for l in 0..n {
                        let mut e = Mat::zeros(n, n);
                        e[(k, l)] = 1.0;
                        let a = gi.apply_gamma(&gj.apply_gamma(&e)?)?;
                        let b = gj.apply_gamma(&gi.apply_gamma(&e)?)?;
                        if linalg::fnorm(&(a - b)) > self.tol.max(1e-9) * 100.0 * n as f64 {
                            return Err(Error::IncompatibleStructures(format!(
                                "generators {i} and {j} do not commute on gl(V)"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The same generators with different target eigenvalues. Used for the
    /// Lie algebra gl_{sigma(gamma_i)} of the structure-preserving group.
    pub fn with_mus(&self, mus: Vec<f64>) -> EigenspaceSpec {
        EigenspaceSpec {
            generators: self.generators.clone(),
            mus,
            dim: self.dim,
            tol: self.tol,
        }
    }

    /// Spec for the structure-preserving Lie algebra: mu_i = sigma(gamma_i).
    pub fn lie_algebra_spec(&self) -> EigenspaceSpec {
        let sigmas = self.generators.iter().map(|g| g.sigma()).collect();
        self.with_mus(sigmas)
    }

    /// Transports every generator by g (L -> gLg^-1 convention).
    pub fn transport(&self, g: &Mat) -> Result<EigenspaceSpec> {
        let generators = self
            .generators
            .iter()
            .map(|sm| sm.transport(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(EigenspaceSpec {
            generators,
            mus: self.mus.clone(),
            dim: self.dim,
            tol: self.tol,
        })
    }
}

/// Membership of L in the eigenspace: residual = max_i |gamma_i(L) - mu_i L|
/// relative to 1 + |L|.
pub fn membership(l: &Mat, spec: &EigenspaceSpec) -> Result<(bool, f64)> {
    if l.nrows() != spec.dim || l.ncols() != spec.dim {
        return Err(Error::MalformedInput("shape mismatch in membership".into()));
    }
    let mut residual: f64 = 0.0;
    for (sm, &mu) in spec.generators.iter().zip(&spec.mus) {
        let r = linalg::fnorm(&(sm.apply_gamma(l)? - l * mu)) / (1.0 + linalg::fnorm(l));
        residual = residual.max(r);
    }
    Ok((residual <= spec.tol, residual))
}

/// Orthogonal projection of gl(V) onto the eigenspace:
/// Pi(A) = 2^-p * sum over subsets T of prod_{i in T} mu_i * gamma_T(A).
pub fn project(a: &Mat, spec: &EigenspaceSpec) -> Result<Mat> {
    let p = spec.generators.len();
    let n = spec.dim;
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::MalformedInput("shape mismatch in project".into()));
    }
    let mut acc = Mat::zeros(n, n);
    for mask in 0..(1usize << p) {
        let mut term = a.clone();
        let mut coeff = 1.0;
        for i in 0..p {
            if mask & (1 << i) != 0 {
                term = spec.generators[i].apply_gamma(&term)?;
                coeff *= spec.mus[i];
            }
        }
        acc += term * coeff;
    }
    Ok(acc / (1u64 << p) as f64)
}

/// Orthonormal basis (in vectorized form, one matrix per element) of the
/// eigenspace cut out by `spec`.
pub fn eigenspace_basis(spec: &EigenspaceSpec) -> Result<Vec<Mat>> {
    let n = spec.dim;
    let mut cols = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            let mut e = Mat::zeros(n, n);
            e[(k, l)] = 1.0;
            let pe = project(&e, spec)?;
            cols.push(Mat::from_column_slice(n * n, 1, pe.as_slice()).column(0).into_owned());
        }
    }
    let span = linalg::from_columns(n * n, &cols);
    let img = linalg::orthonormal_image(&span, spec.tol);
    Ok(img
        .column_iter()
        .map(|c| Mat::from_column_slice(n, n, c.as_slice()))
        .collect())
}

/// Dimension of the eigenspace gl_{mu_1..mu_p}(V).
pub fn eigenspace_dim(spec: &EigenspaceSpec) -> Result<usize> {
    Ok(eigenspace_basis(spec)?.len())
}

/// Brings a single structure map to its standard form: diag(I_p, -I_q) or
/// [[0,-I],[I,0]]. Returns the normalized map and the change of basis g with
/// s_normal = g s g^-1 (automorphism) or g s g^T (anti-automorphism).
pub fn normalize_structure(sm: &StructureMap) -> Result<(StructureMap, Mat)> {
    let n = sm.dim();
    let tol = DEFAULT_TOL;
    match sm.kind {
        Kind::Automorphism => {
            let s2 = &sm.s * &sm.s;
            let c = s2.trace() / n as f64;
            let s_scaled = &sm.s / c.abs().sqrt();
            if c > 0.0 {
                // Involution: split into ±1 eigenspaces.
                let id = Mat::identity(n, n);
                let (_, kp) = linalg::rank_kernel(&(&s_scaled - &id), tol)?;
                let (_, km) = linalg::rank_kernel(&(&s_scaled + &id), tol)?;
                let p = kp.dim();
                let q = km.dim();
                if p + q != n {
                    return Err(Error::InvalidStructure(
                        "involution eigenspaces do not fill V".into(),
                    ));
                }
                let mut basis = Mat::zeros(n, n);
                basis.columns_mut(0, p).copy_from(&kp.basis);
                basis.columns_mut(p, q).copy_from(&km.basis);
                let g = basis.try_inverse().ok_or_else(|| {
                    Error::NumericFailure {
                        context: "eigenbasis of involution is singular".into(),
                        residual: f64::NAN,
                    }
                })?;
                let mut s_n = Mat::identity(n, n);
                for i in p..n {
                    s_n[(i, i)] = -1.0;
                }
                Ok((StructureMap::new(Kind::Automorphism, s_n, tol)?, g))
            } else {
                // Anti-involution s^2 = -I: basis {e_1..e_k, s e_1..s e_k}.
                if n % 2 != 0 {
                    return Err(Error::InvalidStructure(
                        "s^2 = -I needs even dimension".into(),
                    ));
                }
                let k = n / 2;
                let mut es: Vec<crate::Vector> = Vec::new();
                let mut chosen = Mat::zeros(n, 0);
                for _ in 0..k {
                    let comp = linalg::orthonormal_complement(&chosen, tol);
                    let e = comp.column(0).into_owned();
                    let f = &s_scaled * &e;
                    let mut next = Mat::zeros(n, chosen.ncols() + 2);
                    next.columns_mut(0, chosen.ncols()).copy_from(&chosen);
                    next.set_column(chosen.ncols(), &e);
                    next.set_column(chosen.ncols() + 1, &f);
                    chosen = next;
                    es.push(e);
                }
                let mut basis = Mat::zeros(n, n);
                for (i, e) in es.iter().enumerate() {
                    basis.set_column(i, e);
                    let f = &s_scaled * e;
                    basis.set_column(k + i, &f);
                }
                let g = basis.try_inverse().ok_or_else(|| Error::NumericFailure {
                    context: "pair basis for s^2 = -I is singular".into(),
                    residual: f64::NAN,
                })?;
                let s_n = split_form(k);
                Ok((StructureMap::new(Kind::Automorphism, s_n, tol)?, g))
            }
        }
        Kind::AntiAutomorphism => {
            let eps = sm.star_sign.expect("validated at construction");
            if eps > 0.0 {
                // Symmetric: congruence to diag(I_p, -I_q), +1 entries first.
                let se = nalgebra::linalg::SymmetricEigen::new(sm.s.clone());
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| {
                    se.eigenvalues[b]
                        .partial_cmp(&se.eigenvalues[a])
                        .expect("finite eigenvalues")
                });
                let mut g = Mat::zeros(n, n);
                for (row, &idx) in order.iter().enumerate() {
                    let lam = se.eigenvalues[idx];
                    if lam.abs() <= tol * (1.0 + linalg::fnorm(&sm.s)) {
                        return Err(Error::InvalidStructure(
                            "symmetric structure map is singular".into(),
                        ));
                    }
                    let q_col = se.eigenvectors.column(idx) / lam.abs().sqrt();
                    g.row_mut(row).copy_from(&q_col.transpose());
                }
                let p = se.eigenvalues.iter().filter(|&&x| x > 0.0).count();
                let mut s_n = Mat::identity(n, n);
                for i in p..n {
                    s_n[(i, i)] = -1.0;
                }
                Ok((StructureMap::new(Kind::AntiAutomorphism, s_n, tol)?, g))
            } else {
                // Skew: scale to an orthogonal anti-involution, rotate to
                // 2x2 rotation blocks, flip and interleave to [[0,-I],[I,0]].
                if n % 2 != 0 {
                    return Err(Error::InvalidStructure("skew s needs even dimension".into()));
                }
                let k = n / 2;
                let sts = sm.s.transpose() * &sm.s;
                let h = linalg::sym_power(&sts, -0.25);
                let t = &h * &sm.s * &h; // orthogonal, t^2 = -I
                let schur = nalgebra::linalg::Schur::try_new(t.clone(), f64::EPSILON * 16.0, 10_000)
                    .ok_or_else(|| Error::NumericFailure {
                        context: "Schur of skew structure map did not converge".into(),
                        residual: f64::NAN,
                    })?;
                let (q, tt) = schur.unpack();
                // tt = q^T t q is block diagonal with blocks ±J_2.
                let mut g_rows = Mat::zeros(n, n);
                for b in 0..k {
                    let sub = tt[(2 * b + 1, 2 * b)];
                    // Want block [[0,-1],[1,0]]: flip second row if sub < 0.
                    let flip = if sub < 0.0 { -1.0 } else { 1.0 };
                    // Row b of the final basis change picks q column 2b,
                    // row k+b picks (flipped) q column 2b+1.
                    g_rows
                        .row_mut(b)
                        .copy_from(&q.column(2 * b).transpose());
                    g_rows
                        .row_mut(k + b)
                        .copy_from(&(q.column(2 * b + 1).transpose() * flip));
                }
                let g = &g_rows * &h;
                let s_n = split_form(k);
                Ok((StructureMap::new(Kind::AntiAutomorphism, s_n, tol)?, g))
            }
        }
    }
}

/// The 2k x 2k standard skew form [[0, -I_k], [I_k, 0]].
pub fn split_form(k: usize) -> Mat {
    let mut s = Mat::zeros(2 * k, 2 * k);
    for i in 0..k {
        s[(i, k + i)] = -1.0;
        s[(k + i, i)] = 1.0;
    }
    s
}

/// Brings a commuting family to orthogonal maps with s_i^2 = ±I and exact
/// (anti)commutation, by one shared change of basis g.
///
/// Automorphisms are handled by averaging the inner product over the finite
/// group they generate; anti-automorphisms by symmetric scaling congruences
/// (t^T t)^{-1/4} that fix the already-normalized maps.
pub fn orthogonalize_family(spec: &EigenspaceSpec) -> Result<(EigenspaceSpec, Mat)> {
    let n = spec.dim;
    let tol = spec.tol.max(DEFAULT_TOL);
    let mut g_total = Mat::identity(n, n);
    let mut current = spec.clone();

    // Unit scaling: automorphisms to s^2 = ±I (gamma is scale-invariant).
    let mut gens = current.generators.clone();
    for sm in gens.iter_mut() {
        if sm.kind == Kind::Automorphism {
            let s2 = &sm.s * &sm.s;
            let c = s2.trace() / n as f64;
            *sm = StructureMap::new(Kind::Automorphism, &sm.s / c.abs().sqrt(), tol)?;
        }
    }
    current.generators = gens;

    // Average the inner product over the group generated by the automorphism
    // structure maps; the symmetric square root is the change of basis.
    let autos: Vec<Mat> = current
        .generators
        .iter()
        .filter(|sm| sm.kind == Kind::Automorphism)
        .map(|sm| sm.s.clone())
        .collect();
    if !autos.is_empty() {
        let group = enumerate_group(&autos, n, 256)?;
        let mut a = Mat::zeros(n, n);
        for g in &group {
            a += g.transpose() * g;
        }
        a /= group.len() as f64;
        let h = linalg::sym_power(&a, 0.5);
        current = current.transport(&h)?;
        g_total = &h * &g_total;
    }

    // Normalize anti-automorphisms one at a time. h = (t^T t)^{-1/4} commutes
    // with every map already orthogonal with square ±I, so earlier work is
    // preserved.
    for idx in 0..current.generators.len() {
        if current.generators[idx].kind != Kind::AntiAutomorphism {
            continue;
        }
        let t = current.generators[idx].s.clone();
        let h = linalg::sym_power(&(t.transpose() * &t), -0.25);
        current = current.transport(&h)?;
        g_total = &h * &g_total;
    }

    // Postcondition check.
    for (i, sm) in current.generators.iter().enumerate() {
        if !sm.is_normalized(tol * 100.0) {
            return Err(Error::IncompatibleStructures(format!(
                "generator {i} failed to normalize jointly"
            )));
        }
    }
    for i in 0..current.generators.len() {
        for j in (i + 1)..current.generators.len() {
            let si = &current.generators[i].s;
            let sj = &current.generators[j].s;
            let c = linalg::fnorm(&(si * sj - sj * si));
            let ac = linalg::fnorm(&(si * sj + sj * si));
            if c.min(ac) > tol * 1e3 * n as f64 {
                return Err(Error::IncompatibleStructures(format!(
                    "generators {i}, {j} neither commute nor anticommute after normalization"
                )));
            }
        }
    }
    Ok((current, g_total))
}

/// Closure of the generated matrix group, with a size cap.
fn enumerate_group(gens: &[Mat], n: usize, cap: usize) -> Result<Vec<Mat>> {
    let mut group: Vec<Mat> = vec![Mat::identity(n, n)];
    let mut frontier: Vec<Mat> = vec![Mat::identity(n, n)];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = &g * s;
            let known = group
                .iter()
                .any(|k| linalg::fnorm(&(k - &h)) < 1e-8 * n as f64);
            if !known {
                if group.len() >= cap {
                    return Err(Error::IncompatibleStructures(
                        "automorphism group closure exceeds cap".into(),
                    ));
                }
                group.push(h.clone());
                frontier.push(h);
            }
        }
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mat2(a: f64, b: f64, c: f64, d: f64) -> Mat {
        Mat::from_row_slice(2, 2, &[a, b, c, d])
    }

    fn jmat() -> Mat {
        mat2(0.0, -1.0, 1.0, 0.0)
    }

    #[test]
    fn apply_gamma_reversible_swap() {
        let sm = StructureMap::new(Kind::Automorphism, mat2(1.0, 0.0, 0.0, -1.0), 1e-9).unwrap();
        let a = mat2(0.0, 1.0, 1.0, 0.0);
        let got = sm.apply_gamma(&a).unwrap();
        assert_relative_eq!(got, mat2(0.0, -1.0, -1.0, 0.0), epsilon = 1e-12);
    }

    #[test]
    fn apply_gamma_transpose() {
        let sm = StructureMap::new(Kind::AntiAutomorphism, Mat::identity(2, 2), 1e-9).unwrap();
        let a = mat2(1.0, 2.0, 3.0, 4.0);
        assert_relative_eq!(sm.apply_gamma(&a).unwrap(), a.transpose(), epsilon = 1e-12);
    }

    #[test]
    fn apply_gamma_symplectic_on_j() {
        let sm = StructureMap::new(Kind::AntiAutomorphism, jmat(), 1e-9).unwrap();
        assert_relative_eq!(sm.apply_gamma(&jmat()).unwrap(), -jmat(), epsilon = 1e-12);
    }

    #[test]
    fn gamma_is_an_involution() {
        let sm = StructureMap::new(Kind::AntiAutomorphism, jmat(), 1e-9).unwrap();
        let a = mat2(1.0, 2.0, 3.0, 4.0);
        let twice = sm.apply_gamma(&sm.apply_gamma(&a).unwrap()).unwrap();
        assert_relative_eq!(twice, a, epsilon = 1e-12);
    }

    #[test]
    fn normalize_scaled_reflection() {
        let sm = StructureMap::new(Kind::Automorphism, mat2(3.0, 0.0, 0.0, -3.0), 1e-9).unwrap();
        let (norm, g) = normalize_structure(&sm).unwrap();
        assert_relative_eq!(norm.s, mat2(1.0, 0.0, 0.0, -1.0), epsilon = 1e-12);
        assert_relative_eq!(g, Mat::identity(2, 2), epsilon = 1e-12);
    }

    #[test]
    fn normalize_scaled_skew() {
        let sm =
            StructureMap::new(Kind::AntiAutomorphism, mat2(0.0, -2.0, 2.0, 0.0), 1e-9).unwrap();
        let (norm, g) = normalize_structure(&sm).unwrap();
        assert_relative_eq!(norm.s, jmat(), epsilon = 1e-9);
        let transported = &g * &sm.s * g.transpose();
        assert_relative_eq!(transported, norm.s, epsilon = 1e-9);
    }

    #[test]
    fn normalize_indefinite_symmetric() {
        let sm =
            StructureMap::new(Kind::AntiAutomorphism, mat2(2.0, 0.0, 0.0, -1.0), 1e-9).unwrap();
        let (norm, g) = normalize_structure(&sm).unwrap();
        assert_relative_eq!(norm.s, mat2(1.0, 0.0, 0.0, -1.0), epsilon = 1e-9);
        let transported = &g * &sm.s * g.transpose();
        assert_relative_eq!(transported, norm.s, epsilon = 1e-9);
    }

    #[test]
    fn normalize_complex_structure() {
        // s^2 = -4I automorphism normalizes to the split form.
        let sm = StructureMap::new(Kind::Automorphism, mat2(0.0, -2.0, 2.0, 0.0), 1e-9).unwrap();
        let (norm, g) = normalize_structure(&sm).unwrap();
        assert_relative_eq!(norm.s, jmat(), epsilon = 1e-9);
        let g_inv = g.clone().try_inverse().unwrap();
        let transported = &g * (&sm.s / 2.0) * &g_inv;
        assert_relative_eq!(transported, norm.s, epsilon = 1e-9);
    }

    #[test]
    fn membership_reversible_swap() {
        let sm = StructureMap::new(Kind::Automorphism, mat2(1.0, 0.0, 0.0, -1.0), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![sm], vec![-1.0], 1e-9).unwrap();
        let (ok, r) = membership(&mat2(0.0, 1.0, 1.0, 0.0), &spec).unwrap();
        assert!(ok, "residual {r}");
        let (ok, r) = membership(&Mat::identity(2, 2), &spec).unwrap();
        assert!(!ok);
        assert!(r > 0.5);
    }

    #[test]
    fn membership_symplectic_j() {
        let sm = StructureMap::new(Kind::AntiAutomorphism, jmat(), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![sm], vec![-1.0], 1e-9).unwrap();
        let (ok, _) = membership(&jmat(), &spec).unwrap();
        assert!(ok);
    }

    #[test]
    fn project_kills_diagonal_in_reversible_case() {
        let sm = StructureMap::new(Kind::Automorphism, mat2(1.0, 0.0, 0.0, -1.0), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![sm], vec![-1.0], 1e-9).unwrap();
        let a = mat2(1.0, 2.0, 3.0, 4.0);
        let p = project(&a, &spec).unwrap();
        assert_relative_eq!(p, mat2(0.0, 2.0, 3.0, 0.0), epsilon = 1e-12);
        // Idempotence and membership.
        assert_relative_eq!(project(&p, &spec).unwrap(), p, epsilon = 1e-12);
        assert!(membership(&p, &spec).unwrap().0);
    }

    #[test]
    fn project_symmetric_part() {
        let sm = StructureMap::new(Kind::AntiAutomorphism, Mat::identity(2, 2), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![sm], vec![1.0], 1e-9).unwrap();
        let a = mat2(1.0, 2.0, 3.0, 4.0);
        let p = project(&a, &spec).unwrap();
        assert_relative_eq!(p, (&a + a.transpose()) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenspace_dims_match_classical_counts() {
        // Symmetric 3x3: dim 6; skew-adjoint wrt identity (mu=-1): dim 3.
        let sm = StructureMap::new(Kind::AntiAutomorphism, Mat::identity(3, 3), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![sm.clone()], vec![1.0], 1e-9).unwrap();
        assert_eq!(eigenspace_dim(&spec).unwrap(), 6);
        let spec = EigenspaceSpec::new(vec![sm], vec![-1.0], 1e-9).unwrap();
        assert_eq!(eigenspace_dim(&spec).unwrap(), 3);
        // sp(2): dim 3.
        let sm = StructureMap::new(Kind::AntiAutomorphism, jmat(), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![sm], vec![-1.0], 1e-9).unwrap();
        assert_eq!(eigenspace_dim(&spec).unwrap(), 3);
    }

    #[test]
    fn orthogonalize_preserves_already_normal_pair() {
        let r = StructureMap::new(Kind::Automorphism, mat2(1.0, 0.0, 0.0, -1.0), 1e-9).unwrap();
        let j = StructureMap::new(Kind::AntiAutomorphism, jmat(), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![r, j], vec![-1.0, -1.0], 1e-9).unwrap();
        let (norm, g) = orthogonalize_family(&spec).unwrap();
        assert_relative_eq!(g, Mat::identity(2, 2), epsilon = 1e-9);
        for sm in &norm.generators {
            assert!(sm.is_normalized(1e-9));
        }
    }

    #[test]
    fn orthogonalize_quaternionic_pair() {
        // Left multiplication by i and j on the quaternions.
        let c = Mat::from_row_slice(
            4,
            4,
            &[
                0.0, -1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, -1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        );
        let q = Mat::from_row_slice(
            4,
            4,
            &[
                0.0, 0.0, -1.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, -1.0, 0.0, 0.0,
            ],
        );
        assert_relative_eq!(&c * &c, -Mat::identity(4, 4), epsilon = 1e-12);
        assert_relative_eq!(&q * &q, -Mat::identity(4, 4), epsilon = 1e-12);
        assert_relative_eq!(&c * &q, -(&q * &c), epsilon = 1e-12);
        let cm = StructureMap::new(Kind::Automorphism, c, 1e-9).unwrap();
        let qm = StructureMap::new(Kind::Automorphism, q, 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![cm, qm], vec![1.0, 1.0], 1e-9).unwrap();
        let (norm, _) = orthogonalize_family(&spec).unwrap();
        let s0 = &norm.generators[0].s;
        let s1 = &norm.generators[1].s;
        assert!(norm.generators[0].is_normalized(1e-9));
        assert!(norm.generators[1].is_normalized(1e-9));
        assert_relative_eq!(s0 * s1, -(s1 * s0), epsilon = 1e-9);
    }

    #[test]
    fn scaled_family_gets_orthogonalized() {
        // A stretched involution; averaging restores orthogonality.
        let p = mat2(1.0, 1.0, 0.0, 1.0);
        let p_inv = p.clone().try_inverse().unwrap();
        let s = &p * mat2(1.0, 0.0, 0.0, -1.0) * &p_inv;
        let sm = StructureMap::new(Kind::Automorphism, s.clone(), 1e-9).unwrap();
        let spec = EigenspaceSpec::new(vec![sm], vec![-1.0], 1e-9).unwrap();
        let (norm, g) = orthogonalize_family(&spec).unwrap();
        assert!(norm.generators[0].is_normalized(1e-9));
        let g_inv = g.clone().try_inverse().unwrap();
        assert_relative_eq!(&g * &s * &g_inv, norm.generators[0].s, epsilon = 1e-9);
    }
}

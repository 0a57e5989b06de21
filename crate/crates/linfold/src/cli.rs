//! Batch front end: JSON problem files in, JSON/text reports and CSV
//! trajectories out. Exit codes: 0 success, 1 numeric or classification
//! failure, 2 malformed input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::normalform;
use crate::structure::{self, EigenspaceSpec, Kind, StructureMap};
use crate::unfolding::{self, EventKind};

fn default_tol() -> f64 {
    1e-9
}

/// On-disk problem: the map, its structures, and an optional tolerance.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub matrix: Vec<Vec<f64>>,
    pub structures: Vec<StructureEntry>,
    #[serde(default = "default_tol")]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub kind: String,
    pub matrix: Vec<Vec<f64>>,
    pub eigenvalue: f64,
}

fn rows_to_mat(rows: &[Vec<f64>], what: &str) -> Result<Mat> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::MalformedInput(format!("{what}: empty matrix")));
    }
    for r in rows {
        if r.len() != n {
            return Err(Error::MalformedInput(format!(
                "{what}: matrix is {n} x {}, must be square",
                r.len()
            )));
        }
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    let m = Mat::from_row_slice(n, n, &flat);
    crate::linalg::check_finite(&m)?;
    Ok(m)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let pf: ProblemFile = serde_json::from_str(text)
        .map_err(|e| Error::MalformedInput(format!("problem file: {e}")))?;
    if pf.structures.is_empty() {
        return Err(Error::MalformedInput(
            "problem file: at least one structure is required".into(),
        ));
    }
    if !(pf.tolerance > 0.0 && pf.tolerance.is_finite()) {
        return Err(Error::MalformedInput(
            "problem file: tolerance must be a positive finite number".into(),
        ));
    }
    Ok(pf)
}

/// Validated problem: the map plus its eigenspace specification.
pub fn problem_to_spec(pf: &ProblemFile) -> Result<(Mat, EigenspaceSpec)> {
    let l = rows_to_mat(&pf.matrix, "matrix")?;
    let n = l.nrows();
    let mut gens = Vec::new();
    let mut mus = Vec::new();
    for (i, st) in pf.structures.iter().enumerate() {
        let kind = match st.kind.as_str() {
            "automorphism" => Kind::Automorphism,
            "anti-automorphism" => Kind::AntiAutomorphism,
            other => {
                return Err(Error::MalformedInput(format!(
                    "structure {i}: unknown kind {other:?} (expected \"automorphism\" or \"anti-automorphism\")"
                )))
            }
        };
        if st.eigenvalue != 1.0 && st.eigenvalue != -1.0 {
            return Err(Error::MalformedInput(format!(
                "structure {i}: eigenvalue must be 1 or -1, got {}",
                st.eigenvalue
            )));
        }
        let s = rows_to_mat(&st.matrix, &format!("structure {i}"))?;
        if s.nrows() != n {
            return Err(Error::MalformedInput(format!(
                "structure {i}: dimension {} does not match matrix dimension {n}",
                s.nrows()
            )));
        }
        gens.push(StructureMap::new(kind, s, pf.tolerance)?);
        mus.push(st.eigenvalue);
    }
    let spec = EigenspaceSpec::new(gens, mus, pf.tolerance)?;
    Ok((l, spec))
}

fn mat_rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub dimension: usize,
    pub eigenspace_dimension: usize,
    pub is_member: bool,
    pub membership_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct LabelReport {
    pub alpha: f64,
    pub beta: f64,
    pub height: usize,
    pub signs: Vec<Option<f64>>,
    pub paired: bool,
    pub non_generic: bool,
    pub tag: String,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub type_ids: Vec<u8>,
    pub labels: Vec<LabelReport>,
    pub membership_residual: f64,
    pub residual: f64,
    pub max_orbit_classes: usize,
    pub non_generic: bool,
    pub normal_form: Vec<Vec<f64>>,
    pub structure_normal_forms: Vec<Vec<Vec<f64>>>,
    pub basis_change: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct UnfoldReport {
    pub codimension: usize,
    pub tangent_dimension: usize,
    pub directions: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Serialize)]
pub struct StandardizeReport {
    pub structure_normal_forms: Vec<Vec<Vec<f64>>>,
    pub basis_change: Vec<Vec<f64>>,
    pub kinds: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct SweepEventReport {
    pub step: usize,
    pub kind: String,
    pub description: String,
}

pub fn run_check(l: &Mat, spec: &EigenspaceSpec) -> Result<CheckReport> {
    let (is_member, residual) = structure::membership(l, spec)?;
    Ok(CheckReport {
        dimension: spec.dim,
        eigenspace_dimension: structure::eigenspace_dim(spec)?,
        is_member,
        membership_residual: residual,
    })
}

pub fn run_classify(l: &Mat, spec: &EigenspaceSpec) -> Result<ClassifyReport> {
    let rep = normalform::classify(l, spec)?;
    let type_ids = normalform::type_of(&structure::orthogonalize_family(spec)?.0)?;
    Ok(ClassifyReport {
        type_ids,
        labels: rep
            .labels
            .iter()
            .map(|lab| LabelReport {
                alpha: lab.lambda.alpha,
                beta: lab.lambda.beta,
                height: lab.height,
                signs: lab.signs.clone(),
                paired: lab.paired,
                non_generic: lab.non_generic,
                tag: lab.tag.clone(),
            })
            .collect(),
        membership_residual: rep.membership_residual,
        residual: rep.residual,
        max_orbit_classes: rep.max_orbit_classes,
        non_generic: rep.non_generic,
        normal_form: mat_rows(&rep.normal_form_l),
        structure_normal_forms: rep.normal_form_s.iter().map(mat_rows).collect(),
        basis_change: mat_rows(&rep.basis_change),
    })
}

pub fn run_unfold(l: &Mat, spec: &EigenspaceSpec) -> Result<UnfoldReport> {
    let fam = unfolding::miniversal_unfolding(l, spec)?;
    Ok(UnfoldReport {
        codimension: fam.codim,
        tangent_dimension: fam.tangent_dim,
        directions: fam.directions.iter().map(mat_rows).collect(),
    })
}

pub fn run_standardize(spec: &EigenspaceSpec) -> Result<StandardizeReport> {
    let (spec_n, g) = structure::orthogonalize_family(spec)?;
    Ok(StandardizeReport {
        structure_normal_forms: spec_n.generators.iter().map(|sm| mat_rows(&sm.s)).collect(),
        basis_change: mat_rows(&g),
        kinds: spec_n
            .generators
            .iter()
            .map(|sm| {
                match sm.kind {
                    Kind::Automorphism => "automorphism",
                    Kind::AntiAutomorphism => "anti-automorphism",
                }
                .to_string()
            })
            .collect(),
    })
}

/// CSV rows (step, nu..., re, im, class id) and the event list.
pub fn run_sweep(
    l: &Mat,
    spec: &EigenspaceSpec,
    path: &[Vec<f64>],
) -> Result<(String, Vec<SweepEventReport>)> {
    let fam = unfolding::miniversal_unfolding(l, spec)?;
    let sw = unfolding::sweep_eigenvalues(&fam, path, spec.tol)?;
    let n_params = fam.directions.len();
    let mut csv = String::from("step");
    for i in 0..n_params {
        csv.push_str(&format!(",nu{}", i + 1));
    }
    csv.push_str(",re,im,class\n");
    for step in &sw.steps {
        for (ci, c) in step.classes.iter().enumerate() {
            csv.push_str(&step.step.to_string());
            for v in &step.nu {
                csv.push(',');
                csv.push_str(ryu_format(*v).as_str());
            }
            csv.push_str(&format!(
                ",{},{},{}\n",
                ryu_format(c.alpha),
                ryu_format(c.beta),
                ci
            ));
        }
    }
    let events = sw
        .events
        .iter()
        .map(|e| SweepEventReport {
            step: e.step,
            kind: match e.kind {
                EventKind::Pass => "PASS".to_string(),
                EventKind::Split => "SPLIT".to_string(),
            },
            description: e.description.clone(),
        })
        .collect();
    Ok((csv, events))
}

/// Shortest round-trip float formatting (what serde_json emits).
fn ryu_format(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| "null".to_string())
}

/// Maps an error to the process exit code contract.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::MalformedInput(_)
        | Error::InvalidStructure(_)
        | Error::IncompatibleStructures(_) => 2,
        _ => 1,
    }
}

pub fn render_text_check(r: &CheckReport) -> String {
    format!(
        "dimension: {}\neigenspace dimension: {}\nmember: {}\nresidual: {:.3e}\n",
        r.dimension, r.eigenspace_dimension, r.is_member, r.membership_residual
    )
}

pub fn render_text_classify(r: &ClassifyReport) -> String {
    let mut out = String::new();
    let types: Vec<String> = r.type_ids.iter().map(|t| t.to_string()).collect();
    out.push_str(&format!("type: {}\n", types.join(", ")));
    out.push_str(&format!(
        "membership residual: {:.3e}\nnormal form residual: {:.3e}\n",
        r.membership_residual, r.residual
    ));
    for lab in &r.labels {
        let sign = lab
            .signs
            .iter()
            .map(|s| match s {
                Some(v) if *v > 0.0 => "+".to_string(),
                Some(_) => "-".to_string(),
                None => ".".to_string(),
            })
            .collect::<String>();
        out.push_str(&format!(
            "block {}: lambda = {} + {} i, height {}, signs [{}]{}{}\n",
            lab.tag,
            ryu_format(lab.alpha),
            ryu_format(lab.beta),
            lab.height,
            sign,
            if lab.paired { ", paired" } else { "" },
            if lab.non_generic { ", non-generic" } else { "" },
        ));
    }
    out
}

pub fn render_text_unfold(r: &UnfoldReport) -> String {
    format!(
        "codimension: {}\ntangent dimension: {}\ndirections: {}\n",
        r.codimension,
        r.tangent_dimension,
        r.directions.len()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const REVERSIBLE_2B: &str = r#"{
        "matrix": [[0.0, 1.0], [0.0, 0.0]],
        "structures": [
            {"kind": "automorphism", "matrix": [[1.0, 0.0], [0.0, -1.0]], "eigenvalue": -1}
        ]
    }"#;

    #[test]
    fn parses_minimal_problem_with_default_tolerance() {
        let pf = parse_problem(REVERSIBLE_2B).unwrap();
        assert_eq!(pf.tolerance, 1e-9);
        let (l, spec) = problem_to_spec(&pf).unwrap();
        assert_eq!(l.nrows(), 2);
        assert_eq!(spec.generators.len(), 1);
    }

    #[test]
    fn rejects_unknown_keys() {
        let bad = r#"{"matrix": [[0.0]], "structures": [], "extra": 1}"#;
        assert!(matches!(parse_problem(bad), Err(Error::MalformedInput(_))));
    }

    #[test]
    fn rejects_bad_eigenvalue() {
        let bad = r#"{
            "matrix": [[0.0]],
            "structures": [{"kind": "automorphism", "matrix": [[1.0]], "eigenvalue": 0}]
        }"#;
        let pf = parse_problem(bad).unwrap();
        assert!(matches!(
            problem_to_spec(&pf),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn rejects_non_square_matrix() {
        let bad = r#"{
            "matrix": [[0.0, 1.0]],
            "structures": [{"kind": "automorphism", "matrix": [[1.0]], "eigenvalue": 1}]
        }"#;
        let pf = parse_problem(bad).unwrap();
        assert!(matches!(
            problem_to_spec(&pf),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn classify_2b_reports_double_zero() {
        let pf = parse_problem(REVERSIBLE_2B).unwrap();
        let (l, spec) = problem_to_spec(&pf).unwrap();
        let rep = run_classify(&l, &spec).unwrap();
        assert_eq!(rep.type_ids, vec![2]);
        assert_eq!(rep.labels.len(), 1);
        assert_eq!(rep.labels[0].height, 2);
        assert_eq!(rep.labels[0].alpha, 0.0);
    }

    #[test]
    fn unfold_2b_codim_one() {
        let pf = parse_problem(REVERSIBLE_2B).unwrap();
        let (l, spec) = problem_to_spec(&pf).unwrap();
        let rep = run_unfold(&l, &spec).unwrap();
        assert_eq!(rep.codimension, 1);
    }

    #[test]
    fn reports_serialize_deterministically() {
        let pf = parse_problem(REVERSIBLE_2B).unwrap();
        let (l, spec) = problem_to_spec(&pf).unwrap();
        let a = serde_json::to_string_pretty(&run_classify(&l, &spec).unwrap()).unwrap();
        let b = serde_json::to_string_pretty(&run_classify(&l, &spec).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_emits_csv_header() {
        let pf = parse_problem(REVERSIBLE_2B).unwrap();
        let (l, spec) = problem_to_spec(&pf).unwrap();
        let path: Vec<Vec<f64>> = (0..5).map(|i| vec![-0.1 + 0.05 * i as f64]).collect();
        let (csv, _) = run_sweep(&l, &spec, &path).unwrap();
        assert!(csv.starts_with("step,nu1,re,im,class\n"));
    }
}

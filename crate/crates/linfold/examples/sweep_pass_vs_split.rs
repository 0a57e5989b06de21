//! Follow eigenvalues of an unfolding along a parameter path. At a 1:1
//! resonance the coupling direction splits the frequencies off the imaginary
//! axis, while a pure detuning only passes them through each other.

use linfold::catalog::unfolding_rows;
use linfold::unfolding::{miniversal_unfolding, sweep_eigenvalues, EventKind, UnfoldingFamily};

fn main() {
    let tol = 1e-9;
    let rows = unfolding_rows();
    // Two resonant rotation blocks in a Hamiltonian family.
    let row = rows.iter().find(|r| r.id == "8c").unwrap();
    let spec = row.spec(tol).unwrap();
    let computed = miniversal_unfolding(&row.l0, &spec).unwrap();
    println!("family {}: codimension {}", row.id, computed.codim);
    // Sweep along the catalog's named directions, keeping their order.
    let fam = UnfoldingFamily {
        l0: row.l0.clone(),
        directions: row.directions.clone(),
        codim: row.codim,
        tangent_dim: computed.tangent_dim,
    };

    for (name, dir_index) in [("detuning", 0usize), ("coupling", 1)] {
        let path: Vec<Vec<f64>> = (0..41)
            .map(|i| {
                let mut nu = vec![0.0; fam.codim];
                nu[dir_index] = -0.1 + 0.005 * i as f64;
                nu
            })
            .collect();
        // The base point is defective, so its eigenvalue pair is computed
        // with sqrt(machine-eps) scatter; the cluster radius must sit above.
        let sweep = sweep_eigenvalues(&fam, &path, 1e-6).unwrap();
        let max_re = sweep
            .steps
            .iter()
            .flat_map(|s| s.classes.iter().map(|c| c.alpha.abs()))
            .fold(0.0f64, f64::max);
        println!("{name}: max |Re lambda| along path = {max_re:.4}");
        for e in &sweep.events {
            let kind = match e.kind {
                EventKind::Pass => "PASS",
                EventKind::Split => "SPLIT",
            };
            println!("  step {}: {kind} ({})", e.step, e.description);
        }
        if sweep.events.is_empty() {
            println!("  no events");
        }
    }
}

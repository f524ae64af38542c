//! How closely can a single positive frame reproduce both P_φ and P_χ?
//! The best minimax distances are found by linear programming.

use qprep::coexistence::{theorem5_experiment, EPSILON};
use qprep::operator::basis_vector;
use qprep::Frame;

fn main() -> qprep::Result<()> {
    let (phi, psi) = (basis_vector(2, 0), basis_vector(2, 1));
    let frames = [
        ("tetrahedral".to_string(), Frame::tetrahedral()),
        ("projective".to_string(), Frame::projective(&[phi.clone(), psi.clone()])?),
    ]
    .into_iter()
    .chain((0..5).map(|s| (format!("random seed {s}"), Frame::random_positive_basis(2, s).unwrap())));

    println!("{:<16} {:>10} {:>10}  max ≥ {EPSILON}", "frame", "δ_φ", "δ_χ");
    for (name, frame) in frames {
        let r = theorem5_experiment(&frame, &phi, &psi)?;
        println!("{name:<16} {:>10.6} {:>10.6}  {}", r.delta_phi, r.delta_chi, r.bound_check);
    }
    Ok(())
}

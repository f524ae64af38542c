//! Hermitian operators, the Jacobi eigensolver and the effect interval.

use num_complex::Complex64;
use qprep::{eig, hs_inner, in_effect_interval, is_psd, HermitianOperator, State};

fn main() -> qprep::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = [Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
    let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];

    // Equal mixture of |0⟩ and |+⟩: eigenvalues ½ ± √2/4.
    let rho = HermitianOperator::projector(&zero).scale(0.5).add(&HermitianOperator::projector(&plus).scale(0.5));
    let spec = eig(&rho)?;
    println!("eigenvalues {:?} after {} sweeps", spec.eigenvalues(), spec.sweeps());
    println!("reconstruction error {:.1e}", spec.reconstruct().max_abs_diff(&rho));

    let state = State::new(rho.clone(), 1e-10)?;
    println!("purity tr(ρ²) = {:.6}", hs_inner(state.op(), state.op())?);

    let a = HermitianOperator::from_real_rows(&[vec![0.9, 0.25], vec![0.25, 0.2]])?;
    println!("A is PSD: {}, A is an effect: {}", is_psd(&a, 1e-10), in_effect_interval(&a, 1e-10));
    println!("{}", serde_json::to_string_pretty(&a.to_json()).unwrap());
    Ok(())
}

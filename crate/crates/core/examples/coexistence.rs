//! Deciding coexistence of two effects, and certificates for mixtures.

use qprep::coexistence::{
    coexist_commuting, coexist_feasibility, combine_coexistent, neighborhood_probes, DykstraConfig, Status,
};
use qprep::operator::basis_vector;
use qprep::{Effect, HermitianOperator};

fn main() -> qprep::Result<()> {
    let config = DykstraConfig::default();

    // Unsharp diagonal effects commute; they coexist.
    let f = Effect::new(HermitianOperator::diagonal(&[0.8, 0.3]), 1e-10)?;
    let g = Effect::new(HermitianOperator::diagonal(&[0.6, 0.9]), 1e-10)?;
    let out = coexist_feasibility(&f, &g, &config)?;
    println!("diagonal pair: {} after {} cycles", out.status.name(), out.iterations);
    if let Status::Feasible(cert) = &out.status {
        println!("certificate residual {:?}", cert.residual(f.op(), g.op())?);
    }
    let exact = coexist_commuting(&f, &g)?.expect("pair commutes");
    println!("closed-form H = diag({:.2}, {:.2})", exact.h.get(0, 0).re, exact.h.get(1, 1).re);

    // Sharp projections that do not commute cannot coexist.
    let probes = neighborhood_probes(&basis_vector(2, 0), &basis_vector(2, 1));
    let p = Effect::new(probes[0].clone(), 1e-10)?;
    let q = Effect::new(probes[2].clone(), 1e-10)?;
    let out = coexist_feasibility(&p, &q, &config)?;
    println!("P_φ vs P_χ: {} (violation {:.3e})", out.status.name(), out.final_violation);

    // Mix certificates of (F_i, G_j) into one for (ΣαF, ΣβG).
    let f_list = [f.op().clone(), HermitianOperator::diagonal(&[0.2, 0.4])];
    let g_list = [g.op().clone()];
    let certs: Vec<Vec<_>> = f_list
        .iter()
        .map(|fi| {
            let fe = Effect::new(fi.clone(), 1e-10).unwrap();
            vec![coexist_commuting(&fe, &g).unwrap()]
        })
        .collect();
    let (cert, segments) = combine_coexistent(&f_list, &[0.3, 0.7], &g_list, &[1.0], &certs)?;
    let mix = HermitianOperator::linear_combination(&[0.3, 0.7], &f_list);
    println!("segments {segments:?}");
    println!("combined residual {:?}", cert.residual(&mix, g.op())?);
    Ok(())
}

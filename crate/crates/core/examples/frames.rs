//! Positive operator frames, their Gram rank and dual frames.

use qprep::{Effect, Frame};

fn main() -> qprep::Result<()> {
    let tetra = Frame::tetrahedral();
    let report = tetra.completeness();
    println!("tetrahedral: {} elements, Gram rank {}, complete {}", tetra.len(), report.gram_rank, report.is_complete);

    let dual = tetra.dual()?;
    for (i, d) in dual.elements().iter().enumerate() {
        println!("D_{i}: trace {:.3}, min eigenvalue {:.4}", d.trace(), qprep::eig(d)?.min());
    }
    println!("biorthogonality residual {:.1e}", dual.biorthogonality_residual(&tetra)?);

    let random = Frame::random_positive_basis(3, 42)?;
    let dual = random.dual()?;
    println!("random n=3 basis: Gram condition number {:.1}", dual.condition_number());

    // A POVM built from three effects, each entering with weight 2^-k.
    let effects: Vec<Effect> = (0..3).map(|k| qprep::random::random_effect(2, k)).collect::<Result<_, _>>()?;
    let dyadic = Frame::dyadic_from_effects(&effects, 2)?;
    let c = dyadic.completeness();
    println!("dyadic frame: {} elements, rank {}, complete {}", dyadic.len(), c.gram_rank, c.is_complete);
    Ok(())
}

//! Quasi-probability representation from a frame and its dual, and the
//! certificate that one of the two maps takes negative values.

use qprep::random::{random_effect, random_state};
use qprep::{Frame, QPRepresentation};

fn main() -> qprep::Result<()> {
    let rep = QPRepresentation::new(Frame::tetrahedral())?;

    let w = random_state(2, 2, 7)?;
    let a = random_effect(2, 8)?;
    let p = rep.t_map(w.op())?;
    let q = rep.s_map(a.op())?;
    println!("T(W) = {:?} (sums to {:.12})", p.values(), p.total());
    println!("S(A) = {:?}", q.values());

    let r = rep.reconstruct(w.op(), a.op())?;
    println!("tr(WA) = {:.12}, <TW, SA> = {:.12}, residual {:.1e}", r.trace, r.quasi_classical, r.residual);

    let back = rep.inverse_t(p.values())?;
    println!("inverse round trip error {:.1e}", back.max_abs_diff(w.op()));

    let report = rep.negativity_report(200, 1)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}

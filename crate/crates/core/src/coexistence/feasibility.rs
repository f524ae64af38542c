//! Coexistence as convex feasibility, solved by Dykstra's cyclic projections
//! onto four shifted PSD cones.

use serde::{Deserialize, Serialize};

use super::{check_pair, CoexistenceCertificate, CERTIFICATE_TOL};
use crate::error::{Error, Result};
use crate::operator::{Effect, HermitianOperator};
use crate::spectral::{clamp_spectrum, eig, positive_part};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DykstraConfig {
    /// Cap on full cycles through the four projections.
    pub max_iter: usize,
    /// Largest accepted constraint violation (min-eigenvalue sense).
    pub tol: f64,
    /// Consecutive stalled cycles required for an infeasible verdict.
    pub stall_window: usize,
    /// Relative change in violation below which a cycle counts as stalled.
    pub stall_rtol: f64,
}

impl Default for DykstraConfig {
    fn default() -> Self {
        Self { max_iter: 20_000, tol: 1e-8, stall_window: 50, stall_rtol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Feasible(CoexistenceCertificate),
    /// The residual stalled at `gap`; a numerical verdict, not a proof.
    Infeasible {
        gap: f64,
    },
    Undecided,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Feasible(_) => "feasible",
            Self::Infeasible { .. } => "infeasible",
            Self::Undecided => "undecided",
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible(_))
    }

    pub fn certificate(&self) -> Option<&CoexistenceCertificate> {
        match self {
            Self::Feasible(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityOutcome {
    pub status: Status,
    pub iterations: usize,
    pub final_violation: f64,
}

/// Violations of `H ≥ 0`, `H ≤ F`, `H ≤ G`, `H ≥ F + G − I`, each as
/// `max(0, −λ_min)` of the corresponding shifted operator.
pub fn constraint_violations(h: &HermitianOperator, f: &HermitianOperator, g: &HermitianOperator) -> Result<[f64; 4]> {
    let lower = f.add(g).sub(&HermitianOperator::identity(f.dim()));
    let shifted = [h.clone(), f.sub(h), g.sub(h), h.sub(&lower)];
    let mut out = [0.0; 4];
    for (o, op) in out.iter_mut().zip(&shifted) {
        *o = (-eig(op)?.min()).max(0.0);
    }
    Ok(out)
}

/// Decides coexistence of `F` and `G` numerically.
///
/// Starting from `H₀ = ½[(F + G − I)₊ + clamp_{[0,1]}(½(F + G) − ¼I)]`, runs
/// Dykstra's algorithm over the four constraint sets. Feasible once every
/// violation is at most `tol`; infeasible when the violation has stalled for
/// `stall_window` cycles above `10·tol`; undecided at the cycle cap.
pub fn coexist_feasibility(f: &Effect, g: &Effect, config: &DykstraConfig) -> Result<FeasibilityOutcome> {
    check_pair(f, g)?;
    if config.max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
    }
    if !(config.tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let (fo, go) = (f.op(), g.op());
    let dim = fo.dim();
    let lower = fo.add(go).sub(&HermitianOperator::identity(dim));

    let mid = fo.add(go).scale(0.5).sub(&HermitianOperator::scaled_identity(dim, 0.25));
    let mut h = positive_part(&lower)?.add(&clamp_spectrum(&mid, 0.0, 1.0)?).scale(0.5);

    let violation_of = |h: &HermitianOperator| -> Result<f64> {
        Ok(constraint_violations(h, fo, go)?.into_iter().fold(0.0, f64::max))
    };

    let mut v = violation_of(&h)?;
    if v <= config.tol {
        return feasible(fo, go, h, 0, v);
    }

    let mut corrections = vec![HermitianOperator::zeros(dim); 4];
    let mut stalled = 0;
    for cycle in 1..=config.max_iter {
        for (set, p) in corrections.iter_mut().enumerate() {
            let y = h.add(p);
            let x = match set {
                0 => positive_part(&y)?,
                1 => fo.sub(&positive_part(&fo.sub(&y))?),
                2 => go.sub(&positive_part(&go.sub(&y))?),
                _ => lower.add(&positive_part(&y.sub(&lower))?),
            };
            *p = y.sub(&x);
            h = x;
        }
        let prev = v;
        v = violation_of(&h)?;
        if v <= config.tol {
            return feasible(fo, go, h, cycle, v);
        }
        if (v - prev).abs() <= config.stall_rtol * prev {
            stalled += 1;
        } else {
            stalled = 0;
        }
        if stalled >= config.stall_window && v > 10.0 * config.tol {
            return Ok(FeasibilityOutcome {
                status: Status::Infeasible { gap: v },
                iterations: cycle,
                final_violation: v,
            });
        }
    }
    Ok(FeasibilityOutcome { status: Status::Undecided, iterations: config.max_iter, final_violation: v })
}

fn feasible(
    f: &HermitianOperator,
    g: &HermitianOperator,
    h: HermitianOperator,
    iterations: usize,
    violation: f64,
) -> Result<FeasibilityOutcome> {
    let cert = CoexistenceCertificate::from_h(f, g, h);
    cert.verify(f, g, CERTIFICATE_TOL)?;
    Ok(FeasibilityOutcome { status: Status::Feasible(cert), iterations, final_violation: violation })
}

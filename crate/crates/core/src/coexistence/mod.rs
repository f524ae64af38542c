//! Coexistence of effects.
//!
//! Two effects `F`, `G` coexist when `F = F′ + H` and `G = G′ + H` for
//! effects `F′, G′, H` with `F′ + G′ + H ≤ I`. Eliminating `F′` and `G′`
//! leaves a single unknown `H` subject to
//! `0 ≤ H`, `H ≤ F`, `H ≤ G`, `F + G − I ≤ H`.

mod approximation;
mod combine;
mod commuting;
mod feasibility;
mod triple;

use serde::{Deserialize, Serialize};

pub use approximation::{
    minimax_distance, neighborhood_probes, theorem5_experiment, ApproximationReport, MinimaxFit, EPSILON,
};
pub use combine::{breakpoints, combine_coexistent, Segment};
pub use commuting::{coexist_commuting, COMMUTATOR_TOL};
pub use feasibility::{coexist_feasibility, constraint_violations, DykstraConfig, FeasibilityOutcome, Status};
pub use triple::{triple_effects, triple_witness, TripleReport};

use crate::error::{Error, Result};
use crate::operator::{Effect, HermitianOperator, MatrixJson};
use crate::spectral::eig;

/// Tolerance at which certificates are re-verified.
pub const CERTIFICATE_TOL: f64 = 1e-7;

/// `(F′, G′, H)` witnessing coexistence of `F = F′ + H` and `G = G′ + H`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoexistenceCertificate {
    pub f_prime: HermitianOperator,
    pub g_prime: HermitianOperator,
    pub h: HermitianOperator,
}

/// Worst violation of each defining condition of a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateResidual {
    /// `max(‖F′ + H − F‖, ‖G′ + H − G‖)`, entrywise.
    pub decomposition: f64,
    /// How far `F′ + G′ + H` exceeds `I`.
    pub sum_excess: f64,
    /// How far any member leaves `[0, I]`.
    pub interval: f64,
}

impl CertificateResidual {
    pub fn max(&self) -> f64 {
        self.decomposition.max(self.sum_excess).max(self.interval)
    }
}

impl CoexistenceCertificate {
    /// Builds `(F − H, G − H, H)` for a candidate `H`.
    pub fn from_h(f: &HermitianOperator, g: &HermitianOperator, h: HermitianOperator) -> Self {
        Self { f_prime: f.sub(&h), g_prime: g.sub(&h), h }
    }

    /// `F = F′ + H`.
    pub fn f(&self) -> HermitianOperator {
        self.f_prime.add(&self.h)
    }

    /// `G = G′ + H`.
    pub fn g(&self) -> HermitianOperator {
        self.g_prime.add(&self.h)
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Measures every defining condition against the given pair.
    pub fn residual(&self, f: &HermitianOperator, g: &HermitianOperator) -> Result<CertificateResidual> {
        for op in [&self.f_prime, &self.g_prime, f, g] {
            if op.dim() != self.h.dim() {
                return Err(Error::DimensionMismatch(self.h.dim(), op.dim()));
            }
        }
        let decomposition = self.f().max_abs_diff(f).max(self.g().max_abs_diff(g));
        let total = self.f_prime.add(&self.g_prime).add(&self.h);
        let sum_excess = (eig(&total)?.max() - 1.0).max(0.0);
        let mut interval: f64 = 0.0;
        for op in [&self.f_prime, &self.g_prime, &self.h] {
            let s = eig(op)?;
            interval = interval.max(-s.min()).max(s.max() - 1.0);
        }
        Ok(CertificateResidual { decomposition, sum_excess, interval })
    }

    /// Checks the certificate against `(F, G)` at `tol`.
    pub fn verify(&self, f: &HermitianOperator, g: &HermitianOperator, tol: f64) -> Result<CertificateResidual> {
        let r = self.residual(f, g)?;
        if r.decomposition > tol {
            return Err(Error::InvalidCertificate(format!("decomposition residual {:e}", r.decomposition)));
        }
        if r.sum_excess > tol {
            return Err(Error::InvalidCertificate(format!("F'+G'+H exceeds I by {:e}", r.sum_excess)));
        }
        if r.interval > tol {
            return Err(Error::InvalidCertificate(format!("member leaves [0, I] by {:e}", r.interval)));
        }
        Ok(r)
    }

    /// Self-consistency check using the pair the certificate itself encodes.
    pub fn verify_self(&self, tol: f64) -> Result<CertificateResidual> {
        self.verify(&self.f(), &self.g(), tol)
    }

    /// Conjugates every member by a unitary, `X ↦ U X U*`.
    pub fn conjugate(&self, u: &crate::operator::Matrix) -> Self {
        Self { f_prime: self.f_prime.congruence(u), g_prime: self.g_prime.congruence(u), h: self.h.congruence(u) }
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson { f_prime: self.f_prime.to_json(), g_prime: self.g_prime.to_json(), h: self.h.to_json() }
    }

    /// Parses and re-validates a certificate (members must be effects and
    /// `F′ + G′ + H ≤ I`).
    pub fn from_json(json: &CertificateJson, tol: f64) -> Result<Self> {
        let cert = Self {
            f_prime: HermitianOperator::from_json(&json.f_prime)?,
            g_prime: HermitianOperator::from_json(&json.g_prime)?,
            h: HermitianOperator::from_json(&json.h)?,
        };
        cert.verify_self(tol)?;
        Ok(cert)
    }
}

/// Wire format `{"f_prime": <matrix>, "g_prime": <matrix>, "h": <matrix>}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub f_prime: MatrixJson,
    pub g_prime: MatrixJson,
    pub h: MatrixJson,
}

pub(crate) fn check_pair(f: &Effect, g: &Effect) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(f.dim(), g.dim()));
    }
    Ok(())
}

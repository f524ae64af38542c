//! The quasi-probability representation `(T, S)` induced by a frame basis
//! and its dual.
//!
//! * `T V = (tr V F_1, …, tr V F_N)` sends states to normalized, possibly
//!   negative, vectors.
//! * `S A = (tr A D_1, …, tr A D_N)` sends effects to vectors so that
//!   `tr V A = ⟨T V, S A⟩`.
//! * `T′ a = Σ a_i F_i` is the adjoint of `T` and inverts `S`;
//!   `S′ p = Σ p_i D_i` inverts `T`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{DualFrame, Frame};
use crate::operator::{HermitianOperator, State};
use crate::random;
use crate::spectral::{eig, hs_inner};

/// Spectral threshold below which a dual element counts as non-positive.
pub const NEGATIVITY_TOL: f64 = 1e-10;
/// Relative bound on the reconstruction residual `|⟨TV, SA⟩ − tr VA|`.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VectorKind {
    StateImage,
    EffectImage,
}

/// A real vector on `{1, …, N}`: the image of an operator under `T` or `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiProbVector {
    values: Vec<f64>,
    kind: VectorKind,
}

impl QuasiProbVector {
    pub fn new(values: Vec<f64>, kind: VectorKind) -> Self {
        Self { values, kind }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    pub fn to_json(&self) -> VectorJson {
        VectorJson { n: self.values.len(), values: self.values.clone(), kind: self.kind }
    }

    pub fn from_json(json: &VectorJson) -> Result<Self> {
        if json.values.len() != json.n {
            return Err(Error::LengthMismatch { expected: json.n, actual: json.values.len() });
        }
        if json.kind == VectorKind::StateImage {
            let total: f64 = json.values.iter().sum();
            if (total - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidParameter(format!("state image must sum to 1 (got {total})")));
            }
        }
        Ok(Self::new(json.values.clone(), json.kind))
    }
}

/// Wire format: `{"N": N, "values": [...], "kind": "state_image"|"effect_image"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub values: Vec<f64>,
    pub kind: VectorKind,
}

/// A frame basis (`N = n²`) paired with its dual.
#[derive(Debug, Clone)]
pub struct QPRepresentation {
    frame: Frame,
    dual: DualFrame,
}

impl QPRepresentation {
    /// Computes the dual of a complete frame basis.
    pub fn new(frame: Frame) -> Result<Self> {
        let dual = frame.dual()?;
        Ok(Self { frame, dual })
    }

    /// Pairs a frame with an externally supplied dual, re-checking biorthogonality.
    pub fn with_dual(frame: Frame, dual_elements: Vec<HermitianOperator>) -> Result<Self> {
        let expected = frame.dim() * frame.dim();
        if frame.len() != expected {
            return Err(Error::NotABasis { expected, actual: frame.len() });
        }
        let dual = DualFrame::from_elements(&frame, dual_elements)?;
        Ok(Self { frame, dual })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn dual(&self) -> &DualFrame {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Number of outcomes `N`.
    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    fn check_dim(&self, op: &HermitianOperator) -> Result<()> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), op.dim()));
        }
        Ok(())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), actual: len });
        }
        Ok(())
    }

    /// `(T V)_i = tr(V F_i)`.
    pub fn t_map(&self, v: &HermitianOperator) -> Result<QuasiProbVector> {
        self.check_dim(v)?;
        let values = self.frame.elements().iter().map(|f| hs_inner(v, f)).collect::<Result<_>>()?;
        Ok(QuasiProbVector::new(values, VectorKind::StateImage))
    }

    /// `(S A)_i = tr(A D_i)`.
    pub fn s_map(&self, a: &HermitianOperator) -> Result<QuasiProbVector> {
        self.check_dim(a)?;
        let values = self.dual.elements().iter().map(|d| hs_inner(a, d)).collect::<Result<_>>()?;
        Ok(QuasiProbVector::new(values, VectorKind::EffectImage))
    }

    /// `⟨T V, S A⟩`, checked against `tr(V A)`.
    pub fn reconstruct(&self, v: &HermitianOperator, a: &HermitianOperator) -> Result<Reconstruction> {
        let p = self.t_map(v)?;
        let q = self.s_map(a)?;
        let quasi_classical = p.dot(&q);
        let trace = hs_inner(v, a)?;
        let residual = (quasi_classical - trace).abs();
        let bound = RECONSTRUCTION_TOL * (v.hs_norm() * a.hs_norm()).max(1.0);
        if residual > bound {
            return Err(Error::ReconstructionResidual { residual, bound });
        }
        Ok(Reconstruction { quasi_classical, trace, residual })
    }

    /// `T′ a = Σ a_i F_i`.
    pub fn t_adjoint(&self, a: &[f64]) -> Result<HermitianOperator> {
        self.check_len(a.len())?;
        Ok(HermitianOperator::linear_combination(a, self.frame.elements()))
    }

    /// `T⁻¹ p = Σ p_i D_i`.
    pub fn inverse_t(&self, p: &[f64]) -> Result<HermitianOperator> {
        self.check_len(p.len())?;
        Ok(HermitianOperator::linear_combination(p, self.dual.elements()))
    }

    /// Certifies which of `T` and `S` fail to be positive.
    ///
    /// `S` is non-positive iff some `D_i` has a negative eigenvalue; the
    /// projector onto that eigenvector is an effect with `(S A)_i < 0`. For
    /// `T`, the eigenvector projectors of every frame element are probed
    /// first (exact whenever some `F_i` has a negative eigenvalue), then
    /// `trials` random pure states drawn from `seed`.
    pub fn negativity_report(&self, trials: usize, seed: u64) -> Result<NegativityReport> {
        let s_witness = self.s_witness()?;
        let t_witness = self.t_witness(trials, seed)?;

        let mut which = Vec::new();
        if t_witness.is_some() {
            which.push(MapName::T);
        }
        if s_witness.is_some() {
            which.push(MapName::S);
        }
        if self.dim() >= 2 && which.is_empty() {
            return Err(Error::NegativityDisjunction { dim: self.dim() });
        }
        if self.dim() >= 2 && self.frame.is_positive() && s_witness.is_none() {
            return Err(Error::NegativityDisjunction { dim: self.dim() });
        }
        Ok(NegativityReport {
            t_negative: match t_witness {
                Some(w) => TNegativity::Found(w),
                None => TNegativity::NotFound { trials },
            },
            s_negative: s_witness,
            which_maps_nonpositive: which,
        })
    }

    fn s_witness(&self) -> Result<Option<SWitness>> {
        let mut best: Option<SWitness> = None;
        for (i, d) in self.dual.elements().iter().enumerate() {
            let min = eig(d)?.min();
            if min < -NEGATIVITY_TOL && best.as_ref().is_none_or(|b| min < b.min_eigenvalue) {
                best = Some(SWitness { dual_index: i, min_eigenvalue: min });
            }
        }
        Ok(best)
    }

    fn t_witness(&self, trials: usize, seed: u64) -> Result<Option<TWitness>> {
        let mut best: Option<TWitness> = None;
        let mut consider = |source: StateSource, state: &HermitianOperator| -> Result<()> {
            let p = self.t_map(state)?;
            for (entry, &value) in p.values().iter().enumerate() {
                if value < -NEGATIVITY_TOL && best.as_ref().is_none_or(|b| value < b.value) {
                    best = Some(TWitness { source, entry, value });
                }
            }
            Ok(())
        };
        for (element, f) in self.frame.elements().iter().enumerate() {
            let spec = eig(f)?;
            for k in 0..self.dim() {
                let state = State::pure(&spec.eigenvector(k));
                consider(StateSource::FrameEigenvector { element, index: k }, state.op())?;
            }
        }
        for trial in 0..trials {
            let trial_seed = seed.wrapping_add(trial as u64);
            let v = random::unit_vector(self.dim(), &mut random::rng(trial_seed));
            consider(StateSource::Random { trial, seed: trial_seed }, State::pure(&v).op())?;
        }
        Ok(best)
    }
}

/// Both sides of the probability formula `tr(V A) = ⟨T V, S A⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub quasi_classical: f64,
    pub trace: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapName {
    T,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StateSource {
    FrameEigenvector { element: usize, index: usize },
    Random { trial: usize, seed: u64 },
}

/// A state whose image under `T` has a negative entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TWitness {
    pub source: StateSource,
    pub entry: usize,
    pub value: f64,
}

/// A dual element with a negative eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SWitness {
    pub dual_index: usize,
    pub min_eigenvalue: f64,
}

/// Outcome of the search for negativity of `T`. Sampling can only find
/// negativity, so the negative outcome is "not found" rather than "false".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum TNegativity {
    Found(TWitness),
    NotFound { trials: usize },
}

impl TNegativity {
    pub fn is_found(&self) -> bool {
        matches!(self, Self::Found(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativityReport {
    pub t_negative: TNegativity,
    pub s_negative: Option<SWitness>,
    pub which_maps_nonpositive: Vec<MapName>,
}

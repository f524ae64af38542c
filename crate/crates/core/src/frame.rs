//! Finite operator frames (normalized operator-valued measures on
//! `{1, …, N}`), informational completeness and dual frames.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{Effect, HermitianOperator, MatrixJson};
use crate::random;
use crate::spectral::{self, eig, hs_inner};

/// Entrywise tolerance for `Σ F_i = I`.
pub const NORMALIZATION_TOL: f64 = 1e-10;
/// Relative singular-value cutoff used for every rank decision.
pub const RANK_RTOL: f64 = 1e-10;
/// Tolerance for dual-pair biorthogonality and unit traces.
pub const DUAL_TOL: f64 = 1e-8;

const MAX_BASIS_ATTEMPTS: usize = 100;
/// Largest Gram condition number accepted from the random basis sampler.
pub const MAX_BASIS_CONDITION: f64 = 1e5;

/// A family `F_1, …, F_N` of Hermitian operators summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    dim: usize,
    elements: Vec<HermitianOperator>,
    positive: bool,
}

impl Frame {
    /// Validates normalization and computes the positivity flag.
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        let first = elements.first().ok_or(Error::EmptyFrame)?;
        let dim = first.dim();
        if let Some(bad) = elements.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, bad.dim()));
        }
        let sum = sum_of(&elements);
        let identity = HermitianOperator::identity(dim);
        if sum.max_abs_diff(&identity) > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { residual: sum.sub(&identity).hs_norm() });
        }
        let positive = elements.iter().all(|e| spectral::is_psd(e, NORMALIZATION_TOL));
        Ok(Self { dim, elements, positive })
    }

    /// Like [`Frame::new`] but also requires every element to be PSD.
    pub fn new_positive(elements: Vec<HermitianOperator>) -> Result<Self> {
        let frame = Self::new(elements)?;
        if !frame.positive {
            let (index, min_eigenvalue) = frame
                .elements
                .iter()
                .enumerate()
                .map(|(i, e)| (i, spectral::min_eigenvalue(e).unwrap_or(f64::NAN)))
                .find(|(_, m)| !(*m >= -NORMALIZATION_TOL))
                .expect("non-positive frame has a non-PSD element");
            return Err(Error::NotPositive { index, min_eigenvalue });
        }
        Ok(frame)
    }

    /// The symmetric informationally complete qubit POVM
    /// `F_i = ¼(I + n_i·σ/√3)` on the regular tetrahedron.
    pub fn tetrahedral() -> Self {
        let s = 1.0 / 3f64.sqrt();
        let dirs = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
        let elements = dirs
            .iter()
            .map(|d| bloch_operator(0.25, [0.25 * s * d[0] * s, 0.25 * s * d[1] * s, 0.25 * s * d[2] * s]))
            .collect();
        Self::new(elements).expect("tetrahedral frame is normalized")
    }

    /// Rank-one projective measurement onto an orthonormal basis.
    pub fn projective(basis: &[Vec<Complex64>]) -> Result<Self> {
        check_orthonormal(basis)?;
        Self::new(basis.iter().map(|v| HermitianOperator::projector(v)).collect())
    }

    /// A random basis of positive operators summing to `I`: `n²` random pure
    /// states `ρ_i`, conjugated by `G^{-1/2}` with `G = Σ ρ_i`. Draws whose
    /// Gram condition number exceeds [`MAX_BASIS_CONDITION`] are redrawn.
    pub fn random_positive_basis(dim: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let count = dim * dim;
        let mut rng = random::rng(seed);
        for _ in 0..MAX_BASIS_ATTEMPTS {
            let rhos: Vec<HermitianOperator> =
                (0..count).map(|_| HermitianOperator::projector(&random::unit_vector(dim, &mut rng))).collect();
            if gram_rank(&rhos)?.rank != count {
                continue;
            }
            let g = sum_of(&rhos);
            let root = spectral::inverse_sqrt(&g)?;
            let elements: Vec<HermitianOperator> = rhos.iter().map(|r| r.congruence(root.as_matrix())).collect();
            let rank = gram_rank(&elements)?;
            if rank.rank == count && rank.max_singular_value <= MAX_BASIS_CONDITION * rank.min_singular_value {
                return Self::new_positive(elements);
            }
        }
        Err(Error::IndependenceNotAchieved { attempts: MAX_BASIS_ATTEMPTS })
    }

    /// Dyadic POVM built from a finite list of effects `Ã_1..Ã_m`:
    /// `A_1 = I − Σ_i 2^{-i} Ã_i` and `A_{k+1} = 2^{-k} Ã_k`.
    pub fn dyadic_from_effects(effects: &[Effect], dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if let Some(bad) = effects.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, bad.dim()));
        }
        let mut head = HermitianOperator::identity(dim);
        let mut tail = Vec::with_capacity(effects.len());
        let mut weight = 1.0;
        for effect in effects {
            weight *= 0.5;
            let scaled = effect.op().scale(weight);
            head = head.sub(&scaled);
            tail.push(scaled);
        }
        let mut elements = Vec::with_capacity(effects.len() + 1);
        elements.push(head);
        elements.extend(tail);
        Self::new(elements)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &HermitianOperator {
        &self.elements[i]
    }

    /// True iff every element is PSD, i.e. the frame is a POVM.
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// `F(B) = Σ_{i∈B} F_i`. Indices are zero-based.
    pub fn sub_frame_sum(&self, subset: &[usize]) -> Result<HermitianOperator> {
        let mut acc = HermitianOperator::zeros(self.dim);
        for &i in subset {
            let f = self.elements.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.elements.len() })?;
            acc = acc.add(f);
        }
        Ok(acc)
    }

    /// `‖Σ F_i − I‖_HS`.
    pub fn normalization_residual(&self) -> f64 {
        sum_of(&self.elements).sub(&HermitianOperator::identity(self.dim)).hs_norm()
    }

    /// The N×N Gram matrix `tr(F_i F_j)`.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        gram_matrix(&self.elements)
    }

    pub fn completeness(&self) -> CompletenessReport {
        let r = gram_rank(&self.elements).expect("Gram matrix of a valid frame is finite");
        CompletenessReport {
            gram_rank: r.rank,
            is_complete: r.rank == self.dim * self.dim,
            min_singular_value: r.min_singular_value,
            borderline: r.borderline,
        }
    }

    /// The unique dual basis; requires `N = n²` and a nonsingular Gram matrix.
    pub fn dual(&self) -> Result<DualFrame> {
        let expected = self.dim * self.dim;
        if self.elements.len() != expected {
            return Err(Error::NotABasis { expected, actual: self.elements.len() });
        }
        let (elements, condition_number) = biorthogonal_basis(&self.elements)?;
        let dual = DualFrame { dim: self.dim, elements, condition_number };
        let residual = dual.biorthogonality_residual(self)?;
        if residual > DUAL_TOL {
            return Err(Error::NotBiorthogonal { residual });
        }
        Ok(dual)
    }

    pub fn to_json(&self) -> FrameJson {
        FrameJson { dim: self.dim, elements: self.elements.iter().map(MatrixJson::from).collect() }
    }

    pub fn from_json(json: &FrameJson) -> Result<Self> {
        Self::new(operators_from_json(json.dim, &json.elements)?)
    }
}

/// Rank information for the Gram matrix of a frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub gram_rank: usize,
    pub is_complete: bool,
    pub min_singular_value: f64,
    /// Some singular value lies within a factor 10 of the rank cutoff.
    pub borderline: bool,
}

/// Operators `D_1..D_N` biorthogonal to a frame: `tr(F_i D_j) = δ_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFrame {
    dim: usize,
    elements: Vec<HermitianOperator>,
    condition_number: f64,
}

impl DualFrame {
    /// Pairs given operators with a frame, checking biorthogonality and unit traces.
    pub fn from_elements(frame: &Frame, elements: Vec<HermitianOperator>) -> Result<Self> {
        if elements.len() != frame.len() {
            return Err(Error::LengthMismatch { expected: frame.len(), actual: elements.len() });
        }
        if let Some(bad) = elements.iter().find(|e| e.dim() != frame.dim()) {
            return Err(Error::DimensionMismatch(frame.dim(), bad.dim()));
        }
        let dual = Self { dim: frame.dim(), elements, condition_number: f64::NAN };
        let residual = dual.biorthogonality_residual(frame)?.max(dual.trace_residual());
        if residual > DUAL_TOL {
            return Err(Error::NotBiorthogonal { residual });
        }
        Ok(dual)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &HermitianOperator {
        &self.elements[i]
    }

    /// Condition number of the Gram matrix it was computed from (NaN if the
    /// dual was loaded rather than computed).
    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    /// `max_ij |tr(F_i D_j) − δ_ij|`.
    pub fn biorthogonality_residual(&self, frame: &Frame) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (i, f) in frame.elements().iter().enumerate() {
            for (j, d) in self.elements.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((hs_inner(f, d)? - target).abs());
            }
        }
        Ok(worst)
    }

    /// `max_j |tr D_j − 1|`.
    pub fn trace_residual(&self) -> f64 {
        self.elements.iter().map(|d| (d.trace() - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn to_json(&self, parent_hash: &str) -> DualFrameJson {
        DualFrameJson {
            dim: self.dim,
            elements: self.elements.iter().map(MatrixJson::from).collect(),
            parent_hash: parent_hash.to_owned(),
        }
    }
}

/// Wire format of a frame: `{"dim": n, "elements": [<matrix>, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    pub dim: usize,
    pub elements: Vec<MatrixJson>,
}

/// Wire format of a dual frame; `parent_hash` is the SHA-256 hex digest of
/// the parent frame file's bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualFrameJson {
    pub dim: usize,
    pub elements: Vec<MatrixJson>,
    pub parent_hash: String,
}

/// Parses a list of matrices that must all have dimension `dim`.
pub fn operators_from_json(dim: usize, list: &[MatrixJson]) -> Result<Vec<HermitianOperator>> {
    list.iter()
        .map(|m| {
            let op = HermitianOperator::from_json(m)?;
            if op.dim() != dim {
                return Err(Error::DeclaredDim { declared: dim, actual: op.dim() });
            }
            Ok(op)
        })
        .collect()
}

/// Result of a Gram-matrix rank decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramRank {
    pub rank: usize,
    pub min_singular_value: f64,
    pub max_singular_value: f64,
    pub borderline: bool,
}

pub fn gram_matrix(ops: &[HermitianOperator]) -> Vec<Vec<f64>> {
    let n = ops.len();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = hs_inner(&ops[i], &ops[j]).expect("equal dimensions");
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

/// Numerical rank of the span of `ops`, from the Gram matrix spectrum with a
/// relative cutoff of [`RANK_RTOL`].
pub fn gram_rank(ops: &[HermitianOperator]) -> Result<GramRank> {
    if ops.is_empty() {
        return Ok(GramRank { rank: 0, min_singular_value: 0.0, max_singular_value: 0.0, borderline: false });
    }
    let gram = HermitianOperator::from_real_rows(&gram_matrix(ops))?;
    let spec = eig(&gram)?;
    let sv: Vec<f64> = spec.eigenvalues().iter().map(|l| l.abs()).collect();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let cutoff = RANK_RTOL * max;
    let rank = sv.iter().filter(|&&s| s > cutoff).count();
    let borderline = sv.iter().any(|&s| s > cutoff / 10.0 && s < cutoff * 10.0);
    Ok(GramRank { rank, min_singular_value: min, max_singular_value: max, borderline })
}

/// Biorthogonal family for a linearly independent list of operators:
/// `D_j = Σ_i (Gram⁻¹)_{ji} F_i`, with the Gram matrix inverted through its
/// eigendecomposition. Also returns the Gram condition number.
///
/// The inputs need not sum to the identity, so this also dualizes a dual.
pub fn biorthogonal_basis(ops: &[HermitianOperator]) -> Result<(Vec<HermitianOperator>, f64)> {
    let n = ops.len();
    if n == 0 {
        return Err(Error::EmptyFrame);
    }
    let gram = HermitianOperator::from_real_rows(&gram_matrix(ops))?;
    let spec = eig(&gram)?;
    let max = spec.eigenvalues().iter().map(|l| l.abs()).fold(0.0, f64::max);
    let min = spec.eigenvalues().iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
    if !(min > RANK_RTOL * max) {
        return Err(Error::SingularGram { min, max });
    }
    let u = spec.eigenvectors();
    let inv = |j: usize, i: usize| -> f64 {
        spec.eigenvalues().iter().enumerate().map(|(k, l)| u.get(j, k).re * u.get(i, k).re / l).sum()
    };
    let duals = (0..n)
        .map(|j| {
            let weights: Vec<f64> = (0..n).map(|i| inv(j, i)).collect();
            HermitianOperator::linear_combination(&weights, ops)
        })
        .collect();
    Ok((duals, max / min))
}

/// `c·I + r·σ` for a Bloch vector `r`.
pub fn bloch_operator(c: f64, r: [f64; 3]) -> HermitianOperator {
    HermitianOperator::from_parts(&[vec![c + r[2], r[0]], vec![r[0], c - r[2]]], &[vec![0.0, -r[1]], vec![r[1], 0.0]])
        .expect("Bloch operator is Hermitian")
}

pub(crate) fn check_orthonormal(vectors: &[Vec<Complex64>]) -> Result<()> {
    let mut defect: f64 = 0.0;
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            if u.len() != v.len() {
                return Err(Error::DimensionMismatch(u.len(), v.len()));
            }
            let ip: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((ip - target).norm());
        }
    }
    if defect > 1e-10 {
        return Err(Error::NotOrthonormal(defect));
    }
    Ok(())
}

fn sum_of(ops: &[HermitianOperator]) -> HermitianOperator {
    ops.iter().skip(1).fold(ops[0].clone(), |acc, op| acc.add(op))
}

use num_complex::Complex64;

use super::{check_pair, CoexistenceCertificate};
use crate::error::Result;
use crate::operator::{Effect, HermitianOperator, Matrix};
use crate::spectral::eig;

/// Commutator norm `‖FG − GF‖_HS` below which a pair counts as commuting.
pub const COMMUTATOR_TOL: f64 = 1e-10;

/// Eigenvalues of `F` closer than this share a cluster that is then split by `G`.
const CLUSTER_TOL: f64 = 1e-8;

/// Closed-form certificate for the easy cases, `None` otherwise.
///
/// * `F + G ≤ I`: `H = 0`, `F′ = F`, `G′ = G`.
/// * `FG = GF`: in a joint eigenbasis with eigenvalue pairs `(f_k, g_k)`,
///   `h_k = max(min(f_k, g_k), f_k + g_k − 1)`. For projections this is
///   `H = FG`, `F′ = F(I − G)`, `G′ = G(I − F)`.
pub fn coexist_commuting(f: &Effect, g: &Effect) -> Result<Option<CoexistenceCertificate>> {
    check_pair(f, g)?;
    let (fo, go) = (f.op(), g.op());
    let dim = fo.dim();

    if eig(&fo.add(go))?.max() <= 1.0 + 1e-12 {
        return Ok(Some(CoexistenceCertificate::from_h(fo, go, HermitianOperator::zeros(dim))));
    }
    if fo.commutator_norm(go) > COMMUTATOR_TOL {
        return Ok(None);
    }

    let basis = joint_eigenbasis(fo, go)?;
    let h_values: Vec<f64> = (0..dim)
        .map(|k| {
            let u = basis.column(k);
            let (fk, gk) = (fo.expectation(&u), go.expectation(&u));
            fk.min(gk).max(fk + gk - 1.0).max(0.0)
        })
        .collect();
    let h = HermitianOperator::from_spectral(&h_values, &basis);
    Ok(Some(CoexistenceCertificate::from_h(fo, go, h)))
}

/// Orthonormal basis diagonalizing both of two commuting operators:
/// eigenvectors of `F`, refined inside each degenerate cluster by `G`.
fn joint_eigenbasis(f: &HermitianOperator, g: &HermitianOperator) -> Result<Matrix> {
    let spec = eig(f)?;
    let u = spec.eigenvectors();
    let dim = f.dim();
    let rotated = u.adjoint().matmul(g.as_matrix()).matmul(u);

    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    let values = spec.eigenvalues();
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && (values[end - 1] - values[end]).abs() <= CLUSTER_TOL {
            end += 1;
        }
        let size = end - start;
        if size == 1 {
            columns.push(u.column(start));
        } else {
            let mut block = Matrix::zeros(size);
            for i in 0..size {
                for j in 0..size {
                    block.set(i, j, rotated.get(start + i, start + j));
                }
            }
            let sub = eig(&HermitianOperator::symmetrized(block))?;
            for k in 0..size {
                let w = sub.eigenvector(k);
                let col: Vec<Complex64> =
                    (0..dim).map(|r| (0..size).map(|i| u.get(r, start + i) * w[i]).sum()).collect();
                columns.push(col);
            }
        }
        start = end;
    }
    Ok(Matrix::from_columns(&columns))
}

//! Dense symmetric decompositions.
//!
//! nalgebra's implicit QR returns NaN on some rank-one projectors of dimension
//! 1024, so the oracle calls faer for eigenvalues and singular values.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

fn to_faer(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn finite<'a>(what: &str, mut xs: impl Iterator<Item = &'a f64>) -> Result<()> {
    if xs.all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Numerical(format!("{what} produced a non-finite value")))
    }
}

/// Eigenvalues and orthonormal eigenvectors (as columns) of a real symmetric
/// matrix; only the lower triangle is read.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let eig = to_faer(m)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigendecomposition: {e:?}")))?;
    let n = m.nrows();
    let s = eig.S();
    let u = eig.U();
    let values = DVector::from_fn(n, |i, _| s[i]);
    let vectors = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
    finite("eigendecomposition", values.iter().chain(vectors.iter()))?;
    Ok((values, vectors))
}

pub fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let sv = to_faer(m)
        .singular_values()
        .map_err(|e| Error::Numerical(format!("singular values: {e:?}")))?;
    finite("singular values", sv.iter())?;
    Ok(sv)
}

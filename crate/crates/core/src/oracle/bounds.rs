//! `||[rho, H]||_2^2`, `||[rho, H]||_1` and the exact SLD QFI for
//! `H = sum_j Z_j` on all qubits of `rho`.
//!
//! Mixtures are handled in `S = span{psi_a, H psi_a}`. The support of `rho`
//! lies in `S` and `H` maps the support into `S`, so the commutator and every
//! term of the SLD sum live in `S` and the compression is exact.

use nalgebra::{DMatrix, DVector};

use super::linalg::{singular_values, symmetric_eigen};
use super::density::{OracleDensity, PureMixture, MAX_DENSE_QUBITS};
use super::state::generator_diagonal;
use crate::error::{Error, Result};

/// Eigenpairs with `lambda_i + lambda_j` below this are dropped from the SLD sum.
pub const QFI_CUTOFF: f64 = 1e-10;

const ROUTE_RTOL: f64 = 1e-9;
const ROUTE_ATOL: f64 = 1e-11;

/// The commutator norm computed both ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorRoutes {
    /// Frobenius norm squared of the explicit matrix `rho H - H rho`.
    pub frobenius: f64,
    /// `2 tr(rho^2 H^2) - 2 tr(rho H rho H)`.
    pub trace_identity: f64,
}

impl CommutatorRoutes {
    pub fn agree(&self) -> bool {
        let scale = self.frobenius.abs().max(self.trace_identity.abs());
        (self.frobenius - self.trace_identity).abs() <= ROUTE_RTOL * scale + ROUTE_ATOL
    }
}

/// Real symmetric compression of a density operator together with `H`.
struct Compressed {
    rho: DMatrix<f64>,
    h: DMatrix<f64>,
}

fn compress(mx: &PureMixture) -> Result<Compressed> {
    let h_diag = generator_diagonal(mx.qubits());
    let mut vectors: Vec<DVector<f64>> = Vec::new();
    for (_, s) in mx.terms() {
        let v = DVector::from_column_slice(s.amplitudes());
        let hv = v.component_mul(&DVector::from_column_slice(&h_diag));
        vectors.push(v);
        vectors.push(hv);
    }
    let k = vectors.len();
    let gram = DMatrix::from_fn(k, k, |i, j| vectors[i].dot(&vectors[j]));
    let (values, vectors_in_gram) = symmetric_eigen(&gram)?;
    let top = values.iter().cloned().fold(0.0, f64::max);
    let d = vectors[0].len();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for (idx, lam) in values.iter().enumerate() {
        if *lam > 1e-13 * top {
            let mut col = DVector::zeros(d);
            for (c, v) in vectors_in_gram.column(idx).iter().zip(&vectors) {
                col.axpy(*c, v, 1.0);
            }
            basis.push(col / lam.sqrt());
        }
    }
    let q = DMatrix::from_columns(&basis);
    let m = q.ncols();
    let mut rho = DMatrix::zeros(m, m);
    for (w, s) in mx.terms() {
        let c = q.tr_mul(&DVector::from_column_slice(s.amplitudes()));
        rho += &c * c.transpose() * *w;
    }
    let hq = DMatrix::from_fn(d, m, |i, j| h_diag[i] * q[(i, j)]);
    let h = q.tr_mul(&hq);
    Ok(Compressed { rho, h })
}

fn use_dense(mx: &PureMixture) -> bool {
    mx.qubits() <= MAX_DENSE_QUBITS && 2 * mx.terms().len() >= 1usize << mx.qubits()
}

fn dense_routes(rho: &DMatrix<f64>) -> CommutatorRoutes {
    let h = generator_diagonal(rho.nrows().trailing_zeros() as usize);
    let d = rho.nrows();
    // (rho H - H rho)_{ik} = rho_ik (h_k - h_i)
    let comm = DMatrix::from_fn(d, d, |i, k| rho[(i, k)] * h[k] - h[i] * rho[(i, k)]);
    let frobenius = comm.norm_squared();
    let mut sq = 0.0;
    let mut cross = 0.0;
    for i in 0..d {
        for k in 0..d {
            let r2 = rho[(i, k)] * rho[(k, i)];
            sq += r2 * h[i] * h[i];
            cross += r2 * h[i] * h[k];
        }
    }
    CommutatorRoutes {
        frobenius,
        trace_identity: 2.0 * sq - 2.0 * cross,
    }
}

fn small_routes(c: &Compressed) -> f64 {
    let comm = &c.rho * &c.h - &c.h * &c.rho;
    comm.norm_squared()
}

fn mixture_identity(mx: &PureMixture) -> f64 {
    let h = DVector::from_column_slice(&generator_diagonal(mx.qubits()));
    let vs: Vec<DVector<f64>> = mx
        .terms()
        .iter()
        .map(|(_, s)| DVector::from_column_slice(s.amplitudes()))
        .collect();
    let hvs: Vec<DVector<f64>> = vs.iter().map(|v| v.component_mul(&h)).collect();
    let mut sq = 0.0;
    let mut cross = 0.0;
    for (a, (qa, _)) in mx.terms().iter().enumerate() {
        for (b, (qb, _)) in mx.terms().iter().enumerate() {
            let w = qa * qb;
            // <psi_b|psi_a><psi_a|H^2|psi_b> and |<psi_a|H|psi_b>|^2
            sq += w * vs[b].dot(&vs[a]) * hvs[a].dot(&hvs[b]);
            let hab = vs[a].dot(&hvs[b]);
            cross += w * hab * hab;
        }
    }
    2.0 * sq - 2.0 * cross
}

/// Both commutator computations, without comparing them.
pub fn commutator_routes(rho: &OracleDensity) -> Result<CommutatorRoutes> {
    Ok(match rho {
        OracleDensity::Dense(m) => dense_routes(m),
        OracleDensity::Mixture(mx) if use_dense(mx) => {
            let dense = dense_routes(&mx.to_dense()?);
            CommutatorRoutes {
                frobenius: dense.frobenius,
                trace_identity: mixture_identity(mx),
            }
        }
        OracleDensity::Mixture(mx) => CommutatorRoutes {
            frobenius: small_routes(&compress(mx)?),
            trace_identity: mixture_identity(mx),
        },
    })
}

/// `||[rho, H]||_2^2`, failing hard if the two routes disagree.
pub fn commutator_bound(rho: &OracleDensity) -> Result<f64> {
    let routes = commutator_routes(rho)?;
    if !routes.agree() {
        return Err(Error::IdentityViolation(format!(
            "commutator routes disagree: frobenius {} vs trace identity {}",
            routes.frobenius, routes.trace_identity
        )));
    }
    Ok(routes.frobenius)
}

fn dense_or_compressed(rho: &OracleDensity) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    match rho {
        OracleDensity::Mixture(mx) if !use_dense(mx) => {
            let c = compress(mx)?;
            Ok((c.rho, c.h))
        }
        _ => {
            let m = rho.to_dense()?;
            let h = DMatrix::from_diagonal(&DVector::from_vec(generator_diagonal(rho.qubits())));
            Ok((m, h))
        }
    }
}

/// Trace norm `||[rho, H]||_1`.
pub fn commutator_trace_norm(rho: &OracleDensity) -> Result<f64> {
    let (r, h) = dense_or_compressed(rho)?;
    let comm = &r * &h - &h * &r;
    Ok(singular_values(&comm)?.iter().sum())
}

/// `2 sum_{i,j} (l_i - l_j)^2 / (l_i + l_j) |<i|H|j>|^2` over pairs with
/// `l_i + l_j > 1e-10`.
pub fn exact_qfi(rho: &OracleDensity) -> Result<f64> {
    let (r, h) = dense_or_compressed(rho)?;
    let (l, v) = symmetric_eigen(&r)?;
    let hv = v.tr_mul(&(&h * &v));
    let mut acc = 0.0;
    for i in 0..l.len() {
        for j in 0..l.len() {
            let s = l[i] + l[j];
            if s > QFI_CUTOFF {
                let diff = l[i] - l[j];
                acc += diff * diff / s * hv[(i, j)] * hv[(i, j)];
            }
        }
    }
    Ok(2.0 * acc)
}

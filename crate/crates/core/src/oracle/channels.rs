//! Phase-flip noise applied to oracle states.

use nalgebra::DMatrix;

use super::density::{PureMixture, MAX_DENSE_QUBITS};
use super::state::{binom_f64, OracleState};
use crate::error::{Error, Result};

fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::ProbabilityOutOfRange {
            name,
            value: v.to_string(),
        });
    }
    Ok(())
}

/// `lambda |psi><psi| + (1 - lambda)/N sum_j Z_j |psi><psi| Z_j`.
pub fn apply_single_error_dephasing(state: &OracleState, lambda: f64) -> Result<PureMixture> {
    check_unit("lambda", lambda)?;
    let n = state.qubits();
    let mut terms = vec![(lambda, state.clone())];
    if lambda < 1.0 {
        let w = (1.0 - lambda) / n as f64;
        terms.extend((0..n).map(|j| (w, state.apply_z(j))));
    }
    PureMixture::new(n, terms)
}

/// Truncated i.i.d. dephasing: all `Z` patterns of weight `<= k`.
#[derive(Debug, Clone, PartialEq)]
pub struct IidDephasing {
    pub mixture: PureMixture,
    /// Exact probability of the dropped patterns, `sum_{j > k} C(N,j) p^j (1-p)^(N-j)`.
    pub dropped_mass: f64,
}

/// Mixture over `Z_x |psi>` with weight `p^|x| (1-p)^(N-|x|)`; `None` keeps
/// every pattern.
pub fn apply_iid_dephasing(state: &OracleState, p: f64, max_weight: Option<usize>) -> Result<IidDephasing> {
    check_unit("p", p)?;
    let n = state.qubits();
    let k = max_weight.unwrap_or(n).min(n);
    let mut terms = Vec::new();
    for mask in 0..1usize << n {
        let j = mask.count_ones() as usize;
        if j > k {
            continue;
        }
        let w = p.powi(j as i32) * (1.0 - p).powi((n - j) as i32);
        if w > 0.0 {
            terms.push((w, state.apply_z_mask(mask)));
        }
    }
    let dropped_mass = (k + 1..=n)
        .map(|j| binom_f64(n, j) * p.powi(j as i32) * (1.0 - p).powi((n - j) as i32))
        .sum();
    Ok(IidDephasing {
        mixture: PureMixture::new(n, terms)?,
        dropped_mass,
    })
}

/// Untruncated i.i.d. dephasing as a dense matrix:
/// `sigma_ik = psi_i psi_k (1 - 2p)^{|i xor k|}`.
pub fn iid_dephasing_dense(state: &OracleState, p: f64) -> Result<DMatrix<f64>> {
    check_unit("p", p)?;
    let n = state.qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::OracleTooLarge {
            requested: n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let a = state.amplitudes();
    let damp: Vec<f64> = (0..=n).map(|d| (1.0 - 2.0 * p).powi(d as i32)).collect();
    let d = a.len();
    Ok(DMatrix::from_fn(d, d, |i, k| a[i] * a[k] * damp[(i ^ k).count_ones() as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bounds::commutator_bound;
    use crate::oracle::density::OracleDensity;
    use crate::oracle::state::build_state;
    use crate::probe::GnuParams;

    #[test]
    fn lambda_one_is_identity() {
        let s = build_state(GnuParams::new(2, 2, 2).unwrap()).unwrap();
        let mx = apply_single_error_dephasing(&s, 1.0).unwrap();
        assert_eq!(mx.terms().len(), 1);
        assert_eq!(mx.terms()[0].1, s);
    }

    #[test]
    fn ghz_half_dephasing_is_classical() {
        let mx = apply_single_error_dephasing(&OracleState::ghz(6).unwrap(), 0.5).unwrap();
        assert!(commutator_bound(&OracleDensity::Mixture(mx)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn diagonal_is_untouched() {
        let s = build_state(GnuParams::new(1, 3, 2).unwrap()).unwrap();
        let pure = OracleDensity::pure(&s).to_dense().unwrap();
        let single = apply_single_error_dephasing(&s, 0.3).unwrap().to_dense().unwrap();
        let iid = iid_dephasing_dense(&s, 0.2).unwrap();
        for i in 0..pure.nrows() {
            assert!((pure[(i, i)] - single[(i, i)]).abs() < 1e-15);
            assert!((pure[(i, i)] - iid[(i, i)]).abs() < 1e-15);
        }
    }

    #[test]
    fn full_mixture_matches_dense_form() {
        let s = build_state(GnuParams::new(1, 3, 2).unwrap()).unwrap();
        let full = apply_iid_dephasing(&s, 0.15, None).unwrap();
        assert_eq!(full.dropped_mass, 0.0);
        assert!((full.mixture.total_weight() - 1.0).abs() < 1e-14);
        let diff = full.mixture.to_dense().unwrap() - iid_dephasing_dense(&s, 0.15).unwrap();
        assert!(diff.amax() < 1e-14);
    }

    #[test]
    fn p_zero_is_pure() {
        let s = build_state(GnuParams::new(1, 2, 2).unwrap()).unwrap();
        let out = apply_iid_dephasing(&s, 0.0, Some(2)).unwrap();
        assert_eq!(out.mixture.terms().len(), 1);
        assert_eq!(out.dropped_mass, 0.0);
    }

    #[test]
    fn truncation_mass_adds_up() {
        let s = build_state(GnuParams::new(1, 3, 2).unwrap()).unwrap();
        for k in 0..=6 {
            let out = apply_iid_dephasing(&s, 0.1, Some(k)).unwrap();
            assert!((out.mixture.total_weight() + out.dropped_mass - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_probabilities() {
        let s = OracleState::ghz(2).unwrap();
        assert!(apply_single_error_dephasing(&s, 1.5).is_err());
        assert!(apply_iid_dephasing(&s, -0.1, None).is_err());
    }
}

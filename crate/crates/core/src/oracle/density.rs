//! Density matrices, either dense or as a weighted list of pure states.

use nalgebra::DMatrix;

use super::state::OracleState;
use crate::erasure::PartialTraceBlocks;
use crate::error::{Error, Result};
use crate::render::to_f64;

pub const MAX_DENSE_QUBITS: usize = 12;

/// `sum_a q_a |psi_a><psi_a|` with normalised `psi_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureMixture {
    qubits: usize,
    terms: Vec<(f64, OracleState)>,
}

impl PureMixture {
    pub fn new(qubits: usize, terms: Vec<(f64, OracleState)>) -> Result<Self> {
        if terms.iter().any(|(q, s)| s.qubits() != qubits || *q < 0.0) {
            return Err(Error::Domain("mixture terms need matching size and weight >= 0".into()));
        }
        Ok(Self { qubits, terms })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn terms(&self) -> &[(f64, OracleState)] {
        &self.terms
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|(q, _)| q).sum()
    }

    /// Same mixture with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            qubits: self.qubits,
            terms: self.terms.iter().map(|(q, s)| (q * factor, s.clone())).collect(),
        }
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        check_dense(self.qubits)?;
        let d = 1usize << self.qubits;
        let mut m = DMatrix::zeros(d, d);
        for (q, s) in &self.terms {
            let v = nalgebra::DVector::from_column_slice(s.amplitudes());
            m += &v * v.transpose() * *q;
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleDensity {
    Dense(DMatrix<f64>),
    Mixture(PureMixture),
}

impl OracleDensity {
    pub fn pure(state: &OracleState) -> Self {
        OracleDensity::Mixture(PureMixture {
            qubits: state.qubits(),
            terms: vec![(1.0, state.clone())],
        })
    }

    pub fn qubits(&self) -> usize {
        match self {
            OracleDensity::Dense(m) => m.nrows().trailing_zeros() as usize,
            OracleDensity::Mixture(mx) => mx.qubits,
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            OracleDensity::Dense(m) => m.trace(),
            OracleDensity::Mixture(mx) => mx.terms.iter().map(|(q, s)| q * s.norm_squared()).sum(),
        }
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        match self {
            OracleDensity::Dense(m) => Ok(m.clone()),
            OracleDensity::Mixture(mx) => mx.to_dense(),
        }
    }
}

fn check_dense(qubits: usize) -> Result<()> {
    if qubits > MAX_DENSE_QUBITS {
        return Err(Error::OracleTooLarge {
            requested: qubits,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

fn check_trace_count(state: &OracleState, t: usize) -> Result<()> {
    if t >= state.qubits() {
        return Err(Error::Domain(format!(
            "cannot trace {t} of {} qubits",
            state.qubits()
        )));
    }
    Ok(())
}

/// Dense `tr_{1..t} |psi><psi|`.
pub fn partial_trace(state: &OracleState, t: usize) -> Result<OracleDensity> {
    check_trace_count(state, t)?;
    let rem = state.qubits() - t;
    check_dense(rem)?;
    let d = 1usize << rem;
    let amps = state.amplitudes();
    let mut m = DMatrix::zeros(d, d);
    for s in 0..1usize << t {
        let block = &amps[s * d..(s + 1) * d];
        for r in 0..d {
            if block[r] == 0.0 {
                continue;
            }
            for c in 0..d {
                m[(r, c)] += block[r] * block[c];
            }
        }
    }
    Ok(OracleDensity::Dense(m))
}

/// The same partial trace as a mixture of the `2^t` conditional states.
pub fn partial_trace_mixture(state: &OracleState, t: usize) -> Result<PureMixture> {
    check_trace_count(state, t)?;
    let rem = state.qubits() - t;
    let d = 1usize << rem;
    let mut terms = Vec::new();
    for s in 0..1usize << t {
        let block = state.amplitudes()[s * d..(s + 1) * d].to_vec();
        let weight: f64 = block.iter().map(|a| a * a).sum();
        if weight > 0.0 {
            let v = OracleState::from_amplitudes(rem, block)?.scaled(1.0 / weight.sqrt());
            terms.push((weight, v));
        }
    }
    PureMixture::new(rem, terms)
}

/// Assemble the dense matrix described by the structured decomposition.
pub fn reconstruct_partial_trace(blocks: &PartialTraceBlocks) -> Result<DMatrix<f64>> {
    let m = blocks.remaining_qubits as usize;
    check_dense(m)?;
    let weights_of = |comps: &[(u64, crate::combinatorics::ExactRational)]| {
        let mut per = vec![0.0; m + 1];
        for (w, c) in comps {
            per[*w as usize] = to_f64(c).sqrt();
        }
        OracleState::from_weight_fn(m, |w| per[w])
    };
    let to_vec = |s: &OracleState| nalgebra::DVector::from_column_slice(s.amplitudes());
    let low = to_vec(&OracleState::unit_weight_vector(m, blocks.low_weight as usize)?);
    let high = to_vec(&OracleState::unit_weight_vector(m, blocks.high_weight as usize)?);

    let d = 1usize << m;
    let mut rho = DMatrix::zeros(d, d);
    let thetas = blocks
        .thetas
        .iter()
        .map(|th| Ok((to_f64(&th.multiplicity), to_vec(&weights_of(&th.components)?))))
        .collect::<Result<Vec<_>>>()?;
    for (mult, v) in &thetas {
        rho += v * v.transpose() * *mult;
    }
    let cross = to_f64(&blocks.cross_coefficient_squared).sqrt();
    let first = &thetas.first().expect("theta_0").1;
    let last = &thetas.last().expect("theta_t").1;
    rho += (&low * first.transpose() + first * low.transpose()) * cross;
    rho += (&high * last.transpose() + last * high.transpose()) * cross;
    let corner = to_f64(&blocks.corner_weight);
    rho += (&low * low.transpose() + &high * high.transpose()) * corner;
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::erasure::lemma1_blocks;
    use crate::oracle::state::build_state;
    use crate::probe::GnuParams;

    #[test]
    fn ghz_trace_is_classical() {
        let rho = partial_trace(&OracleState::ghz(4).unwrap(), 1).unwrap().to_dense().unwrap();
        let d = rho.nrows();
        for r in 0..d {
            for c in 0..d {
                let want = if r == c && (r == 0 || r == d - 1) { 0.5 } else { 0.0 };
                assert!((rho[(r, c)] - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn plus_product_trace() {
        let rho = partial_trace(&OracleState::product_plus(5).unwrap(), 2).unwrap().to_dense().unwrap();
        // (|+><+|)^3 has every entry 1/8
        assert!(rho.iter().all(|x| (x - 0.125).abs() < 1e-15));
    }

    #[test]
    fn trace_and_positivity_preserved() {
        for (g, n, t) in [(2, 2, 1), (3, 3, 2), (4, 2, 1)] {
            let s = build_state(GnuParams::new(g, n, 1).unwrap()).unwrap();
            let rho = partial_trace(&s, t).unwrap().to_dense().unwrap();
            assert!((rho.trace() - 1.0).abs() < 1e-12);
            assert!((&rho - rho.transpose()).amax() < 1e-15);
            let (l, _) = crate::oracle::linalg::symmetric_eigen(&rho).unwrap();
            assert!(l.iter().all(|l| *l > -1e-10));
        }
    }

    #[test]
    fn mixture_and_dense_agree() {
        let s = build_state(GnuParams::new(3, 3, 1).unwrap()).unwrap();
        let dense = partial_trace(&s, 2).unwrap().to_dense().unwrap();
        let mix = partial_trace_mixture(&s, 2).unwrap();
        assert!((mix.total_weight() - 1.0).abs() < 1e-12);
        assert!((mix.to_dense().unwrap() - dense).amax() < 1e-14);
    }

    #[test]
    fn structured_form_matches_partial_trace() {
        let s = build_state(GnuParams::new(2, 2, 1).unwrap()).unwrap();
        let dense = partial_trace(&s, 1).unwrap().to_dense().unwrap();
        let rebuilt = reconstruct_partial_trace(&lemma1_blocks(2, 2, 1).unwrap()).unwrap();
        assert_eq!(rebuilt.nrows(), 8);
        assert!((rebuilt - dense).amax() < 1e-12);
    }

    #[test]
    fn dense_cap() {
        let s = OracleState::product_plus(14).unwrap();
        assert!(matches!(partial_trace(&s, 1), Err(Error::OracleTooLarge { .. })));
        assert!(partial_trace_mixture(&s, 1).is_ok());
        assert!(partial_trace(&s, 14).is_err());
    }
}

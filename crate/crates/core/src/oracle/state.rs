//! Dense real state vectors over `N <= 14` qubits.
//!
//! Qubit 1 is the most significant bit of the basis index, so the first `t`
//! qubits of index `i` are `i >> (N - t)`.

use crate::error::{Error, Result};
use crate::probe::{DickeAmplitudeProfile, GnuParams};

pub const MAX_STATE_QUBITS: usize = 14;

/// Binomial in double precision; exact for every size the oracle reaches.
pub(crate) fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleState {
    qubits: usize,
    amplitudes: Vec<f64>,
}

fn check_qubits(qubits: usize) -> Result<()> {
    if qubits > MAX_STATE_QUBITS {
        return Err(Error::OracleTooLarge {
            requested: qubits,
            max: MAX_STATE_QUBITS,
        });
    }
    Ok(())
}

impl OracleState {
    pub fn from_amplitudes(qubits: usize, amplitudes: Vec<f64>) -> Result<Self> {
        check_qubits(qubits)?;
        if amplitudes.len() != 1 << qubits {
            return Err(Error::Domain(format!(
                "state on {qubits} qubits needs {} amplitudes, got {}",
                1usize << qubits,
                amplitudes.len()
            )));
        }
        Ok(Self { qubits, amplitudes })
    }

    /// Amplitude `f(w)` on every basis string of Hamming weight `w`.
    pub fn from_weight_fn(qubits: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        check_qubits(qubits)?;
        let amplitudes = (0..1usize << qubits).map(|i| f(i.count_ones() as usize)).collect();
        Ok(Self { qubits, amplitudes })
    }

    /// Materialise a Dicke profile: amplitude `sqrt(p_w / C(N, w))` per string.
    pub fn from_profile(profile: &DickeAmplitudeProfile) -> Result<Self> {
        let qubits = profile.qubits() as usize;
        check_qubits(qubits)?;
        let mut per_weight = vec![0.0; qubits + 1];
        for (w, p) in profile.entries() {
            per_weight[*w as usize] = (crate::render::to_f64(p) / binom_f64(qubits, *w as usize)).sqrt();
        }
        Self::from_weight_fn(qubits, |w| per_weight[w])
    }

    pub fn ghz(qubits: usize) -> Result<Self> {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_weight_fn(qubits, |w| if w == 0 || w == qubits { a } else { 0.0 })
    }

    pub fn product_plus(qubits: usize) -> Result<Self> {
        let a = (0.5f64).powi(qubits as i32).sqrt();
        Self::from_weight_fn(qubits, |_| a)
    }

    /// Normalised Dicke state `|D^N_w>`.
    pub fn dicke(qubits: usize, weight: usize) -> Result<Self> {
        let a = 1.0 / binom_f64(qubits, weight).sqrt();
        Self::from_weight_fn(qubits, |w| if w == weight { a } else { 0.0 })
    }

    /// Unnormalised `|H^N_w>`: amplitude one on every weight-`w` string.
    pub fn unit_weight_vector(qubits: usize, weight: usize) -> Result<Self> {
        Self::from_weight_fn(qubits, |w| if w == weight { 1.0 } else { 0.0 })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            qubits: self.qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// `Z` on qubit `j` (0-based from the most significant bit).
    pub fn apply_z(&self, j: usize) -> Self {
        let bit = 1usize << (self.qubits - 1 - j);
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| if i & bit != 0 { -a } else { *a })
            .collect();
        Self {
            qubits: self.qubits,
            amplitudes,
        }
    }

    /// `Z` on every qubit whose bit is set in `mask`.
    pub fn apply_z_mask(&self, mask: usize) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| if (i & mask).count_ones() % 2 == 1 { -a } else { *a })
            .collect();
        Self {
            qubits: self.qubits,
            amplitudes,
        }
    }

    /// `H |psi>` with `H = sum_j Z_j` over all qubits of the state.
    pub fn apply_generator(&self) -> Self {
        let h = generator_diagonal(self.qubits);
        Self {
            qubits: self.qubits,
            amplitudes: self.amplitudes.iter().zip(&h).map(|(a, e)| a * e).collect(),
        }
    }
}

/// Diagonal of `H = Z_1 + ... + Z_M`: `M - 2 popcount(i)`.
pub fn generator_diagonal(qubits: usize) -> Vec<f64> {
    (0..1usize << qubits)
        .map(|i| qubits as f64 - 2.0 * i.count_ones() as f64)
        .collect()
}

/// gnu state built from scratch in floating point:
/// amplitude `sqrt(C(n,j) / 2^n / C(N, gj))` on weight-`gj` strings.
pub fn build_state(params: GnuParams) -> Result<OracleState> {
    let (g, n) = (params.g() as usize, params.n() as usize);
    let qubits = params.qubits() as usize;
    check_qubits(qubits)?;
    let scale = 0.5f64.powi(n as i32);
    OracleState::from_weight_fn(qubits, |w| {
        if w % g != 0 || w / g > n {
            return 0.0;
        }
        let j = w / g;
        (binom_f64(n, j) * scale / binom_f64(qubits, w)).sqrt()
    })
}

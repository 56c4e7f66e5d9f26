//! gnu probe states as exact Dicke-basis profiles, and the phase generator.
//!
//! A gnu state on `N = g n u` qubits is
//! `2^(-n/2) * sum_j sqrt(C(n, j)) |D^N_{gj}>`: only Dicke weights that are
//! multiples of `g` appear, with binomial amplitudes squared. Bound modules
//! never materialise the `2^N` amplitudes; the `n + 1` profile entries are
//! enough.

use num_traits::Zero;

use crate::combinatorics::{binomial, frac, int, pow2, ExactRational};
use crate::error::{Error, Result};

/// The `(g, n, u)` triple of a gnu probe state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GnuParams {
    g: u64,
    n: u64,
    u: u64,
}

impl GnuParams {
    pub fn new(g: u64, n: u64, u: u64) -> Result<Self> {
        if g == 0 || n == 0 || u == 0 {
            return Err(Error::InvalidParams(format!(
                "g, n, u must all be >= 1 (got g={g}, n={n}, u={u})"
            )));
        }
        g.checked_mul(n)
            .and_then(|gn| gn.checked_mul(u))
            .ok_or_else(|| Error::InvalidParams("g*n*u overflows".into()))?;
        Ok(Self { g, n, u })
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    /// Total qubit count `N = g n u`.
    pub fn qubits(&self) -> u64 {
        self.g * self.n * self.u
    }
}

/// Dicke weights paired with exact squared amplitudes, sorted by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DickeAmplitudeProfile {
    qubits: u64,
    entries: Vec<(u64, ExactRational)>,
}

impl DickeAmplitudeProfile {
    /// Build from arbitrary `(weight, amplitude^2)` pairs. Entries are sorted;
    /// weights must be distinct and at most `qubits`.
    pub fn from_entries(qubits: u64, mut entries: Vec<(u64, ExactRational)>) -> Result<Self> {
        entries.sort_by_key(|(w, _)| *w);
        if entries.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(Error::Domain("duplicate Dicke weight in profile".into()));
        }
        if entries.iter().any(|(w, p)| *w > qubits || p < &ExactRational::zero()) {
            return Err(Error::Domain("profile weight above N or negative probability".into()));
        }
        Ok(Self { qubits, entries })
    }

    /// `(|0...0> + |1...1>) / sqrt 2` on `qubits` qubits.
    pub fn ghz(qubits: u64) -> Self {
        Self {
            qubits,
            entries: vec![(0, frac(1, 2)), (qubits, frac(1, 2))],
        }
    }

    pub fn qubits(&self) -> u64 {
        self.qubits
    }

    pub fn entries(&self) -> &[(u64, ExactRational)] {
        &self.entries
    }

    pub fn total_probability(&self) -> ExactRational {
        self.entries.iter().map(|(_, p)| p).sum()
    }
}

/// Exact profile of the gnu state: weight `g j` carries `C(n, j) / 2^n`.
pub fn gnu_profile(params: GnuParams) -> DickeAmplitudeProfile {
    let scale = pow2(-(params.n as i64));
    let entries = (0..=params.n)
        .map(|j| (params.g * j, int(binomial(params.n, j as i64)) * &scale))
        .collect();
    DickeAmplitudeProfile {
        qubits: params.qubits(),
        entries,
    }
}

/// `H = Z_1 + ... + Z_M` on the `M` qubits it acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub qubit_count: u64,
}

impl Generator {
    pub fn new(qubit_count: u64) -> Self {
        Self { qubit_count }
    }

    /// Eigenvalue `M - 2w` on any basis string of Hamming weight `w`.
    pub fn eigenvalue(&self, weight: u64) -> i64 {
        self.qubit_count as i64 - 2 * weight as i64
    }
}

/// `sum_w p(w) (N - 2w)^power` for `power` in `{1, 2}`.
pub fn generator_moment(profile: &DickeAmplitudeProfile, qubits: u64, power: u32) -> Result<ExactRational> {
    if !(1..=2).contains(&power) {
        return Err(Error::UnsupportedPower(power));
    }
    let h = Generator::new(qubits);
    Ok(profile
        .entries
        .iter()
        .map(|(w, p)| p * int(h.eigenvalue(*w)).pow(power as i32))
        .sum())
}

/// `2 Var(H)`, which is `||[rho, H]||_2^2` for the pure state with this profile.
pub fn pure_state_commutator_bound(profile: &DickeAmplitudeProfile) -> ExactRational {
    let m1 = generator_moment(profile, profile.qubits, 1).expect("power 1");
    let m2 = generator_moment(profile, profile.qubits, 2).expect("power 2");
    int(2) * (m2 - &m1 * &m1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial_moment;
    use num_traits::One;

    #[test]
    fn rejects_zero_parameters() {
        assert!(GnuParams::new(0, 1, 1).is_err());
        assert!(GnuParams::new(1, 0, 1).is_err());
        assert!(GnuParams::new(1, 1, 0).is_err());
        assert_eq!(GnuParams::new(3, 4, 2).unwrap().qubits(), 24);
    }

    #[test]
    fn single_qubit_plus_state() {
        let p = gnu_profile(GnuParams::new(1, 1, 1).unwrap());
        assert_eq!(p.entries(), &[(0, frac(1, 2)), (1, frac(1, 2))]);
    }

    #[test]
    fn g1_u1_is_product_plus_state() {
        for big_n in 1..=10u64 {
            let p = gnu_profile(GnuParams::new(1, big_n, 1).unwrap());
            for (j, (w, prob)) in p.entries().iter().enumerate() {
                assert_eq!(*w, j as u64);
                assert_eq!(*prob, int(binomial(big_n, j as i64)) / int(1u64 << big_n));
            }
        }
    }

    #[test]
    fn g3_n3_profile() {
        let p = gnu_profile(GnuParams::new(3, 3, 1).unwrap());
        assert_eq!(
            p.entries(),
            &[(0, frac(1, 8)), (3, frac(3, 8)), (6, frac(3, 8)), (9, frac(1, 8))]
        );
    }

    #[test]
    fn profiles_are_normalised() {
        for g in 1..=4 {
            for n in 1..=20 {
                for u in 1..=2 {
                    let p = gnu_profile(GnuParams::new(g, n, u).unwrap());
                    assert!(p.total_probability().is_one());
                }
            }
        }
    }

    #[test]
    fn u_changes_only_qubit_count() {
        for g in 1..=5 {
            for n in 1..=6 {
                let p1 = gnu_profile(GnuParams::new(g, n, 1).unwrap());
                let p2 = gnu_profile(GnuParams::new(g, n, 2).unwrap());
                assert_eq!(p1.entries(), p2.entries());
                assert_eq!(p2.qubits(), 2 * p1.qubits());
            }
        }
    }

    #[test]
    fn generator_moments() {
        let plus = gnu_profile(GnuParams::new(1, 7, 1).unwrap());
        assert!(generator_moment(&plus, 7, 1).unwrap().is_zero());
        for g in 1..=6u64 {
            for n in 1..=6u64 {
                let params = GnuParams::new(g, n, 2).unwrap();
                let p = gnu_profile(params);
                let m1 = generator_moment(&p, params.qubits(), 1).unwrap();
                assert_eq!(m1, int(g * n));
                // <H> = N - 2g <j>, <j> = sum C(n,j) j / 2^n
                let mean_j = int(binomial_moment(n, 1).unwrap()) * pow2(-(n as i64));
                assert_eq!(m1, int(params.qubits()) - int(2 * g) * mean_j);
                assert_eq!(pure_state_commutator_bound(&p), int(2 * g * g * n));
            }
        }
        assert_eq!(generator_moment(&plus, 7, 3), Err(Error::UnsupportedPower(3)));
    }

    #[test]
    fn generator_eigenvalues() {
        let h = Generator::new(5);
        assert_eq!(h.eigenvalue(0), 5);
        assert_eq!(h.eigenvalue(5), -5);
        assert_eq!(h.eigenvalue(2), 1);
    }

    #[test]
    fn ghz_profile_variance() {
        let ghz = DickeAmplitudeProfile::ghz(6);
        // Var(H) = N^2 for GHZ
        assert_eq!(pure_state_commutator_bound(&ghz), int(72));
    }
}

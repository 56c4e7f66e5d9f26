//! Erasure-robust QFI lower bound for the `u = 1` gnu state.
//!
//! After `t` known qubits are lost the remaining `N - t` qubits are in
//! `rho = tr_t |phi_1><phi_1|`. For `t < min(g, n)` this state decomposes into
//! pairwise orthogonal (unnormalised) vectors `theta_0..theta_t`, cross terms
//! against the two extreme Dicke vectors, and two corner projectors. From that
//! structure `||[rho, H]||_2^2` reduces to the coefficient tables built here:
//!
//! ```text
//! a_{j,u} = C(n,j)/2^n * C(N-t, gj-u) / C(N, gj)
//! b_{j,u} = 4(gj-u)(N-t-gj+u) / ((N-t)(N-t-1))
//! c_{j,u} = 2(gj-u) / (N-t)
//! A_u = sum_j a,   B_u = sum_j a b,   C_u = sum_j a c
//! K_u = 2 A_u C_u - (1 - 1/(N-t)) A_u B_u - C_u^2
//! ```
//!
//! and the bound
//!
//! ```text
//! 2(N-t)^2/2^n (4A_t - B_0 - B_t + 2C_0 - 2C_t) + 2(N-t)/2^n (B_0 + B_t)
//!   + 2(N-t)^2 sum_u C(t,u)^2 K_u
//! ```
//!
//! The erased qubits are taken to be the first `t`; every state here is
//! permutation invariant so the choice is immaterial.

use num_traits::{One, Zero};

use crate::combinatorics::{binomial, falling_factorial, frac, int, pow2, ExactRational};
use crate::error::{Error, Result};
use crate::probe::{gnu_profile, pure_state_commutator_bound, GnuParams};

fn check_hypothesis(g: u64, n: u64, t: u64) -> Result<()> {
    if g == 0 || n < 2 {
        return Err(Error::InvalidParams(format!(
            "erasure bound needs g >= 1 and n >= 2 (got g={g}, n={n})"
        )));
    }
    if t >= g || t >= n {
        return Err(Error::ErasureHypothesis { g, n, t });
    }
    Ok(())
}

/// Coefficient tables for a given `(g, n, t)`; `j` runs over `1..n` and `u`
/// over `0..=t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureCoefficients {
    pub g: u64,
    pub n: u64,
    pub t: u64,
    a: Vec<Vec<ExactRational>>,
    b: Vec<Vec<ExactRational>>,
    c: Vec<Vec<ExactRational>>,
    sum_a: Vec<ExactRational>,
    sum_ab: Vec<ExactRational>,
    sum_ac: Vec<ExactRational>,
    k: Vec<ExactRational>,
}

impl ErasureCoefficients {
    /// `N = g n`.
    pub fn qubits(&self) -> u64 {
        self.g * self.n
    }

    pub fn a(&self, j: u64, u: u64) -> &ExactRational {
        &self.a[(j - 1) as usize][u as usize]
    }

    pub fn b(&self, j: u64, u: u64) -> &ExactRational {
        &self.b[(j - 1) as usize][u as usize]
    }

    pub fn c(&self, j: u64, u: u64) -> &ExactRational {
        &self.c[(j - 1) as usize][u as usize]
    }

    /// `A_u`.
    pub fn big_a(&self, u: u64) -> &ExactRational {
        &self.sum_a[u as usize]
    }

    /// `B_u`.
    pub fn big_b(&self, u: u64) -> &ExactRational {
        &self.sum_ab[u as usize]
    }

    /// `C_u`.
    pub fn big_c(&self, u: u64) -> &ExactRational {
        &self.sum_ac[u as usize]
    }

    /// `K_u`.
    pub fn big_k(&self, u: u64) -> &ExactRational {
        &self.k[u as usize]
    }

    /// `<theta_u|theta_u> = A_u` for every `u`.
    pub fn theta_norms(&self) -> ThetaVectorNorms {
        ThetaVectorNorms {
            norms_squared: self.sum_a.clone(),
        }
    }
}

/// Squared norms of the orthogonal vectors `theta_0..theta_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaVectorNorms {
    pub norms_squared: Vec<ExactRational>,
}

/// Build the `a`, `b`, `c` tables and their aggregates.
///
/// Requires `n >= 2` and `t < min(g, n)`.
pub fn erasure_coefficients(g: u64, n: u64, t: u64) -> Result<ErasureCoefficients> {
    check_hypothesis(g, n, t)?;
    let big_n = (g * n) as i64;
    let rem = big_n - t as i64;
    let scale = pow2(-(n as i64));

    let mut a = Vec::with_capacity(n as usize - 1);
    let mut b = Vec::with_capacity(n as usize - 1);
    let mut c = Vec::with_capacity(n as usize - 1);
    for j in 1..n {
        let gj = (g * j) as i64;
        let weight = int(binomial(n, j as i64)) * &scale / int(falling_factorial(big_n, t));
        let (mut ar, mut br, mut cr) = (Vec::new(), Vec::new(), Vec::new());
        for u in 0..=t as i64 {
            let w = gj - u;
            // C(N-t, gj-u) / C(N, gj) = (gj)_u (N-gj)_(t-u) / (N)_t
            ar.push(&weight * int(falling_factorial(gj, u as u64) * falling_factorial(big_n - gj, t - u as u64)));
            br.push(frac(4 * w * (rem - w), rem * (rem - 1)));
            cr.push(frac(2 * w, rem));
        }
        a.push(ar);
        b.push(br);
        c.push(cr);
    }

    let mut sum_a = Vec::new();
    let mut sum_ab = Vec::new();
    let mut sum_ac = Vec::new();
    let mut k = Vec::new();
    let shrink = ExactRational::one() - frac(1, rem);
    for u in 0..=t as usize {
        let au: ExactRational = a.iter().map(|row| &row[u]).sum();
        let bu: ExactRational = a.iter().zip(&b).map(|(ra, rb)| &ra[u] * &rb[u]).sum();
        let cu: ExactRational = a.iter().zip(&c).map(|(ra, rc)| &ra[u] * &rc[u]).sum();
        k.push(int(2) * &au * &cu - &shrink * &au * &bu - &cu * &cu);
        sum_a.push(au);
        sum_ab.push(bu);
        sum_ac.push(cu);
    }

    Ok(ErasureCoefficients {
        g,
        n,
        t,
        a,
        b,
        c,
        sum_a,
        sum_ab,
        sum_ac,
        k,
    })
}

/// Exact lower bound on the QFI of `tr_t |phi_1><phi_1|`, equal to
/// `||[rho, H]||_2^2` with `H` the sum of `Z` over the surviving qubits.
///
/// `t = 0` returns `2 Var(H)` of the pure state.
///
/// ```
/// use robust_qfi::erasure::qfi_lower_bound_erasure;
/// use robust_qfi::combinatorics::ExactRational;
/// let bound = qfi_lower_bound_erasure(25, 2, 1).unwrap();
/// assert_eq!(bound, ExactRational::from_integer(625.into()));
/// ```
pub fn qfi_lower_bound_erasure(g: u64, n: u64, t: u64) -> Result<ExactRational> {
    check_hypothesis(g, n, t)?;
    if t == 0 {
        let params = GnuParams::new(g, n, 1)?;
        return Ok(pure_state_commutator_bound(&gnu_profile(params)));
    }
    let co = erasure_coefficients(g, n, t)?;
    let rem = int((g * n - t) as i64);
    let scale = pow2(-(n as i64));

    let first = int(2) * &rem * &rem * &scale
        * (int(4) * co.big_a(t) - co.big_b(0) - co.big_b(t) + int(2) * co.big_c(0) - int(2) * co.big_c(t));
    let second = int(2) * &rem * &scale * (co.big_b(0) + co.big_b(t));
    let third = int(2)
        * &rem
        * &rem
        * (0..=t)
            .map(|u| int(binomial(t, u as i64).pow(2)) * co.big_k(u))
            .fold(ExactRational::zero(), |acc, x| acc + x);
    Ok(first + second + third)
}

/// Large-`g` limits of `a_{j,u}`, `b_{j,u}` and `c_{j,u}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticCoefficients {
    pub a: ExactRational,
    pub b: ExactRational,
    pub c: ExactRational,
}

/// `a -> C(n,j) 2^-n (1 - j/n)^(t-u) (j/n)^u`, `b -> 4(j/n)(1 - j/n)`,
/// `c -> 2j/n`.
pub fn asymptotic_coefficients(n: u64, t: u64, j: u64, u: u64) -> Result<AsymptoticCoefficients> {
    if j == 0 || j >= n || u > t {
        return Err(Error::Domain(format!(
            "need 1 <= j <= n-1 and 0 <= u <= t (got n={n}, t={t}, j={j}, u={u})"
        )));
    }
    let x = frac(j as i64, n as i64);
    let y = ExactRational::one() - &x;
    let a = int(binomial(n, j as i64)) * pow2(-(n as i64)) * y.pow((t - u) as i32) * x.pow(u as i32);
    Ok(AsymptoticCoefficients {
        a,
        b: int(4) * &x * &y,
        c: int(2) * x,
    })
}

/// Large-`g` closed forms for one and two erasures, as functions of `N`.
///
/// ```text
/// t = 1:  (n-1)/n^2 (N^2 + (n-2) N - (n-1))
/// t = 2:  (N-2)(n-1)(N(3n^2 - n + 6) + 3n^3 - 4n^2 + 3n - 18) / (8 n^4)
/// ```
///
/// The `t = 1` form is the limit of the exact bound; the `t = 2` form sits
/// strictly below it for every `n` checked.
pub fn asymptotic_qfi_erasure(n: u64, t: u64, big_n: &ExactRational) -> Result<ExactRational> {
    if n <= t {
        return Err(Error::Domain(format!("need n > t (got n={n}, t={t})")));
    }
    let nn = int(n as i64);
    match t {
        1 => Ok((&nn - int(1)) / (&nn * &nn)
            * (big_n * big_n + (&nn - int(2)) * big_n - (&nn - int(1)))),
        2 => {
            let inner = big_n * (int(3) * &nn * &nn - &nn + int(6)) + int(3) * nn.pow(3) - int(4) * &nn * &nn
                + int(3) * &nn
                - int(18);
            Ok((big_n - int(2)) * (&nn - int(1)) * inner / (int(8) * nn.pow(4)))
        }
        other => Err(Error::UnsupportedErasureAsymptotic(other)),
    }
}

/// One `theta_u` vector: a sum of unit-amplitude Dicke vectors `|H^{N-t}_w>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaBlock {
    pub u: u64,
    /// `C(t, u)`, the weight of `|theta_u><theta_u|` in the decomposition.
    pub multiplicity: ExactRational,
    /// `(w, c)` pairs: `theta_u` has amplitude `sqrt(c)` on every basis string
    /// of weight `w`, with `w = g j - u` and `c = C(n,j) / (2^n C(N, gj))`.
    pub components: Vec<(u64, ExactRational)>,
}

impl ThetaBlock {
    pub fn norm_squared(&self, remaining_qubits: u64) -> ExactRational {
        self.components
            .iter()
            .map(|(w, c)| c * int(binomial(remaining_qubits, *w as i64)))
            .sum()
    }
}

/// Exact data of the structured form of `tr_t |phi_1><phi_1|`:
///
/// ```text
/// 2^(-n/2) (|H_0><theta_0| + |theta_0><H_0| + |H_top><theta_t| + |theta_t><H_top|)
///   + sum_u C(t,u) |theta_u><theta_u|
///   + 2^-n (|H_0><H_0| + |H_top><H_top|)
/// ```
///
/// with `H_0`, `H_top` the unit-amplitude weight-`0` and weight-`N-t` vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialTraceBlocks {
    pub remaining_qubits: u64,
    pub thetas: Vec<ThetaBlock>,
    /// Square of the `2^(-n/2)` cross-term coefficient.
    pub cross_coefficient_squared: ExactRational,
    pub corner_weight: ExactRational,
    pub low_weight: u64,
    pub high_weight: u64,
}

impl PartialTraceBlocks {
    /// Trace of the represented matrix (always one).
    pub fn trace(&self) -> ExactRational {
        let thetas: ExactRational = self
            .thetas
            .iter()
            .map(|th| &th.multiplicity * th.norm_squared(self.remaining_qubits))
            .sum();
        // cross terms are traceless: H_0, H_top are orthogonal to every theta
        thetas + int(2) * &self.corner_weight
    }
}

/// Structured decomposition of the traced probe state for `t < min(g, n)`.
pub fn lemma1_blocks(g: u64, n: u64, t: u64) -> Result<PartialTraceBlocks> {
    check_hypothesis(g, n, t)?;
    let big_n = g * n;
    let scale = pow2(-(n as i64));
    let thetas = (0..=t)
        .map(|u| ThetaBlock {
            u,
            multiplicity: int(binomial(t, u as i64)),
            components: (1..n)
                .map(|j| {
                    let c = int(binomial(n, j as i64)) * &scale / int(binomial(big_n, (g * j) as i64));
                    (g * j - u, c)
                })
                .collect(),
        })
        .collect();
    Ok(PartialTraceBlocks {
        remaining_qubits: big_n - t,
        thetas,
        cross_coefficient_squared: scale.clone(),
        corner_weight: scale,
        low_weight: 0,
        high_weight: big_n - t,
    })
}

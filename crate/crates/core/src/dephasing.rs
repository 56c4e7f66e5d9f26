//! Dephasing-robust QFI lower bounds for the `u = 2` gnu state (`N = 2gn`).
//!
//! The route is: Dicke/Pauli inner products are Krawtchouk numbers; averaging
//! `Z_1...Z_k` over the probe gives the moments `v_1..v_4`; the traces
//! `tr(w^2 H^2)` and `tr(w H w H)` of the single-error channel output expand
//! into six index sums `z_{u,v,w}` that are polynomials in those moments.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{binomial, falling_factorial, frac, int, krawtchouk, pow2, ExactRational};
use crate::error::{Error, Result};
use crate::render::to_f64;

/// `<D^N_{w+a}| P |D^N_w>` kept exact as `i^y * numerator / sqrt(denominator_squared)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DickePauliInner {
    /// `y mod 4`: the power of `i` in front.
    pub quarter_turns: u8,
    pub numerator: BigInt,
    pub denominator_squared: BigInt,
}

impl DickePauliInner {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `(re, im)` in double precision.
    pub fn to_complex(&self) -> (f64, f64) {
        let mag = to_f64(&ExactRational::new(self.numerator.clone(), BigInt::one()))
            / to_f64(&ExactRational::from_integer(self.denominator_squared.clone())).sqrt();
        match self.quarter_turns {
            0 => (mag, 0.0),
            1 => (0.0, mag),
            2 => (-mag, 0.0),
            _ => (0.0, -mag),
        }
    }

    /// The exact value when it is a real rational: the phase is `+-1` and the
    /// denominator is a perfect square (always the case for `a = 0`).
    pub fn real_rational(&self) -> Option<ExactRational> {
        if self.quarter_turns % 2 == 1 && !self.is_zero() {
            return None;
        }
        let root = self.denominator_squared.sqrt();
        if &root * &root != self.denominator_squared {
            return None;
        }
        let sign = if self.quarter_turns == 2 { -1 } else { 1 };
        Some(ExactRational::new(self.numerator.clone() * sign, root))
    }
}

/// Inner product of Dicke states through a Pauli string with `x` X's, `y`
/// Y's and `z` Z's (positions are irrelevant by symmetry).
///
/// Zero when `x + y - a` is odd; otherwise
/// `i^y K^{x+y}_m(y) K^{N-x-y}_{w-m}(z) / sqrt(C(N,w) C(N,w+a))` with
/// `m = (x + y - a) / 2`.
pub fn dicke_pauli_inner(big_n: u64, w: u64, a: u64, x: u64, y: u64, z: u64) -> Result<DickePauliInner> {
    if w + a > big_n || x + y + z > big_n {
        return Err(Error::Domain(format!(
            "need w+a <= N and x+y+z <= N (N={big_n}, w={w}, a={a}, x={x}, y={y}, z={z})"
        )));
    }
    let denominator_squared = binomial(big_n, w as i64) * binomial(big_n, (w + a) as i64);
    let quarter_turns = (y % 4) as u8;
    let flips = (x + y) as i64 - a as i64;
    if flips.rem_euclid(2) == 1 {
        return Ok(DickePauliInner {
            quarter_turns,
            numerator: BigInt::zero(),
            denominator_squared,
        });
    }
    let m = flips / 2;
    let numerator = krawtchouk(x + y, m, y) * krawtchouk(big_n - x - y, w as i64 - m, z);
    Ok(DickePauliInner {
        quarter_turns,
        numerator,
        denominator_squared,
    })
}

/// `<D^N_w| Z_1...Z_z |D^N_w> = K^N_w(z) / C(N, w)`.
///
/// Each Krawtchouk term is divided by `C(N, w)` termwise,
/// `C(N-z, w-j) / C(N, w) = (w)_j (N-w)_(z-j) / (N)_z`, so no binomial of
/// size `N` is ever formed.
pub fn dicke_z_expectation(big_n: u64, w: u64, z: u64) -> Result<ExactRational> {
    if w > big_n || z > big_n {
        return Err(Error::Domain(format!("need w, z <= N (N={big_n}, w={w}, z={z})")));
    }
    let (x, w) = (big_n as i64, w as i64);
    let mut acc = BigInt::zero();
    for j in 0..=z {
        let term = binomial(z, j as i64) * falling_factorial(w, j) * falling_factorial(x - w, z - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(ExactRational::new(acc, falling_factorial(x, z)))
}

/// `v_k = <phi_2| Z_1...Z_k |phi_2>` for `k = 1..4`.
///
/// When `k > N` the string does not exist; such entries hold zero and are only
/// ever used multiplied by the vanishing falling factorial `(N)_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VMoments {
    pub v1: ExactRational,
    pub v2: ExactRational,
    pub v3: ExactRational,
    pub v4: ExactRational,
}

impl VMoments {
    pub fn get(&self, k: usize) -> &ExactRational {
        match k {
            1 => &self.v1,
            2 => &self.v2,
            3 => &self.v3,
            4 => &self.v4,
            _ => panic!("v-moment index {k} outside 1..=4"),
        }
    }
}

fn dephasing_qubits(g: u64, n: u64) -> Result<u64> {
    if g == 0 || n == 0 {
        return Err(Error::InvalidParams(format!("g, n must be >= 1 (got g={g}, n={n})")));
    }
    Ok(2 * g * n)
}

/// Moments from their definition: average the Dicke expectations over the
/// probe profile `C(n,j)/2^n` on weights `g j`.
pub fn v_moments(g: u64, n: u64) -> Result<VMoments> {
    let big_n = dephasing_qubits(g, n)?;
    let scale = pow2(-(n as i64));
    let moment = |k: u64| -> Result<ExactRational> {
        if k > big_n {
            return Ok(ExactRational::zero());
        }
        let mut acc = ExactRational::zero();
        for j in 0..=n {
            acc += int(binomial(n, j as i64)) * &scale * dicke_z_expectation(big_n, g * j, k)?;
        }
        Ok(acc)
    };
    Ok(VMoments {
        v1: moment(1)?,
        v2: moment(2)?,
        v3: moment(3)?,
        v4: moment(4)?,
    })
}

/// Rational closed forms for the moments; needs `g n >= 2` (the `v_3`, `v_4`
/// denominators vanish at `g = n = 1`).
pub fn v_moments_closed_form(g: u64, n: u64) -> Result<VMoments> {
    dephasing_qubits(g, n)?;
    if g * n < 2 {
        return Err(Error::Domain("closed-form v3, v4 need g*n >= 2".into()));
    }
    let (g, n) = (BigInt::from(g), BigInt::from(n));
    let gn = &g * &n;
    let ratio = |num: BigInt, den: BigInt| ExactRational::new(num, den);
    let v2 = ratio(&g * (&n + 1) - 2, 4 * &gn - 2);
    let v3 = ratio(
        &g * &g * &n * (&n + 3) - 6 * &gn + 2,
        4 * (&gn - 1) * (2 * &gn - 1),
    );
    let c3 = n.pow(3) + 6 * &n * &n + 3 * &n - 2;
    let c2 = 12 * &n * (&n + 1);
    let c1 = 4 * (5 * &n + 2);
    let v4 = ratio(
        c3 * g.pow(3) - c2 * &g * &g + c1 * &g - 12,
        4 * (&gn - 1) * (2 * &gn - 3) * (2 * &gn - 1),
    );
    Ok(VMoments {
        v1: frac(1, 2),
        v2,
        v3,
        v4,
    })
}

/// `gamma_k` in `lim_{g -> inf} v_k = 2^-k + gamma_k`.
///
/// `gamma_4 = (6n^2 + 3n - 2) / (16 n^3)`, the limit of the closed form.
pub fn v_limit_offset(n: u64, k: usize) -> ExactRational {
    let nn = int(n as i64);
    match k {
        1 => ExactRational::zero(),
        2 => ExactRational::one() / (int(4) * &nn),
        3 => int(3) / (int(8) * &nn),
        4 => (int(6) * &nn * &nn + int(3) * &nn - int(2)) / (int(16) * nn.pow(3)),
        _ => panic!("v-moment index {k} outside 1..=4"),
    }
}

/// `2^-k + gamma_k`.
pub fn v_limit(n: u64, k: usize) -> ExactRational {
    pow2(-(k as i64)) + v_limit_offset(n, k)
}

/// The six index sums `z_{u,v,w}` (all equal to the corresponding `A_{u,v,w}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSums {
    pub z020: ExactRational,
    pub z110: ExactRational,
    pub z021: ExactRational,
    pub z111: ExactRational,
    pub z022: ExactRational,
    pub z112: ExactRational,
}

impl ZSums {
    pub fn as_array(&self) -> [&ExactRational; 6] {
        [&self.z020, &self.z110, &self.z021, &self.z111, &self.z022, &self.z112]
    }
}

/// Express the six sums as polynomials in `N` and the moments.
pub fn z_sums_from_moments(big_n: u64, v: &VMoments) -> ZSums {
    let x = int(big_n as i64);
    let ff2 = int(falling_factorial(big_n as i64, 2));
    let ff3 = int(falling_factorial(big_n as i64, 3));
    let ff4 = int(falling_factorial(big_n as i64, 4));
    let (v2, v3, v4) = (&v.v2, &v.v3, &v.v4);

    let z020 = &x + &ff2 * v2;
    let z110 = &x * &x / int(4);
    let z021 = (&x + int(3) * &ff2) / int(4) + &ff3 * v3 / int(2);
    let z111 = &x + int(2) * &ff2 * v2 + &ff2 * (&x - int(1)) * v2 * v2;
    // N(N-1) v2 ((N-2)(N-3) v4 + (5N-8) v2 + 2) + N^2 + N^2 (N-1) v2
    let z022 = &ff4 * v2 * v4 + &ff2 * v2 * ((int(5) * &x - int(8)) * v2 + int(2)) + &x * &x + &x * &ff2 * v2;
    // N(N-1)(N-2)^2 v3^2 + N(N-1) + 2 N(N-1)(N-2) v3 + N^3/4
    let z112 = &ff3 * (&x - int(2)) * v3 * v3 + &ff2 + int(2) * &ff3 * v3 + x.pow(3) / int(4);
    ZSums {
        z020,
        z110,
        z021,
        z111,
        z022,
        z112,
    }
}

/// Everything the dephasing bounds need for one `(g, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DephasingMoments {
    pub g: u64,
    pub n: u64,
    pub v: VMoments,
    pub z: ZSums,
    /// `g_2 = 2 (z_{0,2,2} - z_{1,1,2})`.
    pub g2: ExactRational,
}

impl DephasingMoments {
    pub fn qubits(&self) -> u64 {
        2 * self.g * self.n
    }
}

pub fn z_sums(g: u64, n: u64) -> Result<ZSums> {
    Ok(z_sums_from_moments(dephasing_qubits(g, n)?, &v_moments(g, n)?))
}

pub fn dephasing_moments(g: u64, n: u64) -> Result<DephasingMoments> {
    let v = v_moments(g, n)?;
    let z = z_sums_from_moments(dephasing_qubits(g, n)?, &v);
    let g2 = int(2) * (&z.z022 - &z.z112);
    Ok(DephasingMoments { g, n, v, z, g2 })
}

fn check_probability(name: &'static str, value: &ExactRational) -> Result<()> {
    if value.is_negative() || value > &ExactRational::one() {
        return Err(Error::ProbabilityOutOfRange {
            name,
            value: crate::render::to_decimal(value),
        });
    }
    Ok(())
}

fn single_error_bound(m: &DephasingMoments, lambda: &ExactRational) -> ExactRational {
    let g = int(m.g as i64);
    let n = int(m.n as i64);
    let x = int(m.qubits() as i64);
    let miss = ExactRational::one() - lambda;
    int(2) * &g * &g * &n * lambda * lambda + lambda * &miss * &g * &g * (&n - int(1)) + &miss * &miss * &m.g2 / (&x * &x)
}

/// Lower bound on the QFI of `D_lambda(|phi_2><phi_2|)`:
/// `2 g^2 n lambda^2 + lambda (1 - lambda) g^2 (n - 1) + (1 - lambda)^2 g_2 / N^2`.
///
/// ```
/// use robust_qfi::dephasing::qfi_lower_bound_dephasing;
/// use robust_qfi::combinatorics::ExactRational;
/// let one = ExactRational::from_integer(1.into());
/// assert_eq!(qfi_lower_bound_dephasing(3, 2, &one).unwrap(), ExactRational::from_integer(36.into()));
/// ```
pub fn qfi_lower_bound_dephasing(g: u64, n: u64, lambda: &ExactRational) -> Result<ExactRational> {
    check_probability("lambda", lambda)?;
    Ok(single_error_bound(&dephasing_moments(g, n)?, lambda))
}

/// Large-`g` limit of the single-error bound divided by `N^2`:
/// `lambda^2/(2n) + lambda(1-lambda)(n-1)/(4n^2) + (1-lambda)^2 (n^3+n-2)/(32 n^4)`.
pub fn asymptotic_dephasing(n: u64, lambda: &ExactRational) -> Result<ExactRational> {
    check_probability("lambda", lambda)?;
    if n == 0 {
        return Err(Error::InvalidParams("n must be >= 1".into()));
    }
    let nn = int(n as i64);
    let miss = ExactRational::one() - lambda;
    Ok(lambda * lambda / (int(2) * &nn)
        + lambda * &miss * (&nn - int(1)) / (int(4) * &nn * &nn)
        + &miss * &miss * (nn.pow(3) + &nn - int(2)) / (int(32) * nn.pow(4)))
}

/// The two dephasing models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DephasingChannelSpec {
    /// No error with probability `lambda`, otherwise one `Z` on a uniformly
    /// random qubit.
    SingleError { lambda: ExactRational },
    /// Independent `Z` on each qubit with probability `p`; `t_expected = p N`.
    Iid {
        p: ExactRational,
        t_expected: ExactRational,
    },
}

impl DephasingChannelSpec {
    pub fn single_error(lambda: ExactRational) -> Result<Self> {
        check_probability("lambda", &lambda)?;
        Ok(Self::SingleError { lambda })
    }

    pub fn iid_from_expected(t_expected: ExactRational, qubits: u64) -> Result<Self> {
        if t_expected.is_negative() {
            return Err(Error::Domain("t_expected must be >= 0".into()));
        }
        let p = &t_expected / int(qubits as i64);
        check_probability("p", &p)?;
        Ok(Self::Iid { p, t_expected })
    }
}

const EXP_RESOLUTION_BITS: usize = 200;

/// A rigorous upper bound on `e^x` for rational `x >= 0`, accurate to about
/// `2^-200` relative.
///
/// Taylor partial sum plus a geometric bound on the remainder, then rounded up
/// to a multiple of `2^-200`.
pub fn exp_upper(x: &ExactRational) -> Result<ExactRational> {
    if x.is_negative() {
        return Err(Error::Domain("exp_upper needs x >= 0".into()));
    }
    let tiny = pow2(-(EXP_RESOLUTION_BITS as i64) - 20);
    let mut sum = ExactRational::zero();
    let mut term = ExactRational::one();
    let mut k: u64 = 0;
    loop {
        sum += &term;
        k += 1;
        term = term * x / int(k as i64);
        // remaining tail <= term / (1 - x/(k+1)) once k + 1 > x
        let ratio = x / int((k + 1) as i64);
        if ratio < frac(1, 2) && term <= &tiny * &sum {
            let tail = &term / (ExactRational::one() - ratio);
            let upper = sum + tail;
            let scale = BigInt::one() << EXP_RESOLUTION_BITS;
            let scaled = (upper * ExactRational::from_integer(scale.clone())).ceil();
            return Ok(scaled / ExactRational::from_integer(scale));
        }
    }
}

/// Upper bound `t^k e^t / k!` on the binomial tail `tau_k`.
pub fn tail_bound(k: u64, t_expected: &ExactRational) -> Result<ExactRational> {
    let fact = (1..=k).fold(BigInt::one(), |acc, i| acc * i);
    Ok(t_expected.pow(k as i32) * exp_upper(t_expected)? / int(fact))
}

/// The i.i.d.-dephasing bound split into its two parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IidBound {
    /// `(1-p)^(2N-2) (2(1-p)^2 g^2 n + p(1-p) g^2 (n-1) + p^2 g_2 / N^2)`.
    pub approximant: ExactRational,
    /// `2 N^2 t e`, with `e` replaced by a rigorous upper bound.
    pub penalty: ExactRational,
    pub value: ExactRational,
}

impl IidBound {
    /// A non-positive bound carries no information.
    pub fn is_vacuous(&self) -> bool {
        !self.value.is_positive()
    }
}

/// Lower bound on the QFI of the probe after i.i.d. dephasing with
/// `t_expected = p N` expected errors.
pub fn qfi_lower_bound_iid(g: u64, n: u64, t_expected: &ExactRational) -> Result<IidBound> {
    let big_n = dephasing_qubits(g, n)?;
    let spec = DephasingChannelSpec::iid_from_expected(t_expected.clone(), big_n)?;
    let DephasingChannelSpec::Iid { p, .. } = spec else {
        unreachable!()
    };
    let m = dephasing_moments(g, n)?;
    let keep = ExactRational::one() - &p;
    let survival = keep.pow((2 * big_n - 2) as i32);
    let approximant = survival * single_error_bound(&m, &keep);
    let x = int(big_n as i64);
    let penalty = int(2) * &x * &x * t_expected * exp_upper(&ExactRational::one())?;
    let value = &approximant - &penalty;
    Ok(IidBound {
        approximant,
        penalty,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dicke_pauli_examples() {
        for big_n in 1..6 {
            for w in 0..=big_n {
                let id = dicke_pauli_inner(big_n, w, 0, 0, 0, 0).unwrap();
                assert_eq!(id.real_rational(), Some(int(1)));
                for z in 0..=big_n {
                    assert!(dicke_pauli_inner(big_n, w.min(big_n - 1), 1, 0, 0, z).unwrap().is_zero());
                }
            }
        }
        let v = dicke_pauli_inner(4, 2, 0, 0, 0, 2).unwrap();
        assert_eq!(v.real_rational(), Some(frac(-1, 3)));
        assert!(dicke_pauli_inner(4, 3, 2, 0, 0, 0).is_err());
        assert!(dicke_pauli_inner(4, 1, 0, 2, 2, 1).is_err());
    }

    #[test]
    fn dicke_pauli_phase_and_irrational_magnitude() {
        // <D^2_1| X_1 |D^2_0> = 1/sqrt(2)
        let v = dicke_pauli_inner(2, 0, 1, 1, 0, 0).unwrap();
        assert_eq!(v.real_rational(), None);
        let (re, im) = v.to_complex();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-15 && im == 0.0);
        // <D^1_1| Y |D^1_0> = i
        let v = dicke_pauli_inner(1, 0, 1, 0, 1, 0).unwrap();
        assert_eq!(v.quarter_turns, 1);
        assert_eq!(v.to_complex(), (0.0, 1.0));
    }

    #[test]
    fn z_expectation_is_krawtchouk_ratio() {
        for big_n in 0..=14u64 {
            for w in 0..=big_n {
                for z in 0..=big_n {
                    let direct = ExactRational::new(krawtchouk(big_n, w as i64, z), binomial(big_n, w as i64));
                    assert_eq!(dicke_z_expectation(big_n, w, z).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn z_expectation_examples() {
        for big_n in 1..12u64 {
            for w in 0..=big_n {
                assert_eq!(
                    dicke_z_expectation(big_n, w, 1).unwrap(),
                    int(1) - frac(2 * w as i64, big_n as i64)
                );
            }
        }
        assert_eq!(dicke_z_expectation(4, 2, 2).unwrap(), frac(-1, 3));
        assert_eq!(dicke_z_expectation(3, 1, 3).unwrap(), int(-1));
    }

    #[test]
    fn printed_z_polynomials() {
        for big_n in 4..14i64 {
            let x = int(big_n);
            let ff3 = int(falling_factorial(big_n - 1, 3));
            let ff4 = int(falling_factorial(big_n, 4));
            for w in 0..=big_n {
                let w_r = int(w);
                let exact = |z| dicke_z_expectation(big_n as u64, w as u64, z).unwrap();
                let z2_corrected = int(1) - int(4) * &w_r / (&x - int(1)) + int(4) * &w_r * &w_r / (&x * (&x - int(1)));
                let z2_printed = int(1) + int(4) * &w_r / (&x - int(1)) - int(4) * &w_r * &w_r / (&x * (&x - int(1)));
                assert_eq!(exact(2), z2_corrected);
                if w > 0 && w < big_n {
                    assert_ne!(exact(2), z2_printed);
                }
                let d3 = &x * (&x * &x - int(3) * &x + int(2));
                let z3 = int(1) + &w_r * (int(-6) * &x * &x + int(6) * &x - int(4)) / &d3
                    + int(12) * &w_r * &w_r / (&x * &x - int(3) * &x + int(2))
                    - int(8) * w_r.pow(3) / &d3;
                assert_eq!(exact(3), z3);
                let z4 = int(1) - int(8) * &w_r * (&x * &x - int(3) * &x + int(4)) / &ff3
                    + int(8) * &w_r * &w_r * (int(3) * &x * &x - int(3) * &x + int(4)) / &ff4
                    - int(32) * w_r.pow(3) / &ff3
                    + int(16) * w_r.pow(4) / &ff4;
                assert_eq!(exact(4), z4);
            }
        }
    }

    #[test]
    fn v_moment_examples() {
        assert_eq!(v_moments(2, 2).unwrap().v2, frac(2, 7));
        for (g, n) in [(1, 1), (3, 7), (11, 2), (40, 5)] {
            assert_eq!(v_moments(g, n).unwrap().v1, frac(1, 2));
        }
        let small = v_moments(1, 1).unwrap();
        assert!(small.v3.is_zero() && small.v4.is_zero());
        assert!(v_moments_closed_form(1, 1).is_err());
    }

    #[test]
    fn v_closed_forms_match_summation() {
        for g in 1..=20 {
            for n in 1..=8 {
                if g * n < 2 {
                    continue;
                }
                assert_eq!(v_moments(g, n).unwrap(), v_moments_closed_form(g, n).unwrap(), "g={g} n={n}");
            }
        }
    }

    #[test]
    fn v_limits_are_approached_monotonically() {
        for n in 1..=6u64 {
            for k in 2..=4usize {
                let lim = v_limit(n, k);
                let mut prev = None;
                for g in [10u64, 100, 1000, 10000] {
                    let dev = (v_moments_closed_form(g, n).unwrap().get(k) - &lim).abs();
                    if let Some(p) = prev {
                        assert!(dev <= p, "n={n} k={k} g={g}");
                    }
                    prev = Some(dev);
                }
            }
        }
        assert_eq!(v_limit(3, 2), frac(1, 4) + frac(1, 12));
        assert_eq!(v_limit(2, 3), frac(1, 8) + frac(3, 16));
    }

    #[test]
    fn leading_sums_give_pure_state_term() {
        for g in 1..=8u64 {
            for n in 1..=6u64 {
                let z = z_sums(g, n).unwrap();
                assert_eq!(int(2) * (&z.z020 - &z.z110), int(2 * g * g * n));
                let big_n = int((2 * g * n) as i64);
                assert_eq!(int(4) * (&z.z021 - &z.z111) / big_n, int(g * g * (n - 1)));
            }
        }
    }

    #[test]
    fn decomposition_identity() {
        let lambdas = [frac(0, 1), frac(1, 4), frac(1, 3), frac(1, 2), frac(9, 10), frac(1, 1)];
        for (g, n) in [(1, 1), (2, 2), (3, 5), (17, 3)] {
            let m = dephasing_moments(g, n).unwrap();
            let x = int(m.qubits() as i64);
            for l in &lambdas {
                let miss = int(1) - l;
                let expected = int(2)
                    * (l * l * (&m.z.z020 - &m.z.z110)
                        + int(2) * l * &miss / &x * (&m.z.z021 - &m.z.z111)
                        + &miss * &miss / (&x * &x) * (&m.z.z022 - &m.z.z112));
                assert_eq!(qfi_lower_bound_dephasing(g, n, l).unwrap(), expected);
            }
        }
    }

    #[test]
    fn dephasing_bound_limits() {
        for (g, n) in [(1, 1), (4, 2), (7, 3)] {
            assert_eq!(qfi_lower_bound_dephasing(g, n, &int(1)).unwrap(), int(2 * g * g * n));
            let m = dephasing_moments(g, n).unwrap();
            let x = int(m.qubits() as i64);
            assert_eq!(qfi_lower_bound_dephasing(g, n, &int(0)).unwrap(), &m.g2 / (&x * &x));
        }
        assert_eq!(qfi_lower_bound_dephasing(1, 1, &int(1)).unwrap(), int(2));
        assert!(matches!(
            qfi_lower_bound_dephasing(2, 2, &frac(3, 2)),
            Err(Error::ProbabilityOutOfRange { name: "lambda", .. })
        ));
        assert!(qfi_lower_bound_dephasing(2, 2, &frac(-1, 2)).is_err());
    }

    #[test]
    fn asymptotic_dephasing_examples() {
        for n in 1..=10u64 {
            let nn = int(n as i64);
            assert_eq!(asymptotic_dephasing(n, &int(1)).unwrap(), int(1) / (int(2) * &nn));
            let half = asymptotic_dephasing(n, &frac(1, 2)).unwrap();
            let printed = frac(25, 128) / &nn - frac(1, 16) / (&nn * &nn) + frac(1, 128) / nn.pow(3)
                - frac(1, 64) / nn.pow(4);
            assert_eq!(half, printed);
        }
        assert_eq!(asymptotic_dephasing(2, &frac(1, 2)).unwrap(), frac(21, 256));
    }

    #[test]
    fn asymptotic_dephasing_is_large_g_limit() {
        for n in 2..=5u64 {
            for l in [frac(0, 1), frac(1, 2), frac(3, 4)] {
                let lim = to_f64(&asymptotic_dephasing(n, &l).unwrap());
                let g = 20_000u64;
                let x = (2 * g * n) as f64;
                let got = to_f64(&qfi_lower_bound_dephasing(g, n, &l).unwrap()) / (x * x);
                assert!((got - lim).abs() < 1e-4, "n={n}");
            }
        }
    }

    #[test]
    fn exp_upper_brackets_e() {
        let e = exp_upper(&int(1)).unwrap();
        let ef = to_f64(&e);
        assert!(ef >= std::f64::consts::E && ef - std::f64::consts::E < 1e-15);
        // lower bound from a partial sum
        let partial: ExactRational = (0..80u64)
            .map(|k| ExactRational::new(BigInt::one(), (1..=k).fold(BigInt::one(), |a, i| a * i)))
            .sum();
        assert!(e > partial);
        assert!(&e - &partial < pow2(-190));
        assert_eq!(exp_upper(&int(0)).unwrap(), int(1));
        let e5 = to_f64(&exp_upper(&int(5)).unwrap());
        assert!((e5 - 5f64.exp()).abs() < 1e-12 * e5);
        assert!(exp_upper(&int(-1)).is_err());
    }

    #[test]
    fn tail_bound_examples() {
        let e = to_f64(&tail_bound(1, &int(1)).unwrap());
        assert!((e - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(tail_bound(0, &int(0)).unwrap(), int(1));
        let v = to_f64(&tail_bound(2, &frac(1, 2)).unwrap());
        assert!((v - 0.125 * 0.5f64.exp()).abs() < 1e-15);
        assert!((v - 0.2061).abs() < 1e-4);
    }

    #[test]
    fn iid_bound_basics() {
        let b0 = qfi_lower_bound_iid(3, 2, &int(0)).unwrap();
        assert_eq!(b0.value, int(36));
        assert!(b0.penalty.is_zero());
        let b = qfi_lower_bound_iid(5, 2, &frac(1, 100)).unwrap();
        assert!(to_f64(&b.value) > 20.0);
        assert!(!b.is_vacuous());
        let vac = qfi_lower_bound_iid(50, 2, &int(2)).unwrap();
        assert!(vac.is_vacuous());
        assert!(matches!(
            qfi_lower_bound_iid(1, 1, &int(3)),
            Err(Error::ProbabilityOutOfRange { name: "p", .. })
        ));
        assert!(qfi_lower_bound_iid(1, 1, &int(-1)).is_err());
    }

    #[test]
    fn iid_bound_approaches_its_limit() {
        for (n, t) in [(2u64, frac(1, 20)), (3, frac(1, 10))] {
            let tf = to_f64(&t);
            let lim = (-2.0 * tf).exp() / (2.0 * n as f64) - 2.0 * tf * std::f64::consts::E;
            let mut prev = f64::INFINITY;
            for g in [10u64, 100, 1000] {
                let x = (2 * g * n) as f64;
                let got = to_f64(&qfi_lower_bound_iid(g, n, &t).unwrap().value) / (x * x);
                let dev = (got - lim).abs();
                assert!(dev < prev);
                prev = dev;
            }
            assert!(prev < 1e-3);
        }
    }
}

//! Exact integer and rational combinatorics.
//!
//! Every closed-form bound in this crate is a ratio of (often enormous)
//! binomial coefficients, so everything here is arbitrary precision. Binomials
//! follow the zero-outside-the-triangle convention: `C(n, k) = 0` whenever
//! `k < 0` or `k > n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInteger = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

/// `C(n, k)`, zero when `k` lies outside `0..=n`.
///
/// Negative `n` is ruled out by the argument type.
///
/// ```
/// use robust_qfi::combinatorics::binomial;
/// assert_eq!(binomial(5, 2), 10.into());
/// assert_eq!(binomial(4, -1), 0.into());
/// ```
pub fn binomial(n: u64, k: i64) -> ExactInteger {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) * (n - i) / (i + 1) = C(n, i + 1)
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Falling factorial `N (N-1) ... (N-t+1)`; the empty product for `t = 0`.
pub fn falling_factorial(n: i64, t: u64) -> ExactInteger {
    (0..t as i64).fold(BigInt::one(), |acc, i| acc * (n - i))
}

/// Binary Krawtchouk polynomial
/// `K^N_k(z) = sum_{j=0..z} C(z, j) C(N - z, k - j) (-1)^j`.
///
/// Equivalently the coefficient of `x^k` in `(1 - x)^z (1 + x)^(N - z)`.
/// Out-of-range `k` gives zero.
///
/// # Panics
///
/// If `z > N`.
pub fn krawtchouk(big_n: u64, k: i64, z: u64) -> ExactInteger {
    assert!(z <= big_n, "krawtchouk needs z <= N (z={z}, N={big_n})");
    let rest = big_n - z;
    let mut acc = BigInt::zero();
    for j in 0..=z {
        let term = binomial(z, j as i64) * binomial(rest, k - j as i64);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `sum_{j=0..n} C(n, j) j^x` for `x <= 4`, via closed forms.
pub fn binomial_moment(n: u64, x: u32) -> Result<ExactInteger> {
    let m = BigInt::from(n);
    let poly = match x {
        0 => BigInt::one(),
        1 => m.clone(),
        2 => &m * (&m + 1),
        3 => &m * &m * (&m + 3),
        4 => &m * (&m + 1) * (&m * &m + 5 * &m - 2),
        _ => return Err(Error::UnsupportedMoment(x)),
    };
    // 2^(n - x) * poly(n) is an integer even when n < x.
    Ok((poly << n as usize) >> x as usize)
}

/// `2^e` as an exact rational; `e` may be negative.
pub fn pow2(e: i64) -> ExactRational {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

pub(crate) fn int(v: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(v.into())
}

pub(crate) fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn expand(big_n: u64, z: u64) -> Vec<i64> {
        // (1 - x)^z (1 + x)^(N - z), coefficient list
        let mut poly = vec![1i64];
        for step in 0..big_n {
            let sign = if step < z { -1 } else { 1 };
            let mut next = vec![0i64; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c;
                next[i + 1] += sign * c;
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn binomial_200_100_matches_factorial_quotient() {
        let fact = |m: u64| (1..=m).fold(BigInt::one(), |a, i| a * i);
        let oracle = fact(200) / (fact(100) * fact(100));
        let got = binomial(200, 100);
        assert_eq!(got, oracle);
        let digits = got.to_string();
        assert_eq!(digits.len(), 59);
        assert!(digits.starts_with("905"));
    }

    #[test]
    fn binomial_large_is_representable() {
        let b = binomial(10_000, 5_000);
        assert_eq!(b.to_string().len(), 3009);
        assert_eq!(binomial(10_000, 4_999) * 5_001u32, binomial(10_000, 5_000) * 5_000u32);
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(5, 3), BigInt::from(60));
        assert_eq!(falling_factorial(17, 0), BigInt::one());
        assert_eq!(falling_factorial(4, 4), BigInt::from(24));
        assert_eq!(falling_factorial(2, 3), BigInt::zero());
    }

    #[test]
    fn krawtchouk_examples() {
        for big_n in 0..8u64 {
            for k in 0..=big_n as i64 {
                assert_eq!(krawtchouk(big_n, k, 0), binomial(big_n, k));
            }
        }
        assert_eq!(krawtchouk(2, 1, 1), BigInt::zero());
        assert_eq!(krawtchouk(4, 2, 2), BigInt::from(-2));
        assert_eq!(krawtchouk(4, -1, 2), BigInt::zero());
        assert_eq!(krawtchouk(4, 7, 2), BigInt::zero());
    }

    #[test]
    fn krawtchouk_is_generating_function_coefficient() {
        for big_n in 0..=12u64 {
            for z in 0..=big_n {
                let coeffs = expand(big_n, z);
                for k in 0..=big_n as i64 {
                    assert_eq!(
                        krawtchouk(big_n, k, z),
                        BigInt::from(coeffs[k as usize]),
                        "N={big_n} k={k} z={z}"
                    );
                }
            }
        }
    }

    #[test]
    fn krawtchouk_reflection_symmetry() {
        for big_n in 0..=12u64 {
            for z in 0..=big_n {
                for k in 0..=big_n as i64 {
                    let lhs = krawtchouk(big_n, k, z);
                    let rhs = krawtchouk(big_n, k, big_n - z);
                    let rhs = if k % 2 == 0 { rhs } else { -rhs };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn moments_match_brute_force() {
        for n in 0..=30u64 {
            for x in 0..=4u32 {
                let brute = (0..=n).fold(BigInt::zero(), |acc, j| {
                    acc + binomial(n, j as i64) * BigInt::from(j).pow(x)
                });
                assert_eq!(binomial_moment(n, x).unwrap(), brute, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn moment_examples() {
        assert_eq!(binomial_moment(7, 0).unwrap(), BigInt::from(128));
        assert_eq!(binomial_moment(3, 1).unwrap(), BigInt::from(12));
        assert_eq!(binomial_moment(4, 2).unwrap(), BigInt::from(80));
        assert_eq!(binomial_moment(4, 5), Err(Error::UnsupportedMoment(5)));
    }

    #[test]
    fn pow2_signs() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-3), frac(1, 8));
        assert_eq!(pow2(0), int(1));
    }

    proptest! {
        #[test]
        fn rational_inverse_product_is_one(
            a in (-1_000_000i64..1_000_000).prop_filter("nonzero", |v| *v != 0),
            b in (-1_000_000i64..1_000_000).prop_filter("nonzero", |v| *v != 0),
        ) {
            let q = frac(a, b);
            let r = frac(b, a);
            prop_assert!(q.denom() > &BigInt::zero());
            prop_assert_eq!(q * r, int(1));
        }
    }
}

//! Brute-force enumeration over basis strings and index tuples.
//!
//! Pauli-string expectations of the `u = 2` probe are computed exactly by
//! counting; the six `A_{u,v,w}` index sums are then taken literally over all
//! tuples.

use nalgebra::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::dephasing::ZSums;
use crate::error::{Error, Result};

/// Qubit cap for the exact tuple enumeration.
pub const MAX_ENUMERATION_QUBITS: usize = 12;

fn pascal(n: usize) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64; i + 1];
        for k in 1..i {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

/// `<phi_2| Z_S |phi_2>` for every subset mask `S` of the `N = 2gn` qubits.
pub fn z_string_expectations(g: usize, n: usize) -> Result<Vec<BigRational>> {
    let qubits = 2 * g * n;
    if qubits > MAX_ENUMERATION_QUBITS {
        return Err(Error::OracleTooLarge {
            requested: qubits,
            max: MAX_ENUMERATION_QUBITS,
        });
    }
    let c_n = &pascal(n)[n];
    let dim = 1usize << qubits;
    let mut strings_of_weight = vec![0i64; qubits + 1];
    for x in 0..dim {
        strings_of_weight[x.count_ones() as usize] += 1;
    }
    let mut out = Vec::with_capacity(dim);
    for mask in 0..dim {
        // signed count of weight-w strings under Z_S
        let mut signed = vec![0i64; qubits + 1];
        for x in 0..dim {
            let s = if (x & mask).count_ones() % 2 == 0 { 1 } else { -1 };
            signed[x.count_ones() as usize] += s;
        }
        let mut acc = BigRational::zero();
        for (j, cj) in c_n.iter().enumerate() {
            let w = g * j;
            acc += BigRational::new(
                BigInt::from(*cj) * BigInt::from(signed[w]),
                BigInt::from(strings_of_weight[w]) << n,
            );
        }
        out.push(acc);
    }
    Ok(out)
}

/// The six `A_{u,v,w}` sums by literal enumeration over index tuples.
pub fn enumerate_z_sums(g: usize, n: usize) -> Result<ZSums> {
    let e = z_string_expectations(g, n)?;
    let qubits = 2 * g * n;
    let bit = |i: usize| 1usize << i;
    let pair = |a: usize, b: usize| bit(a) ^ bit(b);
    let idx = 0..qubits;

    let mut a020 = BigRational::zero();
    let mut a110 = BigRational::zero();
    let mut a021 = BigRational::zero();
    let mut a111 = BigRational::zero();
    let mut a022 = BigRational::zero();
    let mut a112 = BigRational::zero();

    for i1 in idx.clone() {
        for i2 in idx.clone() {
            a020 += &e[pair(i1, i2)];
            a110 += &e[bit(i1)] * &e[bit(i2)];
        }
    }
    for k in idx.clone() {
        for j1 in idx.clone() {
            for j2 in idx.clone() {
                a021 += &e[bit(k)] * &e[bit(k) ^ pair(j1, j2)];
                a111 += &e[pair(k, j1)] * &e[pair(k, j2)];
            }
        }
    }
    for k1 in idx.clone() {
        for k2 in idx.clone() {
            let k = pair(k1, k2);
            for j1 in idx.clone() {
                for j2 in idx.clone() {
                    a022 += &e[k] * &e[k ^ pair(j1, j2)];
                    a112 += &e[k ^ bit(j1)] * &e[k ^ bit(j2)];
                }
            }
        }
    }
    Ok(ZSums {
        z020: a020,
        z110: a110,
        z021: a021,
        z111: a111,
        z022: a022,
        z112: a112,
    })
}

/// `<D^N_{w+a}| X^x Y^y Z^z |D^N_w>` with the Paulis on the leading qubits,
/// by explicit complex state vectors.
pub fn dicke_pauli_brute(big_n: usize, w: usize, a: usize, x: usize, y: usize, z: usize) -> Result<Complex<f64>> {
    if big_n > MAX_ENUMERATION_QUBITS || w + a > big_n || x + y + z > big_n {
        return Err(Error::Domain("dicke_pauli_brute arguments out of range".into()));
    }
    let dim = 1usize << big_n;
    let dicke = |weight: usize| -> Vec<Complex<f64>> {
        let count = (0..dim).filter(|i| i.count_ones() as usize == weight).count() as f64;
        (0..dim)
            .map(|i| {
                if i.count_ones() as usize == weight {
                    Complex::new(1.0 / count.sqrt(), 0.0)
                } else {
                    Complex::new(0.0, 0.0)
                }
            })
            .collect()
    };
    let ket = dicke(w);
    let bra = dicke(w + a);
    let mut out = vec![Complex::new(0.0, 0.0); dim];
    for (i, amp) in ket.iter().enumerate() {
        let mut target = i;
        let mut phase = Complex::new(1.0, 0.0);
        for q in 0..x + y + z {
            let b = 1usize << (big_n - 1 - q);
            let set = i & b != 0;
            if q < x {
                target ^= b;
            } else if q < x + y {
                target ^= b;
                // Y|0> = i|1>, Y|1> = -i|0>
                phase *= if set { Complex::new(0.0, -1.0) } else { Complex::new(0.0, 1.0) };
            } else if set {
                phase = -phase;
            }
        }
        out[target] += amp * phase;
    }
    Ok(bra.iter().zip(&out).map(|(b, o)| b.conj() * o).sum())
}

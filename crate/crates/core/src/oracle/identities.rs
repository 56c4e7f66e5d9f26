//! Commutator trace identities for Hermitian matrices, checked numerically.

use nalgebra::{Complex, DMatrix};
use rand::Rng;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex<f64>>;

const RTOL: f64 = 1e-9;

/// Both sides of
/// `tr([A,B]^dag [A,B]) = 2 tr(A^2 B^2) - 2 tr((AB)^2)` and
/// `tr([A,B]^dag [C,B]) = tr((AC + CA) B^2) - 2 tr(ABCB)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub norm_lhs: Complex<f64>,
    pub norm_rhs: Complex<f64>,
    pub mixed_lhs: Complex<f64>,
    pub mixed_rhs: Complex<f64>,
}

fn close(a: Complex<f64>, b: Complex<f64>, scale: f64) -> bool {
    (a - b).norm() <= RTOL * scale.max(1e-300) + 1e-12
}

impl IdentityReport {
    /// Largest mismatch relative to the operand scale.
    pub fn relative_error(&self, scale: f64) -> f64 {
        ((self.norm_lhs - self.norm_rhs).norm()).max((self.mixed_lhs - self.mixed_rhs).norm()) / scale.max(1e-300)
    }
}

/// Evaluate both identities; errors if either side disagrees beyond `1e-9`
/// relative to `||A|| ||B||^2 max(||A||, ||C||)`.
pub fn hermitian_identity_check(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> Result<IdentityReport> {
    let ab = a * b;
    let ba = b * a;
    let comm_ab = &ab - &ba;
    let comm_cb = c * b - b * c;
    let b2 = b * b;
    let report = IdentityReport {
        norm_lhs: (comm_ab.adjoint() * &comm_ab).trace(),
        norm_rhs: (a * a * &b2).trace() * 2.0 - (&ab * &ab).trace() * 2.0,
        mixed_lhs: (comm_ab.adjoint() * &comm_cb).trace(),
        mixed_rhs: ((a * c + c * a) * &b2).trace() - (&ab * c * b).trace() * 2.0,
    };
    let scale = identity_scale(a, b, c);
    if !close(report.norm_lhs, report.norm_rhs, scale) || !close(report.mixed_lhs, report.mixed_rhs, scale) {
        return Err(Error::IdentityViolation(format!("{report:?}")));
    }
    Ok(report)
}

/// The size that both sides of the identities scale with.
pub fn identity_scale(a: &CMatrix, b: &CMatrix, c: &CMatrix) -> f64 {
    let (na, nb, nc) = (a.norm(), b.norm(), c.norm());
    na * nb * nb * na.max(nc)
}

/// `(M + M^dag) / 2` with standard-normal-ish random entries.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    let m = CMatrix::from_fn(dim, dim, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&m + m.adjoint()) * Complex::new(0.5, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn equal_operands_vanish() {
        let mut rng = StdRng::seed_from_u64(1);
        let a = random_hermitian(4, &mut rng);
        let c = random_hermitian(4, &mut rng);
        let r = hermitian_identity_check(&a, &a, &c).unwrap();
        assert!(r.norm_lhs.norm() < 1e-12 && r.norm_rhs.norm() < 1e-12);
    }

    #[test]
    fn identity_operand_vanishes() {
        let mut rng = StdRng::seed_from_u64(2);
        let b = random_hermitian(4, &mut rng);
        let c = random_hermitian(4, &mut rng);
        let r = hermitian_identity_check(&CMatrix::identity(4, 4), &b, &c).unwrap();
        assert!(r.norm_lhs.norm() < 1e-12 && r.mixed_lhs.norm() < 1e-12);
    }

    #[test]
    fn random_eight_dimensional_triple() {
        let mut rng = StdRng::seed_from_u64(8);
        let (a, b, c) = (
            random_hermitian(8, &mut rng),
            random_hermitian(8, &mut rng),
            random_hermitian(8, &mut rng),
        );
        let r = hermitian_identity_check(&a, &b, &c).unwrap();
        assert!(r.norm_lhs.re > 0.0 && r.norm_lhs.im.abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_input_breaks_it() {
        let mut rng = StdRng::seed_from_u64(3);
        let a = CMatrix::from_fn(4, 4, |i, j| Complex::new((i * 4 + j) as f64, 0.0));
        let b = random_hermitian(4, &mut rng);
        let c = random_hermitian(4, &mut rng);
        assert!(hermitian_identity_check(&a, &b, &c).is_err());
    }
}

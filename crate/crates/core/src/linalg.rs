//! Small dense complex helpers shared by the simulator and the builders.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn pauli_x() -> Mat2 {
    Mat2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Mat2 {
    Mat2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn hadamard() -> Mat2 {
    let h = c(FRAC_1_SQRT_2, 0.0);
    Mat2::new(h, h, h, -h)
}

pub fn phase_gate(theta: f64) -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, cis(theta))
}

pub fn rz(alpha: f64) -> Mat2 {
    Mat2::new(cis(-alpha / 2.0), ZERO, ZERO, cis(alpha / 2.0))
}

pub fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    Mat2::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn is_unitary(m: &DMatrix<C64>, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let prod = m.adjoint() * m;
    let id = DMatrix::<C64>::identity(m.nrows(), m.ncols());
    max_abs_diff(&prod, &id) <= tol
}

pub fn is_unitary2(m: &Mat2, tol: f64) -> bool {
    let prod = m.adjoint() * m;
    (prod - Mat2::identity()).iter().all(|z| z.norm() <= tol)
}

/// A unitary square root of a 2×2 unitary.
pub fn sqrt_unitary2(u: &Mat2) -> Mat2 {
    // For a 2×2 matrix, (U + sI)/t squares to U when s² = det U and t² = tr U + 2s.
    let s0 = u.determinant().sqrt();
    let tr = u.trace();
    let (s, t2) = [s0, -s0]
        .into_iter()
        .map(|s| (s, tr + s * 2.0))
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("two candidates");
    if t2.norm() < 1e-12 {
        // U = -det^{1/2}·I up to the chosen branch; any unitary square root works.
        let l = u[(0, 0)].sqrt();
        return Mat2::new(l, ZERO, ZERO, l);
    }
    let t = t2.sqrt();
    (u + Mat2::identity() * s) / t
}

/// Kronecker product of 2×2 blocks into a dense matrix, leftmost factor most significant.
pub fn kron_all(factors: &[DMatrix<C64>]) -> DMatrix<C64> {
    factors
        .iter()
        .fold(DMatrix::from_element(1, 1, ONE), |acc, f| acc.kronecker(f))
}

pub fn to_dmatrix(m: &Mat2) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |r, c| m[(r, c)])
}

use crate::linalg::{cis, ry, rz, Mat2};
use std::f64::consts::{PI, TAU};

const DEGENERATE: f64 = 1e-12;

/// `U = e^{iφ} R_Z(α) R_Y(θ) R_Z(β)` with `α, β ∈ [0, 2π)` and `θ ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zyz {
    pub phi: f64,
    pub alpha: f64,
    pub theta: f64,
    pub beta: f64,
}

impl Zyz {
    pub fn matrix(&self) -> Mat2 {
        rz(self.alpha) * ry(self.theta) * rz(self.beta) * cis(self.phi)
    }
}

/// Moves `x` into `[0, 2π)`, returning the number of 2π shifts applied.
fn wrap(x: f64) -> (f64, i64) {
    let k = (x / TAU).floor();
    let mut y = x - k * TAU;
    let mut k = k as i64;
    if y >= TAU {
        y -= TAU;
        k += 1;
    }
    (y, k)
}

pub fn zyz_decompose(u: &Mat2) -> Zyz {
    let mut phi = u.determinant().arg() / 2.0;
    let v = u * cis(-phi);
    // v = [[e^{-i(α+β)/2} c, -e^{-i(α-β)/2} s], [e^{i(α-β)/2} s, e^{i(α+β)/2} c]]
    let theta = 2.0 * v[(1, 0)].norm().atan2(v[(0, 0)].norm());
    let (alpha, beta) = if v[(1, 0)].norm() < DEGENERATE {
        (2.0 * v[(1, 1)].arg(), 0.0)
    } else if v[(0, 0)].norm() < DEGENERATE {
        (2.0 * v[(1, 0)].arg(), 0.0)
    } else {
        let sum = v[(1, 1)].arg();
        let diff = v[(1, 0)].arg();
        (sum + diff, sum - diff)
    };
    // Each 2π shift of α or β flips the sign of the corresponding R_Z.
    let (alpha, ka) = wrap(alpha);
    let (beta, kb) = wrap(beta);
    phi += PI * ((ka + kb).rem_euclid(2)) as f64;
    Zyz { phi, alpha, theta, beta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hadamard, pauli_x, pauli_z, I};

    fn close(a: &Mat2, b: &Mat2) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-12)
    }

    #[test]
    fn named_gates_round_trip() {
        for u in [pauli_x(), pauli_z(), hadamard(), Mat2::identity(), Mat2::identity() * I] {
            let z = zyz_decompose(&u);
            assert!(close(&z.matrix(), &u), "{u:?} -> {z:?}");
            assert!((0.0..TAU).contains(&z.alpha) && (0.0..TAU).contains(&z.beta));
            assert!((0.0..=PI).contains(&z.theta));
        }
    }

    #[test]
    fn degenerate_theta_zeroes_beta() {
        assert_eq!(zyz_decompose(&pauli_z()).beta, 0.0);
        assert_eq!(zyz_decompose(&pauli_x()).beta, 0.0);
    }
}

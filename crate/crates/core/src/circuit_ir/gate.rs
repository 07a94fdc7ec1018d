use crate::linalg::{cis, C64, I, ONE};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Native qudit operations.
///
/// Levels are 0-based. Two-level rotations follow
/// `R^{ij}_φ(θ) = exp(-i σ^{ij}_φ θ/2)` with `σ^{ij}_φ = e^{-iφ}|i⟩⟨j| + e^{iφ}|j⟩⟨i|`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Rotation {
        wire: usize,
        i: usize,
        j: usize,
        phi: f64,
        theta: f64,
    },
    /// `|i⟩ ↦ e^{iθ}|i⟩`, identity on the other levels.
    Phase { wire: usize, i: usize, theta: f64 },
    /// `-1` on `|i, j⟩` of (`wire_c`, `wire_t`).
    CPh {
        wire_c: usize,
        wire_t: usize,
        i: usize,
        j: usize,
    },
    /// Swaps target levels `j`, `k` when the control holds level `i`.
    CXGen {
        wire_c: usize,
        i: usize,
        wire_t: usize,
        j: usize,
        k: usize,
    },
    /// `|i,k⟩ ↦ e^{iθ}|j,l⟩` and `|j,l⟩ ↦ e^{iθ}|i,k⟩`.
    ISwap {
        wire_a: usize,
        wire_b: usize,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        theta: f64,
    },
    /// `exp(-i χ σ^{ij}_φ ⊗ σ^{kl}_θ)`.
    XX {
        wire_a: usize,
        wire_b: usize,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        phi: f64,
        theta: f64,
        chi: f64,
    },
}

/// The action of a gate restricted to the level combinations it touches.
///
/// `combos[r]` lists the levels of the affected wires (second entry unused for
/// single-wire gates) and `matrix` is the row-major block acting on them.
#[derive(Debug, Clone)]
pub struct LocalBlock {
    pub wires: [usize; 2],
    pub arity: usize,
    pub combos: Vec<[usize; 2]>,
    pub matrix: Vec<C64>,
}

fn zero_to_positive(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl Gate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Gate::Rotation { .. } => "Rotation",
            Gate::Phase { .. } => "Phase",
            Gate::CPh { .. } => "CPh",
            Gate::CXGen { .. } => "CXGen",
            Gate::ISwap { .. } => "ISwap",
            Gate::XX { .. } => "XX",
        }
    }

    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Gate::Rotation { wire, .. } | Gate::Phase { wire, .. } => vec![wire],
            Gate::CPh { wire_c, wire_t, .. } | Gate::CXGen { wire_c, wire_t, .. } => {
                vec![wire_c, wire_t]
            }
            Gate::ISwap { wire_a, wire_b, .. } | Gate::XX { wire_a, wire_b, .. } => {
                vec![wire_a, wire_b]
            }
        }
    }

    pub fn is_entangling(&self) -> bool {
        !matches!(self, Gate::Rotation { .. } | Gate::Phase { .. })
    }

    /// Levels referenced on each wire, in the order of [`Gate::wires`].
    pub fn levels_per_wire(&self) -> Vec<Vec<usize>> {
        match *self {
            Gate::Rotation { i, j, .. } => vec![vec![i, j]],
            Gate::Phase { i, .. } => vec![vec![i]],
            Gate::CPh { i, j, .. } => vec![vec![i], vec![j]],
            Gate::CXGen { i, j, k, .. } => vec![vec![i], vec![j, k]],
            Gate::ISwap { i, j, k, l, .. } | Gate::XX { i, j, k, l, .. } => {
                vec![vec![i, j], vec![k, l]]
            }
        }
    }

    pub fn adjoint(&self) -> Gate {
        let mut g = self.clone();
        match &mut g {
            Gate::Rotation { theta, .. } | Gate::Phase { theta, .. } | Gate::ISwap { theta, .. } => {
                *theta = zero_to_positive(-*theta)
            }
            Gate::XX { chi, .. } => *chi = zero_to_positive(-*chi),
            Gate::CPh { .. } | Gate::CXGen { .. } => {}
        }
        g
    }

    /// The same gate acting on relabelled wires.
    pub fn remap_wires(&self, f: impl Fn(usize) -> usize) -> Gate {
        let mut g = self.clone();
        match &mut g {
            Gate::Rotation { wire, .. } | Gate::Phase { wire, .. } => *wire = f(*wire),
            Gate::CPh { wire_c, wire_t, .. } | Gate::CXGen { wire_c, wire_t, .. } => {
                *wire_c = f(*wire_c);
                *wire_t = f(*wire_t);
            }
            Gate::ISwap { wire_a, wire_b, .. } | Gate::XX { wire_a, wire_b, .. } => {
                *wire_a = f(*wire_a);
                *wire_b = f(*wire_b);
            }
        }
        g
    }

    pub fn angles(&self) -> Vec<f64> {
        match *self {
            Gate::Rotation { phi, theta, .. } => vec![phi, theta],
            Gate::Phase { theta, .. } | Gate::ISwap { theta, .. } => vec![theta],
            Gate::XX { phi, theta, chi, .. } => vec![phi, theta, chi],
            Gate::CPh { .. } | Gate::CXGen { .. } => vec![],
        }
    }

    pub fn local_block(&self) -> LocalBlock {
        match *self {
            Gate::Rotation { wire, i, j, phi, theta } => {
                let (s, co) = (theta / 2.0).sin_cos();
                let co = C64::new(co, 0.0);
                LocalBlock {
                    wires: [wire, wire],
                    arity: 1,
                    combos: vec![[i, 0], [j, 0]],
                    matrix: vec![co, -I * s * cis(-phi), -I * s * cis(phi), co],
                }
            }
            Gate::Phase { wire, i, theta } => LocalBlock {
                wires: [wire, wire],
                arity: 1,
                combos: vec![[i, 0]],
                matrix: vec![cis(theta)],
            },
            Gate::CPh { wire_c, wire_t, i, j } => LocalBlock {
                wires: [wire_c, wire_t],
                arity: 2,
                combos: vec![[i, j]],
                matrix: vec![-ONE],
            },
            Gate::CXGen { wire_c, i, wire_t, j, k } => LocalBlock {
                wires: [wire_c, wire_t],
                arity: 2,
                combos: vec![[i, j], [i, k]],
                matrix: vec![C64::new(0.0, 0.0), ONE, ONE, C64::new(0.0, 0.0)],
            },
            Gate::ISwap { wire_a, wire_b, i, j, k, l, theta } => {
                let e = cis(theta);
                LocalBlock {
                    wires: [wire_a, wire_b],
                    arity: 2,
                    combos: vec![[i, k], [j, l]],
                    matrix: vec![C64::new(0.0, 0.0), e, e, C64::new(0.0, 0.0)],
                }
            }
            Gate::XX { wire_a, wire_b, i, j, k, l, phi, theta, chi } => {
                // σ_a ⊗ σ_b on basis (i,k), (i,l), (j,k), (j,l).
                let sa = [[C64::new(0.0, 0.0), cis(-phi)], [cis(phi), C64::new(0.0, 0.0)]];
                let sb = [[C64::new(0.0, 0.0), cis(-theta)], [cis(theta), C64::new(0.0, 0.0)]];
                let (s, co) = chi.sin_cos();
                let mut m = vec![C64::new(0.0, 0.0); 16];
                for r in 0..4 {
                    for c in 0..4 {
                        let kron = sa[r / 2][c / 2] * sb[r % 2][c % 2];
                        let id = if r == c { co } else { 0.0 };
                        m[r * 4 + c] = C64::new(id, 0.0) - I * s * kron;
                    }
                }
                LocalBlock {
                    wires: [wire_a, wire_b],
                    arity: 2,
                    combos: vec![[i, k], [i, l], [j, k], [j, l]],
                    matrix: m,
                }
            }
        }
    }
}

/// Convenience constructors that expand to native primitives.
pub mod std_gates {
    use super::*;

    pub fn rx(wire: usize, i: usize, j: usize, theta: f64) -> Gate {
        Gate::Rotation { wire, i, j, phi: 0.0, theta }
    }

    pub fn ry(wire: usize, i: usize, j: usize, theta: f64) -> Gate {
        Gate::Rotation { wire, i, j, phi: FRAC_PI_2, theta }
    }

    pub fn phase(wire: usize, i: usize, theta: f64) -> Gate {
        Gate::Phase { wire, i, theta }
    }

    /// Hadamard on the `(i, j)` pair, identity on the other levels.
    pub fn h(wire: usize, i: usize, j: usize) -> Vec<Gate> {
        // R_X(π)·R_Y(π/2) = -iH on the pair; the two phases remove the -i.
        vec![
            ry(wire, i, j, FRAC_PI_2),
            rx(wire, i, j, PI),
            phase(wire, i, FRAC_PI_2),
            phase(wire, j, FRAC_PI_2),
        ]
    }

    /// Population exchange `|i⟩ ↔ |j⟩` without phases.
    pub fn x(wire: usize, i: usize, j: usize) -> Vec<Gate> {
        vec![rx(wire, i, j, PI), phase(wire, i, FRAC_PI_2), phase(wire, j, FRAC_PI_2)]
    }

    /// T gate on the pair: phase π/4 on `j`.
    pub fn t(wire: usize, j: usize) -> Gate {
        phase(wire, j, FRAC_PI_4)
    }

    pub fn tdg(wire: usize, j: usize) -> Gate {
        phase(wire, j, -FRAC_PI_4)
    }

    pub fn adjoint_seq(gates: &[Gate]) -> Vec<Gate> {
        gates.iter().rev().map(Gate::adjoint).collect()
    }
}

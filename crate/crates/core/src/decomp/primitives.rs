use crate::circuit_ir::std_gates::{h, phase, rx, ry};
use crate::circuit_ir::{Gate, MixedRadixCircuit};
use std::f64::consts::{FRAC_PI_2, PI};

/// Controlled inversion synthesized from one `XX^{ab|jk}(π/2)`.
///
/// Swaps `v`'s levels `j, k` when `u` is outside `{a, b}`. Up to a global
/// factor `i`, the remaining action is diagonal: for `w ∉ {j, k}` it puts `-1`
/// on `|b⟩|w⟩` and `-i` on `|x⟩|w⟩` with `x ∉ {a, b}`, `+1` elsewhere.
/// For a qubit `u` on levels `{a, b} = {0, 1}`
/// the gadget is therefore `CPh^{1|w}` whenever `v` has exactly one level
/// outside the pair.
pub fn xx_cx(u: usize, (a, b): (usize, usize), v: usize, (j, k): (usize, usize)) -> Vec<Gate> {
    vec![
        ry(u, a, b, FRAC_PI_2),
        rx(v, j, k, PI),
        Gate::XX { wire_a: u, wire_b: v, i: a, j: b, k: j, l: k, phi: 0.0, theta: 0.0, chi: FRAC_PI_2 },
        ry(u, a, b, -FRAC_PI_2),
        phase(u, a, FRAC_PI_2),
        phase(u, b, -FRAC_PI_2),
        phase(v, j, PI),
        phase(v, k, PI),
    ]
}

/// The two qutrit levels other than `level`.
pub fn complement_pair(level: usize) -> (usize, usize) {
    let mut it = (0..3).filter(|&x| x != level);
    (it.next().unwrap(), it.next().unwrap())
}

/// Two-qutrit relative-phase `CX^{c|jk}` built on a single XX interaction.
///
/// For `c = 2` and `(j, k) = (0, 1)` this is the standard relative-phase
/// inversion whose diagonal defect lives on the target's level 2 only.
pub fn relative_phase_cxgen(control_level: usize, target_pair: (usize, usize)) -> MixedRadixCircuit {
    assert!(control_level < 3 && target_pair.0 < 3 && target_pair.1 < 3 && target_pair.0 != target_pair.1);
    let mut c = MixedRadixCircuit::new(&[3, 3]);
    c.extend(xx_cx(0, complement_pair(control_level), 1, target_pair));
    c
}

/// `CX^{ctrl_level|12}` from a qubit control onto a qutrit, via one XX.
pub(crate) fn xx_qubit_to_qutrit_inc(q: usize, t: usize) -> Vec<Gate> {
    let mut g = h(t, 1, 2);
    g.extend(xx_cx(q, (0, 1), t, (0, 1)));
    g.extend(h(t, 1, 2));
    g
}

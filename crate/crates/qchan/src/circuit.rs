//! Circuit data model and exact state-vector simulation.
//!
//! Registers are big-endian: qubit 0 is the most significant bit of the
//! basis-state index, so an ancilla pair on qubits 0..1 and a work qubit on
//! qubit 2 give basis labels |q₀q₁q₂⟩ matching the ancilla-first Kronecker
//! convention of the matrix module.
//!
//! The channel circuit realizes the LCU plan as: V on the ancilla pair,
//! controlled Z on the work qubit for ancilla states |01⟩ and |11⟩, W on the
//! ancilla pair, then a controlled X on the work qubit for ancilla low bit 1.
//! Reading the ancillas in the computational basis leaves the work qubit in
//! the (normalized) Kraus branch `K_j|ψ⟩` with probability `‖K_j|ψ⟩‖²`.

use crate::error::{Error, Result};
use crate::lcu::LcuPlan;
use crate::matrix::{cx, Complex64, ComplexMatrix, StateVector};

// ---------------------------------------------------------------------------
// Gates and circuits
// ---------------------------------------------------------------------------

/// Gate classification used by the compiler and exporter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    SingleQubit,
    Cnot,
    /// A unitary on one or more targets, optionally conditioned on control
    /// qubits being in definite basis states.
    ControlledUnitary,
}

/// A gate: a unitary matrix on `targets`, applied when every `(qubit, value)`
/// control is satisfied.
#[derive(Debug, Clone)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
    controls: Vec<(usize, u8)>,
    matrix: ComplexMatrix,
}

impl Gate {
    /// Build a gate, checking unitarity, target/control disjointness, and
    /// that the matrix dimension matches the target count.
    pub fn new(
        kind: GateKind,
        targets: Vec<usize>,
        controls: Vec<(usize, u8)>,
        matrix: ComplexMatrix,
    ) -> Result<Self> {
        let dim = 1usize << targets.len();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} targets need a {}x{} matrix, got {}x{}",
                targets.len(),
                dim,
                dim,
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_unitary(1e-10) {
            return Err(Error::NotUnitary {
                residual: matrix.unitarity_residual(),
            });
        }
        for (c, v) in &controls {
            if targets.contains(c) {
                return Err(Error::UnsupportedGate(format!(
                    "control qubit {c} overlaps the targets"
                )));
            }
            if *v > 1 {
                return Err(Error::UnsupportedGate(format!(
                    "control value must be 0 or 1, got {v}"
                )));
            }
        }
        Ok(Self {
            kind,
            targets,
            controls,
            matrix,
        })
    }

    /// Uncontrolled single-qubit gate.
    pub fn single(target: usize, matrix: ComplexMatrix) -> Result<Self> {
        Gate::new(GateKind::SingleQubit, vec![target], vec![], matrix)
    }

    /// CNOT with the standard value-1 control.
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(
            GateKind::Cnot,
            vec![target],
            vec![(control, 1)],
            crate::matrix::gates::pauli_x(),
        )
        .expect("CNOT is unitary")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn controls(&self) -> &[(usize, u8)] {
        &self.controls
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Role of each qubit in a channel circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitRole {
    Ancilla,
    Work,
    Reference,
}

/// An ordered gate list over a fixed register with role tags and terminal
/// measurement markers.
#[derive(Debug, Clone)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    roles: Vec<QubitRole>,
    measurements: Vec<usize>,
}

impl Circuit {
    pub fn new(num_qubits: usize, roles: Vec<QubitRole>) -> Result<Self> {
        if roles.len() != num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{num_qubits} qubits need {num_qubits} roles, got {}",
                roles.len()
            )));
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
            roles,
            measurements: Vec::new(),
        })
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let valid = gate
            .targets
            .iter()
            .chain(gate.controls.iter().map(|(q, _)| q))
            .all(|&q| q < self.num_qubits);
        if !valid {
            return Err(Error::DimensionMismatch(format!(
                "gate addresses a qubit outside the {}-qubit register",
                self.num_qubits
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn role(&self, qubit: usize) -> QubitRole {
        self.roles[qubit]
    }

    /// Qubits measured at the end of the circuit.
    pub fn measurements(&self) -> &[usize] {
        &self.measurements
    }

    pub fn set_measurements(&mut self, qubits: Vec<usize>) {
        self.measurements = qubits;
    }

    pub fn ancilla_qubits(&self) -> Vec<usize> {
        self.qubits_with_role(QubitRole::Ancilla)
    }

    pub fn work_qubit(&self) -> Option<usize> {
        self.qubits_with_role(QubitRole::Work).first().copied()
    }

    fn qubits_with_role(&self, role: QubitRole) -> Vec<usize> {
        (0..self.num_qubits)
            .filter(|&q| self.roles[q] == role)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Channel circuit construction
// ---------------------------------------------------------------------------

/// Build the two-ancilla channel circuit for an LCU plan.
///
/// Gate order: V on ancillas (0,1); Z on the work qubit controlled on
/// ancilla |01⟩; Z controlled on |11⟩; W on ancillas; X on the work qubit
/// controlled on the ancilla low bit being 1. The identity-valued controlled
/// operations (U₀, U₂) are elided. Ancillas and the work qubit are marked
/// for terminal measurement.
pub fn build_channel_circuit(plan: &LcuPlan) -> Circuit {
    channel_circuit_with_roles(plan, false)
}

/// Channel circuit with one extra untouched reference qubit, for purified
/// two-qubit inputs.
pub fn build_channel_circuit_with_reference(plan: &LcuPlan) -> Circuit {
    channel_circuit_with_roles(plan, true)
}

fn channel_circuit_with_roles(plan: &LcuPlan, reference: bool) -> Circuit {
    let mut roles = vec![QubitRole::Ancilla, QubitRole::Ancilla, QubitRole::Work];
    if reference {
        roles.push(QubitRole::Reference);
    }
    let mut circuit = Circuit::new(roles.len(), roles).expect("valid register");
    let work = 2usize;
    let z = crate::matrix::gates::pauli_z();
    let x = crate::matrix::gates::pauli_x();

    let push = |c: &mut Circuit, g: Gate| c.push(g).expect("gate addresses the register");
    push(
        &mut circuit,
        Gate::new(
            GateKind::ControlledUnitary,
            vec![0, 1],
            vec![],
            plan.v().clone(),
        )
        .expect("V is unitary"),
    );
    push(
        &mut circuit,
        Gate::new(
            GateKind::ControlledUnitary,
            vec![work],
            vec![(0, 0), (1, 1)],
            z.clone(),
        )
        .expect("Z is unitary"),
    );
    push(
        &mut circuit,
        Gate::new(
            GateKind::ControlledUnitary,
            vec![work],
            vec![(0, 1), (1, 1)],
            z,
        )
        .expect("Z is unitary"),
    );
    push(
        &mut circuit,
        Gate::new(
            GateKind::ControlledUnitary,
            vec![0, 1],
            vec![],
            plan.w().clone(),
        )
        .expect("W is unitary"),
    );
    push(
        &mut circuit,
        Gate::new(GateKind::ControlledUnitary, vec![work], vec![(1, 1)], x)
            .expect("X is unitary"),
    );
    circuit.set_measurements(vec![0, 1, work]);
    circuit
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

/// Apply one gate to a state vector in place.
pub fn apply_gate(state: &mut StateVector, gate: &Gate, num_qubits: usize) {
    let dim = 1usize << num_qubits;
    debug_assert_eq!(state.dim(), dim);
    let t = gate.targets.len();
    let tdim = 1usize << t;
    // Bit positions (from the most significant end) of targets and controls.
    let shift = |qubit: usize| num_qubits - 1 - qubit;
    let target_masks: Vec<usize> = gate.targets.iter().map(|&q| 1usize << shift(q)).collect();
    let control_mask: usize = gate
        .controls
        .iter()
        .map(|&(q, _)| 1usize << shift(q))
        .sum();
    let control_want: usize = gate
        .controls
        .iter()
        .filter(|&&(_, v)| v == 1)
        .map(|&(q, _)| 1usize << shift(q))
        .sum();

    let amplitudes = state.amplitudes_mut();
    let mut scratch = vec![cx(0.0, 0.0); tdim];
    for base in 0..dim {
        // Visit each target-subspace orbit once, at its all-zero member.
        if target_masks.iter().any(|&m| base & m != 0) {
            continue;
        }
        if base & control_mask != control_want {
            continue;
        }
        for (pattern, slot) in scratch.iter_mut().enumerate() {
            let mut idx = base;
            for (bit, &mask) in target_masks.iter().enumerate() {
                if pattern & (1 << (t - 1 - bit)) != 0 {
                    idx |= mask;
                }
            }
            *slot = amplitudes[idx];
        }
        for row in 0..tdim {
            let mut acc = cx(0.0, 0.0);
            for (col, &amp) in scratch.iter().enumerate() {
                acc += gate.matrix.get(row, col) * amp;
            }
            let mut idx = base;
            for (bit, &mask) in target_masks.iter().enumerate() {
                if row & (1 << (t - 1 - bit)) != 0 {
                    idx |= mask;
                }
            }
            amplitudes[idx] = acc;
        }
    }
}

/// Exact state-vector evolution through the circuit.
pub fn simulate_state(circuit: &Circuit, input: &StateVector) -> Result<StateVector> {
    if input.num_qubits() != circuit.num_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "circuit has {} qubits, input has {}",
            circuit.num_qubits(),
            input.num_qubits()
        )));
    }
    let mut state = input.clone();
    for gate in circuit.gates() {
        apply_gate(&mut state, gate, circuit.num_qubits());
    }
    Ok(state)
}

/// One ancilla-readout branch of a channel circuit.
#[derive(Debug, Clone)]
pub struct BranchOutcome {
    /// Ancilla basis index j ∈ 0..4.
    pub ancilla_label: usize,
    pub probability: f64,
    /// Normalized post-selected work(+reference) state; `None` when the
    /// branch has zero probability.
    pub work_state: Option<StateVector>,
}

/// Run a channel circuit on a 1-qubit work input (or 2-qubit work+reference
/// input) and project the final state onto each ancilla basis state.
pub fn branch_states(circuit: &Circuit, work_input: &StateVector) -> Result<Vec<BranchOutcome>> {
    let payload_qubits = circuit.num_qubits() - 2;
    if work_input.num_qubits() != payload_qubits {
        return Err(Error::DimensionMismatch(format!(
            "circuit expects a {payload_qubits}-qubit input, got {}",
            work_input.num_qubits()
        )));
    }
    let full_input = StateVector::zero(2).tensor(work_input);
    let final_state = simulate_state(circuit, &full_input)?;
    let block = 1usize << payload_qubits;
    let mut outcomes = Vec::with_capacity(4);
    for label in 0..4 {
        let slice = &final_state.amplitudes()[label * block..(label + 1) * block];
        let probability: f64 = slice.iter().map(|a| a.norm_sqr()).sum();
        let work_state = if probability > 1e-12 {
            let scale = probability.sqrt();
            let amplitudes: Vec<Complex64> = slice.iter().map(|&a| a / scale).collect();
            Some(StateVector::new(payload_qubits, amplitudes)?)
        } else {
            None
        };
        outcomes.push(BranchOutcome {
            ancilla_label: label,
            probability,
            work_state,
        });
    }
    Ok(outcomes)
}

/// Full-register unitary of the circuit (product of all gate embeddings).
pub fn full_unitary(circuit: &Circuit) -> Result<ComplexMatrix> {
    if circuit.num_qubits() > 4 {
        return Err(Error::DimensionMismatch(format!(
            "full unitary supported up to 4 qubits, circuit has {}",
            circuit.num_qubits()
        )));
    }
    let dim = 1usize << circuit.num_qubits();
    let mut columns = ComplexMatrix::zeros(dim, dim);
    for b in 0..dim {
        let col = simulate_state(circuit, &StateVector::basis(circuit.num_qubits(), b))?;
        for (i, &a) in col.amplitudes().iter().enumerate() {
            columns.set(i, b, a);
        }
    }
    Ok(columns)
}

/// Aggregate channel action on a density matrix: evolve `|00⟩⟨00| ⊗ ρ`
/// through the circuit unitary and trace out the ancillas.
pub fn channel_output(circuit: &Circuit, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let payload_qubits = circuit.num_qubits() - 2;
    let payload_dim = 1usize << payload_qubits;
    crate::channel::validate_density(rho, payload_dim, crate::channel::DENSITY_TOL_INPUT)?;
    let u = full_unitary(circuit)?;
    let mut anc = ComplexMatrix::zeros(4, 4);
    anc.set(0, 0, cx(1.0, 0.0));
    let full = anc.kron(rho);
    let evolved = u.matmul(&full)?.matmul(&u.dagger())?;
    let dims: Vec<usize> = vec![2; circuit.num_qubits()];
    let keep: Vec<usize> = (2..circuit.num_qubits()).collect();
    evolved.partial_trace(&dims, &keep)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{QubitChannel, UniversalParams};
    use crate::lcu::build_lcu;
    use crate::matrix::gates;
    use crate::testkit;
    use rand::Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn random_params(rng: &mut rand_chacha::ChaCha8Rng) -> UniversalParams {
        UniversalParams::new(
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
        )
        .unwrap()
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(2, vec![QubitRole::Work, QubitRole::Reference]).unwrap();
        let mut rng = testkit::rng(31);
        let s = testkit::random_state(&mut rng, 2);
        let out = simulate_state(&c, &s).unwrap();
        assert!(out.inner(&s).norm() > 1.0 - 1e-12);

        let c3 = Circuit::new(3, vec![QubitRole::Ancilla, QubitRole::Ancilla, QubitRole::Work])
            .unwrap();
        let u = full_unitary(&c3).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn single_x_flips_basis_state() {
        let mut c = Circuit::new(1, vec![QubitRole::Work]).unwrap();
        c.push(Gate::single(0, gates::pauli_x()).unwrap()).unwrap();
        let out = simulate_state(&c, &StateVector::basis(1, 0)).unwrap();
        assert!((out.amplitudes()[1] - cx(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn gate_constructor_validates() {
        assert!(Gate::single(0, ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 2.0]).unwrap())
            .is_err());
        assert!(Gate::new(
            GateKind::ControlledUnitary,
            vec![0],
            vec![(0, 1)],
            gates::pauli_x()
        )
        .is_err());
        assert!(Gate::new(
            GateKind::ControlledUnitary,
            vec![0],
            vec![(1, 2)],
            gates::pauli_x()
        )
        .is_err());
    }

    #[test]
    fn v_only_circuit_prepares_superposition() {
        // After V alone, the register holds Σ_i V_i0 |i⟩|ψ⟩.
        let plan = build_lcu(
            UniversalParams::new(0.6, 1.0, 0.4, FRAC_PI_2, FRAC_PI_6).unwrap(),
        )
        .unwrap();
        let mut c = Circuit::new(3, vec![QubitRole::Ancilla, QubitRole::Ancilla, QubitRole::Work])
            .unwrap();
        c.push(
            Gate::new(GateKind::ControlledUnitary, vec![0, 1], vec![], plan.v().clone()).unwrap(),
        )
        .unwrap();
        let mut rng = testkit::rng(32);
        let psi = testkit::random_state(&mut rng, 1);
        let out = simulate_state(&c, &StateVector::zero(2).tensor(&psi)).unwrap();
        for i in 0..4 {
            for k in 0..2 {
                let expected = plan.v().get(i, 0) * psi.amplitudes()[k];
                assert!((out.amplitudes()[i * 2 + k] - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn channel_circuit_structure() {
        let plan = build_lcu(
            UniversalParams::new(0.6, 0.0, FRAC_PI_4, FRAC_PI_2, FRAC_PI_6).unwrap(),
        )
        .unwrap();
        let c = build_channel_circuit(&plan);
        assert_eq!(c.num_qubits(), 3);
        assert_eq!(c.ancilla_qubits(), vec![0, 1]);
        assert_eq!(c.work_qubit(), Some(2));
        assert_eq!(c.gates().len(), 5, "V, two controlled-Z, W, controlled-X");
        let controlled_z = c
            .gates()
            .iter()
            .filter(|g| g.controls().len() == 2 && g.matrix().max_abs_diff(&gates::pauli_z()) < 1e-12)
            .count();
        assert_eq!(controlled_z, 2);
        let controlled_x = c
            .gates()
            .iter()
            .filter(|g| g.controls() == [(1, 1)] && g.matrix().max_abs_diff(&gates::pauli_x()) < 1e-12)
            .count();
        assert_eq!(controlled_x, 1);
        assert_eq!(c.measurements(), &[0, 1, 2]);
    }

    #[test]
    fn identity_plan_keeps_branch_zero() {
        let plan = build_lcu(UniversalParams::new(1.0, 0.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        let c = build_channel_circuit(&plan);
        let mut rng = testkit::rng(33);
        for _ in 0..10 {
            let psi = testkit::random_state(&mut rng, 1);
            let branches = branch_states(&c, &psi).unwrap();
            assert!((branches[0].probability - 1.0).abs() < 1e-12);
            let kept = branches[0].work_state.as_ref().unwrap();
            assert!(kept.inner(&psi).norm() > 1.0 - 1e-10);
            for b in &branches[1..] {
                assert!(b.probability < 1e-12);
                assert!(b.work_state.is_none());
            }
        }
    }

    #[test]
    fn class_a_beta_zero_has_dead_branch_one() {
        // α₁ = β₁ = 0 forces K₁ = 0.
        let plan = build_lcu(
            UniversalParams::new(0.6, 0.0, 0.0, FRAC_PI_2, FRAC_PI_6).unwrap(),
        )
        .unwrap();
        let c = build_channel_circuit(&plan);
        let branches = branch_states(&c, &StateVector::plus()).unwrap();
        assert!(branches[1].probability < 1e-12);
    }

    #[test]
    fn branch_probabilities_match_kraus_norms() {
        let mut rng = testkit::rng(34);
        for _ in 0..40 {
            let params = random_params(&mut rng);
            let plan = build_lcu(params).unwrap();
            let ch = QubitChannel::from_universal_params(params).unwrap();
            let c = build_channel_circuit(&plan);
            let psi = testkit::random_state(&mut rng, 1);
            let branches = branch_states(&c, &psi).unwrap();
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            assert!((total - 1.0).abs() < 1e-9);
            for (j, branch) in branches.iter().enumerate() {
                let image = ch.kraus()[j].matvec(psi.amplitudes()).unwrap();
                let norm_sqr: f64 = image.iter().map(|a| a.norm_sqr()).sum();
                assert!(
                    (branch.probability - norm_sqr).abs() < 1e-10,
                    "branch {j} probability mismatch"
                );
                if let Some(state) = &branch.work_state {
                    // K_j|ψ⟩ normalized, up to nothing: the branch carries
                    // the exact phase.
                    let overlap: Complex64 = state
                        .amplitudes()
                        .iter()
                        .zip(image.iter())
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    assert!((overlap.norm() - norm_sqr.sqrt()).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn channel_output_matches_kraus_application() {
        let mut rng = testkit::rng(35);
        for _ in 0..20 {
            let params = random_params(&mut rng);
            let plan = build_lcu(params).unwrap();
            let ch = QubitChannel::from_universal_params(params).unwrap();
            let c = build_channel_circuit(&plan);
            for _ in 0..5 {
                let rho = testkit::random_density(&mut rng, 2);
                let via_circuit = channel_output(&c, &rho).unwrap();
                let via_kraus = ch.apply(&rho).unwrap();
                assert!(via_circuit.max_abs_diff(&via_kraus) < 1e-10);
            }
        }
    }

    #[test]
    fn unital_plan_fixes_maximally_mixed() {
        let ch = QubitChannel::unital_aligned(0.8, 1.9, 0.6).unwrap();
        let plan = build_lcu(ch.params().unwrap()).unwrap();
        let c = build_channel_circuit(&plan);
        let out = channel_output(&c, &crate::channel::maximally_mixed()).unwrap();
        assert!(out.max_abs_diff(&crate::channel::maximally_mixed()) < 1e-10);
    }

    #[test]
    fn full_unitary_is_unitary_and_stinespring_equivalent() {
        let mut rng = testkit::rng(36);
        for _ in 0..20 {
            let params = random_params(&mut rng);
            let plan = build_lcu(params).unwrap();
            let ch = QubitChannel::from_universal_params(params).unwrap();
            let c = build_channel_circuit(&plan);
            let u = full_unitary(&c).unwrap();
            assert!(u.unitarity_residual() < 1e-9);

            let rho = testkit::random_density(&mut rng, 2);
            let mut anc = ComplexMatrix::zeros(4, 4);
            anc.set(0, 0, cx(1.0, 0.0));
            let evolved = u
                .matmul(&anc.kron(&rho))
                .unwrap()
                .matmul(&u.dagger())
                .unwrap();
            let reduced = evolved.partial_trace(&[2, 2, 2], &[2]).unwrap();
            assert!(reduced.max_abs_diff(&ch.apply(&rho).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn reference_qubit_stays_untouched() {
        let params = UniversalParams::new(0.6, 0.0, 1.2, FRAC_PI_2, FRAC_PI_6).unwrap();
        let plan = build_lcu(params).unwrap();
        let ch = QubitChannel::from_universal_params(params).unwrap();
        let c = build_channel_circuit_with_reference(&plan);
        assert_eq!(c.num_qubits(), 4);
        assert_eq!(c.role(3), QubitRole::Reference);

        // (Φ ⊗ I) on the Bell pair via the circuit equals apply_extended.
        let h = cx(1.0 / 2.0_f64.sqrt(), 0.0);
        let bell = StateVector::new(2, vec![h, cx(0.0, 0.0), cx(0.0, 0.0), h]).unwrap();
        let input = StateVector::zero(2).tensor(&bell);
        let final_state = simulate_state(&c, &input).unwrap();
        let joint = final_state
            .density_matrix()
            .partial_trace(&[2, 2, 2, 2], &[2, 3])
            .unwrap();
        let expected = ch.apply_extended(&crate::channel::bell_state_density()).unwrap();
        assert!(joint.max_abs_diff(&expected) < 1e-10);
    }
}

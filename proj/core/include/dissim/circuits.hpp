#pragma once

#include <string>
#include <vector>

#include "dissim/density_matrix.hpp"
#include "dissim/hubbard.hpp"
#include "dissim/lattice.hpp"
#include "dissim/types.hpp"

namespace dissim {

enum class GateKind { kX, kCnot, kRz, kRy, kCry, kReset };

/// One gate. Qubit 0 is the most significant bit of the register index.
struct Gate {
  GateKind kind;
  int target = 0;
  int control = -1;  // CNOT/CRY only
  double angle = 0.0;

  static Gate x(int q) { return {GateKind::kX, q, -1, 0.0}; }
  static Gate cnot(int c, int t) { return {GateKind::kCnot, t, c, 0.0}; }
  static Gate rz(int q, double a) { return {GateKind::kRz, q, -1, a}; }
  static Gate ry(int q, double a) { return {GateKind::kRy, q, -1, a}; }
  static Gate cry(int c, int t, double a) { return {GateKind::kCry, t, c, a}; }
  static Gate reset(int q) { return {GateKind::kReset, q, -1, 0.0}; }
};

/// Gate list over a small register split into system and ancilla qubits.
/// Every ancilla must end the block with a reset.
struct Circuit {
  int width = 0;
  std::vector<int> system;  // ascending qubit indices
  std::vector<Gate> gates;

  std::vector<int> ancillas() const;
  int system_dim() const { return 1 << static_cast<int>(system.size()); }
  void validate() const;
};

/// Full-register unitary of a single non-reset gate.
cmat gate_unitary(const Gate& g, int width);

/// Product of all gates; throws if the circuit contains resets.
cmat circuit_unitary(const Circuit& c);

/// Applies the whole circuit (resets included, as two-operator reset
/// channels) to an arbitrary full-register matrix.
cmat apply_circuit_raw(const Circuit& c, const cmat& rho_full);

/// The channel induced on the system partition when every ancilla starts
/// in |0> and is reset at the end of the block: Kraus operators are read
/// off the eigendecomposition of the Choi matrix.
KrausChannel circuit_to_channel(const Circuit& c);

/// max-norm distance between two channels as maps, probed on the complete
/// set of matrix units.
double map_distance(const KrausChannel& a, const KrausChannel& b);

/// One dissipative Trotter step of the driven mode, exact as a map:
/// system qubit 0 (mode basis |0>=empty, |1>=occupied) plus two ancillas,
/// one per jump direction. A single reset ancilla cannot reproduce the
/// rank-3 step channel, so the block uses two.
Circuit build_lattice_step(const LatticeParams& p, int step);

/// The two-qubit hardware-style block (one ancilla, one reset per step,
/// qubit convention |0>=occupied). Its induced map matches the analytic
/// step channel on diagonal states -- the sector every recorded observable
/// lives in -- and is the block the reset/damping error model composes with.
Circuit build_lattice_step_hw(const LatticeParams& p, int step);

/// Unitary part of build_lattice_step_hw (no terminal reset); used by the
/// error-model cross-check, which interleaves its own noisy reset/damping.
Circuit lattice_step_unitary_hw(const LatticeParams& p, int step);

/// One thermalization step of the atom: qubits {0,1} = system (n_down,
/// n_up), {2,3} = ancilla copies. Requires a single-bit-flip cycle.
Circuit build_hubbard_step(const TransitionCycle& cycle);

/// Same map compiled to CNOTs and single-qubit rotations only; the
/// controlled rotations are expanded through their half-angle form.
Circuit build_hubbard_step_transpiled(const TransitionCycle& cycle);

/// Line-oriented text form, one gate per line `KIND q[,q2][,angle]`,
/// `#` starts a comment. The header comment carries width and system.
std::string serialize(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace dissim

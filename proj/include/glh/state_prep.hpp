#pragma once

#include "glh/feynman_kitaev.hpp"
#include "glh/guiding_states.hpp"

namespace glh {

enum class SynthKind { rot_y, pauli_x, controlled_x, controlled_block };

// Primitive synthesis gate. Controls (with a bit pattern) may decorate any
// kind; counts are reported at this granularity.
struct SynthGate {
  SynthKind kind = SynthKind::pauli_x;
  std::vector<int> controls;
  std::string pattern;       // one bit per control
  std::vector<int> targets;  // single qubit except for controlled_block
  double theta = 0.0;        // rot_y only
  Mat block;                 // controlled_block only

  void validate(int n) const;
};

struct SynthCounts {
  int rot_y = 0, pauli_x = 0, controlled_x = 0, controlled_block = 0;
  int total() const { return rot_y + pauli_x + controlled_x + controlled_block; }
};

struct SynthCircuit {
  int qubits = 0;
  std::vector<SynthGate> gates;
  SynthCounts counts() const;
};

struct PermutationPlan {
  std::vector<std::vector<std::string>> cycles;  // x_i -> x_{i+1}, last wraps
};

SynthCircuit grover_rudolph_uniform(std::size_t count, int n);
PermutationPlan plan_permutation(const std::vector<std::string>& B,
                                 const std::vector<std::string>& C);
std::vector<SynthGate> cycle_to_gates(const std::vector<std::string>& cycle, int ancilla);

// Uniform subset-state preparation on n+1 qubits (last is the cycle ancilla).
SynthCircuit synth_subset_state(const SubsetDescription& c);
SynthCircuit synth_scess(const ScessDescription& d);
SynthCircuit synth_history(const GateCircuit& c, ClockKind kind);

Vec simulate(const SynthCircuit& sc, const std::string& input);

std::string emit_text(const SynthCircuit& sc);

}  // namespace glh

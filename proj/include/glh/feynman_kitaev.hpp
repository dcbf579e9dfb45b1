#pragma once

#include "glh/guiding_states.hpp"
#include "glh/operator_core.hpp"

namespace glh {

struct Gate {
  std::vector<int> qubits;  // 1 or 2 distinct data-register indices
  Mat matrix;               // 2^|qubits| unitary

  bool is_identity() const;
  void validate(int data_qubits) const;
};

struct GateCircuit {
  int W = 0;          // workspace qubits
  int m = 0;          // ancilla qubits
  std::string x;      // workspace input, length W
  std::vector<Gate> gates;

  int data_qubits() const { return W + m; }
  int K() const { return static_cast<int>(gates.size()); }
  void validate() const;
};

enum class ClockKind { unary, one_hot };

struct ClockEncoding {
  ClockKind kind = ClockKind::unary;
  int K = 0;

  int length() const { return K; }
  std::string codeword(int t) const;  // t in [0, K]
};

// Compiled instance: total Hamiltonian is Delta*(H_in + H_clock + H_prop) + H_out
// over data qubits [0, W+m) followed by the clock register.
struct FKInstance {
  LocalHamiltonian h_in, h_clock, h_prop, h_out;
  double delta = 0.0;
  ClockEncoding enc;
  int W = 0, m = 0;
  int N = 0;  // leading identity gates
  int T = 0;  // remaining gates

  int qubits() const { return W + m + enc.length(); }
  LocalHamiltonian delta_part() const;  // H_in + H_clock + H_prop, unscaled
  LocalHamiltonian total() const;
  int nominal_clock_locality() const;  // clock qubits touched in the standard layout
};

struct RSetDescription {
  std::string sigma;  // data-register bit string
  int nu = 0;
  ClockEncoding enc;
};

GateCircuit pre_idle(const GateCircuit& c, int N);
GateCircuit insert_idle(const GateCircuit& c, int s, int S);

// y = (U on `qubits`) x over an n-qubit register.
Vec apply_gate(const Vec& x, const std::vector<int>& qubits, const Mat& u, int n);

FKInstance build_fk(const GateCircuit& c, ClockKind kind, double delta,
                    int qubit_cap = caps::fk_qubits);

// Workspace snapshots phi_0 .. phi_K on the data register.
std::vector<Vec> circuit_snapshots(const GateCircuit& c);
Vec history_state(const GateCircuit& c, const ClockEncoding& enc,
                  int qubit_cap = caps::fk_qubits);
double acceptance_probability(const GateCircuit& c);  // P(qubit 0 reads 1 at time K)

GuidingState r_state(const RSetDescription& r);
// F(R, eta) from snapshot overlaps; avoids materializing the full register.
double r_state_history_fidelity(const GateCircuit& c, const ClockEncoding& enc,
                                const RSetDescription& r);

struct ThresholdReport {
  double a = 0.0, b = 0.0;
  double a_rescaled = 0.0, b_rescaled = 0.0;
  double rescale = 1.0;
  bool sw_regime = false;  // Delta above the 112 K^3 floor
  bool valid = false;      // b > a
};
ThresholdReport yes_no_thresholds(int K, double delta, double eps, double rescale = 1.0);

struct HardnessReport {
  double nullity_residual = 0.0;
  double out_energy = 0.0;  // <eta|H_out|eta>
  double p_acc = 0.0;
  double ground_energy = 0.0;
  double gap = 0.0;
  double g_eta_distance = 0.0;  // phase-aligned ||g - eta||
  double sw_bound = 0.0;        // c_sw / Delta
  double r_fidelity = 0.0;      // F(R, g)
  double r_fidelity_bound = 0.0;
  double r_eta_fidelity = 0.0;  // measured F(R, eta); law value N/(N+T+1)
  ThresholdReport thresholds;
};
HardnessReport verify_hardness_instance(const GateCircuit& c, ClockKind kind,
                                        double delta, int N);

}  // namespace glh

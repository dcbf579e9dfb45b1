#pragma once

// Central tolerance ledger and desk-scale caps. Every numerical gate in the
// library reads from here so a tolerance is never duplicated inline.

namespace glh {

namespace tol {
inline constexpr double hermiticity = 1e-12;     // term / assembled matrix
inline constexpr double eigen_residual = 1e-8;   // ||Hv - lambda v||
inline constexpr double degeneracy = 1e-10;      // gap treated as zero below this
inline constexpr double state_norm = 1e-10;
inline constexpr double pauli_roundtrip = 1e-10;
inline constexpr double query_dense = 1e-12;     // amplitude_query vs dense
inline constexpr double dense_equality = 1e-10;  // MPS round trips etc.
inline constexpr double unitarity = 1e-10;
inline constexpr double isometry = 1e-10;
inline constexpr double nullity = 1e-10;         // history-state residual
inline constexpr double synth_infidelity = 1e-7; // simulated prep vs dense
inline constexpr double history_infidelity = 1e-8;
inline constexpr double filter_apply = 1e-8;     // Clenshaw vs eigenbasis
inline constexpr double fidelity_exact = 1e-12;  // R-state fidelity law
}  // namespace tol

namespace caps {
inline constexpr int assemble_qubits = 16;  // default; overridable per call
inline constexpr int apply_qubits = 26;     // matrix-free statevector ceiling
inline constexpr int dense_eig_dim = 1 << 13;
inline constexpr int subset_size = 4096;
inline constexpr int pauli_support = 8;
inline constexpr int isometry_m_max = 3;
inline constexpr int bond_dimension = 64;
inline constexpr int filter_degree = 4096;
inline constexpr int fk_qubits = 20;  // data + clock register ceiling for compilation
}  // namespace caps

namespace consts {
inline constexpr double c_sw = 4.0;   // Schrieffer-Wolff slack: 1/p = c_sw/Delta
inline constexpr double c_qpe = 3.0;  // repetition constant in R = ceil((c/delta) ln(1/eta))
inline constexpr double c_filter = 8.0;  // degree budget c * ln(1/err)/(b-a)
inline constexpr double sw_regime_coeff = 112.0;  // Delta > 112 K^3
}  // namespace consts

}  // namespace glh

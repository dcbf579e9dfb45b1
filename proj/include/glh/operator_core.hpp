#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <string>
#include <vector>

#include "glh/config.hpp"

namespace glh {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using SpMat = Eigen::SparseMatrix<cd>;

// Bit conventions used across the library: a basis string is ASCII '0'/'1'
// with qubit q at character position q; qubit 0 is the most significant bit
// of the basis index.
std::size_t string_to_index(const std::string& bits);
std::string index_to_string(std::size_t idx, int n);
inline int bit_of(std::size_t idx, int q, int n) {
  return static_cast<int>((idx >> (n - 1 - q)) & 1u);
}

struct PauliString {
  cd coefficient{1.0, 0.0};
  std::string letters;  // over {I,X,Y,Z}, one per qubit

  int size() const { return static_cast<int>(letters.size()); }
  Mat dense() const;  // coefficient included
  void validate() const;
};

// One Hermitian term on a declared support. The block is stored sparse on the
// support so clock-register projectors stay exact at pre-idle depth; a dense
// view is available for small supports.
struct HermitianTerm {
  std::vector<int> support;  // distinct qubit indices, caller order
  SpMat block;               // 2^|support| square, Hermitian

  HermitianTerm() = default;
  HermitianTerm(std::vector<int> sup, const Mat& dense_block);
  HermitianTerm(std::vector<int> sup, SpMat sparse_block);

  int arity() const { return static_cast<int>(support.size()); }
  Mat dense_block() const;
  double block_norm() const;  // spectral norm of the block
  void validate(int n) const;
};

struct LocalHamiltonian {
  int n = 0;  // qubit count
  int k = 0;  // claimed locality
  std::vector<HermitianTerm> terms;

  void validate() const;
  std::size_t dim() const { return std::size_t{1} << n; }
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  Mat eigenvectors;             // orthonormal columns, aligned
  double lambda0() const { return eigenvalues(0); }
  double gap() const;  // lambda1 - lambda0, clamped to 0 under tol::degeneracy
};

struct NormReport {
  double exact = 0.0;       // spectral norm
  double term_bound = 0.0;  // sum of per-term block norms
};

SpMat assemble(const LocalHamiltonian& H, int qubit_cap = caps::assemble_qubits);
Mat assemble_dense(const LocalHamiltonian& H, int qubit_cap = caps::assemble_qubits);

// Matrix-free y = H x, usable beyond the assemble cap.
Vec apply_op(const LocalHamiltonian& H, const Vec& x);

Spectrum diagonalize(const LocalHamiltonian& H, int qubit_cap = caps::assemble_qubits);
std::pair<double, Vec> ground(const LocalHamiltonian& H, int qubit_cap = caps::assemble_qubits);
double spectral_gap(const LocalHamiltonian& H, int qubit_cap = caps::assemble_qubits);
NormReport operator_norm(const LocalHamiltonian& H, int qubit_cap = caps::assemble_qubits);
std::pair<LocalHamiltonian, double> rescale_unit(const LocalHamiltonian& H,
                                                 int qubit_cap = caps::assemble_qubits);

// Pauli decomposition of a term over its support (letters indexed by support
// position). lift_to_qubits rewrites letters onto the full register.
std::vector<PauliString> pauli_decompose(const HermitianTerm& term);
PauliString lift_to_qubits(const PauliString& local, const std::vector<int>& support, int n);

}  // namespace glh

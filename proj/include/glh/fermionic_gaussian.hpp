#pragma once

#include "glh/operator_core.hpp"

namespace glh {

using RMat = Eigen::MatrixXd;

// Majorana convention fixed by the dense-oracle tests:
//   c_{2j} = a_j + a_j^dag = Z..Z X_j,   c_{2j+1} = -i(a_j - a_j^dag) = Z..Z Y_j,
// giving {c_k, c_l} = 2 delta_{kl}. Covariance M_{kl} = -(i/2) tr(phi [c_k, c_l]).

struct CovarianceMatrix {
  RMat M;
  int modes = 0;
  void validate(bool require_pure = true) const;
};

struct OrthogonalRotation {
  RMat R;
  void validate() const;
};

struct MajoranaMonomial {
  std::vector<int> indices;  // strictly increasing over [0, 2n)
  cd coefficient{1.0, 0.0};
};

struct QuadraticHamiltonian {
  RMat h;  // 2n x 2n real antisymmetric: H_free = (i/2) sum h_{jk} c_j c_k
  void validate() const;
  int modes() const { return (int)h.rows() / 2; }
};

CovarianceMatrix vacuum_covariance(int n);
CovarianceMatrix evolve(const CovarianceMatrix& M, const OrthogonalRotation& R);

// A Pauli string maps to exactly one Majorana monomial (up to coefficient).
MajoranaMonomial jordan_wigner(const PauliString& p);

double pfaffian(const RMat& A);

cd expectation_pauli(const CovarianceMatrix& M, const PauliString& p);
double gaussian_energy(const CovarianceMatrix& M, const LocalHamiltonian& H);

struct GroundCovarianceReport {
  CovarianceMatrix covariance;
  std::vector<double> energies;  // ascending, nonnegative
  int zero_modes = 0;
};
GroundCovarianceReport ground_covariance(const QuadraticHamiltonian& q);

// exp(A) for real antisymmetric A (an orthogonal rotation).
RMat expm_antisymmetric(const RMat& A);

}  // namespace glh

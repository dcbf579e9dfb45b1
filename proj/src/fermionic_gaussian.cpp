#include "glh/fermionic_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace glh {

namespace {

constexpr cd kI{0.0, 1.0};

// Single-qubit Pauli products: mult[a][b] = (phase, letter) with letters
// indexed I=0, X=1, Y=2, Z=3.
int letter_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
  }
  throw std::invalid_argument("bad Pauli letter");
}

char index_letter(int i) { return "IXYZ"[i]; }

std::pair<cd, int> letter_mult(int a, int b) {
  if (a == 0) return {1.0, b};
  if (b == 0) return {1.0, a};
  if (a == b) return {1.0, 0};
  // XY=iZ, YZ=iX, ZX=iY and the reversed orders pick up a minus sign.
  static const int third[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
  const int c = third[a][b];
  const bool fwd = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
  return {fwd ? kI : -kI, c};
}

struct SymbolicPauli {
  cd phase{1.0, 0.0};
  std::vector<int> letters;  // per qubit

  void multiply_right(int qubit, int letter) {
    auto [ph, c] = letter_mult(letters[qubit], letter);
    phase *= ph;
    letters[qubit] = c;
  }
};

// Pauli letters of Majorana c_k on n qubits: Z...Z then X (even k) or Y (odd k).
void multiply_majorana(SymbolicPauli& acc, int k, int n) {
  const int q = k / 2;
  for (int i = 0; i < q; ++i) acc.multiply_right(i, 3);
  acc.multiply_right(q, k % 2 == 0 ? 1 : 2);
  (void)n;
}

}  // namespace

void CovarianceMatrix::validate(bool require_pure) const {
  if (M.rows() != 2 * modes || M.cols() != 2 * modes)
    throw std::invalid_argument("covariance must be 2n x 2n");
  if ((M + M.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("covariance must be antisymmetric");
  if (require_pure &&
      (M.transpose() * M - RMat::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("covariance is not pure");
}

void OrthogonalRotation::validate() const {
  if (R.rows() != R.cols()) throw std::invalid_argument("rotation must be square");
  if ((R.transpose() * R - RMat::Identity(R.rows(), R.cols())).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("rotation is not orthogonal");
}

void QuadraticHamiltonian::validate() const {
  if (h.rows() != h.cols() || h.rows() % 2 != 0)
    throw std::invalid_argument("coefficient matrix must be 2n x 2n");
  if ((h + h.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("coefficient matrix must be antisymmetric");
}

CovarianceMatrix vacuum_covariance(int n) {
  if (n < 1) throw std::invalid_argument("mode count must be positive");
  RMat m = RMat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    m(2 * j, 2 * j + 1) = 1.0;
    m(2 * j + 1, 2 * j) = -1.0;
  }
  return CovarianceMatrix{m, n};
}

CovarianceMatrix evolve(const CovarianceMatrix& M, const OrthogonalRotation& R) {
  M.validate();
  R.validate();
  if (R.R.rows() != M.M.rows()) throw std::invalid_argument("dimension mismatch");
  return CovarianceMatrix{R.R * M.M * R.R.transpose(), M.modes};
}

MajoranaMonomial jordan_wigner(const PauliString& p) {
  p.validate();
  const int n = p.size();
  // Choose the index set from high qubit to low, tracking how many selected
  // Majoranas sit above the current qubit (their Z tails land here).
  std::vector<int> indices;
  int parity = 0;
  std::vector<int> picked_per_qubit(n, 0);
  for (int q = n - 1; q >= 0; --q) {
    int letter = letter_index(p.letters[q]);
    if (parity % 2 == 1) {
      // fold the accumulated Z tail into the required base letter
      static const int zfold[4] = {3, 2, 1, 0};  // I<->Z, X<->Y
      letter = zfold[letter];
    }
    int count = 0;
    if (letter == 1) {  // X -> c_{2q}
      picked_per_qubit[q] = 1;
      count = 1;
    } else if (letter == 2) {  // Y -> c_{2q+1}
      picked_per_qubit[q] = 2;
      count = 1;
    } else if (letter == 3) {  // Z -> c_{2q} c_{2q+1}
      picked_per_qubit[q] = 3;
      count = 2;
    }
    parity += count;
  }
  for (int q = 0; q < n; ++q) {
    if (picked_per_qubit[q] & 1) indices.push_back(2 * q);
    if (picked_per_qubit[q] & 2) indices.push_back(2 * q + 1);
  }
  // Fix the coefficient by symbolic multiplication of the ascending product.
  SymbolicPauli acc;
  acc.letters.assign(n, 0);
  for (int k : indices) multiply_majorana(acc, k, n);
  for (int q = 0; q < n; ++q)
    if (index_letter(acc.letters[q]) != p.letters[q])
      throw std::logic_error("Jordan-Wigner index selection failed");
  return MajoranaMonomial{indices, p.coefficient / acc.phase};
}

double pfaffian(const RMat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::Index n = A.rows();
  if (n % 2 != 0) throw std::invalid_argument("Pfaffian needs even dimension");
  if (n == 0) return 1.0;
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("matrix must be antisymmetric");
  RMat a = A;
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // pivot the largest entry of column k below the diagonal into row k+1
    Eigen::Index kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        kp = i;
      }
    if (best == 0.0) return 0.0;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      Eigen::VectorXd tau = a.row(k).segment(k + 2, n - k - 2).transpose() / a(k, k + 1);
      Eigen::VectorXd col = a.col(k + 1).segment(k + 2, n - k - 2);
      a.bottomRightCorner(n - k - 2, n - k - 2) +=
          tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

cd expectation_pauli(const CovarianceMatrix& M, const PauliString& p) {
  M.validate(false);
  MajoranaMonomial mono = jordan_wigner(p);
  const std::size_t len = mono.indices.size();
  if (len % 2 == 1) return 0.0;
  if (len == 0) return mono.coefficient;
  const Eigen::Index m2 = (Eigen::Index)len;
  RMat sub(m2, m2);
  for (Eigen::Index r = 0; r < m2; ++r)
    for (Eigen::Index c = 0; c < m2; ++c) sub(r, c) = M.M(mono.indices[r], mono.indices[c]);
  // <c_{k1}..c_{k2m}> = Pf(i M_sub) = i^m Pf(M_sub)
  cd im = 1.0;
  for (std::size_t i = 0; i < len / 2; ++i) im *= kI;
  return mono.coefficient * im * pfaffian(sub);
}

double gaussian_energy(const CovarianceMatrix& M, const LocalHamiltonian& H) {
  H.validate();
  if (H.n != M.modes) throw std::invalid_argument("qubit count must match mode count");
  cd total = 0.0;
  for (const auto& t : H.terms)
    for (const auto& p : pauli_decompose(t))
      total += expectation_pauli(M, lift_to_qubits(p, t.support, H.n));
  if (std::abs(total.imag()) > 1e-8) throw std::runtime_error("energy acquired imaginary part");
  return total.real();
}

GroundCovarianceReport ground_covariance(const QuadraticHamiltonian& q) {
  q.validate();
  const int n = q.modes();
  const Eigen::Index d = 2 * n;
  const double scale = std::max(1.0, q.h.cwiseAbs().maxCoeff());
  const double zero_tol = 1e-10 * scale;

  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(kI * q.h.cast<cd>()));
  RMat Q(d, d);
  std::vector<double> energies;
  Eigen::Index col = 0;

  // Zero modes: real orthonormal kernel basis via SVD, paired consecutively.
  Eigen::JacobiSVD<RMat> svd(q.h, Eigen::ComputeFullV);
  int zero_modes = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (svd.singularValues()(i) <= zero_tol) ++zero_modes;
  if (zero_modes % 2 != 0) throw std::runtime_error("kernel of antisymmetric matrix is odd");
  for (int i = 0; i < zero_modes; ++i) Q.col(col++) = svd.matrixV().col(d - 1 - i);
  for (int i = 0; i < zero_modes / 2; ++i) energies.push_back(0.0);

  // Positive eigenvalues of i h, ascending; each contributes one mode.
  for (Eigen::Index i = 0; i < d; ++i) {
    const double eps = es.eigenvalues()(i);
    if (eps <= zero_tol) continue;
    const Vec v = es.eigenvectors().col(i);
    const Eigen::VectorXd u = std::sqrt(2.0) * v.real();
    const Eigen::VectorXd w = std::sqrt(2.0) * v.imag();
    Q.col(col++) = w;
    Q.col(col++) = u;
    energies.push_back(eps);
  }
  if (col != d) throw std::runtime_error("mode count mismatch in Schur canonicalization");
  if ((Q.transpose() * Q - RMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::runtime_error("canonical basis lost orthogonality");

  GroundCovarianceReport rep;
  rep.zero_modes = zero_modes / 2;
  rep.energies = energies;
  rep.covariance = CovarianceMatrix{Q * vacuum_covariance(n).M * Q.transpose(), n};
  rep.covariance.validate();
  return rep;
}

RMat expm_antisymmetric(const RMat& A) {
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("generator must be antisymmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(kI * A.cast<cd>()));
  Vec phases(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) phases(i) = std::exp(-kI * es.eigenvalues()(i));
  Mat r = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return r.real();
}

}  // namespace glh

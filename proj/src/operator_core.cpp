#include "glh/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace glh {

namespace {

constexpr cd kI{0.0, 1.0};

// Positions (shifts) of a term's block bits and its complement inside the
// global index. Block bit for support[i] sits at shift s-1-i locally and at
// n-1-support[i] globally.
struct Embedding {
  int n = 0, s = 0;
  std::vector<int> support_shift;  // global shift per support position
  std::vector<int> comp_shift;     // global shift per complement position

  Embedding(int n_, const std::vector<int>& support) : n(n_), s((int)support.size()) {
    std::vector<char> in_support(n, 0);
    for (int q : support) in_support[q] = 1;
    support_shift.reserve(s);
    for (int q : support) support_shift.push_back(n - 1 - q);
    for (int q = 0; q < n; ++q)
      if (!in_support[q]) comp_shift.push_back(n - 1 - q);
  }

  std::size_t scatter_block(std::size_t b) const {
    std::size_t out = 0;
    for (int i = 0; i < s; ++i)
      if ((b >> (s - 1 - i)) & 1u) out |= std::size_t{1} << support_shift[i];
    return out;
  }
  std::size_t scatter_comp(std::size_t c) const {
    std::size_t out = 0;
    const int r = (int)comp_shift.size();
    for (int i = 0; i < r; ++i)
      if ((c >> (r - 1 - i)) & 1u) out |= std::size_t{1} << comp_shift[i];
    return out;
  }
};

double sparse_max_abs(const SpMat& m) {
  double mx = 0.0;
  for (int c = 0; c < m.outerSize(); ++c)
    for (SpMat::InnerIterator it(m, c); it; ++it) mx = std::max(mx, std::abs(it.value()));
  return mx;
}

// Spectral norm of a Hermitian sparse matrix by power iteration on A^2
// (sign-insensitive). Used only when the dense eigensolver would not fit.
double power_norm(const SpMat& a) {
  const Eigen::Index d = a.rows();
  Vec v = Vec::Random(d);
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < 4000; ++it) {
    Vec w = a * Vec(a * v);
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    double next = std::sqrt(nw);
    if (std::abs(next - est) <= 1e-12 * std::max(1.0, next) && it > 10) return next;
    est = next;
    v = std::move(w);
  }
  return est;
}

Mat dense_of(const SpMat& a) { return Mat(a); }

}  // namespace

std::size_t string_to_index(const std::string& bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must be over 0/1");
    idx = (idx << 1) | std::size_t(c - '0');
  }
  return idx;
}

std::string index_to_string(std::size_t idx, int n) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q)
    if ((idx >> (n - 1 - q)) & 1u) s[q] = '1';
  return s;
}

Mat PauliString::dense() const {
  validate();
  static const Mat I2 = Mat::Identity(2, 2);
  static const Mat X = (Mat(2, 2) << 0, 1, 1, 0).finished();
  static const Mat Y = (Mat(2, 2) << cd(0), -kI, kI, cd(0)).finished();
  static const Mat Z = (Mat(2, 2) << 1, 0, 0, -1).finished();
  Mat out = Mat::Identity(1, 1);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const char c = *it;
    const Mat* f = &I2;
    if (c == 'X') f = &X;
    else if (c == 'Y') f = &Y;
    else if (c == 'Z') f = &Z;
    Mat next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc)
        next.block(r * out.rows(), cc * out.cols(), out.rows(), out.cols()) = (*f)(r, cc) * out;
    out = std::move(next);
  }
  return coefficient * out;
}

void PauliString::validate() const {
  if (!std::isfinite(coefficient.real()) || !std::isfinite(coefficient.imag()))
    throw std::invalid_argument("Pauli coefficient must be finite");
  for (char c : letters)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("Pauli letters must be over IXYZ");
}

HermitianTerm::HermitianTerm(std::vector<int> sup, const Mat& dense_block)
    : support(std::move(sup)), block(dense_block.sparseView(1.0, 0.0)) {
  block.makeCompressed();
}

HermitianTerm::HermitianTerm(std::vector<int> sup, SpMat sparse_block)
    : support(std::move(sup)), block(std::move(sparse_block)) {
  block.makeCompressed();
}

Mat HermitianTerm::dense_block() const {
  if (arity() > 14) throw std::length_error("term support too large for dense view");
  return dense_of(block);
}

double HermitianTerm::block_norm() const {
  if (block.rows() <= caps::dense_eig_dim) {
    Eigen::SelfAdjointEigenSolver<Mat> es(dense_of(block), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return power_norm(block);
}

void HermitianTerm::validate(int n) const {
  std::set<int> seen;
  for (int q : support) {
    if (q < 0 || q >= n) throw std::invalid_argument("support index out of range");
    if (!seen.insert(q).second) throw std::invalid_argument("support indices must be distinct");
  }
  const auto d = std::size_t{1} << support.size();
  if ((std::size_t)block.rows() != d || (std::size_t)block.cols() != d)
    throw std::invalid_argument("block dimension does not match support");
  SpMat diff = SpMat(block - SpMat(block.adjoint()));
  if (sparse_max_abs(diff) > tol::hermiticity)
    throw std::invalid_argument("term block is not Hermitian");
}

void LocalHamiltonian::validate() const {
  if (n < 1) throw std::invalid_argument("qubit count must be positive");
  for (const auto& t : terms) {
    t.validate(n);
    if (t.arity() > k) throw std::invalid_argument("term support exceeds claimed locality");
  }
}

SpMat assemble(const LocalHamiltonian& H, int qubit_cap) {
  H.validate();
  if (H.n > qubit_cap) throw std::length_error("qubit count exceeds assemble cap");
  const std::size_t dim = H.dim();
  std::vector<Eigen::Triplet<cd>> trip;
  for (const auto& t : H.terms) {
    Embedding emb(H.n, t.support);
    const std::size_t comp_count = std::size_t{1} << (H.n - t.arity());
    for (int c = 0; c < t.block.outerSize(); ++c)
      for (SpMat::InnerIterator it(t.block, c); it; ++it) {
        const std::size_t gr = emb.scatter_block((std::size_t)it.row());
        const std::size_t gc = emb.scatter_block((std::size_t)it.col());
        for (std::size_t a = 0; a < comp_count; ++a) {
          const std::size_t base = emb.scatter_comp(a);
          trip.emplace_back((Eigen::Index)(base | gr), (Eigen::Index)(base | gc), it.value());
        }
      }
  }
  SpMat out((Eigen::Index)dim, (Eigen::Index)dim);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

Mat assemble_dense(const LocalHamiltonian& H, int qubit_cap) {
  return dense_of(assemble(H, qubit_cap));
}

Vec apply_op(const LocalHamiltonian& H, const Vec& x) {
  H.validate();
  if (H.n > caps::apply_qubits) throw std::length_error("qubit count exceeds apply cap");
  if ((std::size_t)x.size() != H.dim()) throw std::invalid_argument("vector dimension mismatch");
  Vec y = Vec::Zero(x.size());
  for (const auto& t : H.terms) {
    Embedding emb(H.n, t.support);
    struct Entry {
      std::size_t r, c;
      cd v;
    };
    std::vector<Entry> entries;
    for (int c = 0; c < t.block.outerSize(); ++c)
      for (SpMat::InnerIterator it(t.block, c); it; ++it)
        entries.push_back({emb.scatter_block((std::size_t)it.row()),
                           emb.scatter_block((std::size_t)it.col()), it.value()});
    const std::size_t comp_count = std::size_t{1} << (H.n - t.arity());
    for (std::size_t a = 0; a < comp_count; ++a) {
      const std::size_t base = emb.scatter_comp(a);
      for (const auto& e : entries) y[(Eigen::Index)(base | e.r)] += e.v * x[(Eigen::Index)(base | e.c)];
    }
  }
  return y;
}

double Spectrum::gap() const {
  if (eigenvalues.size() < 2) return 0.0;
  const double g = eigenvalues(1) - eigenvalues(0);
  return g <= tol::degeneracy ? 0.0 : g;
}

Spectrum diagonalize(const LocalHamiltonian& H, int qubit_cap) {
  const Mat dense = assemble_dense(H, qubit_cap);
  if (dense.rows() > caps::dense_eig_dim)
    throw std::length_error("dimension exceeds dense eigensolver cap");
  Eigen::SelfAdjointEigenSolver<Mat> es(dense);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

std::pair<double, Vec> ground(const LocalHamiltonian& H, int qubit_cap) {
  Spectrum s = diagonalize(H, qubit_cap);
  return {s.lambda0(), s.eigenvectors.col(0)};
}

double spectral_gap(const LocalHamiltonian& H, int qubit_cap) {
  return diagonalize(H, qubit_cap).gap();
}

NormReport operator_norm(const LocalHamiltonian& H, int qubit_cap) {
  NormReport rep;
  for (const auto& t : H.terms) rep.term_bound += t.block_norm();
  SpMat a = assemble(H, qubit_cap);
  if (a.rows() <= caps::dense_eig_dim) {
    Eigen::SelfAdjointEigenSolver<Mat> es(dense_of(a), Eigen::EigenvaluesOnly);
    rep.exact = es.eigenvalues().size() ? es.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
  } else {
    rep.exact = power_norm(a);
  }
  return rep;
}

std::pair<LocalHamiltonian, double> rescale_unit(const LocalHamiltonian& H, int qubit_cap) {
  const double factor = operator_norm(H, qubit_cap).exact;
  if (factor <= 0.0) throw std::invalid_argument("cannot rescale the zero operator");
  LocalHamiltonian out = H;
  for (auto& t : out.terms) t.block = SpMat(t.block / factor);
  return {out, factor};
}

std::vector<PauliString> pauliDecomposeRecursive(const Mat& m) {
  // Split off the first qubit: M = I (x) PI + X (x) PX + Y (x) PY + Z (x) PZ.
  std::vector<PauliString> out;
  if (m.rows() == 1) {
    if (std::abs(m(0, 0)) > 0.0) out.push_back({m(0, 0), ""});
    return out;
  }
  const Eigen::Index h = m.rows() / 2;
  const Mat A = m.topLeftCorner(h, h), B = m.topRightCorner(h, h);
  const Mat C = m.bottomLeftCorner(h, h), D = m.bottomRightCorner(h, h);
  const std::pair<char, Mat> parts[4] = {{'I', (A + D) / 2.0},
                                         {'X', (B + C) / 2.0},
                                         {'Y', kI * (B - C) / 2.0},
                                         {'Z', (A - D) / 2.0}};
  for (const auto& [letter, sub] : parts) {
    if (sub.cwiseAbs().maxCoeff() == 0.0) continue;
    for (auto& p : pauliDecomposeRecursive(sub)) {
      p.letters.insert(p.letters.begin(), letter);
      if (std::abs(p.coefficient) > 1e-15) out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<PauliString> pauli_decompose(const HermitianTerm& term) {
  if (term.arity() > caps::pauli_support)
    throw std::length_error("support too large for Pauli decomposition");
  return pauliDecomposeRecursive(term.dense_block());
}

PauliString lift_to_qubits(const PauliString& local, const std::vector<int>& support, int n) {
  if ((int)local.letters.size() != (int)support.size())
    throw std::invalid_argument("letter count does not match support");
  PauliString out{local.coefficient, std::string(n, 'I')};
  for (std::size_t i = 0; i < support.size(); ++i) out.letters[support[i]] = local.letters[i];
  return out;
}

}  // namespace glh

#include "glh/guiding_states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace glh {

namespace {

constexpr cd kI{0.0, 1.0};

int log2_exact(Eigen::Index rows) {
  int m = 0;
  while ((Eigen::Index(1) << m) < rows) ++m;
  if ((Eigen::Index(1) << m) != rows) throw std::invalid_argument("dimension not a power of two");
  return m;
}

int weight_of(const std::string& s) {
  return (int)std::count(s.begin(), s.end(), '1');
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return std::round(r);
}

// Internal product form covering subset / SCESS / advanced SCESS states:
// |psi> = (1/norm) sum_x c_x (x)_j v_{x,j}, blocks laid out contiguously.
struct ProductForm {
  int M = 0;
  std::vector<int> block_bits;            // m_j per position
  std::vector<cd> coeff;                  // c_x
  std::vector<std::vector<Vec>> blocks;   // [element][position]
  double norm = 1.0;

  void compute_norm() {
    cd total = 0.0;
    for (std::size_t x = 0; x < coeff.size(); ++x)
      for (std::size_t y = 0; y < coeff.size(); ++y) {
        cd prod = std::conj(coeff[y]) * coeff[x];
        for (std::size_t j = 0; j < block_bits.size() && std::abs(prod) > 0; ++j)
          prod *= blocks[y][j].dot(blocks[x][j]);
        total += prod;
      }
    if (total.real() <= 1e-14) throw std::invalid_argument("state has vanishing norm");
    norm = std::sqrt(total.real());
  }

  cd amplitude(const std::string& z) const {
    if ((int)z.size() != M) throw std::invalid_argument("query string has wrong length");
    cd total = 0.0;
    for (std::size_t x = 0; x < coeff.size(); ++x) {
      cd prod = coeff[x];
      int off = 0;
      for (std::size_t j = 0; j < block_bits.size() && std::abs(prod) > 0; ++j) {
        const std::size_t idx = string_to_index(z.substr(off, block_bits[j]));
        prod *= blocks[x][j]((Eigen::Index)idx);
        off += block_bits[j];
      }
      total += prod;
    }
    return total / norm;
  }

  Vec dense() const {
    Vec out = Vec::Zero(Eigen::Index(1) << M);
    for (std::size_t x = 0; x < coeff.size(); ++x) {
      Vec acc = Vec::Constant(1, coeff[x]);
      for (std::size_t j = 0; j < block_bits.size(); ++j) {
        const Vec& b = blocks[x][j];
        Vec next(acc.size() * b.size());
        for (Eigen::Index r = 0; r < acc.size(); ++r)
          next.segment(r * b.size(), b.size()) = acc(r) * b;
        acc = std::move(next);
      }
      out += acc;
    }
    return out / norm;
  }

  // Unnormalized probability that the first |y| qubits read y.
  double prefix_weight(const std::string& y) const {
    double total = 0.0;
    for (std::size_t x = 0; x < coeff.size(); ++x)
      for (std::size_t yy = 0; yy < coeff.size(); ++yy) {
        cd prod = std::conj(coeff[yy]) * coeff[x];
        int off = 0;
        for (std::size_t j = 0; j < block_bits.size() && std::abs(prod) > 0; ++j) {
          const int m = block_bits[j];
          const Vec& vx = blocks[x][j];
          const Vec& vy = blocks[yy][j];
          const int covered = std::clamp((int)y.size() - off, 0, m);
          cd inner = 0.0;
          if (covered == 0) {
            inner = vy.dot(vx);
          } else {
            const std::size_t w = string_to_index(y.substr(off, covered));
            const Eigen::Index rest = Eigen::Index(1) << (m - covered);
            const Eigen::Index basei = (Eigen::Index)w * rest;
            inner = vy.segment(basei, rest).dot(vx.segment(basei, rest));
          }
          prod *= inner;
          off += m;
        }
        total += prod.real();
      }
    return total;
  }
};

ProductForm product_form(const SubsetDescription& d) {
  ProductForm pf;
  pf.M = d.n;
  pf.block_bits.assign(d.n, 1);
  for (std::size_t i = 0; i < d.strings.size(); ++i) {
    pf.coeff.push_back(d.amplitude_of(i));
    std::vector<Vec> bl;
    for (char c : d.strings[i]) {
      Vec v = Vec::Zero(2);
      v(c - '0') = 1.0;
      bl.push_back(v);
    }
    pf.blocks.push_back(std::move(bl));
  }
  pf.compute_norm();
  return pf;
}

ProductForm product_form(const ScessDescription& d) {
  ProductForm pf;
  for (const Mat& v : d.enc.isometries) pf.block_bits.push_back(log2_exact(v.rows()));
  pf.M = std::accumulate(pf.block_bits.begin(), pf.block_bits.end(), 0);
  for (std::size_t i = 0; i < d.base.strings.size(); ++i) {
    pf.coeff.push_back(d.base.amplitude_of(i));
    std::vector<Vec> bl;
    for (int j = 0; j < d.base.n; ++j) bl.push_back(d.enc.isometries[j].col(d.base.strings[i][j] - '0'));
    pf.blocks.push_back(std::move(bl));
  }
  pf.compute_norm();
  return pf;
}

ProductForm product_form(const AdvancedScessDescription& d) {
  ProductForm pf;
  for (const Mat& v : d.enc.isometries[0]) pf.block_bits.push_back(log2_exact(v.rows()));
  pf.M = std::accumulate(pf.block_bits.begin(), pf.block_bits.end(), 0);
  for (std::size_t i = 0; i < d.base.strings.size(); ++i) {
    pf.coeff.push_back(d.base.amplitude_of(i));
    std::vector<Vec> bl;
    for (int j = 0; j < d.base.n; ++j)
      bl.push_back(d.enc.isometries[i][j].col(d.base.strings[i][j] - '0'));
    pf.blocks.push_back(std::move(bl));
  }
  pf.compute_norm();
  return pf;
}

ProductForm product_form(const FixedWeightDescription& d) {
  SubsetDescription s{d.n, d.strings, d.amplitudes};
  return product_form(s);
}

// --- MPS helpers --------------------------------------------------------------

Mat doubled(const Mat& a) {  // A (x) conj(A)
  Mat out(a.rows() * a.rows(), a.cols() * a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * a.rows(), c * a.cols(), a.rows(), a.cols()) = a(r, c) * a.conjugate();
  return out;
}

double mps_norm2(const MPSDescription& m) {
  const Eigen::Index d2 = (Eigen::Index)m.chi * m.chi;
  Mat acc = Mat::Identity(d2, d2);
  for (int j = 0; j < m.n; ++j) {
    Mat e = Mat::Zero(d2, d2);
    for (int s = 0; s < m.d; ++s) e += doubled(m.tensors[j][s]);
    acc = acc * e;
  }
  return acc.trace().real();
}

// --- Gaussian realization ------------------------------------------------------

Vec realize_gaussian(const GaussianDescription& g, int qubit_cap) {
  if (g.modes > qubit_cap) throw std::length_error("gaussian mode count exceeds cap");
  const int n = g.modes;
  std::vector<Mat> c;
  for (int j = 0; j < n; ++j) {
    std::string xs(n, 'I'), ys(n, 'I');
    for (int i = 0; i < j; ++i) xs[i] = ys[i] = 'Z';
    xs[j] = 'X';
    ys[j] = 'Y';
    c.push_back(PauliString{1.0, xs}.dense());
    c.push_back(PauliString{1.0, ys}.dense());
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat G = Mat::Zero(dim, dim);
  for (int j = 0; j < 2 * n; ++j)
    for (int k = 0; k < 2 * n; ++k)
      if (g.generator(j, k) != 0.0) G += 0.25 * g.generator(j, k) * c[j] * c[k];
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(kI * G));
  Vec phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i) phases(i) = std::exp(-kI * es.eigenvalues()(i));
  Vec base = Vec::Zero(dim);
  base((Eigen::Index)string_to_index(g.base)) = 1.0;
  return es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * base);
}

}  // namespace

// --- validation ----------------------------------------------------------------

void SubsetDescription::validate(int subset_cap) const {
  if (strings.empty()) throw std::invalid_argument("subset must be nonempty");
  if ((int)strings.size() > subset_cap) throw std::length_error("subset size exceeds cap");
  std::set<std::string> seen;
  for (const auto& s : strings) {
    if ((int)s.size() != n) throw std::invalid_argument("subset string length mismatch");
    string_to_index(s);  // charset check
    if (!seen.insert(s).second) throw std::invalid_argument("subset strings must be distinct");
  }
  if (!amplitudes.empty()) {
    if (amplitudes.size() != strings.size())
      throw std::invalid_argument("amplitude list misaligned");
    double s2 = 0.0;
    for (cd a : amplitudes) s2 += std::norm(a);
    if (std::abs(s2 - 1.0) > tol::state_norm)
      throw std::invalid_argument("subset amplitudes must be normalized");
  }
}

cd SubsetDescription::amplitude_of(std::size_t position) const {
  if (amplitudes.empty()) return cd(1.0 / std::sqrt((double)strings.size()), 0.0);
  return amplitudes[position];
}

void IsometrySet::validate() const {
  for (const Mat& v : isometries) {
    const int m = log2_exact(v.rows());
    if (v.cols() != 2 || m < 1 || m > caps::isometry_m_max)
      throw std::invalid_argument("isometry shape invalid");
    if ((v.adjoint() * v - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() > tol::isometry)
      throw std::invalid_argument("matrix is not an isometry");
  }
}

int IsometrySet::output_length() const {
  int m = 0;
  for (const Mat& v : isometries) m += log2_exact(v.rows());
  return m;
}

void AdvancedIsometrySet::validate(std::size_t element_count, int n) const {
  if (isometries.size() != element_count)
    throw std::invalid_argument("advanced isometry set misaligned with subset");
  for (const auto& row : isometries) {
    if ((int)row.size() != n) throw std::invalid_argument("per-element isometry count mismatch");
    IsometrySet tmp{row};
    tmp.validate();
  }
  for (std::size_t x = 1; x < isometries.size(); ++x)
    for (int j = 0; j < n; ++j)
      if (isometries[x][j].rows() != isometries[0][j].rows())
        throw std::invalid_argument("advanced isometry output lengths differ");
}

int AdvancedIsometrySet::output_length() const {
  int m = 0;
  for (const Mat& v : isometries.at(0)) m += log2_exact(v.rows());
  return m;
}

void ScessDescription::validate() const {
  base.validate();
  enc.validate();
  if ((int)enc.isometries.size() != base.n)
    throw std::invalid_argument("one isometry per position required");
}

void AdvancedScessDescription::validate() const {
  base.validate();
  enc.validate(base.strings.size(), base.n);
}

void FixedWeightDescription::validate() const {
  SubsetDescription s{n, strings, amplitudes};
  s.validate();
  for (const auto& str : strings)
    if (weight_of(str) != k) throw std::invalid_argument("string outside the weight-k sector");
}

void WindowedWeightDescription::validate() const {
  if (weights.empty()) throw std::invalid_argument("weight window must be nonempty");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0 || weights[i] > n) throw std::invalid_argument("weight out of range");
    if (i > 0 && weights[i] <= weights[i - 1])
      throw std::invalid_argument("weights must be strictly increasing");
  }
  if (support_size() > (double)caps::subset_size * 1024)
    throw std::length_error("windowed support exceeds bound");
}

double WindowedWeightDescription::support_size() const {
  double s = 0.0;
  for (int k : weights) s += binom(n, k);
  return s;
}

void MPSDescription::validate(int bond_cap) const {
  if (n < 1 || d < 1 || chi < 1) throw std::invalid_argument("MPS shape invalid");
  if (chi > bond_cap) throw std::length_error("bond dimension exceeds cap");
  if ((int)tensors.size() != n) throw std::invalid_argument("one tensor set per site required");
  for (const auto& site : tensors) {
    if ((int)site.size() != d) throw std::invalid_argument("one matrix per symbol required");
    for (const Mat& a : site) {
      if (a.rows() != chi || a.cols() != chi) throw std::invalid_argument("tensor shape invalid");
      if (!a.allFinite()) throw std::invalid_argument("tensor entries must be finite");
    }
  }
}

void DenseDescription::validate() const {
  log2_exact(amplitudes.size());
  if (std::abs(amplitudes.norm() - 1.0) > tol::state_norm)
    throw std::invalid_argument("dense description must be normalized");
}

void GaussianDescription::validate() const {
  if (modes < 1) throw std::invalid_argument("mode count must be positive");
  if (generator.rows() != 2 * modes || generator.cols() != 2 * modes)
    throw std::invalid_argument("generator must be 2n x 2n");
  if ((generator + generator.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("generator must be antisymmetric");
  if ((int)base.size() != modes) throw std::invalid_argument("base occupation length mismatch");
  string_to_index(base);
}

void GuidingState::validate() const {
  std::visit([](const auto& d) { d.validate(); }, desc);
}

int GuidingState::output_length() const {
  struct V {
    int operator()(const SubsetDescription& d) const { return d.n; }
    int operator()(const ScessDescription& d) const { return d.enc.output_length(); }
    int operator()(const AdvancedScessDescription& d) const { return d.enc.output_length(); }
    int operator()(const FixedWeightDescription& d) const { return d.n; }
    int operator()(const WindowedWeightDescription& d) const { return d.n; }
    int operator()(const MPSDescription& d) const { return d.n; }
    int operator()(const GaussianDescription& d) const { return d.modes; }
    int operator()(const DenseDescription& d) const { return log2_exact(d.amplitudes.size()); }
  };
  return std::visit(V{}, desc);
}

const char* GuidingState::family() const {
  struct V {
    const char* operator()(const SubsetDescription&) const { return "scss"; }
    const char* operator()(const ScessDescription&) const { return "scess"; }
    const char* operator()(const AdvancedScessDescription&) const { return "advanced"; }
    const char* operator()(const FixedWeightDescription&) const { return "fixed_weight"; }
    const char* operator()(const WindowedWeightDescription&) const { return "windowed"; }
    const char* operator()(const MPSDescription&) const { return "mps"; }
    const char* operator()(const GaussianDescription&) const { return "gaussian"; }
    const char* operator()(const DenseDescription&) const { return "dense"; }
  };
  return std::visit(V{}, desc);
}

// --- realize / query -------------------------------------------------------------

Vec realize_dense(const GuidingState& g, int qubit_cap) {
  g.validate();
  if (g.output_length() > qubit_cap &&
      !std::holds_alternative<MPSDescription>(g.desc))
    throw std::length_error("output length exceeds cap");
  struct V {
    int cap;
    Vec operator()(const SubsetDescription& d) const { return product_form(d).dense(); }
    Vec operator()(const ScessDescription& d) const { return product_form(d).dense(); }
    Vec operator()(const AdvancedScessDescription& d) const { return product_form(d).dense(); }
    Vec operator()(const FixedWeightDescription& d) const { return product_form(d).dense(); }
    Vec operator()(const WindowedWeightDescription& d) const {
      const std::size_t dim = std::size_t{1} << d.n;
      const double amp = 1.0 / std::sqrt(d.support_size());
      Vec out = Vec::Zero((Eigen::Index)dim);
      for (std::size_t i = 0; i < dim; ++i) {
        const int w = __builtin_popcountll(i);
        if (std::find(d.weights.begin(), d.weights.end(), w) != d.weights.end())
          out((Eigen::Index)i) = amp;
      }
      return out;
    }
    Vec operator()(const MPSDescription& d) const {
      double total = std::log((double)d.d) * d.n;
      if (total > std::log(2.0) * cap) throw std::length_error("MPS dimension exceeds cap");
      Eigen::Index dim = 1;
      for (int j = 0; j < d.n; ++j) dim *= d.d;
      Vec out(dim);
      std::vector<int> sym(d.n);
      for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::Index rest = i;
        for (int j = d.n - 1; j >= 0; --j) {
          sym[j] = (int)(rest % d.d);
          rest /= d.d;
        }
        out(i) = mps_amplitude(d, sym);
      }
      const double nrm = out.norm();
      if (nrm <= 1e-14) throw std::invalid_argument("MPS realizes the zero vector");
      return out / nrm;
    }
    Vec operator()(const GaussianDescription& d) const { return realize_gaussian(d, cap); }
    Vec operator()(const DenseDescription& d) const { return d.amplitudes / d.amplitudes.norm(); }
  };
  return std::visit(V{qubit_cap}, g.desc);
}

cd amplitude_query(const GuidingState& g, const std::string& z) {
  g.validate();
  if ((int)z.size() != g.output_length())
    throw std::invalid_argument("query string has wrong length");
  struct V {
    const std::string& z;
    cd operator()(const SubsetDescription& d) const {
      for (std::size_t i = 0; i < d.strings.size(); ++i)
        if (d.strings[i] == z) return d.amplitude_of(i);
      return 0.0;
    }
    cd operator()(const ScessDescription& d) const { return product_form(d).amplitude(z); }
    cd operator()(const AdvancedScessDescription& d) const {
      return product_form(d).amplitude(z);
    }
    cd operator()(const FixedWeightDescription& d) const {
      return V{z}(SubsetDescription{d.n, d.strings, d.amplitudes});
    }
    cd operator()(const WindowedWeightDescription& d) const {
      const int w = weight_of(z);
      if (std::find(d.weights.begin(), d.weights.end(), w) == d.weights.end()) return 0.0;
      return cd(1.0 / std::sqrt(d.support_size()), 0.0);
    }
    cd operator()(const MPSDescription& d) const {
      if (d.d != 2) throw std::invalid_argument("bit-string query requires d=2");
      std::vector<int> sym;
      for (char c : z) sym.push_back(c - '0');
      return mps_amplitude(d, sym) / std::sqrt(mps_norm2(d));
    }
    cd operator()(const GaussianDescription& d) const {
      Vec v = realize_gaussian(d, caps::assemble_qubits);
      return v((Eigen::Index)string_to_index(z));
    }
    cd operator()(const DenseDescription& d) const {
      return d.amplitudes((Eigen::Index)string_to_index(z)) / d.amplitudes.norm();
    }
  };
  return std::visit(V{z}, g.desc);
}

// --- sampling ---------------------------------------------------------------------

GuidingSampler::GuidingSampler(GuidingState g) : state_(std::move(g)) {
  state_.validate();
}

double GuidingSampler::raw_prefix(const std::string& prefix) const {
  const int M = state_.output_length();
  struct V {
    const std::string& y;
    int M;
    double operator()(const SubsetDescription& d) const {
      double p = 0.0;
      for (std::size_t i = 0; i < d.strings.size(); ++i)
        if (d.strings[i].compare(0, y.size(), y) == 0) p += std::norm(d.amplitude_of(i));
      return p;
    }
    double operator()(const ScessDescription& d) const {
      ProductForm pf = product_form(d);
      return pf.prefix_weight(y) / (pf.norm * pf.norm);
    }
    double operator()(const AdvancedScessDescription& d) const {
      ProductForm pf = product_form(d);
      return pf.prefix_weight(y) / (pf.norm * pf.norm);
    }
    double operator()(const FixedWeightDescription& d) const {
      return V{y, M}(SubsetDescription{d.n, d.strings, d.amplitudes});
    }
    double operator()(const WindowedWeightDescription& d) const {
      const int r = (int)y.size();
      int w = 0;
      for (char c : y) w += (c == '1');
      double mass = 0.0;
      for (int k : d.weights) mass += binom(d.n - r, k - w);
      return mass / d.support_size();
    }
    double operator()(const MPSDescription& d) const {
      if (d.d != 2) throw std::invalid_argument("bit sampling requires d=2");
      const Eigen::Index d2 = (Eigen::Index)d.chi * d.chi;
      Mat acc = Mat::Identity(d2, d2);
      for (std::size_t j = 0; j < y.size(); ++j) acc = acc * doubled(d.tensors[j][y[j] - '0']);
      for (int j = (int)y.size(); j < d.n; ++j) {
        Mat e = Mat::Zero(d2, d2);
        for (int s = 0; s < d.d; ++s) e += doubled(d.tensors[j][s]);
        acc = acc * e;
      }
      return acc.trace().real() / mps_norm2(d);
    }
    double operator()(const GaussianDescription& d) const {
      Vec v = realize_gaussian(d, caps::assemble_qubits);
      return V{y, M}(DenseDescription{v});
    }
    double operator()(const DenseDescription& d) const {
      const Vec v = d.amplitudes / d.amplitudes.norm();
      const int rest = M - (int)y.size();
      const std::size_t base = string_to_index(y) << rest;
      double p = 0.0;
      for (std::size_t i = 0; i < (std::size_t{1} << rest); ++i)
        p += std::norm(v((Eigen::Index)(base + i)));
      return p;
    }
  };
  return std::visit(V{prefix, M}, state_.desc);
}

double GuidingSampler::prefix_probability(const std::string& prefix) {
  auto it = memo_.find(prefix);
  if (it != memo_.end()) return it->second;
  const double p = raw_prefix(prefix);
  memo_.emplace(prefix, p);
  return p;
}

std::string GuidingSampler::sample(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::string y;
  const int M = state_.output_length();
  double py = prefix_probability(y);
  for (int j = 0; j < M; ++j) {
    if (py <= 0.0) throw std::logic_error("zero-probability prefix reached");
    const double p1 = prefix_probability(y + '1');
    const double bias = std::clamp(p1 / py, 0.0, 1.0);
    const char bit = unit(rng) < bias ? '1' : '0';
    y.push_back(bit);
    py = prefix_probability(y);
  }
  return y;
}

std::string sample(const GuidingState& g, std::mt19937_64& rng) {
  GuidingSampler s(g);
  return s.sample(rng);
}

// --- fidelity and geometric lemma ----------------------------------------------------

double fidelity(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  return std::norm(a.dot(b));
}

Interval geometric_bounds(double X, double Y) {
  if (X < 0.0) throw std::invalid_argument("X must be nonnegative");
  if (Y < 0.0 || Y > 1.0) throw std::invalid_argument("Y must lie in [0,1]");
  const double sq = std::sqrt(Y);
  Interval out;
  out.hi = std::min(1.0, (sq + X) * (sq + X));
  out.lo = X <= sq ? std::min(1.0, (sq - X) * (sq - X)) : 0.0;
  return out;
}

// --- MPS -------------------------------------------------------------------------------

MPSDescription subset_to_mps(const SubsetDescription& d, int bond_cap) {
  d.validate();
  const int r = (int)d.strings.size();
  if (r > bond_cap) throw std::length_error("subset size exceeds bond cap");
  MPSDescription m;
  m.n = d.n;
  m.d = 2;
  m.chi = r;
  for (int j = 0; j < d.n; ++j) {
    std::vector<Mat> site(2, Mat::Zero(r, r));
    for (int p = 0; p < r; ++p) {
      const int symbol = d.strings[p][j] - '0';
      site[symbol](p, p) = (j == 0) ? d.amplitude_of(p) : cd(1.0);
    }
    m.tensors.push_back(std::move(site));
  }
  return m;
}

cd mps_amplitude(const MPSDescription& m, const std::vector<int>& symbols) {
  if ((int)symbols.size() != m.n) throw std::invalid_argument("symbol string length mismatch");
  Mat acc = Mat::Identity(m.chi, m.chi);
  for (int j = 0; j < m.n; ++j) {
    const int s = symbols[j];
    if (s < 0 || s >= m.d) throw std::invalid_argument("symbol outside physical alphabet");
    acc = acc * m.tensors[j][s];
  }
  return acc.trace();
}

// --- Appendix D optimizer ----------------------------------------------------------------

AmplitudeProfileReport optimal_amplitude_profile(const std::vector<std::string>& S,
                                                 const std::vector<std::string>& E,
                                                 int trials, std::mt19937_64& rng) {
  if (S.empty()) throw std::invalid_argument("S must be nonempty");
  std::set<std::string> eset(E.begin(), E.end());
  for (const auto& s : S)
    if (!eset.count(s)) throw std::invalid_argument("S must be contained in E");

  const int ne = (int)E.size();
  std::vector<char> in_s(ne, 0);
  for (int i = 0; i < ne; ++i) in_s[i] = std::count(S.begin(), S.end(), E[i]) > 0;

  auto objective = [&](const Vec& alpha) {
    cd s = 0.0;
    for (int i = 0; i < ne; ++i)
      if (in_s[i]) s += alpha(i);
    return std::norm(s);
  };

  std::normal_distribution<double> gauss;
  const double step = 0.1;
  const int iter_cap = 10000;
  AmplitudeProfileReport rep;
  rep.trials = trials;
  rep.uniform_objective = (double)S.size();
  Vec best;
  for (int t = 0; t < trials; ++t) {
    Vec alpha(ne);
    for (int i = 0; i < ne; ++i) alpha(i) = cd(gauss(rng), gauss(rng));
    alpha.normalize();
    double prev = objective(alpha);
    for (int it = 0; it < iter_cap; ++it) {
      cd s = 0.0;
      for (int i = 0; i < ne; ++i)
        if (in_s[i]) s += alpha(i);
      for (int i = 0; i < ne; ++i)
        if (in_s[i]) alpha(i) += step * s;
      alpha.normalize();
      const double cur = objective(alpha);
      if (std::abs(cur - prev) < 1e-14) break;
      prev = cur;
    }
    if (prev > rep.best_objective) {
      rep.best_objective = prev;
      best = alpha;
    }
  }
  // Phase-aligned distance to the uniform profile supported on S.
  Vec uniform = Vec::Zero(ne);
  for (int i = 0; i < ne; ++i)
    if (in_s[i]) uniform(i) = cd(1.0 / std::sqrt((double)S.size()), 0.0);
  const cd ov = uniform.dot(best);
  const cd phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cd(1.0);
  rep.distance_to_uniform = (best * std::conj(phase) - uniform).norm();
  return rep;
}

// --- description size ---------------------------------------------------------------------

namespace {
constexpr std::size_t kHeaderBits = 64;
constexpr std::size_t kComplexBits = 128;

std::size_t subset_bits(const SubsetDescription& d) {
  std::size_t bits = (std::size_t)d.strings.size() * d.n;
  if (!d.amplitudes.empty()) bits += d.amplitudes.size() * kComplexBits;
  return bits;
}
}  // namespace

std::size_t description_size(const GuidingState& g) {
  struct V {
    std::size_t operator()(const SubsetDescription& d) const { return subset_bits(d); }
    std::size_t operator()(const ScessDescription& d) const {
      std::size_t bits = subset_bits(d.base);
      for (const Mat& v : d.enc.isometries) bits += (std::size_t)v.size() * kComplexBits;
      return bits;
    }
    std::size_t operator()(const AdvancedScessDescription& d) const {
      std::size_t bits = subset_bits(d.base);
      for (const auto& row : d.enc.isometries)
        for (const Mat& v : row) bits += (std::size_t)v.size() * kComplexBits;
      return bits;
    }
    std::size_t operator()(const FixedWeightDescription& d) const {
      return subset_bits(SubsetDescription{d.n, d.strings, d.amplitudes}) + 32;
    }
    std::size_t operator()(const WindowedWeightDescription& d) const {
      return 32 * (1 + d.weights.size());
    }
    std::size_t operator()(const MPSDescription& d) const {
      return (std::size_t)d.n * d.d * d.chi * d.chi * kComplexBits;
    }
    std::size_t operator()(const GaussianDescription& d) const {
      return (std::size_t)d.generator.size() * 64 + d.modes;
    }
    std::size_t operator()(const DenseDescription& d) const {
      return (std::size_t)d.amplitudes.size() * kComplexBits;
    }
  };
  return kHeaderBits + std::visit(V{}, g.desc);
}

}  // namespace glh

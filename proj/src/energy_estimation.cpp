#include "glh/energy_estimation.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

namespace glh {

namespace {

double grid_round_down(double x, double eps) { return std::floor(x / eps) * eps; }

}  // namespace

void QPEConfig::validate() const {
  if (eps <= 0.0 || eps >= 1.0 || eta <= 0.0 || eta >= 1.0)
    throw std::invalid_argument("eps and eta must lie in (0,1)");
  if (delta <= 0.0 || delta > 1.0) throw std::invalid_argument("delta must lie in (0,1]");
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::yes: return "Yes";
    case Decision::no: return "No";
    case Decision::invalid: return "Invalid";
  }
  return "Invalid";
}

double qpe_sample(const Spectrum& spec, const Vec& xi, double eps, std::mt19937_64& rng) {
  if (std::abs(xi.norm() - 1.0) > tol::state_norm)
    throw std::invalid_argument("state must be normalized");
  if (xi.size() != spec.eigenvectors.rows())
    throw std::invalid_argument("dimension mismatch");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  Eigen::Index j = spec.eigenvalues.size() - 1;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    u -= std::norm(spec.eigenvectors.col(i).dot(xi));
    if (u <= 0.0) {
      j = i;
      break;
    }
  }
  return grid_round_down(spec.eigenvalues(j), eps);
}

double qpe_sample(const LocalHamiltonian& h, const Vec& xi, double eps, std::mt19937_64& rng) {
  return qpe_sample(diagonalize(h), xi, eps, rng);
}

int qpe_repetitions(const QPEConfig& cfg) {
  cfg.validate();
  return (int)std::ceil((consts::c_qpe / cfg.delta) * std::log(1.0 / cfg.eta));
}

double qpe_cost(const QPEConfig& cfg) {
  cfg.validate();
  const double l = std::log(1.0 / cfg.eta);
  return l * l / (cfg.eps * cfg.eta * cfg.delta * cfg.delta);
}

std::pair<double, DecisionReport> estimate_ground(const Spectrum& spec, const Vec& xi,
                                                  const QPEConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  const int reps = qpe_repetitions(cfg);
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < reps; ++r)
    best = std::min(best, qpe_sample(spec, xi, cfg.eps, rng));
  DecisionReport rep;
  rep.estimate = best;
  rep.repetitions = reps;
  rep.cost = qpe_cost(cfg);
  rep.seed = cfg.seed;
  return {best, rep};
}

std::pair<double, DecisionReport> estimate_ground(const LocalHamiltonian& h, const Vec& xi,
                                                  const QPEConfig& cfg) {
  return estimate_ground(diagonalize(h), xi, cfg);
}

DecisionReport decide_glh(const LocalHamiltonian& h, const GuidingState& g, double a,
                          double b, const QPEConfig& cfg) {
  cfg.validate();
  if (a > b) throw std::invalid_argument("thresholds inverted");
  DecisionReport rep;
  rep.seed = cfg.seed;
  if (a == b) return rep;  // degenerate promise

  const auto [hn, scale] = rescale_unit(h);
  // shift into [0,1]: x -> (x/scale + 1) / 2
  auto shift = [&](double x) { return 0.5 * (x / scale + 1.0); };
  LocalHamiltonian shifted = hn;
  for (auto& t : shifted.terms) t.block *= cd(0.5);
  shifted.terms.push_back(
      HermitianTerm{{0}, Mat(0.5 * Mat::Identity(2, 2))});
  shifted.k = std::max(shifted.k, 1);

  Vec xi = realize_dense(g, shifted.n);
  if ((int)std::lround(std::log2((double)xi.size())) != shifted.n)
    throw std::invalid_argument("guiding state register mismatch");
  xi.normalize();

  const double as = shift(a), bs = shift(b);
  QPEConfig run = cfg;
  run.eps = (bs - as) / 4.0;
  const Spectrum spec = diagonalize(shifted);
  const auto [lam, inner] = estimate_ground(spec, xi, run);
  rep = inner;
  rep.seed = cfg.seed;
  rep.decision = lam <= 0.5 * (as + bs) ? Decision::yes : Decision::no;
  rep.estimate = (2.0 * lam - 1.0) * scale;  // back to input units
  const double ground_overlap = std::norm(spec.eigenvectors.col(0).dot(xi));
  rep.promise_flag = ground_overlap + 1e-12 < cfg.delta;
  return rep;
}

std::vector<std::string> weight_k_basis(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("weight out of range");
  std::vector<std::string> basis;
  for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
    const std::string s = index_to_string(idx, n);
    if (std::count(s.begin(), s.end(), '1') == k) basis.push_back(s);
  }
  return basis;  // index order == lexicographic string order
}

Mat weight_k_project(const LocalHamiltonian& h, int k) {
  h.validate();
  const auto basis = weight_k_basis(h.n, k);
  const Eigen::Index d = (Eigen::Index)basis.size();
  if (d > caps::dense_eig_dim) throw std::length_error("sector dimension exceeds cap");
  Mat out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vec e = Vec::Zero(Eigen::Index(1) << h.n);
    e((Eigen::Index)string_to_index(basis[j])) = 1.0;
    const Vec he = apply_op(h, e);
    for (Eigen::Index i = 0; i < d; ++i)
      out(i, j) = he((Eigen::Index)string_to_index(basis[i]));
  }
  return 0.5 * (out + out.adjoint().eval());
}

WeightKReport weight_k_bounds_check(const LocalHamiltonian& h, int k, const Vec& psi_k) {
  h.validate();
  if (std::abs(psi_k.norm() - 1.0) > tol::state_norm)
    throw std::invalid_argument("state must be normalized");
  double sector_mass = 0.0;
  for (Eigen::Index i = 0; i < psi_k.size(); ++i) {
    const std::string s = index_to_string((std::size_t)i, h.n);
    if (std::count(s.begin(), s.end(), '1') == k) sector_mass += std::norm(psi_k(i));
  }
  if (sector_mass < 1.0 - 1e-10)
    throw std::invalid_argument("state leaves the weight-k sector");

  const Spectrum spec = diagonalize(h);
  WeightKReport rep;
  rep.lambda0 = spec.lambda0();
  rep.gap = spec.gap();
  rep.overlap = std::norm(spec.eigenvectors.col(0).dot(psi_k));
  rep.energy = psi_k.dot(apply_op(h, psi_k)).real();
  rep.norm = operator_norm(h).exact;
  Eigen::SelfAdjointEigenSolver<Mat> sector(weight_k_project(h, k));
  rep.mu0 = sector.eigenvalues()(0);
  rep.lower_ok = (1.0 - rep.overlap) * rep.gap + rep.lambda0 <= rep.energy + 1e-10;
  rep.upper_ok = rep.mu0 <= rep.lambda0 + (1.0 - rep.overlap) * rep.norm + 1e-10;
  return rep;
}

}  // namespace glh

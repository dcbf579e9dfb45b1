#include "glh/dequantizer.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace glh {

namespace {

// Smoothed step: ~1 on [0,a], ~0 on [b,1], analytic everywhere.
struct SmoothStep {
  double m, k;
  double operator()(double x) const { return 0.5 * std::erfc(k * (x - m)); }
};

std::vector<double> chebyshev_coefficients(const SmoothStep& g, int degree) {
  const int nodes = degree + 1;
  std::vector<double> vals(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double y = std::cos(M_PI * (j + 0.5) / nodes);
    vals[j] = g(0.5 * (y + 1.0));
  }
  std::vector<double> c(nodes, 0.0);
  for (int i = 0; i < nodes; ++i) {
    double s = 0.0;
    for (int j = 0; j < nodes; ++j) s += vals[j] * std::cos(M_PI * i * (j + 0.5) / nodes);
    c[i] = 2.0 * s / nodes;
  }
  c[0] *= 0.5;
  return c;
}

// Uniform error against the hard step on [0,a] u [b,1], 5000 points per band.
bool grid_valid(const ChebyshevFilter& p) {
  const int pts = 5000;
  const double a = p.spec.a, b = p.spec.b;
  for (int i = 0; i < pts; ++i) {
    const double x = a * i / (pts - 1.0);
    if (std::abs(p.evaluate(x) - 1.0) > p.spec.sup_error) return false;
  }
  for (int i = 0; i < pts; ++i) {
    const double x = b + (1.0 - b) * i / (pts - 1.0);
    if (std::abs(p.evaluate(x)) > p.spec.sup_error) return false;
  }
  return true;
}

ChebyshevFilter at_degree(double a, double b, double sup_error, const SmoothStep& g, int d) {
  ChebyshevFilter p;
  p.spec = FilterSpec{a, b, sup_error, d};
  p.coefficients = chebyshev_coefficients(g, d);
  return p;
}

}  // namespace

void FilterSpec::validate() const {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw std::invalid_argument("filter thresholds must satisfy 0 <= a < b <= 1");
  if (!(sup_error > 0.0 && sup_error < 0.5))
    throw std::invalid_argument("sup_error must lie in (0, 1/2)");
}

double ChebyshevFilter::evaluate(double x) const {
  const double y = 2.0 * x - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int j = degree(); j >= 1; --j) {
    const double t = 2.0 * y * b1 - b2 + coefficients[(std::size_t)j];
    b2 = b1;
    b1 = t;
  }
  return y * b1 - b2 + coefficients[0];
}

std::pair<LocalHamiltonian, AffineRecord> shift_spectrum(const LocalHamiltonian& h) {
  h.validate();
  if (operator_norm(h).exact > 1.0 + 1e-12)
    throw std::invalid_argument("operator norm exceeds 1; rescale first");
  LocalHamiltonian shifted = h;
  for (auto& t : shifted.terms) t.block = SpMat(t.block * cd(0.5));
  SpMat half(2, 2);
  half.insert(0, 0) = 0.5;
  half.insert(1, 1) = 0.5;
  shifted.terms.push_back(HermitianTerm{{0}, half});
  shifted.k = std::max(shifted.k, 1);
  return {shifted, AffineRecord{1.0}};
}

ChebyshevFilter build_filter(double a, double b, double sup_error) {
  FilterSpec probe{a, b, sup_error, 0};
  probe.validate();
  const SmoothStep g{0.5 * (a + b),
                     2.0 * std::sqrt(std::log(2.0 / sup_error)) / (b - a)};
  const int budget = std::min<int>(
      caps::filter_degree,
      (int)std::ceil(consts::c_filter * std::log(1.0 / sup_error) / (b - a)));
  int hi = 1;
  while (hi <= budget && !grid_valid(at_degree(a, b, sup_error, g, hi))) hi *= 2;
  if (hi > budget) {
    if (!grid_valid(at_degree(a, b, sup_error, g, budget)))
      throw std::length_error("filter spec infeasible within degree budget");
    hi = budget;
  }
  int lo = hi / 2;  // lo failed (or is 0), hi passed
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (grid_valid(at_degree(a, b, sup_error, g, mid)) ? hi : lo) = mid;
  }
  return at_degree(a, b, sup_error, g, hi);
}

Vec apply_filter(const LocalHamiltonian& h_shifted, const ChebyshevFilter& p, const Vec& xi) {
  h_shifted.validate();
  if (xi.size() != Eigen::Index(1) << h_shifted.n)
    throw std::invalid_argument("state dimension mismatch");
  const auto y = [&](const Vec& v) { return Vec(2.0 * apply_op(h_shifted, v) - v); };
  Vec b1 = Vec::Zero(xi.size()), b2 = Vec::Zero(xi.size());
  for (int j = p.degree(); j >= 1; --j) {
    Vec t = p.coefficients[(std::size_t)j] * xi - b2;
    if (j < p.degree()) t += 2.0 * y(b1);
    b2 = b1;
    b1 = t;
  }
  if (p.degree() == 0) return p.coefficients[0] * xi;
  return y(b1) - b2 + p.coefficients[0] * xi;
}

FilterDecisionReport decide_classical(const LocalHamiltonian& h, const GuidingState& g,
                                      double a, double b, double delta) {
  if (a >= b) throw std::invalid_argument("thresholds inverted");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0,1]");
  const auto [hn, scale] = rescale_unit(h);
  auto [shifted, record] = shift_spectrum(hn);
  record.scale = scale;

  const ChebyshevFilter p =
      build_filter(record.forward(a), record.forward(b), delta / 4.0);
  Vec xi = realize_dense(g, shifted.n);
  if (xi.size() != Eigen::Index(1) << shifted.n)
    throw std::invalid_argument("guiding state register mismatch");
  xi.normalize();

  FilterDecisionReport rep;
  rep.nu = apply_filter(shifted, p, xi).norm();
  rep.degree = p.degree();
  rep.products = p.degree();
  rep.decision = rep.nu >= delta / 2.0 ? Decision::yes : Decision::no;
  const Spectrum spec = diagonalize(h);
  rep.promise_flag = std::norm(spec.eigenvectors.col(0).dot(xi)) + 1e-12 < delta;
  return rep;
}

NormEstimate sampled_norm_estimate(const LocalHamiltonian& h_shifted, const GuidingState& g,
                                   const ChebyshevFilter& p, std::size_t samples,
                                   std::mt19937_64& rng) {
  h_shifted.validate();
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  if (g.output_length() != h_shifted.n)
    throw std::invalid_argument("guiding state register mismatch");
  const Eigen::Index dim = Eigen::Index(1) << h_shifted.n;

  GuidingSampler sampler(g);
  // ||p xi||^2 = <xi|p^2|xi> = E_{z ~ |xi_z|^2} Re[(p^2 e_z)^dag xi / xi_z].
  std::map<std::string, double> weight;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::string z = sampler.sample(rng);
    auto it = weight.find(z);
    if (it == weight.end()) {
      Vec ez = Vec::Zero(dim);
      ez((Eigen::Index)string_to_index(z)) = 1.0;
      const Vec row = apply_filter(h_shifted, p, apply_filter(h_shifted, p, ez));
      cd v = 0.0;
      for (Eigen::Index y = 0; y < dim; ++y)
        if (std::abs(row(y)) > 0.0)
          v += std::conj(row(y)) * amplitude_query(g, index_to_string((std::size_t)y, h_shifted.n));
      const cd xi_z = amplitude_query(g, z);
      it = weight.emplace(z, (v / xi_z).real()).first;
    }
    sum += it->second;
    sumsq += it->second * it->second;
  }
  NormEstimate out;
  out.samples = samples;
  out.distinct = weight.size();
  out.estimate = sum / (double)samples;
  if (samples > 1) {
    const double var =
        std::max(0.0, (sumsq - sum * sum / (double)samples) / (double)(samples - 1));
    out.stderr_ = std::sqrt(var / (double)samples);
  }
  return out;
}

}  // namespace glh

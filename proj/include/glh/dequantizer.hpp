#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "glh/energy_estimation.hpp"
#include "glh/guiding_states.hpp"
#include "glh/operator_core.hpp"

namespace glh {

struct FilterSpec {
  double a = 0.0, b = 1.0;  // pass band [0,a], stop band [b,1]
  double sup_error = 0.1;   // uniform error target on [0,a] u [b,1]
  int degree = 0;           // resolved polynomial degree
  void validate() const;
};

// Chebyshev expansion p(x) = sum_j c_j T_j(2x - 1) on [0,1].
struct ChebyshevFilter {
  FilterSpec spec;
  std::vector<double> coefficients;  // size degree + 1
  int degree() const { return (int)coefficients.size() - 1; }
  double evaluate(double x) const;  // scalar Clenshaw
};

struct AffineRecord {
  double scale = 1.0;  // rescale_unit divisor
  double forward(double lambda) const { return 0.5 * (lambda / scale + 1.0); }
  double backward(double mu) const { return (2.0 * mu - 1.0) * scale; }
};

// H'' = (H/scale + I)/2, spectrum in [0,1].
std::pair<LocalHamiltonian, AffineRecord> shift_spectrum(const LocalHamiltonian& h);

// Smoothed-step interpolant with grid-validated error; degree resolved
// adaptively up to ceil(c_filter ln(1/err)/(b-a)), else throws.
ChebyshevFilter build_filter(double a, double b, double sup_error);

// Clenshaw on 2H'' - I using degree operator-vector products.
Vec apply_filter(const LocalHamiltonian& h_shifted, const ChebyshevFilter& p, const Vec& xi);

struct FilterDecisionReport {
  Decision decision = Decision::invalid;
  double nu = 0.0;  // ||p(H'') xi||
  int degree = 0;
  int products = 0;  // operator-vector products spent
  bool promise_flag = false;
};

// Thresholds a < b in input (pre-shift) units, matching decide_glh.
FilterDecisionReport decide_classical(const LocalHamiltonian& h, const GuidingState& g,
                                      double a, double b, double delta);

struct NormEstimate {
  double estimate = 0.0;  // of ||p(H) xi||^2
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::size_t distinct = 0;  // memoized basis strings
};

// Importance-sampled ||p(H) xi||^2 from sample/query access to g.
NormEstimate sampled_norm_estimate(const LocalHamiltonian& h_shifted, const GuidingState& g,
                                   const ChebyshevFilter& p, std::size_t samples,
                                   std::mt19937_64& rng);

}  // namespace glh

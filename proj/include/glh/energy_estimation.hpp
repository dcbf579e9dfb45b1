#pragma once

#include <cstdint>
#include <random>

#include "glh/guiding_states.hpp"
#include "glh/operator_core.hpp"

namespace glh {

struct QPEConfig {
  double eps = 0.1;    // additive precision
  double eta = 0.1;    // failure probability
  double delta = 1.0;  // promised squared ground overlap
  std::uint64_t seed = 0;
  void validate() const;
};

enum class Decision { yes, no, invalid };
const char* decision_name(Decision d);

struct DecisionReport {
  Decision decision = Decision::invalid;
  double estimate = 0.0;
  int repetitions = 0;
  double cost = 0.0;
  std::uint64_t seed = 0;
  bool promise_flag = false;  // set when promise metadata looked violated
};

// Ideal-QPE measurement model: draw an eigenvalue with Born weights, round
// down to the eps-grid anchored at zero. The spectrum overload lets batch
// sweeps reuse one diagonalization.
double qpe_sample(const Spectrum& spec, const Vec& xi, double eps, std::mt19937_64& rng);
double qpe_sample(const LocalHamiltonian& h, const Vec& xi, double eps, std::mt19937_64& rng);

int qpe_repetitions(const QPEConfig& cfg);
double qpe_cost(const QPEConfig& cfg);  // (eps * eta * delta^2)^-1 * ln(1/eta)^2

std::pair<double, DecisionReport> estimate_ground(const Spectrum& spec, const Vec& xi,
                                                  const QPEConfig& cfg);
std::pair<double, DecisionReport> estimate_ground(const LocalHamiltonian& h, const Vec& xi,
                                                  const QPEConfig& cfg);

DecisionReport decide_glh(const LocalHamiltonian& h, const GuidingState& g, double a,
                          double b, const QPEConfig& cfg);

// H restricted to the Hamming-weight-k sector, lexicographic basis order.
Mat weight_k_project(const LocalHamiltonian& h, int k);
std::vector<std::string> weight_k_basis(int n, int k);

struct WeightKReport {
  double overlap = 0.0;  // F(psi_k, ground)
  double lambda0 = 0.0, gap = 0.0, mu0 = 0.0;
  double energy = 0.0;  // <psi_k|H|psi_k>
  double norm = 0.0;
  bool lower_ok = false;  // (1-F) gap + lambda0 <= energy
  bool upper_ok = false;  // mu0 <= lambda0 + (1-F) ||H||
};
WeightKReport weight_k_bounds_check(const LocalHamiltonian& h, int k, const Vec& psi_k);

}  // namespace glh

#pragma once

#include <map>
#include <optional>
#include <random>
#include <variant>

#include "glh/operator_core.hpp"

namespace glh {

// --- descriptions -----------------------------------------------------------

struct SubsetDescription {
  int n = 0;
  std::vector<std::string> strings;  // distinct n-bit strings (the set C)
  std::vector<cd> amplitudes;        // empty => uniform

  void validate(int subset_cap = caps::subset_size) const;
  cd amplitude_of(std::size_t position) const;  // uniform default applied
};

// Per-position isometries V_j : C^2 -> C^{2^{m_j}}.
struct IsometrySet {
  std::vector<Mat> isometries;
  void validate() const;
  int output_length() const;  // sum of m_j
};

// Per-(element, position) isometries; output length identical across elements.
struct AdvancedIsometrySet {
  std::vector<std::vector<Mat>> isometries;  // [element][position]
  void validate(std::size_t element_count, int n) const;
  int output_length() const;
};

struct ScessDescription {
  SubsetDescription base;
  IsometrySet enc;
  void validate() const;
};

struct AdvancedScessDescription {
  SubsetDescription base;
  AdvancedIsometrySet enc;
  void validate() const;
};

struct FixedWeightDescription {
  int n = 0, k = 0;
  std::vector<std::string> strings;
  std::vector<cd> amplitudes;  // empty => uniform
  void validate() const;
};

// Uniform superposition over the union of the listed full weight sectors.
struct WindowedWeightDescription {
  int n = 0;
  std::vector<int> weights;  // strictly increasing
  void validate() const;
  double support_size() const;
};

struct MPSDescription {
  int n = 0;       // sites
  int d = 2;       // physical dimension
  int chi = 1;     // bond dimension
  std::vector<std::vector<Mat>> tensors;  // [site][symbol], chi x chi, trace-closed
  void validate(int bond_cap = caps::bond_dimension) const;
};

struct DenseDescription {
  Vec amplitudes;
  void validate() const;
};

// Gaussian state exp(G)|base>, G = (1/4) sum A_{jk} c_j c_k with A real
// antisymmetric; the induced Majorana rotation is R = exp(-A).
struct GaussianDescription {
  int modes = 0;
  Eigen::MatrixXd generator;  // 2n x 2n antisymmetric
  std::string base;           // occupation string, length = modes
  void validate() const;
};

struct GuidingState {
  std::variant<SubsetDescription, ScessDescription, AdvancedScessDescription,
               FixedWeightDescription, WindowedWeightDescription, MPSDescription,
               GaussianDescription, DenseDescription>
      desc;
  void validate() const;
  int output_length() const;  // qubit count M of the realized state
  const char* family() const;
};

// --- operations --------------------------------------------------------------

Vec realize_dense(const GuidingState& g, int qubit_cap = caps::assemble_qubits);
cd amplitude_query(const GuidingState& g, const std::string& z);

// Sequential conditional sampler; prefix marginals are computed exactly and
// memoized, so repeated draws from the same state are cheap.
class GuidingSampler {
 public:
  explicit GuidingSampler(GuidingState g);
  std::string sample(std::mt19937_64& rng);
  double prefix_probability(const std::string& prefix);  // exposed for tests

 private:
  GuidingState state_;
  std::map<std::string, double> memo_;
  double raw_prefix(const std::string& prefix) const;
};

std::string sample(const GuidingState& g, std::mt19937_64& rng);

double fidelity(const Vec& a, const Vec& b);

struct Interval {
  double lo = 0.0, hi = 1.0;
};
// Interval for |<a|c>|^2 given X = ||a-b|| and Y = |<b|c>|^2.
Interval geometric_bounds(double X, double Y);

MPSDescription subset_to_mps(const SubsetDescription& d, int bond_cap = caps::bond_dimension);
cd mps_amplitude(const MPSDescription& m, const std::vector<int>& symbols);

struct AmplitudeProfileReport {
  double best_objective = 0.0;
  double uniform_objective = 0.0;  // closed form |S|
  double distance_to_uniform = 0.0;  // phase-aligned Euclidean distance
  int trials = 0;
};
AmplitudeProfileReport optimal_amplitude_profile(const std::vector<std::string>& S,
                                                 const std::vector<std::string>& E,
                                                 int trials, std::mt19937_64& rng);

std::size_t description_size(const GuidingState& g);  // bits

}  // namespace glh

#pragma once

#include <string>

#include <json.hpp>

#include "glh/dequantizer.hpp"
#include "glh/energy_estimation.hpp"
#include "glh/fermionic_gaussian.hpp"
#include "glh/feynman_kitaev.hpp"
#include "glh/guiding_states.hpp"
#include "glh/operator_core.hpp"

namespace glh::io {

using json = nlohmann::json;

// Complex matrices travel as row-major [re, im] pairs; real matrices as
// row-major rows of doubles. Parse failures throw std::invalid_argument.

json to_json(const LocalHamiltonian& h);
LocalHamiltonian hamiltonian_from_json(const json& j);

json to_json(const GateCircuit& c);
GateCircuit circuit_from_json(const json& j);

json to_json(const GuidingState& g);  // "family" discriminator
GuidingState guiding_from_json(const json& j);

json to_json(const QuadraticHamiltonian& q);
QuadraticHamiltonian quadratic_from_json(const json& j);

json to_json(const CovarianceMatrix& m);
CovarianceMatrix covariance_from_json(const json& j);

json to_json(const ChebyshevFilter& p);
ChebyshevFilter filter_from_json(const json& j);

json to_json(const DecisionReport& r);

json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

}  // namespace glh::io

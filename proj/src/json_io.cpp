#include "glh/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace glh::io {

namespace {

json complex_matrix(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out.push_back({m(r, c).real(), m(r, c).imag()});
  return out;
}

Mat complex_matrix(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || (Eigen::Index)j.size() != rows * cols)
    throw std::invalid_argument("complex matrix has wrong entry count");
  Mat m(rows, cols);
  Eigen::Index i = 0;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("complex entry must be a [re, im] pair");
    m(i / cols, i % cols) = cd(e[0].get<double>(), e[1].get<double>());
    ++i;
  }
  return m;
}

json real_matrix(const RMat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

RMat real_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("real matrix must be nonempty");
  const Eigen::Index rows = (Eigen::Index)j.size();
  const Eigen::Index cols = (Eigen::Index)j[0].size();
  RMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if ((Eigen::Index)j[(std::size_t)r].size() != cols)
      throw std::invalid_argument("ragged real matrix");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = j[(std::size_t)r][(std::size_t)c].get<double>();
  }
  return m;
}

json complex_list(const std::vector<cd>& v) {
  json out = json::array();
  for (const cd& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<cd> complex_list(const json& j) {
  std::vector<cd> out;
  for (const auto& e : j) out.emplace_back(e[0].get<double>(), e[1].get<double>());
  return out;
}

SubsetDescription subset_fields(const json& j) {
  SubsetDescription d;
  d.n = j.at("n").get<int>();
  d.strings = j.at("strings").get<std::vector<std::string>>();
  if (j.contains("amplitudes")) d.amplitudes = complex_list(j.at("amplitudes"));
  return d;
}

json subset_fields(const SubsetDescription& d) {
  json j{{"n", d.n}, {"strings", d.strings}};
  if (!d.amplitudes.empty()) j["amplitudes"] = complex_list(d.amplitudes);
  return j;
}

// Isometries are 2^m x 2; MPS tensors chi x chi.
std::vector<Mat> matrix_list(const json& j, Eigen::Index cols) {
  std::vector<Mat> out;
  for (const auto& e : j)
    out.push_back(complex_matrix(e, (Eigen::Index)e.size() / cols, cols));
  return out;
}

json matrix_list(const std::vector<Mat>& v) {
  json out = json::array();
  for (const Mat& m : v) out.push_back(complex_matrix(m));
  return out;
}

}  // namespace

json to_json(const LocalHamiltonian& h) {
  json terms = json::array();
  for (const auto& t : h.terms)
    terms.push_back({{"support", t.support}, {"matrix", complex_matrix(t.dense_block())}});
  return json{{"n", h.n}, {"k", h.k}, {"terms", terms}};
}

LocalHamiltonian hamiltonian_from_json(const json& j) {
  LocalHamiltonian h;
  h.n = j.at("n").get<int>();
  h.k = j.at("k").get<int>();
  for (const auto& t : j.at("terms")) {
    const auto support = t.at("support").get<std::vector<int>>();
    const Eigen::Index dim = Eigen::Index(1) << support.size();
    h.terms.emplace_back(support, complex_matrix(t.at("matrix"), dim, dim));
  }
  h.validate();
  return h;
}

json to_json(const GateCircuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates)
    gates.push_back({{"qubits", g.qubits}, {"matrix", complex_matrix(g.matrix)}});
  return json{{"W", c.W}, {"m", c.m}, {"x", c.x}, {"gates", gates}};
}

GateCircuit circuit_from_json(const json& j) {
  GateCircuit c;
  c.W = j.at("W").get<int>();
  c.m = j.at("m").get<int>();
  c.x = j.at("x").get<std::string>();
  for (const auto& g : j.at("gates")) {
    Gate gate;
    gate.qubits = g.at("qubits").get<std::vector<int>>();
    const Eigen::Index dim = Eigen::Index(1) << gate.qubits.size();
    gate.matrix = complex_matrix(g.at("matrix"), dim, dim);
    c.gates.push_back(std::move(gate));
  }
  c.validate();
  return c;
}

json to_json(const GuidingState& g) {
  struct V {
    json operator()(const SubsetDescription& d) const {
      json j = subset_fields(d);
      j["family"] = "scss";
      return j;
    }
    json operator()(const ScessDescription& d) const {
      return json{{"family", "scess"},
                  {"base", subset_fields(d.base)},
                  {"isometries", matrix_list(d.enc.isometries)}};
    }
    json operator()(const AdvancedScessDescription& d) const {
      json iso = json::array();
      for (const auto& row : d.enc.isometries) iso.push_back(matrix_list(row));
      return json{{"family", "advanced"}, {"base", subset_fields(d.base)},
                  {"isometries", iso}};
    }
    json operator()(const FixedWeightDescription& d) const {
      json j{{"family", "fixed_weight"}, {"n", d.n}, {"k", d.k}, {"strings", d.strings}};
      if (!d.amplitudes.empty()) j["amplitudes"] = complex_list(d.amplitudes);
      return j;
    }
    json operator()(const WindowedWeightDescription& d) const {
      return json{{"family", "windowed"}, {"n", d.n}, {"weights", d.weights}};
    }
    json operator()(const MPSDescription& d) const {
      json sites = json::array();
      for (const auto& site : d.tensors) sites.push_back(matrix_list(site));
      return json{{"family", "mps"}, {"n", d.n}, {"d", d.d}, {"chi", d.chi},
                  {"tensors", sites}};
    }
    json operator()(const GaussianDescription& d) const {
      return json{{"family", "gaussian"}, {"modes", d.modes},
                  {"generator", real_matrix(d.generator)}, {"base", d.base}};
    }
    json operator()(const DenseDescription& d) const {
      std::vector<cd> amps(d.amplitudes.data(), d.amplitudes.data() + d.amplitudes.size());
      return json{{"family", "dense"}, {"amplitudes", complex_list(amps)}};
    }
  };
  return std::visit(V{}, g.desc);
}

GuidingState guiding_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  GuidingState g;
  if (family == "scss") {
    g.desc = subset_fields(j);
  } else if (family == "scess") {
    ScessDescription d;
    d.base = subset_fields(j.at("base"));
    d.enc.isometries = matrix_list(j.at("isometries"), 2);
    g.desc = d;
  } else if (family == "advanced") {
    AdvancedScessDescription d;
    d.base = subset_fields(j.at("base"));
    for (const auto& row : j.at("isometries"))
      d.enc.isometries.push_back(matrix_list(row, 2));
    g.desc = d;
  } else if (family == "fixed_weight") {
    FixedWeightDescription d;
    d.n = j.at("n").get<int>();
    d.k = j.at("k").get<int>();
    d.strings = j.at("strings").get<std::vector<std::string>>();
    if (j.contains("amplitudes")) d.amplitudes = complex_list(j.at("amplitudes"));
    g.desc = d;
  } else if (family == "windowed") {
    WindowedWeightDescription d;
    d.n = j.at("n").get<int>();
    d.weights = j.at("weights").get<std::vector<int>>();
    g.desc = d;
  } else if (family == "mps") {
    MPSDescription d;
    d.n = j.at("n").get<int>();
    d.d = j.at("d").get<int>();
    d.chi = j.at("chi").get<int>();
    for (const auto& site : j.at("tensors"))
      d.tensors.push_back(matrix_list(site, d.chi));
    g.desc = d;
  } else if (family == "gaussian") {
    GaussianDescription d;
    d.modes = j.at("modes").get<int>();
    d.generator = real_matrix(j.at("generator"));
    d.base = j.at("base").get<std::string>();
    g.desc = d;
  } else if (family == "dense") {
    const auto amps = complex_list(j.at("amplitudes"));
    DenseDescription d;
    d.amplitudes = Eigen::Map<const Vec>(amps.data(), (Eigen::Index)amps.size());
    g.desc = d;
  } else {
    throw std::invalid_argument("unknown guiding-state family: " + family);
  }
  g.validate();
  return g;
}

json to_json(const QuadraticHamiltonian& q) { return json{{"h", real_matrix(q.h)}}; }

QuadraticHamiltonian quadratic_from_json(const json& j) {
  QuadraticHamiltonian q;
  q.h = real_matrix(j.at("h"));
  q.validate();
  return q;
}

json to_json(const CovarianceMatrix& m) {
  return json{{"modes", m.modes}, {"M", real_matrix(m.M)}};
}

CovarianceMatrix covariance_from_json(const json& j) {
  CovarianceMatrix m;
  m.modes = j.at("modes").get<int>();
  m.M = real_matrix(j.at("M"));
  m.validate(false);
  return m;
}

json to_json(const ChebyshevFilter& p) {
  return json{{"a", p.spec.a}, {"b", p.spec.b}, {"sup_error", p.spec.sup_error},
              {"degree", p.degree()}, {"coefficients", p.coefficients}};
}

ChebyshevFilter filter_from_json(const json& j) {
  ChebyshevFilter p;
  p.spec.a = j.at("a").get<double>();
  p.spec.b = j.at("b").get<double>();
  p.spec.sup_error = j.at("sup_error").get<double>();
  p.coefficients = j.at("coefficients").get<std::vector<double>>();
  p.spec.degree = p.degree();
  if (p.spec.degree != j.at("degree").get<int>())
    throw std::invalid_argument("filter degree disagrees with coefficient count");
  p.spec.validate();
  return p;
}

json to_json(const DecisionReport& r) {
  return json{{"decision", decision_name(r.decision)}, {"estimate", r.estimate},
              {"repetitions", r.repetitions}, {"cost", r.cost}, {"seed", r.seed},
              {"promise_flag", r.promise_flag}};
}

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace glh::io

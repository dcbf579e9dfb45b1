#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "glh/dequantizer.hpp"
#include "glh/energy_estimation.hpp"
#include "glh/fermionic_gaussian.hpp"
#include "glh/feynman_kitaev.hpp"
#include "glh/json_io.hpp"
#include "glh/state_prep.hpp"

using namespace glh;
using glh::io::json;

namespace {

constexpr int exit_pass = 0, exit_check = 1, exit_usage = 2;

ClockKind parse_encoding(const std::string& name) {
  if (name == "unary") return ClockKind::unary;
  if (name == "one-hot") return ClockKind::one_hot;
  throw std::invalid_argument("unknown encoding: " + name);
}

int default_cap() {
  if (const char* env = std::getenv("GLH_CAP_QUBITS")) return std::atoi(env);
  return caps::fk_qubits;
}

json threshold_block(const ThresholdReport& t) {
  return json{{"a", t.a}, {"b", t.b}, {"a_rescaled", t.a_rescaled},
              {"b_rescaled", t.b_rescaled}, {"rescale", t.rescale},
              {"sw_regime", t.sw_regime}, {"valid", t.valid}};
}

struct BuildResult {
  GateCircuit circuit;
  FKInstance instance;
};

BuildResult load_and_build(const std::string& file, const std::string& encoding,
                           double delta, int pre_idle_n, int cap) {
  BuildResult r;
  r.circuit = io::circuit_from_json(io::load_file(file));
  if (pre_idle_n > 0) r.circuit = pre_idle(r.circuit, pre_idle_n);
  r.instance = build_fk(r.circuit, parse_encoding(encoding), delta, cap);
  return r;
}

int cmd_build(const std::string& file, const std::string& encoding, double delta,
              int pre_idle_n, int cap, const std::string& out, std::uint64_t seed) {
  const BuildResult r = load_and_build(file, encoding, delta, pre_idle_n, cap);
  const FKInstance& inst = r.instance;
  const int K = r.circuit.K();

  const Vec eta = history_state(r.circuit, inst.enc, cap);
  const double residual = apply_op(inst.delta_part(), eta).norm();
  const double scale = operator_norm(inst.total()).exact;

  json summary{{"command", "build"}, {"seed", seed}, {"encoding", encoding},
               {"delta", delta}, {"W", inst.W}, {"m", inst.m}, {"N", inst.N},
               {"T", inst.T}, {"K", K}, {"qubits", inst.qubits()},
               {"nullity_residual", residual},
               {"thresholds", threshold_block(yes_no_thresholds(K, delta, 0.0, scale))}};
  if (inst.N > 0) {
    const RSetDescription rd{r.circuit.x + std::string((std::size_t)inst.m, '0'),
                             inst.N, inst.enc};
    summary["fidelity"] = json{
        {"nu", inst.N},
        {"measured", r_state_history_fidelity(r.circuit, inst.enc, rd)},
        {"law", (double)inst.N / (K + 1)}};
  } else {
    summary["fidelity"] = "no pre-idle";
  }
  if (!out.empty()) {
    io::save_file(out, json{{"hamiltonian", io::to_json(inst.total())},
                            {"metadata",
                             json{{"W", inst.W}, {"m", inst.m}, {"N", inst.N},
                                  {"T", inst.T}, {"K", K}, {"delta", delta},
                                  {"encoding", encoding}}}});
  }
  std::cout << summary.dump(2) << "\n";
  return residual <= tol::history_infidelity * 10 ? exit_pass : exit_check;
}

int cmd_prep(const std::string& file) {
  const GuidingState g = io::guiding_from_json(io::load_file(file));
  const std::string family = g.family();
  if (family != "scss" && family != "scess") {
    std::cout << json{{"command", "prep"}, {"family", family},
                      {"status", "unsupported synthesis for family " + family +
                                     " (dense verification only)"}}
                     .dump(2)
              << "\n";
    return exit_pass;
  }
  const SynthCircuit sc = family == "scss"
                              ? synth_subset_state(std::get<SubsetDescription>(g.desc))
                              : synth_scess(std::get<ScessDescription>(g.desc));
  const Vec target = realize_dense(g);
  const Vec sim = simulate(sc, std::string((std::size_t)sc.qubits, '0'));
  cd overlap = 0.0;  // ancilla (last qubit) must return to |0>
  for (Eigen::Index i = 0; i < target.size(); ++i)
    overlap += std::conj(target(i)) * sim(2 * i);
  const double infidelity = 1.0 - std::norm(overlap);
  const SynthCounts counts = sc.counts();
  json report{{"command", "prep"}, {"family", family}, {"qubits", sc.qubits},
              {"infidelity", infidelity},
              {"counts",
               json{{"rot_y", counts.rot_y}, {"pauli_x", counts.pauli_x},
                    {"controlled_x", counts.controlled_x},
                    {"controlled_block", counts.controlled_block},
                    {"total", counts.total()}}},
              {"circuit", emit_text(sc)}};
  std::cout << report.dump(2) << "\n";
  return infidelity <= tol::synth_infidelity ? exit_pass : exit_check;
}

json classical_block(const FilterDecisionReport& r) {
  return json{{"decision", decision_name(r.decision)}, {"nu", r.nu},
              {"degree", r.degree}, {"products", r.products},
              {"promise_flag", r.promise_flag}};
}

int cmd_decide(const std::string& circuit_file, const std::string& guiding_file,
               const std::string& route, const std::string& encoding, double delta,
               int pre_idle_n, int cap, std::uint64_t seed) {
  const BuildResult r = load_and_build(circuit_file, encoding, delta, pre_idle_n, cap);
  const LocalHamiltonian total = r.instance.total();
  const GuidingState g = io::guiding_from_json(io::load_file(guiding_file));
  const int K = r.circuit.K();
  const double a = 0.1 / (K + 1), b = 0.9 / (K + 1);

  json report{{"command", "decide"}, {"route", route}, {"seed", seed},
              {"a", a}, {"b", b}, {"delta", delta}};
  Decision qpe = Decision::invalid, classical = Decision::invalid;
  if (route == "qpe" || route == "both") {
    QPEConfig cfg;
    cfg.eta = 0.1;
    cfg.delta = 0.5;
    cfg.seed = seed;
    const DecisionReport rep = decide_glh(total, g, a, b, cfg);
    qpe = rep.decision;
    report["qpe"] = io::to_json(rep);
  }
  if (route == "classical" || route == "both") {
    const FilterDecisionReport rep = decide_classical(total, g, a, b, 0.5);
    classical = rep.decision;
    report["classical"] = classical_block(rep);
  }
  bool ok = true;
  if (route == "both") {
    ok = qpe == classical;
    report["agreement"] = ok;
  }
  std::cout << report.dump(2) << "\n";
  return ok ? exit_pass : exit_check;
}

int cmd_gauss_energy(const std::string& quad_file, const std::string& ham_file) {
  const QuadraticHamiltonian q = io::quadratic_from_json(io::load_file(quad_file));
  const GroundCovarianceReport rep = ground_covariance(q);
  const double free_energy = -0.5 * (q.h.transpose() * rep.covariance.M).trace();
  json report{{"command", "gauss-energy"}, {"modes", q.modes()},
              {"zero_modes", rep.zero_modes}, {"free_ground_energy", free_energy}};
  if (!ham_file.empty()) {
    const LocalHamiltonian h = io::hamiltonian_from_json(io::load_file(ham_file));
    report["qubit_energy"] = gaussian_energy(rep.covariance, h);
  }
  std::cout << report.dump(2) << "\n";
  return exit_pass;
}

struct Check {
  std::string name;
  double value = 0.0;
  bool pass = false;
};

void run_geometric(std::vector<Check>& checks, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_state = [&](int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = cd(gauss(rng), gauss(rng));
    v.normalize();
    return v;
  };
  double worst = 0.0;
  bool pass = true;
  for (int t = 0; t < 2000; ++t) {
    const Vec a = random_state(8), b = random_state(8), c = random_state(8);
    const Interval iv = geometric_bounds((a - b).norm(), std::norm(b.dot(c)));
    const double f = std::norm(a.dot(c));
    worst = std::max({worst, iv.lo - f, f - iv.hi});
    if (f < iv.lo - 1e-12 || f > iv.hi + 1e-12) pass = false;
  }
  checks.push_back({"geometric_bounds_violation", worst, pass});
}

void run_fk_lemmas(std::vector<Check>& checks) {
  Mat x(2, 2), id(2, 2);
  x << 0, 1, 1, 0;
  id.setIdentity();
  GateCircuit c;
  c.W = 1;
  c.m = 0;
  c.x = "0";
  c.gates = {Gate{{0}, x}, Gate{{0}, id}};
  const int N = 4;
  for (const ClockKind kind : {ClockKind::unary, ClockKind::one_hot}) {
    const std::string tag = kind == ClockKind::unary ? "unary" : "one_hot";
    const GateCircuit padded = pre_idle(c, N);
    const int K = padded.K();
    const HardnessReport rep =
        verify_hardness_instance(c, kind, 1e3 * K * K * K, N);
    checks.push_back({"nullity_residual_" + tag, rep.nullity_residual,
                      rep.nullity_residual <= 1e-8});
    const double out_id = std::abs(rep.out_energy * (K + 1) + rep.p_acc - 1.0);
    checks.push_back({"output_energy_identity_" + tag, out_id, out_id <= 1e-10});
    const double fid_gap = std::abs(rep.r_eta_fidelity - (double)N / (K + 1));
    checks.push_back({"fidelity_law_" + tag, fid_gap, fid_gap <= 1e-10});
    checks.push_back({"accepting_below_yes_threshold_" + tag, rep.ground_energy,
                      rep.thresholds.valid && rep.ground_energy <= rep.thresholds.a});
    checks.push_back({"r_fidelity_bound_" + tag, rep.r_fidelity,
                      rep.r_fidelity >= rep.r_fidelity_bound - 1e-12});
  }
}

void run_gauss(std::vector<Check>& checks, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_antisym = [&](int d) {
    RMat a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
    return RMat(a - a.transpose());
  };
  double worst_pf = 0.0;
  for (int t = 0; t < 20; ++t) {
    const RMat a = random_antisym(6);
    const double pf = pfaffian(a);
    worst_pf = std::max(worst_pf, std::abs(pf * pf - a.determinant()) /
                                      std::max(1.0, std::abs(a.determinant())));
  }
  checks.push_back({"pfaffian_squared_vs_det", worst_pf, worst_pf <= 1e-8});

  const int n = 3;
  LocalHamiltonian zsum;
  zsum.n = n;
  zsum.k = 1;
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  for (int q = 0; q < n; ++q) zsum.terms.push_back(HermitianTerm{{q}, z});
  const double vac = gaussian_energy(vacuum_covariance(n), zsum);
  checks.push_back({"vacuum_z_energy", vac, std::abs(vac - n) <= 1e-10});

  double worst_var = 0.0, worst_purity = 0.0;
  for (int t = 0; t < 10; ++t) {
    QuadraticHamiltonian q;
    q.h = random_antisym(2 * n);
    const GroundCovarianceReport rep = ground_covariance(q);
    const RMat& M = rep.covariance.M;
    worst_purity = std::max(worst_purity,
                            (M * M.transpose() - RMat::Identity(2 * n, 2 * n)).norm());
    const double ground = -0.5 * (q.h.transpose() * M).trace();
    const OrthogonalRotation rot{expm_antisymmetric(random_antisym(2 * n))};
    const CovarianceMatrix other = evolve(CovarianceMatrix{M, n}, rot);
    const double competitor = -0.5 * (q.h.transpose() * other.M).trace();
    worst_var = std::max(worst_var, ground - competitor);
  }
  checks.push_back({"ground_covariance_purity", worst_purity, worst_purity <= 1e-8});
  checks.push_back({"ground_covariance_variational", worst_var, worst_var <= 1e-8});
}

void run_weight_k(std::vector<Check>& checks, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_block = [&](int d) {
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = cd(gauss(rng), gauss(rng));
    return Mat(0.1 * g.adjoint() * g);
  };
  bool pass = true;
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int n = 4;
    LocalHamiltonian h;
    h.n = n;
    h.k = 2;
    for (int s = 0; s < 3; ++s) {
      int a = (int)(rng() % n), b;
      do b = (int)(rng() % n); while (b == a);
      h.terms.push_back(HermitianTerm{{a, b}, random_block(4)});
    }
    const int k = 1 + (int)(rng() % (n - 1));
    const auto basis = weight_k_basis(n, k);
    Vec psi = Vec::Zero(Eigen::Index(1) << n);
    for (const auto& s : basis) psi((Eigen::Index)string_to_index(s)) = cd(gauss(rng), gauss(rng));
    psi.normalize();
    const WeightKReport rep = weight_k_bounds_check(h, k, psi);
    pass = pass && rep.lower_ok && rep.upper_ok;
    worst = std::max(worst, rep.mu0 - rep.energy);
  }
  checks.push_back({"weight_k_bounds", worst, pass && worst <= 1e-10});
}

void run_uniform_optimality(std::vector<Check>& checks, std::mt19937_64& rng) {
  bool pass = true;
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const int n = 4;
    std::vector<std::string> S;
    for (std::size_t idx = 0; idx < 16; ++idx)
      if (rng() % 2) S.push_back(index_to_string(idx, n));
    if (S.size() < 2) S = {"0000", "1111"};
    const AmplitudeProfileReport rep = optimal_amplitude_profile(S, S, 200, rng);
    worst = std::max(worst, std::abs(rep.best_objective - rep.uniform_objective));
    pass = pass && rep.best_objective <= rep.uniform_objective + 1e-9;
  }
  checks.push_back({"uniform_profile_optimal", worst, pass});
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Check> checks;
  if (suite == "geometric") {
    run_geometric(checks, rng);
  } else if (suite == "fk-lemmas") {
    run_fk_lemmas(checks);
  } else if (suite == "gauss") {
    run_gauss(checks, rng);
  } else if (suite == "weight-k") {
    run_weight_k(checks, rng);
  } else if (suite == "uniform-optimality") {
    run_uniform_optimality(checks, rng);
  } else {
    std::cerr << "unknown suite: " << suite << "\n";
    return exit_usage;
  }
  bool all = true;
  json items = json::array();
  for (const Check& c : checks) {
    all = all && c.pass;
    items.push_back({{"name", c.name}, {"value", c.value}, {"pass", c.pass}});
  }
  std::cout << json{{"command", "verify"}, {"suite", suite}, {"seed", seed},
                    {"checks", items}, {"pass", all}}
                   .dump(2)
            << "\n";
  return all ? exit_pass : exit_check;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"guided local Hamiltonian workbench"};
  app.require_subcommand(1);

  std::string circuit_file, guiding_file, quad_file, ham_file, suite, out;
  std::string encoding = "unary", route = "qpe";
  double delta = 1.0;
  int pre_idle_n = 0, cap = default_cap();
  std::uint64_t seed = 0;

  auto* build = app.add_subcommand("build", "compile a circuit into an FK instance");
  build->add_option("circuit", circuit_file)->required();
  build->add_option("--encoding", encoding)->check(CLI::IsMember({"unary", "one-hot"}));
  build->add_option("--delta", delta);
  build->add_option("--pre-idle", pre_idle_n);
  build->add_option("--cap-qubits", cap);
  build->add_option("--out", out);
  build->add_option("--seed", seed);

  auto* prep = app.add_subcommand("prep", "synthesize a preparation circuit");
  prep->add_option("guiding", guiding_file)->required();

  auto* decide = app.add_subcommand("decide", "run the energy decision pipeline");
  decide->add_option("circuit", circuit_file)->required();
  decide->add_option("guiding", guiding_file)->required();
  decide->add_option("--route", route)->check(CLI::IsMember({"qpe", "classical", "both"}));
  decide->add_option("--encoding", encoding)->check(CLI::IsMember({"unary", "one-hot"}));
  decide->add_option("--delta", delta);
  decide->add_option("--pre-idle", pre_idle_n);
  decide->add_option("--cap-qubits", cap);
  decide->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "run a lemma suite");
  verify->add_option("suite", suite)->required();
  verify->add_option("--seed", seed);

  auto* gauss = app.add_subcommand("gauss-energy", "free-fermion ground energy");
  gauss->add_option("quadratic", quad_file)->required();
  gauss->add_option("hamiltonian", ham_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (build->parsed())
      return cmd_build(circuit_file, encoding, delta, pre_idle_n, cap, out, seed);
    if (prep->parsed()) return cmd_prep(guiding_file);
    if (decide->parsed())
      return cmd_decide(circuit_file, guiding_file, route, encoding, delta, pre_idle_n,
                        cap, seed);
    if (verify->parsed()) return cmd_verify(suite, seed);
    if (gauss->parsed()) return cmd_gauss_energy(quad_file, ham_file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check;
  }
  return exit_usage;
}

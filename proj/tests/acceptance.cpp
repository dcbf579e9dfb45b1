// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glh/dequantizer.hpp"
#include "glh/energy_estimation.hpp"
#include "glh/fermionic_gaussian.hpp"
#include "glh/feynman_kitaev.hpp"
#include "glh/state_prep.hpp"
#include "oracles.hpp"
#include "stats.hpp"

using namespace glh;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Gate random_gate(int data_qubits, std::mt19937_64& rng) {
  Gate g;
  const int arity = data_qubits >= 2 && rng() % 2 ? 2 : 1;
  g.qubits.push_back((int)(rng() % data_qubits));
  if (arity == 2) {
    int b;
    do b = (int)(rng() % data_qubits); while (b == g.qubits[0]);
    g.qubits.push_back(b);
  }
  g.matrix = oracle::random_unitary(1 << arity, rng);
  return g;
}

GateCircuit random_circuit(int W, int m, int T, std::mt19937_64& rng) {
  GateCircuit c;
  c.W = W;
  c.m = m;
  c.x.resize((std::size_t)W);
  for (char& b : c.x) b = rng() % 2 ? '1' : '0';
  for (int t = 0; t < T; ++t) c.gates.push_back(random_gate(W + m, rng));
  return c;
}

Mat pauli_x() {
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

RMat random_antisymmetric(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  RMat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
  return a - a.transpose().eval();
}

LocalHamiltonian random_psd(int n, int terms, std::mt19937_64& rng) {
  LocalHamiltonian h;
  h.n = n;
  h.k = 2;
  for (int t = 0; t < terms; ++t) {
    int a = (int)(rng() % n), b;
    do b = (int)(rng() % n); while (b == a);
    const Mat g = oracle::random_hermitian(4, rng);
    h.terms.push_back(HermitianTerm{{a, b}, Mat(0.1 * g.adjoint() * g)});
  }
  return h;
}

// --- criteria 1 & 2: history-state nullity and output-energy identity --------

struct CorpusResult {
  double max_residual = 0.0;
  double max_identity = 0.0;
  int instances = 0;
};

CorpusResult run_history_corpus() {
  std::mt19937_64 rng(1001);
  CorpusResult r;
  for (int t = 0; t < 50; ++t) {
    const int W = 1 + (int)(rng() % 3);
    const int m = (int)(rng() % 2);
    const int T = 1 + (int)(rng() % 4);
    const int N = (int)(rng() % 11);
    GateCircuit c = random_circuit(W, m, T, rng);
    if (N > 0) c = pre_idle(c, N);
    const int K = c.K();
    for (const ClockKind kind : {ClockKind::unary, ClockKind::one_hot}) {
      const FKInstance inst = build_fk(c, kind, 100.0);
      const Vec eta = history_state(c, inst.enc);
      r.max_residual =
          std::max(r.max_residual, apply_op(inst.delta_part(), eta).norm());
      const double out_e = eta.dot(apply_op(inst.h_out, eta)).real();
      r.max_identity = std::max(
          r.max_identity, std::abs(out_e * (K + 1) + acceptance_probability(c) - 1.0));
      ++r.instances;
    }
  }
  return r;
}

Outcome crit3_fidelity_law() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (const auto& [N, T] : std::vector<std::pair<int, int>>{{5, 2}, {10, 3}, {20, 4}}) {
    GateCircuit c = pre_idle(random_circuit(2, 0, T, rng), N);
    const ClockEncoding enc{ClockKind::unary, c.K()};
    const RSetDescription rd{c.x, N, enc};
    worst = std::max(worst, std::abs(r_state_history_fidelity(c, enc, rd) -
                                     (double)N / (N + T + 1)));
  }
  return {worst <= 1e-12, "max law deviation " + fmt(worst)};
}

Outcome crit4_sw_decay() {
  GateCircuit c;
  c.W = 1;
  c.m = 0;
  c.x = "0";
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  c.gates = {Gate{{0}, h}, Gate{{0}, Mat(Mat::Identity(2, 2))}};
  const int N = 5;
  const int K = N + 2;
  std::vector<double> dists;
  bool bounds_ok = true;
  for (const double mult : {1e3, 1e4, 1e5}) {
    const HardnessReport rep =
        verify_hardness_instance(c, ClockKind::unary, mult * K * K * K, N);
    dists.push_back(rep.g_eta_distance);
    bounds_ok = bounds_ok && rep.r_fidelity >= rep.r_fidelity_bound - 1e-12;
  }
  bool decay_ok = true;
  for (std::size_t i = 0; i + 1 < dists.size(); ++i) {
    const double ratio = dists[i] / dists[i + 1];
    decay_ok = decay_ok && ratio >= 5.0 && ratio <= 20.0;
  }
  return {decay_ok && bounds_ok,
          "distances " + fmt(dists[0]) + ", " + fmt(dists[1]) + ", " + fmt(dists[2])};
}

Outcome crit5_threshold_separation() {
  const int N = 5, K = N + 2;
  const double delta = 1e3 * K * K * K;
  GateCircuit accept;
  accept.W = 1;
  accept.m = 0;
  accept.x = "0";
  accept.gates = {Gate{{0}, pauli_x()}, Gate{{0}, Mat(Mat::Identity(2, 2))}};
  GateCircuit reject = accept;
  reject.gates[0].matrix = Mat::Identity(2, 2);

  const HardnessReport ra = verify_hardness_instance(accept, ClockKind::unary, delta, N);
  const HardnessReport rr = verify_hardness_instance(reject, ClockKind::unary, delta, N);
  const double mid_a = 0.5 * (ra.thresholds.a + ra.thresholds.b);
  const double mid_r = 0.5 * (rr.thresholds.a + rr.thresholds.b);
  const bool ok = ra.ground_energy <= mid_a - 1e-6 &&
                  rr.ground_energy >= mid_r + 1e-6 && rr.gap > 1e-6;
  return {ok, "accept lambda0 " + fmt(ra.ground_energy) + " vs mid " + fmt(mid_a) +
                  "; reject lambda0 " + fmt(rr.ground_energy) + ", gap " + fmt(rr.gap)};
}

Outcome crit6_state_prep() {
  std::mt19937_64 rng(1006);
  double max_infidelity = 0.0, min_purity = 1.0, max_ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + (int)(rng() % 9);
    const std::size_t want =
        1 + rng() % std::min<std::size_t>(16, std::size_t{1} << n);
    std::set<std::size_t> picks;
    while (picks.size() < want) picks.insert(rng() % (std::size_t{1} << n));
    SubsetDescription d;
    d.n = n;
    for (std::size_t idx : picks) d.strings.push_back(index_to_string(idx, n));

    const SynthCircuit sc = synth_subset_state(d);
    const Vec target = realize_dense(GuidingState{d});
    const Vec sim = simulate(sc, std::string((std::size_t)sc.qubits, '0'));
    cd overlap = 0.0;
    double purity = 0.0;
    for (Eigen::Index i = 0; i < target.size(); ++i) {
      overlap += std::conj(target(i)) * sim(2 * i);
      purity += std::norm(sim(2 * i));
    }
    max_infidelity = std::max(max_infidelity, 1.0 - std::norm(overlap));
    min_purity = std::min(min_purity, purity);
    max_ratio = std::max(max_ratio,
                         (double)sc.counts().total() / ((double)want * n));
  }
  const bool ok =
      max_infidelity <= 1e-7 && min_purity >= 1.0 - 1e-10 && max_ratio <= 8.0;
  return {ok, "max infidelity " + fmt(max_infidelity) + ", count ratio " +
                  fmt(max_ratio) + ", min ancilla purity " + fmt(min_purity)};
}

GuidingState random_family_instance(const std::string& family, std::mt19937_64& rng) {
  const int n = 3 + (int)(rng() % 3);
  SubsetDescription base;
  base.n = n;
  std::set<std::size_t> picks;
  const std::size_t want = 2 + rng() % 6;
  while (picks.size() < want) picks.insert(rng() % (std::size_t{1} << n));
  for (std::size_t idx : picks) base.strings.push_back(index_to_string(idx, n));
  if (family == "scss") return GuidingState{base};

  auto isometry = [&](int m) {
    return Mat(oracle::random_unitary(1 << m, rng).leftCols(2));
  };
  std::vector<int> ms;
  for (int j = 0; j < n; ++j) ms.push_back(1 + (int)(rng() % 2));
  if (family == "scess") {
    ScessDescription d;
    d.base = base;
    for (int j = 0; j < n; ++j) d.enc.isometries.push_back(isometry(ms[j]));
    return GuidingState{d};
  }
  AdvancedScessDescription d;
  d.base = base;
  for (std::size_t e = 0; e < base.strings.size(); ++e) {
    std::vector<Mat> row;
    for (int j = 0; j < n; ++j) row.push_back(isometry(ms[j]));
    d.enc.isometries.push_back(std::move(row));
  }
  return GuidingState{d};
}

Outcome crit7_sample_query() {
  std::mt19937_64 rng(1007);
  int chi2_failures = 0;
  double max_query_dev = 0.0;
  for (const std::string family : {"scss", "scess", "advanced"}) {
    for (int inst = 0; inst < 10; ++inst) {
      const GuidingState g = random_family_instance(family, rng);
      const int M = g.output_length();
      const Vec dense = realize_dense(g);
      std::map<std::string, double> probs;
      for (Eigen::Index i = 0; i < dense.size(); ++i) {
        const std::string z = index_to_string((std::size_t)i, M);
        max_query_dev =
            std::max(max_query_dev, std::abs(amplitude_query(g, z) - dense(i)));
        if (std::norm(dense(i)) > 0.0) probs[z] = std::norm(dense(i));
      }
      GuidingSampler sampler(g);
      std::map<std::string, std::size_t> counts;
      const std::size_t draws = 100000;
      for (std::size_t s = 0; s < draws; ++s) ++counts[sampler.sample(rng)];
      if (!stats::chi2_test(counts, probs, draws).pass_at_001) ++chi2_failures;
    }
  }
  return {chi2_failures == 0 && max_query_dev <= 1e-12,
          "chi2 failures " + std::to_string(chi2_failures) + "/30, query deviation " +
              fmt(max_query_dev)};
}

Outcome crit8_geometric() {
  std::mt19937_64 rng(1008);
  int low_branch = 0, high_branch = 0, violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const int d = 2 + (int)(rng() % 7);
    const Vec a = oracle::random_state(d, rng);
    const Vec b = oracle::random_state(d, rng);
    const Vec c = oracle::random_state(d, rng);
    const double X = (a - b).norm(), Y = std::norm(b.dot(c));
    (X <= std::sqrt(Y) ? low_branch : high_branch)++;
    const Interval iv = geometric_bounds(X, Y);
    const double f = std::norm(a.dot(c));
    if (f < iv.lo - 1e-12 || f > iv.hi + 1e-12) ++violations;
  }
  return {violations == 0 && low_branch > 0 && high_branch > 0,
          "violations " + std::to_string(violations) + ", branches " +
              std::to_string(low_branch) + "/" + std::to_string(high_branch)};
}

Outcome crit9_qpe() {
  std::mt19937_64 rng(1009);
  const int N = 5;
  int correct = 0, eligible = 0;
  for (int t = 0; t < 20; ++t) {
    const bool accepting = t % 2 == 0;
    const int W = 1 + (int)(rng() % 2);
    GateCircuit c;
    c.W = W;
    c.m = 0;
    c.x = std::string((std::size_t)W, '0');
    if (W == 2)
      c.gates.push_back(Gate{{1}, oracle::random_unitary(2, rng)});
    else
      c.gates.push_back(Gate{{0}, Mat(Mat::Identity(2, 2))});
    c.gates.push_back(Gate{{0}, accepting ? pauli_x() : Mat(Mat::Identity(2, 2))});
    c = pre_idle(c, N);
    const int K = c.K();
    const double delta = 1e3 * K * K * K;
    const FKInstance inst = build_fk(c, ClockKind::unary, delta);
    const LocalHamiltonian total = inst.total();
    const GuidingState guide = r_state(RSetDescription{c.x, N, inst.enc});

    const Spectrum spec = diagonalize(total);
    const double overlap =
        std::norm(spec.eigenvectors.col(0).dot(realize_dense(guide)));
    if (overlap < 0.5) continue;
    ++eligible;
    const ThresholdReport th = yes_no_thresholds(K, delta, 0.0);
    QPEConfig cfg;
    cfg.eta = 0.1;
    cfg.delta = 0.5;
    cfg.seed = 7000 + (std::uint64_t)t;
    const DecisionReport rep = decide_glh(total, guide, th.a, th.b, cfg);
    if (rep.decision == (accepting ? Decision::yes : Decision::no)) ++correct;
  }

  const LocalHamiltonian h = random_psd(3, 3, rng);
  const Spectrum spec = diagonalize(h);
  Vec xi = std::sqrt(0.55) * spec.eigenvectors.col(0) +
           std::sqrt(0.45) * spec.eigenvectors.col(7);
  xi.normalize();
  QPEConfig cfg{0.01, 0.1, 0.5, 0};
  int failures = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    cfg.seed = (std::uint64_t)t;
    if (std::abs(estimate_ground(spec, xi, cfg).first - spec.lambda0()) > cfg.eps)
      ++failures;
  }
  const double sigma = std::sqrt(cfg.eta * (1.0 - cfg.eta) / trials);
  const bool rate_ok = (double)failures / trials <= cfg.eta + 2.0 * sigma;

  bool monotone = true;
  QPEConfig base{0.1, 0.1, 0.5, 0};
  for (auto knob : {&QPEConfig::eps, &QPEConfig::eta, &QPEConfig::delta}) {
    QPEConfig finer = base;
    finer.*knob = base.*knob / 2.0;
    monotone = monotone && qpe_cost(finer) > qpe_cost(base);
  }
  return {eligible == 20 && correct == 20 && rate_ok && monotone,
          std::to_string(correct) + "/20 decisions correct (" +
              std::to_string(eligible) + " eligible), failure rate " +
              fmt((double)failures / trials)};
}

// Tensor product of rotated single-qubit diagonals: exact lambda0 and ground.
struct ProductInstance {
  LocalHamiltonian h;
  double lambda0 = 0.0;
  Vec ground, top;
};

ProductInstance product_instance(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  ProductInstance out;
  out.h.n = n;
  out.h.k = 1;
  out.ground = Vec::Ones(1);
  out.top = Vec::Ones(1);
  for (int j = 0; j < n; ++j) {
    const double lo = (0.1 + 0.4 * unif(rng)) / n;
    const double hi = lo + (0.2 + 0.3 * unif(rng)) / n;
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = lo;
    d(1, 1) = hi;
    const Mat u = oracle::random_unitary(2, rng);
    out.h.terms.push_back(HermitianTerm{{j}, Mat(u * d * u.adjoint())});
    out.lambda0 += lo;
    out.ground = oracle::kron(out.ground, Vec(u.col(0))).eval();
    out.top = oracle::kron(out.top, Vec(u.col(1))).eval();
  }
  return out;
}

Outcome crit10_dequantizer() {
  std::mt19937_64 rng(1010);
  const double delta = 0.5;
  double min_yes = 1e9, max_no = 0.0;
  int agree = 0;
  for (int t = 0; t < 20; ++t) {
    const bool yes = t % 2 == 0;
    const ProductInstance inst = product_instance(3 + (int)(rng() % 8), rng);
    const double s = operator_norm(inst.h).exact;
    const double a = yes ? inst.lambda0 + 0.01 * s : inst.lambda0 - 0.21 * s;
    const double b = a + 0.2 * s;
    Vec xi = std::sqrt(0.6) * inst.ground + std::sqrt(0.4) * inst.top;
    xi.normalize();
    const GuidingState g{DenseDescription{xi}};
    const FilterDecisionReport rep = decide_classical(inst.h, g, a, b, delta);
    if (yes)
      min_yes = std::min(min_yes, rep.nu);
    else
      max_no = std::max(max_no, rep.nu);
    QPEConfig cfg;
    cfg.eta = 0.05;
    cfg.delta = delta;
    cfg.seed = 8000 + (std::uint64_t)t;
    if (decide_glh(inst.h, g, a, b, cfg).decision == rep.decision) ++agree;
  }
  const bool values_ok =
      min_yes >= std::sqrt(delta) - delta / 4.0 && max_no <= delta / 4.0;

  std::vector<double> x, y;
  for (const double gap : {0.5, 0.4, 0.3, 0.25, 0.2, 0.15, 0.1}) {
    x.push_back(1.0 / gap);
    y.push_back((double)build_filter(0.5 - gap / 2, 0.5 + gap / 2, 0.05).degree());
  }
  const int m = (int)x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < m; ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
  }
  const double r2 = (m * sxy - sx * sy) * (m * sxy - sx * sy) /
                    ((m * sxx - sx * sx) * (m * syy - sy * sy));
  return {values_ok && agree == 20 && r2 >= 0.9,
          "yes floor " + fmt(min_yes) + ", no ceiling " + fmt(max_no) +
              ", agreement " + std::to_string(agree) + "/20, degree-law R2 " + fmt(r2)};
}

Outcome crit11_gaussian_energy() {
  std::mt19937_64 rng(1011);
  double max_energy_dev = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + (int)(rng() % 6);
    const RMat a = random_antisymmetric(2 * n, rng);
    CovarianceMatrix M = vacuum_covariance(n);
    const RMat rot = expm_antisymmetric(a);
    M.M = rot * M.M * rot.transpose();

    // Dense matchgate state exp(G)|0..0>, G = (1/4) sum A_{jk} c_j c_k.
    const auto cs = oracle::dense_majoranas(n);
    Mat G = Mat::Zero(1 << n, 1 << n);
    for (int j = 0; j < 2 * n; ++j)
      for (int k = 0; k < 2 * n; ++k) G += 0.25 * a(j, k) * cs[(std::size_t)j] * cs[(std::size_t)k];
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(cd(0, 1) * G));
    Mat expG = es.eigenvectors() *
               (cd(0, -1) * es.eigenvalues().cast<cd>().array()).exp().matrix().asDiagonal() *
               es.eigenvectors().adjoint();
    Vec phi = expG.col(0);

    LocalHamiltonian h;
    h.n = n;
    h.k = std::min(2, n);
    for (int s = 0; s < 2; ++s) {
      if (n == 1) {
        h.terms.push_back(HermitianTerm{{0}, oracle::random_hermitian(2, rng)});
        continue;
      }
      int p = (int)(rng() % n), q;
      do q = (int)(rng() % n); while (q == p);
      h.terms.push_back(HermitianTerm{{p, q}, oracle::random_hermitian(4, rng)});
    }
    const double dense = phi.dot(assemble_dense(h) * phi).real();
    max_energy_dev = std::max(max_energy_dev, std::abs(gaussian_energy(M, h) - dense));
  }

  double max_pf_dev = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int d = 2 * (1 + (int)(rng() % 4));
    const RMat a = random_antisymmetric(d, rng);
    const double pf = pfaffian(a);
    max_pf_dev = std::max(max_pf_dev, std::abs(pf * pf - a.determinant()) /
                                          std::max(1.0, std::abs(a.determinant())));
  }
  return {max_energy_dev <= 1e-8 && max_pf_dev <= 1e-8,
          "energy deviation " + fmt(max_energy_dev) + ", Pf^2 vs det " + fmt(max_pf_dev)};
}

Outcome crit12_weight_k() {
  std::mt19937_64 rng(1012);
  double worst_slack = 0.0, worst_mu = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + (int)(rng() % 4);
    const int k = 1 + (int)(rng() % (n - 1));
    const LocalHamiltonian h = random_psd(n, 3, rng);
    const auto basis = weight_k_basis(n, k);
    Vec psi = Vec::Zero(Eigen::Index(1) << n);
    const Vec coeff = oracle::random_state((int)basis.size(), rng);
    for (std::size_t j = 0; j < basis.size(); ++j)
      psi((Eigen::Index)string_to_index(basis[j])) = coeff((Eigen::Index)j);
    const WeightKReport rep = weight_k_bounds_check(h, k, psi);
    worst_slack = std::max(
        {worst_slack, (1.0 - rep.overlap) * rep.gap + rep.lambda0 - rep.energy,
         rep.mu0 - rep.lambda0 - (1.0 - rep.overlap) * rep.norm});

    Mat sel = Mat::Zero(Eigen::Index(1) << n, (Eigen::Index)basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
      sel((Eigen::Index)string_to_index(basis[j]), (Eigen::Index)j) = 1.0;
    Eigen::SelfAdjointEigenSolver<Mat> dense(Mat(sel.adjoint() * assemble_dense(h) * sel));
    worst_mu = std::max(worst_mu, std::abs(dense.eigenvalues()(0) - rep.mu0));
  }
  return {worst_slack <= 1e-10 && worst_mu <= 1e-10,
          "worst slack " + fmt(worst_slack) + ", sector mu0 deviation " + fmt(worst_mu)};
}

Outcome crit13_uniform_optimality() {
  std::mt19937_64 rng(1013);
  double max_excess = 0.0, max_shortfall = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 4;
    std::set<std::size_t> epicks;
    const std::size_t esize = 3 + rng() % 8;
    while (epicks.size() < esize) epicks.insert(rng() % 16);
    std::vector<std::string> E, S;
    for (std::size_t idx : epicks) E.push_back(index_to_string(idx, n));
    for (const auto& s : E)
      if (S.empty() || rng() % 2) S.push_back(s);
    const AmplitudeProfileReport rep = optimal_amplitude_profile(S, E, 200, rng);
    max_excess = std::max(max_excess, rep.best_objective - rep.uniform_objective);
    max_shortfall = std::max(max_shortfall, rep.uniform_objective - rep.best_objective);
  }
  return {max_excess <= 1e-9 && max_shortfall <= 1e-6,
          "max excess " + fmt(max_excess) + ", max shortfall " + fmt(max_shortfall)};
}

Outcome crit14_mps() {
  std::mt19937_64 rng(1014);
  double max_roundtrip = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + (int)(rng() % 5);
    std::set<std::size_t> picks;
    const std::size_t want =
        1 + rng() % std::min<std::size_t>(8, std::size_t{1} << n);
    while (picks.size() < want) picks.insert(rng() % (std::size_t{1} << n));
    SubsetDescription d;
    d.n = n;
    for (std::size_t idx : picks) d.strings.push_back(index_to_string(idx, n));
    const Vec a = realize_dense(GuidingState{d});
    const Vec b = realize_dense(GuidingState{subset_to_mps(d)});
    const cd phase = a.dot(b);
    max_roundtrip = std::max(
        max_roundtrip,
        (a - (std::abs(phase) > 0 ? phase / std::abs(phase) : cd(1.0)) * b).norm());
  }

  std::normal_distribution<double> gauss;
  double max_amp = 0.0;
  for (int t = 0; t < 50; ++t) {
    MPSDescription m;
    m.n = 2 + (int)(rng() % 5);
    m.d = 2;
    m.chi = 1 + (int)(rng() % 4);
    for (int site = 0; site < m.n; ++site) {
      std::vector<Mat> sym;
      for (int s = 0; s < 2; ++s) {
        Mat a(m.chi, m.chi);
        for (int r = 0; r < m.chi; ++r)
          for (int c = 0; c < m.chi; ++c) a(r, c) = cd(gauss(rng), gauss(rng));
        sym.push_back(a);
      }
      m.tensors.push_back(std::move(sym));
    }
    std::vector<int> symbols;
    for (int site = 0; site < m.n; ++site) symbols.push_back((int)(rng() % 2));
    Mat prod = Mat::Identity(m.chi, m.chi);
    for (int site = 0; site < m.n; ++site)
      prod = prod * m.tensors[(std::size_t)site][(std::size_t)symbols[(std::size_t)site]];
    max_amp = std::max(max_amp, std::abs(mps_amplitude(m, symbols) - prod.trace()));
  }
  return {max_roundtrip <= 1e-10 && max_amp <= 1e-10,
          "round-trip error " + fmt(max_roundtrip) + ", amplitude deviation " +
              fmt(max_amp)};
}

}  // namespace

int main() {
  int failures = 0;
  int id = 0;
  const auto report = [&](const std::string& name, const Outcome& out) {
    ++id;
    if (!out.pass) ++failures;
    std::printf("%s %2d %s (%s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(),
                out.detail.c_str());
    std::fflush(stdout);
  };
  const auto corpus = run_history_corpus();
  report("history-state nullity",
         {corpus.max_residual <= 1e-10,
          "max residual " + fmt(corpus.max_residual) + " over " +
              std::to_string(corpus.instances) + " instances"});
  report("output-energy identity",
         {corpus.max_identity <= 1e-10, "max deviation " + fmt(corpus.max_identity)});
  report("R-state fidelity law", crit3_fidelity_law());
  report("Schrieffer-Wolff decay", crit4_sw_decay());
  report("threshold separation", crit5_threshold_separation());
  report("state-prep corpus", crit6_state_prep());
  report("sample/query access", crit7_sample_query());
  report("geometric lemma", crit8_geometric());
  report("QPE decider", crit9_qpe());
  report("dequantizer", crit10_dequantizer());
  report("Gaussian energy", crit11_gaussian_energy());
  report("weight-k bounds", crit12_weight_k());
  report("uniform-amplitude optimality", crit13_uniform_optimality());
  report("MPS equivalence", crit14_mps());
  return failures == 0 ? 0 : 1;
}

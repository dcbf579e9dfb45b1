#include "glh/feynman_kitaev.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace glh {

namespace {

Mat identity2() { return Mat::Identity(2, 2); }

// Sparse kron of a small dense data-block with a sparse clock operator.
SpMat kron_data_clock(const Mat& data, const SpMat& clock) {
  const Eigen::Index cd_ = clock.rows();
  std::vector<Eigen::Triplet<cd>> trips;
  for (Eigen::Index r = 0; r < data.rows(); ++r)
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      if (data(r, c) == cd(0.0)) continue;
      for (int k = 0; k < clock.outerSize(); ++k)
        for (SpMat::InnerIterator it(clock, k); it; ++it)
          trips.emplace_back(r * cd_ + it.row(), c * cd_ + it.col(),
                             data(r, c) * it.value());
    }
  SpMat out(data.rows() * cd_, data.cols() * cd_);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat clock_dyad(const ClockEncoding& enc, int t, int u) {
  const Eigen::Index dim = Eigen::Index(1) << enc.length();
  SpMat out(dim, dim);
  out.insert((Eigen::Index)string_to_index(enc.codeword(t)),
             (Eigen::Index)string_to_index(enc.codeword(u))) = 1.0;
  out.makeCompressed();
  return out;
}

std::vector<int> clock_support(int data_qubits, int L) {
  std::vector<int> s(L);
  for (int i = 0; i < L; ++i) s[i] = data_qubits + i;
  return s;
}

Mat basis_projector(int value) {
  Mat p = Mat::Zero(2, 2);
  p(value, value) = 1.0;
  return p;
}

int locality_of(const LocalHamiltonian& h) {
  int k = 0;
  for (const auto& t : h.terms) k = std::max(k, t.arity());
  return k;
}

}  // namespace

bool Gate::is_identity() const {
  const Eigen::Index d = matrix.rows();
  return (matrix - Mat::Identity(d, d)).cwiseAbs().maxCoeff() < tol::unitarity;
}

void Gate::validate(int data_qubits) const {
  if (qubits.empty() || qubits.size() > 2)
    throw std::invalid_argument("gates act on one or two qubits");
  for (int q : qubits)
    if (q < 0 || q >= data_qubits) throw std::invalid_argument("gate qubit out of range");
  if (qubits.size() == 2 && qubits[0] == qubits[1])
    throw std::invalid_argument("gate qubits must be distinct");
  const Eigen::Index d = Eigen::Index(1) << qubits.size();
  if (matrix.rows() != d || matrix.cols() != d)
    throw std::invalid_argument("gate matrix dimension mismatch");
  if ((matrix.adjoint() * matrix - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::unitarity)
    throw std::invalid_argument("gate is not unitary");
}

void GateCircuit::validate() const {
  if (W < 1 || m < 0) throw std::invalid_argument("bad register sizes");
  if ((int)x.size() != W) throw std::invalid_argument("input length must equal W");
  for (char c : x)
    if (c != '0' && c != '1') throw std::invalid_argument("input must be a bit string");
  if (gates.empty()) throw std::invalid_argument("circuit needs at least one gate");
  for (const auto& g : gates) g.validate(data_qubits());
}

std::string ClockEncoding::codeword(int t) const {
  if (t < 0 || t > K) throw std::invalid_argument("clock value out of range");
  std::string s(K, '0');
  if (kind == ClockKind::unary) {
    for (int i = 0; i < t; ++i) s[i] = '1';
  } else if (t > 0) {
    s[t - 1] = '1';
  }
  return s;
}

GateCircuit pre_idle(const GateCircuit& c, int N) {
  c.validate();
  if (N < 0) throw std::invalid_argument("pre-idle count must be nonnegative");
  GateCircuit out = c;
  out.gates.clear();
  for (int i = 0; i < N; ++i) out.gates.push_back(Gate{{0}, identity2()});
  out.gates.insert(out.gates.end(), c.gates.begin(), c.gates.end());
  return out;
}

GateCircuit insert_idle(const GateCircuit& c, int s, int S) {
  c.validate();
  if (s < 0 || s > c.K()) throw std::invalid_argument("idle position out of range");
  if (S < 0) throw std::invalid_argument("idle length must be nonnegative");
  GateCircuit out = c;
  std::vector<Gate> idle(S, Gate{{0}, identity2()});
  out.gates.insert(out.gates.begin() + s, idle.begin(), idle.end());
  return out;
}

Vec apply_gate(const Vec& x, const std::vector<int>& qubits, const Mat& u, int n) {
  const int s = (int)qubits.size();
  const std::size_t dim = std::size_t{1} << n;
  if ((std::size_t)x.size() != dim) throw std::invalid_argument("state dimension mismatch");
  std::size_t mask = 0;
  for (int q : qubits) mask |= std::size_t{1} << (n - 1 - q);
  Vec y(x.size());
  const std::size_t bs = std::size_t{1} << s;
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    std::size_t scattered[4] = {0, 0, 0, 0};
    for (std::size_t a = 0; a < bs; ++a) {
      std::size_t idx = base;
      for (int i = 0; i < s; ++i)
        if ((a >> (s - 1 - i)) & 1) idx |= std::size_t{1} << (n - 1 - qubits[i]);
      scattered[a] = idx;
    }
    for (std::size_t a = 0; a < bs; ++a) {
      cd acc = 0.0;
      for (std::size_t b = 0; b < bs; ++b) acc += u((Eigen::Index)a, (Eigen::Index)b) * x((Eigen::Index)scattered[b]);
      y((Eigen::Index)scattered[a]) = acc;
    }
  }
  return y;
}

FKInstance build_fk(const GateCircuit& c, ClockKind kind, double delta, int qubit_cap) {
  c.validate();
  if (delta <= 0.0) throw std::invalid_argument("Delta must be positive");
  const int D = c.data_qubits();
  const int K = c.K();
  if (D + K > qubit_cap) throw std::invalid_argument("qubit cap exceeded");

  FKInstance inst;
  inst.delta = delta;
  inst.enc = ClockEncoding{kind, K};
  inst.W = c.W;
  inst.m = c.m;
  inst.T = K;
  inst.N = 0;
  for (const auto& g : c.gates) {
    if (!g.is_identity()) break;
    ++inst.N;
  }
  inst.T = K - inst.N;
  const int n = D + K;
  const auto clock = clock_support(D, K);

  // H_in: per-qubit penalties at time zero.
  inst.h_in.n = n;
  const SpMat pi0 = clock_dyad(inst.enc, 0, 0);
  for (int j = 0; j < D; ++j) {
    const int bad = j < c.W ? 1 - (c.x[j] - '0') : 1;
    std::vector<int> sup{j};
    sup.insert(sup.end(), clock.begin(), clock.end());
    inst.h_in.terms.push_back(HermitianTerm{sup, kron_data_clock(basis_projector(bad), pi0)});
  }

  // H_clock: penalize illegal clock strings.
  inst.h_clock.n = n;
  if (kind == ClockKind::unary) {
    Mat pen = Mat::Zero(4, 4);
    pen(1, 1) = 1.0;  // |01><01| on adjacent clock qubits
    for (int i = 0; i + 1 < K; ++i)
      inst.h_clock.terms.push_back(HermitianTerm{{D + i, D + i + 1}, pen});
  } else {
    Mat pen = Mat::Zero(4, 4);
    pen(3, 3) = 1.0;  // |11><11| on any clock pair
    for (int i = 0; i < K; ++i)
      for (int j = i + 1; j < K; ++j)
        inst.h_clock.terms.push_back(HermitianTerm{{D + i, D + j}, pen});
  }

  // H_prop: one term per gate, exact clock dyads on the full clock register.
  inst.h_prop.n = n;
  for (int t = 1; t <= K; ++t) {
    const Gate& g = c.gates[t - 1];
    const Eigen::Index gd = Eigen::Index(1) << g.qubits.size();
    SpMat block = kron_data_clock(Mat::Identity(gd, gd),
                                  SpMat(clock_dyad(inst.enc, t, t) + clock_dyad(inst.enc, t - 1, t - 1)));
    block -= kron_data_clock(g.matrix, clock_dyad(inst.enc, t, t - 1));
    block -= kron_data_clock(Mat(g.matrix.adjoint()), clock_dyad(inst.enc, t - 1, t));
    std::vector<int> sup = g.qubits;
    sup.insert(sup.end(), clock.begin(), clock.end());
    inst.h_prop.terms.push_back(HermitianTerm{sup, block});
  }

  // H_out: penalize a rejecting output qubit at time K.
  inst.h_out.n = n;
  {
    std::vector<int> sup{0};
    sup.insert(sup.end(), clock.begin(), clock.end());
    inst.h_out.terms.push_back(
        HermitianTerm{sup, kron_data_clock(basis_projector(0), clock_dyad(inst.enc, K, K))});
  }

  inst.h_in.k = locality_of(inst.h_in);
  inst.h_clock.k = locality_of(inst.h_clock);
  inst.h_prop.k = locality_of(inst.h_prop);
  inst.h_out.k = locality_of(inst.h_out);
  return inst;
}

LocalHamiltonian FKInstance::delta_part() const {
  LocalHamiltonian h;
  h.n = qubits();
  for (const auto* part : {&h_in, &h_clock, &h_prop})
    h.terms.insert(h.terms.end(), part->terms.begin(), part->terms.end());
  h.k = locality_of(h);
  return h;
}

LocalHamiltonian FKInstance::total() const {
  LocalHamiltonian h = delta_part();
  for (auto& t : h.terms) t.block *= cd(delta);
  h.terms.insert(h.terms.end(), h_out.terms.begin(), h_out.terms.end());
  h.k = locality_of(h);
  return h;
}

int FKInstance::nominal_clock_locality() const {
  return enc.kind == ClockKind::unary ? 3 : 2;
}

std::vector<Vec> circuit_snapshots(const GateCircuit& c) {
  c.validate();
  const int D = c.data_qubits();
  Vec phi = Vec::Zero(Eigen::Index(1) << D);
  phi((Eigen::Index)string_to_index(c.x + std::string(c.m, '0'))) = 1.0;
  std::vector<Vec> out{phi};
  for (const auto& g : c.gates) {
    phi = apply_gate(phi, g.qubits, g.matrix, D);
    out.push_back(phi);
  }
  return out;
}

Vec history_state(const GateCircuit& c, const ClockEncoding& enc, int qubit_cap) {
  const int D = c.data_qubits();
  const int K = c.K();
  if (enc.K != K) throw std::invalid_argument("encoding length must match gate count");
  if (D + K > qubit_cap) throw std::invalid_argument("qubit cap exceeded");
  const auto snaps = circuit_snapshots(c);
  const std::size_t cdim = std::size_t{1} << K;
  Vec eta = Vec::Zero(Eigen::Index(1) << (D + K));
  const double w = 1.0 / std::sqrt((double)(K + 1));
  for (int t = 0; t <= K; ++t) {
    const std::size_t cidx = string_to_index(enc.codeword(t));
    for (Eigen::Index d = 0; d < snaps[t].size(); ++d)
      eta((Eigen::Index)((std::size_t)d * cdim + cidx)) += w * snaps[t](d);
  }
  return eta;
}

double acceptance_probability(const GateCircuit& c) {
  const auto snaps = circuit_snapshots(c);
  const Vec& last = snaps.back();
  const int D = c.data_qubits();
  double p = 0.0;
  for (Eigen::Index i = 0; i < last.size(); ++i)
    if (bit_of((std::size_t)i, 0, D) == 1) p += std::norm(last(i));
  return p;
}

GuidingState r_state(const RSetDescription& r) {
  if (r.nu < 1) throw std::invalid_argument("nu must be positive");
  if (r.nu > r.enc.K) throw std::invalid_argument("nu exceeds the clock range");
  for (char ch : r.sigma)
    if (ch != '0' && ch != '1') throw std::invalid_argument("sigma must be a bit string");
  SubsetDescription d;
  d.n = (int)r.sigma.size() + r.enc.length();
  for (int t = 1; t <= r.nu; ++t) d.strings.push_back(r.sigma + r.enc.codeword(t));
  GuidingState g{d};
  g.validate();
  return g;
}

double r_state_history_fidelity(const GateCircuit& c, const ClockEncoding& enc,
                                const RSetDescription& r) {
  if (enc.K != c.K()) throw std::invalid_argument("encoding length must match gate count");
  if ((int)r.sigma.size() != c.data_qubits())
    throw std::invalid_argument("sigma must cover the data register");
  if (r.nu < 1 || r.nu > r.enc.K) throw std::invalid_argument("nu out of range");
  std::map<std::string, int> code_to_time;
  for (int t = 0; t <= enc.K; ++t) code_to_time[enc.codeword(t)] = t;
  const auto snaps = circuit_snapshots(c);
  const Eigen::Index sidx = (Eigen::Index)string_to_index(r.sigma);
  cd overlap = 0.0;
  for (int t = 1; t <= r.nu; ++t) {
    const auto it = code_to_time.find(r.enc.codeword(t));
    if (it == code_to_time.end()) continue;
    overlap += snaps[it->second](sidx);
  }
  overlap /= std::sqrt((double)r.nu * (double)(enc.K + 1));
  return std::norm(overlap);
}

ThresholdReport yes_no_thresholds(int K, double delta, double eps, double rescale) {
  if (K < 1 || delta <= 0.0 || eps < 0.0 || eps >= 1.0 || rescale <= 0.0)
    throw std::invalid_argument("bad threshold parameters");
  ThresholdReport rep;
  const double slack = consts::c_sw / delta;
  rep.a = slack + eps / (K + 1);
  rep.b = -slack + (1.0 - eps) / (K + 1);
  rep.rescale = rescale;
  rep.a_rescaled = rep.a / rescale;
  rep.b_rescaled = rep.b / rescale;
  rep.sw_regime = delta > consts::sw_regime_coeff * (double)K * K * K;
  rep.valid = rep.b > rep.a;
  return rep;
}

HardnessReport verify_hardness_instance(const GateCircuit& c, ClockKind kind,
                                        double delta, int N) {
  const GateCircuit padded = pre_idle(c, N);
  const FKInstance inst = build_fk(padded, kind, delta);
  const int K = padded.K();

  HardnessReport rep;
  const Vec eta = history_state(padded, inst.enc);
  rep.nullity_residual = apply_op(inst.delta_part(), eta).norm();
  rep.out_energy = eta.dot(apply_op(inst.h_out, eta)).real();
  rep.p_acc = acceptance_probability(padded);

  const LocalHamiltonian full = inst.total();
  const Spectrum spec = diagonalize(full);
  rep.ground_energy = spec.lambda0();
  rep.gap = spec.gap();
  const Vec g = spec.eigenvectors.col(0);
  rep.g_eta_distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(g.dot(eta))));
  rep.sw_bound = consts::c_sw / delta;

  RSetDescription r{padded.x + std::string(padded.m, '0'), N, inst.enc};
  rep.r_eta_fidelity = r_state_history_fidelity(padded, inst.enc, r);
  const Vec rvec = realize_dense(r_state(r), inst.qubits());
  rep.r_fidelity = std::norm(rvec.dot(g));
  const double base = std::sqrt(rep.r_eta_fidelity) - rep.g_eta_distance;
  rep.r_fidelity_bound = base > 0.0 ? base * base : 0.0;

  rep.thresholds = yes_no_thresholds(K, delta, 0.0, operator_norm(full).exact);
  return rep;
}

}  // namespace glh

#include "glh/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace glh {

namespace {

Mat rot_y_matrix(double theta) {
  Mat r(2, 2);
  r << std::cos(theta / 2.0), -std::sin(theta / 2.0),  //
      std::sin(theta / 2.0), std::cos(theta / 2.0);
  return r;
}

Mat pauli_x_matrix() {
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

SynthGate ry_gate(int target, double theta, std::vector<int> controls = {},
                  std::string pattern = {}) {
  SynthGate g;
  g.kind = SynthKind::rot_y;
  g.targets = {target};
  g.theta = theta;
  g.controls = std::move(controls);
  g.pattern = std::move(pattern);
  return g;
}

SynthGate x_gate(int target) {
  SynthGate g;
  g.kind = SynthKind::pauli_x;
  g.targets = {target};
  return g;
}

SynthGate cx_gate(std::vector<int> controls, std::string pattern, int target) {
  SynthGate g;
  g.kind = SynthKind::controlled_x;
  g.controls = std::move(controls);
  g.pattern = std::move(pattern);
  g.targets = {target};
  return g;
}

SynthGate block_gate(std::vector<int> targets, Mat block, std::vector<int> controls = {},
                     std::string pattern = {}) {
  SynthGate g;
  g.kind = SynthKind::controlled_block;
  g.targets = std::move(targets);
  g.block = std::move(block);
  g.controls = std::move(controls);
  g.pattern = std::move(pattern);
  return g;
}

// y = (U on targets, conditioned on controls reading `pattern`) x.
Vec apply_controlled(const Vec& x, const SynthGate& g, int n) {
  const int s = (int)g.targets.size();
  const std::size_t dim = std::size_t{1} << n;
  std::size_t tmask = 0;
  for (int q : g.targets) tmask |= std::size_t{1} << (n - 1 - q);
  Mat u;
  switch (g.kind) {
    case SynthKind::rot_y: u = rot_y_matrix(g.theta); break;
    case SynthKind::pauli_x:
    case SynthKind::controlled_x: u = pauli_x_matrix(); break;
    case SynthKind::controlled_block: u = g.block; break;
  }
  Vec y = x;
  const std::size_t bs = std::size_t{1} << s;
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & tmask) continue;
    bool match = true;
    for (std::size_t i = 0; i < g.controls.size() && match; ++i)
      match = bit_of(base, g.controls[i], n) == g.pattern[i] - '0';
    if (!match) continue;
    std::size_t idx[8];
    for (std::size_t a = 0; a < bs; ++a) {
      std::size_t v = base;
      for (int i = 0; i < s; ++i)
        if ((a >> (s - 1 - i)) & 1) v |= std::size_t{1} << (n - 1 - g.targets[i]);
      idx[a] = v;
    }
    for (std::size_t a = 0; a < bs; ++a) {
      cd acc = 0.0;
      for (std::size_t b = 0; b < bs; ++b)
        acc += u((Eigen::Index)a, (Eigen::Index)b) * x((Eigen::Index)idx[b]);
      y((Eigen::Index)idx[a]) = acc;
    }
  }
  return y;
}

// Number of indices in [0, count) whose n-bit string starts with `prefix`.
std::size_t prefix_count(std::size_t count, int n, std::size_t prefix, int len) {
  const std::size_t lo = prefix << (n - len);
  const std::size_t hi = (prefix + 1) << (n - len);
  if (lo >= count) return 0;
  return std::min(hi, count) - lo;
}

std::string pattern_of(std::size_t prefix, int len) {
  std::string s(len, '0');
  for (int i = 0; i < len; ++i)
    if ((prefix >> (len - 1 - i)) & 1) s[i] = '1';
  return s;
}

void remap_qubits(SynthCircuit& sc, const std::vector<int>& map) {
  for (auto& g : sc.gates) {
    for (int& q : g.controls) q = map[q];
    for (int& q : g.targets) q = map[q];
  }
}

bool uniform_amplitudes(const SubsetDescription& c) {
  if (c.amplitudes.empty()) return true;
  const cd want = 1.0 / std::sqrt((double)c.strings.size());
  for (const auto& a : c.amplitudes)
    if (std::abs(a - want) > 1e-12) return false;
  return true;
}

// Unitary on m qubits sending |b>|0^{m-1}> to V.col(b); completion by
// Gram-Schmidt over standard basis vectors, deterministic order.
Mat complete_isometry(const Mat& v) {
  const Eigen::Index dim = v.rows();
  const int m = (int)std::lround(std::log2((double)dim));
  Mat u = Mat::Zero(dim, dim);
  u.col(0) = v.col(0);
  u.col(dim / 2) = v.col(1);
  std::vector<Eigen::Index> filled{0, dim / 2};
  Eigen::Index next = 0;
  for (Eigen::Index col = 0; col < dim; ++col) {
    if (col == 0 || col == dim / 2) continue;
    while (true) {
      if (next >= dim) throw std::runtime_error("isometry completion exhausted basis");
      Vec cand = Vec::Zero(dim);
      cand(next++) = 1.0;
      for (Eigen::Index f : filled) cand -= u.col(f) * u.col(f).dot(cand);
      if (cand.norm() > 1e-6) {
        u.col(col) = cand.normalized();
        filled.push_back(col);
        break;
      }
    }
  }
  (void)m;
  return u;
}

}  // namespace

void SynthGate::validate(int n) const {
  if (pattern.size() != controls.size())
    throw std::invalid_argument("control pattern length mismatch");
  std::set<int> seen;
  for (int q : controls)
    if (q < 0 || q >= n || !seen.insert(q).second)
      throw std::invalid_argument("bad control qubit");
  for (int q : targets)
    if (q < 0 || q >= n || !seen.insert(q).second)
      throw std::invalid_argument("bad target qubit");
  for (char c : pattern)
    if (c != '0' && c != '1') throw std::invalid_argument("pattern must be bits");
  if (kind == SynthKind::controlled_block) {
    const Eigen::Index d = Eigen::Index(1) << targets.size();
    if (block.rows() != d || block.cols() != d)
      throw std::invalid_argument("block dimension mismatch");
    if ((block.adjoint() * block - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::unitarity)
      throw std::invalid_argument("block is not unitary");
    if (targets.size() > 3) throw std::invalid_argument("block too wide");
  } else if (targets.size() != 1) {
    throw std::invalid_argument("single-target gate");
  }
}

SynthCounts SynthCircuit::counts() const {
  SynthCounts c;
  for (const auto& g : gates) switch (g.kind) {
      case SynthKind::rot_y: ++c.rot_y; break;
      case SynthKind::pauli_x: ++c.pauli_x; break;
      case SynthKind::controlled_x: ++c.controlled_x; break;
      case SynthKind::controlled_block: ++c.controlled_block; break;
    }
  return c;
}

SynthCircuit grover_rudolph_uniform(std::size_t count, int n) {
  if (n < 1 || n > caps::apply_qubits) throw std::invalid_argument("bad qubit count");
  if (count < 1 || count > (std::size_t{1} << n))
    throw std::invalid_argument("count out of range");
  SynthCircuit sc;
  sc.qubits = n;
  for (int j = 0; j < n; ++j) {
    struct Branch {
      std::size_t prefix;
      double ratio;
    };
    std::vector<Branch> alive;
    for (std::size_t p = 0; p < (std::size_t{1} << j); ++p) {
      const std::size_t m = prefix_count(count, n, p, j);
      if (m == 0) continue;
      alive.push_back({p, (double)prefix_count(count, n, p << 1, j + 1) / (double)m});
    }
    bool same = true;
    for (const auto& b : alive) same &= b.ratio == alive.front().ratio;
    auto emit = [&](double ratio, std::vector<int> ctrls, std::string pat) {
      if (ratio == 1.0) return;
      if (ratio == 0.0) {
        if (ctrls.empty())
          sc.gates.push_back(x_gate(j));
        else
          sc.gates.push_back(cx_gate(std::move(ctrls), std::move(pat), j));
        return;
      }
      sc.gates.push_back(
          ry_gate(j, 2.0 * std::acos(std::sqrt(ratio)), std::move(ctrls), std::move(pat)));
    };
    if (same) {
      emit(alive.front().ratio, {}, {});
    } else {
      std::vector<int> ctrls(j);
      for (int i = 0; i < j; ++i) ctrls[i] = i;
      for (const auto& b : alive) emit(b.ratio, ctrls, pattern_of(b.prefix, j));
    }
  }
  return sc;
}

PermutationPlan plan_permutation(const std::vector<std::string>& B,
                                 const std::vector<std::string>& C) {
  if (B.size() != C.size()) throw std::invalid_argument("set sizes must match");
  if (std::set<std::string>(B.begin(), B.end()).size() != B.size() ||
      std::set<std::string>(C.begin(), C.end()).size() != C.size())
    throw std::invalid_argument("elements must be distinct");
  std::map<std::string, std::string> next;
  std::set<std::string> has_in;
  for (std::size_t j = 0; j < B.size(); ++j) {
    next[B[j]] = C[j];
    has_in.insert(C[j]);
  }
  PermutationPlan plan;
  std::set<std::string> visited;
  // chains first: heads have an outgoing edge but no incoming one
  for (const auto& [head, unused] : next) {
    (void)unused;
    if (has_in.count(head) || visited.count(head)) continue;
    std::vector<std::string> cyc;
    std::string cur = head;
    while (true) {
      cyc.push_back(cur);
      visited.insert(cur);
      auto it = next.find(cur);
      if (it == next.end()) break;  // tail closes back to the head
      cur = it->second;
    }
    if (cyc.size() >= 2) plan.cycles.push_back(cyc);
  }
  // remaining components are pure cycles
  for (const auto& [start, unused] : next) {
    (void)unused;
    if (visited.count(start)) continue;
    std::vector<std::string> cyc;
    std::string cur = start;
    do {
      cyc.push_back(cur);
      visited.insert(cur);
      cur = next.at(cur);
    } while (cur != start);
    if (cyc.size() >= 2) plan.cycles.push_back(cyc);
  }
  return plan;
}

std::vector<SynthGate> cycle_to_gates(const std::vector<std::string>& cycle, int ancilla) {
  if (cycle.size() < 2) throw std::invalid_argument("degenerate cycle");
  const int n = (int)cycle.front().size();
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<SynthGate> gates;
  const std::size_t l = cycle.size();
  for (std::size_t i = 0; i < l; ++i) {
    gates.push_back(cx_gate(all, cycle[i], ancilla));  // mark x_i
    const std::string& from = cycle[i];
    const std::string& to = cycle[(i + 1) % l];
    for (int r = 0; r < n; ++r)
      if (from[r] != to[r]) gates.push_back(cx_gate({ancilla}, "1", r));
  }
  gates.push_back(cx_gate(all, cycle.front(), ancilla));  // boundary reset
  return gates;
}

SynthCircuit synth_subset_state(const SubsetDescription& c) {
  c.validate();
  if (!uniform_amplitudes(c))
    throw std::invalid_argument("only uniform amplitudes are synthesized");
  const int n = c.n;
  SynthCircuit sc = grover_rudolph_uniform(c.strings.size(), n);
  sc.qubits = n + 1;
  std::vector<std::string> B;
  for (std::size_t j = 0; j < c.strings.size(); ++j) B.push_back(index_to_string(j, n));
  for (const auto& cyc : plan_permutation(B, c.strings).cycles) {
    auto gates = cycle_to_gates(cyc, n);
    sc.gates.insert(sc.gates.end(), gates.begin(), gates.end());
  }
  return sc;
}

SynthCircuit synth_scess(const ScessDescription& d) {
  d.validate();
  const int n = d.base.n;
  const int M = d.enc.output_length();
  std::vector<int> starts(n);
  std::vector<int> widths(n);
  for (int j = 0, off = 0; j < n; ++j) {
    widths[j] = (int)std::lround(std::log2((double)d.enc.isometries[j].rows()));
    starts[j] = off;
    off += widths[j];
  }
  SynthCircuit sc = synth_subset_state(d.base);
  std::vector<int> map(n + 1);
  for (int j = 0; j < n; ++j) map[j] = starts[j];
  map[n] = M;  // ancilla rides after the output register
  remap_qubits(sc, map);
  sc.qubits = M + 1;
  for (int j = 0; j < n; ++j) {
    if (widths[j] == 1 &&
        (d.enc.isometries[j] - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14)
      continue;
    std::vector<int> tg(widths[j]);
    for (int i = 0; i < widths[j]; ++i) tg[i] = starts[j] + i;
    sc.gates.push_back(block_gate(tg, complete_isometry(d.enc.isometries[j])));
  }
  return sc;
}

SynthCircuit synth_history(const GateCircuit& c, ClockKind kind) {
  if (kind != ClockKind::unary)
    throw std::invalid_argument("unsupported clock encoding for synthesis");
  c.validate();
  const int D = c.data_qubits();
  const int K = c.K();
  SynthCircuit sc;
  sc.qubits = D + K;
  for (int j = 0; j < c.W; ++j)
    if (c.x[j] == '1') sc.gates.push_back(x_gate(j));
  // uniform unary clock: cos(theta_j / 2) = sqrt(1 / (K + 2 - j)), j = 1..K
  for (int j = 1; j <= K; ++j) {
    const double theta = 2.0 * std::acos(std::sqrt(1.0 / (double)(K + 2 - j)));
    if (j == 1)
      sc.gates.push_back(ry_gate(D, theta));
    else
      sc.gates.push_back(ry_gate(D + j - 1, theta, {D + j - 2}, "1"));
  }
  for (int t = 1; t <= K; ++t)
    sc.gates.push_back(block_gate(c.gates[t - 1].qubits, c.gates[t - 1].matrix,
                                  {D + t - 1}, "1"));
  return sc;
}

Vec simulate(const SynthCircuit& sc, const std::string& input) {
  if (sc.qubits < 1 || sc.qubits > caps::apply_qubits)
    throw std::length_error("qubit count exceeds simulation cap");
  if ((int)input.size() != sc.qubits) throw std::invalid_argument("input length mismatch");
  Vec v = Vec::Zero(Eigen::Index(1) << sc.qubits);
  v((Eigen::Index)string_to_index(input)) = 1.0;
  for (const auto& g : sc.gates) {
    g.validate(sc.qubits);
    v = apply_controlled(v, g, sc.qubits);
  }
  return v;
}

std::string emit_text(const SynthCircuit& sc) {
  std::ostringstream out;
  out.precision(12);
  auto ctrl = [&](const SynthGate& g) {
    std::ostringstream s;
    s << "[" << g.pattern << "@";
    for (std::size_t i = 0; i < g.controls.size(); ++i)
      s << (i ? "," : "") << g.controls[i];
    s << "]";
    return s.str();
  };
  for (const auto& g : sc.gates) switch (g.kind) {
      case SynthKind::rot_y:
        out << "RY ";
        if (!g.controls.empty()) out << ctrl(g) << " -> ";
        out << g.targets[0] << " " << g.theta << "\n";
        break;
      case SynthKind::pauli_x:
        out << "X " << g.targets[0] << "\n";
        break;
      case SynthKind::controlled_x:
        out << "CX " << ctrl(g) << " -> " << g.targets[0] << "\n";
        break;
      case SynthKind::controlled_block:
        out << "CBLOCK ";
        if (!g.controls.empty()) out << ctrl(g) << " -> ";
        for (std::size_t i = 0; i < g.targets.size(); ++i)
          out << (i ? "," : "") << g.targets[i];
        out << " dim " << g.block.rows() << "\n";
        break;
    }
  return out.str();
}

}  // namespace glh

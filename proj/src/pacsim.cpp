#include "qlearn/pacsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

namespace qlearn {

namespace {

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
  std::complex<double> s = 0;
  for (size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp(i)) * b.amp(i);
  return s;
}

void clear_state(StateVector& sv) {
  for (size_t i = 0; i < sv.dim(); ++i) sv.amp(i) = 0.0;
}

}  // namespace

Distribution::Distribution(unsigned n_, std::vector<double> w)
    : n(n_), weights(std::move(w)) {
  if (n > 20) throw std::invalid_argument("Distribution: domain too large");
  if (weights.size() != (size_t{1} << n))
    throw std::invalid_argument("Distribution: needs 2^n weights");
  double sum = 0;
  for (double x : weights) {
    if (x < 0) throw std::invalid_argument("Distribution: negative weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("Distribution: weights must sum to 1");
}

StateVector qex_single_state(const Concept& c, const Distribution& D) {
  if (c.size() != D.weights.size())
    throw std::invalid_argument("qex_single_state: concept/distribution mismatch");
  StateVector sv(D.n + 1);
  clear_state(sv);
  for (uint64_t x = 0; x < c.size(); ++x) {
    double w = D.weights[x];
    if (w <= 0) continue;
    sv.amp(x | (uint64_t{c.get(x)} << D.n)) = std::sqrt(w);
  }
  sv.check_norm();
  return sv;
}

void apply_qex(StateVector& state, const Concept& c, const Distribution& D,
               unsigned block) {
  if (c.size() != D.weights.size())
    throw std::invalid_argument("apply_qex: concept/distribution mismatch");
  unsigned bb = D.n + 1;
  if (uint64_t{block + 1} * bb > state.num_qubits())
    throw std::invalid_argument("apply_qex: block outside the register");
  unsigned shift = block * bb;
  uint64_t mask = (uint64_t{1} << bb) - 1;
  std::vector<std::complex<double>> out(state.dim(), 0.0);
  for (size_t idx = 0; idx < state.dim(); ++idx) {
    std::complex<double> a = state.amp(idx);
    if (a == std::complex<double>(0.0)) continue;
    if ((idx >> shift) & mask)
      throw std::logic_error("apply_qex: block not reset");
    for (uint64_t x = 0; x < c.size(); ++x) {
      double w = D.weights[x];
      if (w <= 0) continue;
      uint64_t bv = x | (uint64_t{c.get(x)} << D.n);
      out[idx | (bv << shift)] += a * std::sqrt(w);
    }
  }
  for (size_t i = 0; i < state.dim(); ++i) state.amp(i) = out[i];
  state.check_norm();
}

TwoPointInstance two_point_instance(double epsilon) {
  if (!(epsilon > 0 && epsilon < 1.0 / 3))
    throw std::invalid_argument("two_point_instance: epsilon must lie in (0, 1/3)");
  Concept c0(2), c1(2);
  c1.set(1, true);
  Distribution D(1, {1 - 3 * epsilon, 3 * epsilon});
  return {std::move(c0), std::move(c1), std::move(D), epsilon};
}

double t_copy_inner_product(const Concept& c0, const Concept& c1,
                            const Distribution& D, unsigned T) {
  if (c0.size() != D.weights.size() || c1.size() != D.weights.size())
    throw std::invalid_argument("t_copy_inner_product: arity mismatch");
  if (T < 1) throw std::invalid_argument("t_copy_inner_product: T must be >= 1");
  double agree = 0;
  for (uint64_t x = 0; x < c0.size(); ++x)
    if (c0.get(x) == c1.get(x)) agree += D.weights[x];
  return std::pow(agree, static_cast<double>(T));
}

StateVector t_copy_state(const Concept& c, const Distribution& D, unsigned T) {
  if (c.size() != D.weights.size())
    throw std::invalid_argument("t_copy_state: concept/distribution mismatch");
  if (T < 1) throw std::invalid_argument("t_copy_state: T must be >= 1");
  unsigned bb = D.n + 1;
  if (uint64_t{T} * bb > 24)
    throw std::invalid_argument("t_copy_state: register too large");
  std::vector<std::pair<uint64_t, double>> support;
  for (uint64_t x = 0; x < c.size(); ++x)
    if (D.weights[x] > 0)
      support.emplace_back(x | (uint64_t{c.get(x)} << D.n),
                           std::sqrt(D.weights[x]));
  StateVector sv(T * bb);
  clear_state(sv);
  std::vector<size_t> digit(T, 0);  // odometer over support^T
  while (true) {
    uint64_t idx = 0;
    double a = 1;
    for (unsigned j = 0; j < T; ++j) {
      idx |= support[digit[j]].first << (j * bb);
      a *= support[digit[j]].second;
    }
    sv.amp(idx) += a;
    unsigned j = 0;
    while (j < T && ++digit[j] == support.size()) digit[j++] = 0;
    if (j == T) break;
  }
  sv.check_norm();
  return sv;
}

uint64_t two_point_sample_threshold(double epsilon, double delta) {
  if (!(epsilon > 0 && epsilon < 1.0 / 3))
    throw std::invalid_argument("two_point_sample_threshold: epsilon must lie in (0, 1/3)");
  if (!(delta > 0 && delta < 1))
    throw std::invalid_argument("two_point_sample_threshold: delta must lie in (0, 1)");
  if (4 * delta >= 1) return 0;
  double t = std::log(4 * delta) / (2 * std::log(1 - 3 * epsilon));
  return static_cast<uint64_t>(std::ceil(t));
}

double binary_entropy(double x) {
  if (!(x >= 0 && x <= 1))
    throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  if (x == 0 || x == 1) return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

std::vector<uint32_t> greedy_code(unsigned d, unsigned min_dist) {
  if (d < 1 || d > 24) throw std::invalid_argument("greedy_code: d must be 1..24");
  if (min_dist < 1) throw std::invalid_argument("greedy_code: min_dist must be >= 1");
  uint32_t limit = uint32_t{1} << d;
  std::vector<uint32_t> code;
  if (min_dist == 1) {  // everything qualifies
    code.resize(limit);
    for (uint32_t w = 0; w < limit; ++w) code[w] = w;
    return code;
  }
  for (uint32_t w = 0; w < limit; ++w) {
    bool ok = true;
    for (uint32_t s : code)
      if (static_cast<unsigned>(std::popcount(w ^ s)) < min_dist) {
        ok = false;
        break;
      }
    if (ok) code.push_back(w);
  }
  return code;
}

PacHardInstance ehkv_instance(unsigned d, double epsilon, unsigned n) {
  if (d < 1 || d > 24) throw std::invalid_argument("ehkv_instance: d must be 1..24");
  if (!(epsilon > 0 && epsilon <= 1.0 / 32))
    throw std::invalid_argument("ehkv_instance: epsilon must lie in (0, 1/32]");
  if (n > 20) throw std::invalid_argument("ehkv_instance: domain too large");
  if ((uint64_t{1} << n) < uint64_t{d} + 1)
    throw std::invalid_argument("ehkv_instance: domain too small to hold d+1 points");

  PacHardInstance inst;
  inst.d = d;
  inst.n = n;
  inst.epsilon = epsilon;
  inst.delta = 0.2;
  for (uint64_t i = 0; i <= d; ++i) inst.shattered.push_back(i);

  std::vector<double> w(size_t{1} << n, 0.0);
  w[0] = 1 - 8 * epsilon;
  for (unsigned i = 1; i <= d; ++i) w[i] = 8 * epsilon / d;
  inst.dist = Distribution(n, std::move(w));

  inst.code = greedy_code(d, (d + 3) / 4);
  inst.packing_target = uint64_t{1} << ((d + 5) / 6);
  inst.packing_met = inst.code.size() >= inst.packing_target;

  for (uint32_t s : inst.code) {
    Concept c(size_t{1} << n);  // 0 off the shattered points and at x_0
    for (unsigned j = 1; j <= d; ++j) c.set(j, (s >> (j - 1)) & 1);
    inst.concepts.push_back(std::move(c));
  }
  return inst;
}

PacState psi_t_state(const Concept& c, const PacHardInstance& inst, unsigned t) {
  if (t < 1 || t > 4) throw std::invalid_argument("psi_t_state: t must be 1..4");
  StateVector sv = t_copy_state(c, inst.dist, t);
  return {t, 0.0, std::move(sv)};
}

PacState phi_t_state(const Concept& c, const PacHardInstance& inst, unsigned t) {
  if (t < 1 || t > 4) throw std::invalid_argument("phi_t_state: t must be 1..4");
  unsigned bb = inst.n + 1;
  if (uint64_t{t} * bb > 24)
    throw std::invalid_argument("phi_t_state: register too large");
  if (c.size() != (size_t{1} << inst.n))
    throw std::invalid_argument("phi_t_state: concept arity mismatch");

  double e = inst.epsilon;
  double w0 = 1 - 8 * e;
  auto blockval = [&](uint64_t x) { return x | (uint64_t{c.get(x)} << inst.n); };

  StateVector sv(t * bb);
  clear_state(sv);

  uint64_t base = 0;  // every block carries the heavy point
  for (unsigned j = 0; j < t; ++j) base |= blockval(0) << (j * bb);
  sv.amp(base) = std::pow(w0, t / 2.0);

  double a1 = std::pow(w0, (t - 1) / 2.0) * std::sqrt(8 * e / inst.d);
  uint64_t bmask = (uint64_t{1} << bb) - 1;
  for (unsigned j = 0; j < t; ++j)
    for (uint64_t i = 1; i <= inst.d; ++i) {
      uint64_t idx = (base & ~(bmask << (j * bb))) | (blockval(i) << (j * bb));
      sv.amp(idx) += a1;
    }

  // alpha^2 = 1 - (1-8e)^{t-1} (1-8e+8te); exactly 0 at t = 1.
  double alpha = 0;
  if (t >= 2) {
    double alpha2 = 1 - std::pow(w0, t - 1.0) * (w0 + 8 * t * e);
    alpha = std::sqrt(std::max(0.0, alpha2));
    if (alpha > 0) {
      // z: first block |x_1, c(x_1)>, second block |x_1, 1-c(x_1)>, rest 0.
      uint64_t z = blockval(1) | ((blockval(1) ^ (uint64_t{1} << inst.n)) << bb);
      sv.amp(z) += alpha;
    }
  }
  sv.check_norm();
  return {t, alpha, std::move(sv)};
}

double psi_phi_inner(const Concept& c, const PacHardInstance& inst, unsigned t) {
  PacState psi = psi_t_state(c, inst, t);
  PacState phi = phi_t_state(c, inst, t);
  return inner_product(psi.state, phi.state).real();
}

double psi_phi_closed_form(double epsilon, unsigned t) {
  double w0 = 1 - 8 * epsilon;
  return std::pow(w0, static_cast<double>(t)) * (1 + 8 * t * epsilon / w0);
}

bool fidelity_bound_check(const StateVector& s0, const StateVector& s1,
                          const std::vector<uint64_t>& projector) {
  if (s0.num_qubits() != s1.num_qubits())
    throw std::invalid_argument("fidelity_bound_check: register size mismatch");
  double p0 = 0, p1 = 0;
  for (uint64_t i : projector) {
    if (i >= s0.dim())
      throw std::invalid_argument("fidelity_bound_check: projector index out of range");
    p0 += std::norm(s0.amp(i));
    p1 += std::norm(s1.amp(i));
  }
  double delta = std::max(1 - p0, p1);
  if (delta >= 0.5) throw std::runtime_error("no separating delta");
  double overlap = std::abs(inner_product(s0, s1));
  return overlap <= 2 * std::sqrt(delta * (1 - delta)) + 1e-12;
}

std::vector<FormulaRow> pac_formula_rows() {
  std::vector<FormulaRow> rows;
  char buf[96];
  auto add = [&rows](const char* id, const char* params, double closed, double numeric) {
    rows.push_back({id, params, closed, numeric, std::abs(closed - numeric)});
  };

  for (double eps : {1.0 / 64, 1.0 / 32, 0.1}) {
    TwoPointInstance tp = two_point_instance(eps);
    for (unsigned T = 1; T <= 3; ++T) {
      StateVector s0 = t_copy_state(tp.c0, tp.D, T);
      StateVector s1 = t_copy_state(tp.c1, tp.D, T);
      std::snprintf(buf, sizeof buf, "eps=%.10g,T=%u", eps, T);
      add("t_copy_inner", buf, std::pow(1 - 3 * eps, static_cast<double>(T)),
          inner_product(s0, s1).real());
    }
  }

  for (unsigned d : {4u, 8u}) {
    unsigned n = (d == 4) ? 3u : 4u;
    for (double eps : {1.0 / 64, 1.0 / 32}) {
      PacHardInstance inst = ehkv_instance(d, eps, n);
      for (unsigned t = 1; t <= 4; ++t) {
        std::snprintf(buf, sizeof buf, "d=%u,eps=%.10g,t=%u", d, eps, t);
        add("psi_phi_inner", buf, psi_phi_closed_form(eps, t),
            psi_phi_inner(inst.concepts.front(), inst, t));
      }
    }
  }

  for (double eps : {1.0 / 32, 0.1}) {
    for (double delta : {0.2, 0.01}) {
      uint64_t brute = 0;
      double p = 1.0, step = (1 - 3 * eps) * (1 - 3 * eps);
      while (p > 4 * delta) {
        p *= step;
        ++brute;
      }
      std::snprintf(buf, sizeof buf, "eps=%.10g,delta=%.10g", eps, delta);
      add("sample_threshold", buf,
          static_cast<double>(two_point_sample_threshold(eps, delta)),
          static_cast<double>(brute));
    }
  }

  add("binary_entropy", "x=0.25", 0.81127812445913283, binary_entropy(0.25));
  add("binary_entropy", "x=0.5", 1.0, binary_entropy(0.5));
  return rows;
}

}  // namespace qlearn

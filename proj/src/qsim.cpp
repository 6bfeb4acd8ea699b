#include "qlearn/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qlearn {

namespace {
constexpr double kNormTol = 1e-9;
constexpr double kSqrtHalf = 0.70710678118654752440;
}  // namespace

StateVector::StateVector(unsigned num_qubits) : nq_(num_qubits) {
  if (num_qubits == 0 || num_qubits > 24)
    throw std::invalid_argument("StateVector: qubit count must be in [1, 24]");
  amps_.assign(size_t{1} << num_qubits, {0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::check_norm() const {
  if (std::abs(norm() - 1.0) > kNormTol)
    throw std::logic_error("StateVector: norm drifted");
}

void apply_qmq(StateVector& state, BoolOracle& oracle,
               const std::vector<unsigned>& input_wires, unsigned ancilla_wire) {
  const unsigned nq = state.num_qubits();
  std::set<unsigned> seen;
  for (unsigned w : input_wires) {
    if (w >= nq) throw std::invalid_argument("apply_qmq: wire out of range");
    if (!seen.insert(w).second) throw std::invalid_argument("apply_qmq: duplicate wire");
  }
  if (ancilla_wire >= nq || seen.count(ancilla_wire))
    throw std::invalid_argument("apply_qmq: ancilla clashes with inputs");

  const uint64_t anc = uint64_t{1} << ancilla_wire;
  for (uint64_t idx = 0; idx < state.dim(); ++idx) {
    if (idx & anc) continue;  // handle each (x, 0)/(x, 1) pair once
    uint64_t x = 0;
    for (size_t j = 0; j < input_wires.size(); ++j)
      if ((idx >> input_wires[j]) & 1) x |= uint64_t{1} << j;
    if (oracle.truth(x)) std::swap(state.amp(idx), state.amp(idx | anc));
  }
  oracle.charge_quantum();
  state.check_norm();
}

void apply_phase_oracle(StateVector& state, BoolOracle& oracle) {
  for (uint64_t x = 0; x < state.dim(); ++x)
    if (oracle.truth(x)) state.amp(x) = -state.amp(x);
  oracle.charge_quantum();
  state.check_norm();
}

void apply_hadamards(StateVector& state, unsigned first, unsigned count) {
  if (first + count > state.num_qubits())
    throw std::invalid_argument("apply_hadamards: wires out of range");
  for (unsigned q = first; q < first + count; ++q) {
    const uint64_t bit = uint64_t{1} << q;
    for (uint64_t idx = 0; idx < state.dim(); ++idx) {
      if (idx & bit) continue;
      auto a = state.amp(idx), b = state.amp(idx | bit);
      state.amp(idx) = (a + b) * kSqrtHalf;
      state.amp(idx | bit) = (a - b) * kSqrtHalf;
    }
  }
  state.check_norm();
}

StateVector prepare_uniform_subset(const std::vector<uint64_t>& I, unsigned num_qubits) {
  if (I.empty()) throw std::invalid_argument("prepare_uniform_subset: empty subset");
  StateVector s(num_qubits);
  s.amp(0) = 0.0;
  const double a = 1.0 / std::sqrt(static_cast<double>(I.size()));
  for (uint64_t x : I) {
    if (x >= s.dim()) throw std::invalid_argument("prepare_uniform_subset: input too wide");
    s.amp(x) = a;
  }
  s.check_norm();
  return s;
}

void grover_iterate(StateVector& state, BoolOracle& oracle,
                    const std::vector<uint64_t>& I) {
  double outside = 0;
  std::vector<char> in_I(state.dim(), 0);
  for (uint64_t x : I) in_I[x] = 1;
  for (uint64_t x = 0; x < state.dim(); ++x)
    if (!in_I[x]) outside += std::norm(state.amp(x));
  if (outside > kNormTol)
    throw std::logic_error("grover_iterate: state leaked outside the subset");

  apply_phase_oracle(state, oracle);

  std::complex<double> mean = 0;
  for (uint64_t x : I) mean += state.amp(x);
  mean /= static_cast<double>(I.size());
  for (uint64_t x : I) state.amp(x) = 2.0 * mean - state.amp(x);
  state.check_norm();
}

uint64_t measure_all(const StateVector& state, SplitMix64& rng) {
  const double u = rng.next_unit();
  double acc = 0;
  for (uint64_t x = 0; x + 1 < state.dim(); ++x) {
    acc += std::norm(state.amp(x));
    if (u < acc) return x;
  }
  return state.dim() - 1;
}

std::vector<double> measurement_distribution(const StateVector& state) {
  std::vector<double> p(state.dim());
  for (uint64_t x = 0; x < state.dim(); ++x) p[x] = std::norm(state.amp(x));
  return p;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
  double s = 0;
  for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s;
}

double euclidean_distance(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("euclidean_distance: dim mismatch");
  double s = 0;
  for (uint64_t x = 0; x < a.dim(); ++x) s += std::norm(a.amp(x) - b.amp(x));
  return std::sqrt(s);
}

uint64_t bbht_budget(size_t subset_size) {
  return static_cast<uint64_t>(
      std::ceil(4.5 * std::sqrt(static_cast<double>(subset_size))));
}

uint64_t bbht_subset_search(BoolOracle& oracle, const std::vector<uint64_t>& I,
                            SplitMix64& rng) {
  if (I.empty()) throw std::invalid_argument("bbht_subset_search: empty subset");
  const uint64_t budget = bbht_budget(I.size());
  const double m_cap = std::sqrt(static_cast<double>(I.size()));
  // Zero-iteration rounds are free, so a deterministic round cap guarantees
  // termination when nothing is marked.
  const uint64_t round_cap = 2 * budget + 50;

  double M = 1.0;
  uint64_t used = 0;
  uint64_t last = I[0];
  for (uint64_t round = 0; round < round_cap; ++round) {
    uint64_t j = rng.next_below(static_cast<uint64_t>(std::ceil(M)));
    j = std::min(j, budget - used);

    StateVector state = prepare_uniform_subset(I, oracle.input_bits);
    for (uint64_t it = 0; it < j; ++it) grover_iterate(state, oracle, I);
    used += j;

    last = measure_all(state, rng);
    if (oracle.truth(last)) return last;  // screening only; not a charged query
    if (used == budget) break;
    M = std::min(M * 1.2, m_cap);
  }
  return last;
}

uint64_t bernstein_vazirani(BoolOracle& parity_oracle, unsigned n) {
  std::vector<uint64_t> all(size_t{1} << n);
  for (uint64_t x = 0; x < all.size(); ++x) all[x] = x;
  StateVector state = prepare_uniform_subset(all, n);
  apply_phase_oracle(state, parity_oracle);
  apply_hadamards(state, 0, n);

  uint64_t best = 0;
  double best_p = -1;
  for (uint64_t x = 0; x < state.dim(); ++x) {
    double p = std::norm(state.amp(x));
    if (p > best_p) {
      best_p = p;
      best = x;
    }
  }
  // The final state is exactly a basis vector for a true parity oracle.
  if (best_p < 1.0 - 1e-9)
    throw std::logic_error("bernstein_vazirani: oracle is not a parity");
  return best;
}

namespace {

// Post-oracle, post-Hadamard Simon state over 2m qubits: qubits [0, m) hold
// the query register, [m, 2m) hold f's output.
StateVector simon_final_state(const MultiOutputFunction& f) {
  const unsigned m = f.m;
  if (m == 0 || 2 * m > 24) throw std::invalid_argument("simon: m out of range");
  const uint64_t X = uint64_t{1} << m;
  if (f.table.size() != X) throw std::invalid_argument("simon: bad table size");

  bool constant = true;
  for (uint64_t x = 1; x < X && constant; ++x) constant = f.table[x] == f.table[0];
  if (constant) throw std::invalid_argument("simon: oracle is constant");

  StateVector state(2 * m);
  state.amp(0) = 0.0;
  const double a = 1.0 / std::sqrt(static_cast<double>(X));
  for (uint64_t x = 0; x < X; ++x) state.amp(x | (f.table[x] << m)) = a;
  apply_hadamards(state, 0, m);
  return state;
}

std::vector<double> x_marginal(const StateVector& state, unsigned m) {
  const uint64_t X = uint64_t{1} << m;
  std::vector<double> p(X, 0.0);
  for (uint64_t idx = 0; idx < state.dim(); ++idx)
    p[idx & (X - 1)] += std::norm(state.amp(idx));
  return p;
}

}  // namespace

uint64_t simon_sample(const MultiOutputFunction& f, QueryLedger& ledger,
                      SplitMix64& rng) {
  StateVector state = simon_final_state(f);
  ledger.charge_quantum();
  auto p = x_marginal(state, f.m);
  const double u = rng.next_unit();
  double acc = 0;
  for (uint64_t y = 0; y + 1 < p.size(); ++y) {
    acc += p[y];
    if (u < acc) return y;
  }
  return p.size() - 1;
}

std::vector<double> simon_x_marginal(const MultiOutputFunction& f) {
  return x_marginal(simon_final_state(f), f.m);
}

}  // namespace qlearn

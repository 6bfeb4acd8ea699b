#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qlearn/bitvec.hpp"
#include "qlearn/class_zoo.hpp"
#include "qlearn/splitmix.hpp"

namespace qlearn {

// Oracle-call accounting, split into named phases. Only oracle applications
// are charged; state preparation, diffusion and measurement are free, so the
// totals are query counts in the query-complexity sense.
class QueryLedger {
 public:
  struct Phase {
    std::string label;
    uint64_t quantum = 0;
    uint64_t classical = 0;
  };

  void begin_phase(std::string label) { phases_.push_back({std::move(label), 0, 0}); }
  void charge_quantum(uint64_t k = 1) { current().quantum += k; }
  void charge_classical(uint64_t k = 1) { current().classical += k; }

  uint64_t quantum_total() const {
    uint64_t t = 0;
    for (const auto& p : phases_) t += p.quantum;
    return t;
  }
  uint64_t classical_total() const {
    uint64_t t = 0;
    for (const auto& p : phases_) t += p.classical;
    return t;
  }
  const std::vector<Phase>& phases() const { return phases_; }

 private:
  Phase& current() {
    if (phases_.empty()) phases_.push_back({"main", 0, 0});
    return phases_.back();
  }
  std::vector<Phase> phases_;
};

// A Boolean membership oracle c : {0,1}^input_bits -> {0,1}, optionally seen
// through an input flip mask (the simulated-oracle inversion of the learning
// algorithms: the visible value is c(x) XOR flips[x]).
struct BoolOracle {
  std::function<bool(uint64_t)> concept_fn;
  unsigned input_bits = 0;
  BitVec flips;                    // empty means no flips
  QueryLedger* ledger = nullptr;   // null means uncharged (tests only)

  // Ground truth through the flip mask; never charged.
  bool truth(uint64_t x) const {
    bool v = concept_fn(x);
    if (!flips.empty() && flips.get(x)) v = !v;
    return v;
  }
  // One classical membership query.
  bool classical_query(uint64_t x) {
    if (ledger) ledger->charge_classical();
    return truth(x);
  }
  void charge_quantum() {
    if (ledger) ledger->charge_quantum();
  }
};

// Dense complex state vector over up to 24 qubits; basis index bit i is
// qubit i. Public operations keep the L2 norm within 1e-9 of 1.
class StateVector {
 public:
  explicit StateVector(unsigned num_qubits);

  unsigned num_qubits() const { return nq_; }
  size_t dim() const { return amps_.size(); }
  std::complex<double>& amp(size_t i) { return amps_[i]; }
  const std::complex<double>& amp(size_t i) const { return amps_[i]; }

  double norm() const;
  void check_norm() const;  // throws std::logic_error if off by > 1e-9

 private:
  unsigned nq_;
  std::vector<std::complex<double>> amps_;
};

// |x, b> -> |x, b XOR c'(x)> with c' = concept through flips; x read from
// input_wires (wire j supplies bit j of x). Charges 1 quantum query.
void apply_qmq(StateVector& state, BoolOracle& oracle,
               const std::vector<unsigned>& input_wires, unsigned ancilla_wire);

// Amplitude at |x> multiplied by (-1)^{c'(x)}; the whole register is the
// oracle input. Charges 1 quantum query.
void apply_phase_oracle(StateVector& state, BoolOracle& oracle);

// Hadamard on `count` adjacent qubits starting at `first`. Free.
void apply_hadamards(StateVector& state, unsigned first, unsigned count);

// Amplitude 1/sqrt(|I|) on each member of I, 0 elsewhere. Free.
StateVector prepare_uniform_subset(const std::vector<uint64_t>& I, unsigned num_qubits);

// One Grover round restricted to span{|x> : x in I}: phase oracle (1 query)
// then inversion about the subset mean. Throws if more than 1e-9 of the
// state's probability lies outside I.
void grover_iterate(StateVector& state, BoolOracle& oracle,
                    const std::vector<uint64_t>& I);

// Sample a basis index from |amplitude|^2; the state is not mutated.
uint64_t measure_all(const StateVector& state, SplitMix64& rng);

std::vector<double> measurement_distribution(const StateVector& state);

// Total variation distance sum(|p - q|) and amplitude L2 distance.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);
double euclidean_distance(const StateVector& a, const StateVector& b);

// Randomized search for a marked element of I (marked = oracle truth 1),
// with a hard budget of ceil(4.5 * sqrt(|I|)) quantum queries. Grover
// iteration counts are drawn uniformly from [0, M) with M growing by 6/5
// per round, capped at sqrt(|I|). Finds a marked element with probability
// >= 1/2 when one exists; otherwise returns the last measured candidate
// (the caller confirms classically). Measured candidates are screened
// against simulator ground truth without charging the ledger; the budget
// covers the Grover iterations only.
uint64_t bbht_subset_search(BoolOracle& oracle, const std::vector<uint64_t>& I,
                            SplitMix64& rng);
uint64_t bbht_budget(size_t subset_size);

// Recovers a from a parity oracle x -> <a, x> with one quantum query,
// deterministically (uniform superposition, phase oracle, Hadamards: the
// final state is exactly |a>).
uint64_t bernstein_vazirani(BoolOracle& parity_oracle, unsigned n);

// One Simon round for f : {0,1}^m -> {0,1}^m on a 2m-qubit register
// (|x>|f(x)>, Hadamard on the x half, measure the x half). Output lies in
// the dual of f's invariance subspace with probability 1 and is uniform
// there. Charges 1 quantum f-query. Throws on constant f (invariance
// subspace would be the whole space).
uint64_t simon_sample(const MultiOutputFunction& f, QueryLedger& ledger,
                      SplitMix64& rng);

// Exact distribution of simon_sample's output.
std::vector<double> simon_x_marginal(const MultiOutputFunction& f);

}  // namespace qlearn

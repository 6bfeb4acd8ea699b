#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlearn/class_zoo.hpp"
#include "qlearn/concepts.hpp"
#include "qlearn/qsim.hpp"
#include "qlearn/splitmix.hpp"

namespace qlearn {

enum class LearnerKind { quantum, halving, nested_bv };

LearnerKind learner_kind_from_string(const std::string& name);
std::string learner_kind_name(LearnerKind kind);

// Outcome of one learning run. The transcript lists the classical membership
// queries (phase, input, answer); quantum cost lives in the ledger phases.
struct LearnResult {
  Concept hypothesis;
  bool success = false;
  QueryLedger ledger;
  struct Entry {
    std::string phase;
    uint64_t input;
    bool answer;
  };
  std::vector<Entry> transcript;
  unsigned outer_iterations = 0;
  std::optional<uint64_t> identified_index;  // set by the index-based learners
};

// Version-space elimination driven by randomized subset search: per round,
// flip the remaining concepts to 1-sensitivity, build a small input set on
// which half of them is rich, and hunt for an input where the target answers
// 1 through the flips. A found input (classically confirmed) keeps only the
// concepts answering 1 there; an all-miss round keeps only the concepts that
// are all-zero on the set. Succeeds with probability >= 2/3 for any target
// in the class; quantum queries never exceed quantum_query_cap below.
LearnResult quantum_exact_learn(const ConceptClass& cls, const Concept& target,
                                SplitMix64& rng);

// Deterministic greedy halving: always queries the input with the most even
// split over the surviving concepts (smallest input on ties). Exact; query
// count <= halving_query_cap on every run.
LearnResult classical_halving_learn(const ConceptClass& cls, const Concept& target);

// Block-parity learner for the nested-parity and prefix-indexed-parity
// classes: one Bernstein-Vazirani run per block / per prefix on the induced
// parity oracle, so quantum queries = number of blocks, always exact.
LearnResult nested_bv_learn(const ClassSpec& spec,
                            const std::function<bool(uint64_t)>& target);
LearnResult nested_bv_learn(const ClassSpec& spec, uint64_t target_index);

// ceil(log2 |C|) * max(1, ceil(log2(3 log2 |C|))) * bbht_budget(floor(1/gamma)).
uint64_t quantum_query_cap(size_t class_size, const Rational& gamma_hat);

// ceil(log2 |C| / -log2(1 - gamma)).
uint64_t halving_query_cap(size_t class_size, const Rational& gamma_hat);

// Success-rate and query-count statistics over seeded trials. Targets are
// cycled exhaustively when the class is no bigger than the trial count and
// sampled uniformly otherwise; each trial runs on its own stream forked from
// the master seed up front, so trial t is reproducible in isolation.
struct TrialReport {
  uint64_t trials = 0;
  uint64_t successes = 0;
  double success_rate = 0.0;
  uint64_t quantum_min = 0, quantum_median = 0, quantum_max = 0;
  uint64_t classical_min = 0, classical_median = 0, classical_max = 0;
  uint64_t seed = 0;
};

TrialReport run_trials(const ConceptClass& cls, LearnerKind kind, uint64_t trials,
                       uint64_t seed);
TrialReport run_trials(const ClassSpec& spec, LearnerKind kind, uint64_t trials,
                       uint64_t seed);

}  // namespace qlearn

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlearn/class_zoo.hpp"
#include "qlearn/concepts.hpp"
#include "qlearn/gf2.hpp"
#include "qlearn/qsim.hpp"
#include "qlearn/splitmix.hpp"

namespace qlearn {

// One balanced split of a 1-sensitive view. Greedy like the semi-rich
// construction, but coverage is counted on the per-round re-flipped matrix
// and a pick's transient flip is frozen into J, so afterwards exactly the
// uncovered concepts are all-zero on I through the view's flips XOR J.
// Stops as soon as the covered set reaches half the subset, which bounds the
// two sides at >= 1/2 and > 1/4 of the subset respectively.
struct BalancedSplit {
  std::vector<uint64_t> inputs;  // I, in pick order
  BitVec frozen_flips;           // J over the domain (subset of I's columns)
  BitVec covered;                // concepts with a 1 on I through flips^J
};

// Requires subset size >= 2 and every view column at most half ones;
// throws std::invalid_argument otherwise.
BalancedSplit balanced_split_inputs(const ClassView& view);

// A binary split tree over concept-index sets, flattened to `k` leaf pieces.
// Every internal node stores the probe inputs and flip masks that route a
// membership oracle to the child containing it: descend to `zero` iff the
// oracle answers 0 through K^J on all of I.
struct SplitRecord {
  std::vector<size_t> key;    // the piece that was split (sorted indices)
  std::vector<size_t> basis;  // the set the split was computed from
  std::vector<uint64_t> inputs;
  BitVec K;                   // 1-sensitization flips for the basis
  BitVec J;                   // flips frozen by the balanced split
  std::vector<size_t> star;   // child: concepts with a 1 on I through K^J
  std::vector<size_t> zero;   // child: concepts all-zero on I through K^J
  size_t basis_star = 0;      // |basis ∩ star|  (>= |basis|/2)
  size_t basis_zero = 0;      // |basis ∩ zero|  (> |basis|/4)
  unsigned depth = 0;         // root split = 0
};

struct Partition {
  unsigned k = 0;
  std::vector<std::vector<size_t>> pieces;  // disjoint cover, k entries
  std::vector<size_t> root;
  std::map<std::vector<size_t>, SplitRecord> splits;
  unsigned rounds = 0;  // split-tree depth in breadth-first waves

  std::string to_json() const;
};

// Splits the class into exactly k pieces, breadth-first. The first split is
// computed from a gamma-hat witness subset (its flips are then applied to
// the whole class), so the witness straddles every later refinement and the
// partition keeps the class's gamma-hat; later splits use the piece itself.
// Requires 1 <= k <= |C| and, for the witness search, |C| within the
// exhaustive gamma-hat cap.
Partition build_partition(const ConceptClass& cls, unsigned k);

// Routes a membership oracle down the split tree with |I| classical queries
// per node; returns the index (into part.pieces) of the piece that answers
// like the oracle. Exact for any oracle realized by a concept in the class.
size_t locate_piece(const ConceptClass& cls, const Partition& part, BoolOracle& oracle);

// Partition-restricted gamma-hat: the min of gamma over subsets C' (size
// >= 2) that the partition genuinely fragments, i.e. no piece holds
// ceil(3|C'|/4) or more of C'. Returns nullopt when no subset qualifies
// (e.g. the one-piece partition). Exhaustive over subsets, same size cap as
// the plain gamma-hat search.
std::optional<Rational> gamma_hat_partition(const ConceptClass& cls,
                                            const std::vector<std::vector<size_t>>& pieces);

// --- Hidden-subspace learning (the partition gap experiment) ------------------

// Thrown when the sample budget runs out before enough independent dual
// vectors arrive; carries what was collected.
struct SimonBudgetError : std::runtime_error {
  std::vector<uint64_t> partial_span;
  SimonBudgetError(const std::string& msg, std::vector<uint64_t> span)
      : std::runtime_error(msg), partial_span(std::move(span)) {}
};

struct SimonResult {
  SubspaceF2 V;                // recovered invariance subspace
  uint64_t samples = 0;        // quantum f-queries spent
  std::vector<uint64_t> span;  // the m-l independent dual vectors collected
};

// Draws dual-subspace samples until m-l independent ones arrive (then V is
// the nullspace of their span) or 3m draws are spent (then SimonBudgetError).
// Success probability well above 2/3: each draw is uniform on the dual.
SimonResult simon_partition_learn(const MultiOutputFunction& f, unsigned l,
                                  QueryLedger& ledger, SplitMix64& rng);

// Classical baseline: query distinct uniformly random inputs and span the
// XORs of colliding pairs, which all lie in V. Succeeds when the span
// reaches rank l; for l = 0 no collision evidence exists, so the budget is
// spent and success stays false.
struct CollisionResult {
  SubspaceF2 V;
  uint64_t queries = 0;
  bool success = false;
  std::vector<uint64_t> span;
};

CollisionResult classical_collision_baseline(const MultiOutputFunction& f, unsigned l,
                                             SplitMix64& rng, uint64_t max_queries);

}  // namespace qlearn

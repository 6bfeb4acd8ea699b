#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlearn/bitvec.hpp"
#include "qlearn/rational.hpp"

namespace qlearn {

// A concept is a truth table over {0,1}^n stored as a 2^n-bit vector; input x
// (read as an integer, bit 0 = first variable) indexes bit x of the table.
using Concept = BitVec;

// Immutable matrix of distinct concepts over a common domain. Rows are
// concept truth tables; a column-major mirror (one bit per concept, per
// input) is built once so per-input counts are popcounts. Instances are
// never mutated after construction, which makes sharing across threads safe.
class ConceptClass {
 public:
  ConceptClass(unsigned n, std::vector<Concept> rows,
               std::vector<std::string> labels = {});

  unsigned n() const { return n_; }
  uint64_t domain_size() const { return uint64_t{1} << n_; }
  size_t size() const { return rows_.size(); }

  const Concept& row(size_t c) const { return rows_[c]; }
  const BitVec& column(uint64_t x) const { return cols_[x]; }
  bool value(size_t c, uint64_t x) const { return rows_[c].get(x); }
  const std::vector<std::string>& labels() const { return labels_; }

  // Count of concepts in `subset` (bit mask over concepts) with a 1 at x.
  size_t column_ones(uint64_t x, const BitVec& subset) const {
    return cols_[x].count_and(subset);
  }

  BitVec full_subset() const { return BitVec::filled(size(), true); }

  std::string to_json() const;
  static ConceptClass from_json(const std::string& text);

 private:
  unsigned n_;
  std::vector<Concept> rows_;
  std::vector<BitVec> cols_;
  std::vector<std::string> labels_;
};

// A sub-class seen through an input flip mask: concept c's visible value at
// input x is row(c)[x] XOR flips[x], restricted to the concepts in `subset`.
// This is how the learning algorithms track column flips without copying the
// matrix.
struct ClassView {
  const ConceptClass* cls;
  BitVec subset;  // over concepts
  BitVec flips;   // over inputs (may be empty = no flips)

  ClassView(const ConceptClass& c, BitVec sub, BitVec fl)
      : cls(&c), subset(std::move(sub)), flips(std::move(fl)) {}
  explicit ClassView(const ConceptClass& c)
      : cls(&c), subset(c.full_subset()), flips(BitVec(c.domain_size())) {}

  size_t subset_size() const { return subset.popcount(); }
  bool value(size_t c, uint64_t x) const {
    return cls->value(c, x) ^ flips.get(x);
  }
  // Ones at column x among `within` (mask over concepts), after flips.
  size_t ones_at(uint64_t x, const BitVec& within) const {
    size_t raw = cls->column_ones(x, within);
    return flips.get(x) ? within.popcount() - raw : raw;
  }
};

struct GammaReport {
  Rational gamma_hat;
  std::vector<size_t> witness_subset;      // concept indices achieving the min
  std::map<uint64_t, Rational> per_input;  // gamma_a over the full class
  bool exhaustive = true;
};

// gamma_a over the full class: min(#zeros, #ones)/|C| at input a.
Rational gamma_at(const ConceptClass& cls, uint64_t input);

// gamma of a subset: max over inputs of the per-input min fraction, plus the
// first input achieving it. Subset must have >= 2 elements.
std::pair<Rational, uint64_t> gamma_of_subset(const ConceptClass& cls,
                                              const std::vector<size_t>& subset);

// Exhaustive min over all subsets of size >= 2. Only feasible for small
// classes; throws if |C| exceeds kGammaHatBruteCap.
constexpr size_t kGammaHatBruteCap = 20;
GammaReport gamma_hat(const ConceptClass& cls);

// Inputs where a strict majority of the subset outputs 1; flipping exactly
// those columns makes the subset 1-sensitive (every column at most half 1s).
BitVec one_sensitive_mask(const ConceptClass& cls, const BitVec& subset);

// New class with every row XORed against the mask (mask has one bit per
// input). Row distinctness is preserved.
ConceptClass apply_flip(const ConceptClass& cls, const BitVec& mask);

// Pointwise majority vote with ties resolved to 0.
Concept majority_concept(const ConceptClass& cls);

// True iff at least ceil(|C|/2) concepts output 1 on at least a
// `gamma`-fraction of the listed inputs (exact rational comparison).
bool semi_rich_check(const ConceptClass& cls, const std::vector<uint64_t>& inputs,
                     const Rational& gamma);

// Greedy construction of a small input set I such that at least half the
// concepts of the view's subset output 1 (in the view's base matrix) on a
// gamma-hat fraction of I. Each round re-flips the not-yet-covered concepts
// to 1-sensitivity, picks the input with the highest flipped one-count
// (smallest input on ties), and covers every concept whose *unflipped* view
// value there is 1.
std::vector<uint64_t> build_semirich_set(const ClassView& view);
std::vector<uint64_t> build_semirich_set(const ConceptClass& cls);

// Largest domain subset shattered by the class, by exhaustive search.
unsigned vc_dimension(const ConceptClass& cls);

}  // namespace qlearn

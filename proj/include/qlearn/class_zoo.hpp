#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlearn/concepts.hpp"
#include "qlearn/gf2.hpp"
#include "qlearn/rational.hpp"

namespace qlearn {

// Parsed description of a concept class, round-trippable through strings of
// the form "parity:n=6", "delta:n=5", "nestedbv:n=16,d=2", "prefparity:n=5,k=2",
// "vinv:m=6,l=2,seed=7", "rand:n=4,size=12,seed=1", "json:/path/to/class.json".
struct ClassSpec {
  enum class Kind { parity, delta, nested_bv, prefixed_parity, v_invariant, random, json_file };

  Kind kind = Kind::parity;
  unsigned n = 0;       // input bits (parity, delta, nested_bv, prefixed_parity, random)
  unsigned d = 1;       // nesting depth (nested_bv)
  unsigned k = 0;       // prefix bits (prefixed_parity)
  unsigned m = 0;       // Simon register width (v_invariant)
  unsigned l = 0;       // subspace dimension (v_invariant)
  uint64_t size = 0;    // class size (random)
  uint64_t seed = 0;    // PRNG seed (v_invariant, random)
  std::string path;     // file path (json_file)

  static ClassSpec parse(const std::string& text);
  std::string str() const;
};

// --- Materialized generators -------------------------------------------------

// All 2^n linear parities c_a(x) = <a, x> mod 2, rows ordered by a.
ConceptClass parity_class(unsigned n);

// Point functions f_i(x) = [x == i], rows ordered by i.
ConceptClass delta_class(unsigned n);

// 2^n concepts f_a(x) = OR over blocks i of <a_i, x_i> mod 2, where a and x
// split into n^(1/d) blocks of n^((d-1)/d) bits (block i = bits [i*w, (i+1)*w)).
// d = 1 is a single parity block, i.e. parity_class(n).
ConceptClass nested_bv_class(unsigned n, unsigned d);

// 2^(2^k * (n-k)) concepts: the concept indexed by (a^0, ..., a^(2^k - 1))
// maps x to <a^i, y> mod 2 with i = low k bits of x and y = x >> k. The
// concept index packs a^i at bits [i*(n-k), (i+1)*(n-k)).
ConceptClass prefixed_parity_class(unsigned n, unsigned k);

// `size` distinct uniformly random truth tables, deterministic in `seed`.
ConceptClass random_class(unsigned n, uint64_t size, uint64_t seed);

// --- Lazy evaluation ---------------------------------------------------------

// Value of concept `index` at input x, without materializing the class.
// Supported for the deterministic kinds (parity, delta, nested_bv,
// prefixed_parity); throws for the sampled/file-backed kinds.
bool concept_value(const ClassSpec& spec, uint64_t index, uint64_t x);

bool nested_bv_value(unsigned n, unsigned d, uint64_t a, uint64_t x);
bool prefixed_parity_value(unsigned n, unsigned k, uint64_t index, uint64_t x);

// Number of concepts, computed without materializing.
BigInt class_size(const ClassSpec& spec);

// Materializes the class described by the spec; throws if the truth-table
// matrix would exceed the in-memory cap.
ConceptClass make_class(const ClassSpec& spec);

// Known-in-closed-form gamma-hat values (parity: 1/3 for n >= 2, 1/2 for
// n = 1; delta: 1/2^n). Everything else needs the exhaustive search.
std::optional<Rational> analytic_gamma_hat(const ClassSpec& spec);

// --- Simon-style multi-output functions --------------------------------------

// f : {0,1}^m -> {0,1}^m as an explicit table.
struct MultiOutputFunction {
  unsigned m = 0;
  std::vector<uint64_t> table;  // 2^m entries, each in [0, 2^m)

  uint64_t operator()(uint64_t x) const { return table[x]; }
};

// Seeded f that is constant exactly on cosets of V: f(x) = f(y) iff
// x ^ y is in V. Values are a seeded injection of the 2^(m - dim V) cosets
// into {0,1}^m.
MultiOutputFunction v_invariant_function(const SubspaceF2& V, uint64_t seed);
MultiOutputFunction v_invariant_function(unsigned m, const std::vector<uint64_t>& basis,
                                         uint64_t seed);

// Exhaustive check of the iff condition over all pairs.
bool verify_v_invariant(const MultiOutputFunction& f, const SubspaceF2& V);

// Boolean view over n = m + ceil(log2 m) bits: input (x, j) packed as
// x | (j << m) evaluates to bit j of f(x); j >= m reads as 0. One f-query
// is recoverable from m membership queries.
Concept flatten_to_boolean(const MultiOutputFunction& f);
unsigned flattened_bits(unsigned m);

// The sampled class behind "vinv:m=..,l=..": for every l-dim subspace V of
// F_2^m, `per_subspace` seeded V-invariant functions, flattened. Labels
// record the subspace index and sample number.
ConceptClass v_invariant_class(unsigned m, unsigned l, uint64_t seed,
                               unsigned per_subspace = 4);

}  // namespace qlearn

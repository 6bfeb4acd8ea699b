#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qlearn {

using BigInt = boost::multiprecision::cpp_int;

// Vectors over F_2^m are packed into uint64_t (m <= 64), bit i = coordinate i.

inline int gf2_dot(uint64_t a, uint64_t b) {
  return __builtin_parityll(a & b);
}

// Row-reduce in place to reduced row echelon form; returns the rank.
// Zero rows are removed and rows end up sorted by descending leading bit.
unsigned gf2_rref(std::vector<uint64_t>& rows);

unsigned gf2_rank(std::vector<uint64_t> rows);

// Basis of { x in F_2^m : x . v = 0 for every v in rows }.
std::vector<uint64_t> gf2_nullspace(const std::vector<uint64_t>& rows, unsigned m);

// Membership of v in the span of `rows` (any generating set).
bool gf2_span_contains(const std::vector<uint64_t>& rows, uint64_t v);

// A linear subspace of F_2^m held in canonical RREF form, so two subspaces
// are equal iff their representations are equal.
struct SubspaceF2 {
  unsigned m = 0;
  std::vector<uint64_t> basis;  // RREF, descending leading bits

  static SubspaceF2 from_vectors(unsigned m, std::vector<uint64_t> gens);
  unsigned dim() const { return static_cast<unsigned>(basis.size()); }
  bool contains(uint64_t v) const;
  std::vector<uint64_t> elements() const;  // all 2^dim members, ascending
  SubspaceF2 orthogonal_complement() const;

  friend bool operator==(const SubspaceF2& a, const SubspaceF2& b) {
    return a.m == b.m && a.basis == b.basis;
  }
  friend bool operator<(const SubspaceF2& a, const SubspaceF2& b) {
    if (a.m != b.m) return a.m < b.m;
    return a.basis < b.basis;
  }
};

// All l-dimensional subspaces of F_2^m. Exhaustive; intended for m <= 6.
std::vector<SubspaceF2> enumerate_subspaces(unsigned m, unsigned l);

// Gaussian binomial [m choose l]_2: the number of l-dim subspaces of F_2^m.
BigInt count_subspaces(unsigned m, unsigned l);

// Number of V-invariant functions f : F_2^m -> F_2^m for a fixed l-dim V,
// i.e. injections from the 2^(m-l) cosets into 2^m values:
// 2^m (2^m - 1) ... (2^m - 2^(m-l) + 1). Requires m - l small enough to
// enumerate the factors.
BigInt count_invariant_functions(unsigned m, unsigned l);

}  // namespace qlearn

#include <doctest.h>

#include <set>

#include "qlearn/gf2.hpp"

using namespace qlearn;

TEST_CASE("gf2 dot and rref") {
  CHECK(gf2_dot(0b101, 0b110) == 1);
  CHECK(gf2_dot(0b101, 0b101) == 0);

  std::vector<uint64_t> rows{0b110, 0b011, 0b101};  // third = sum of first two
  CHECK(gf2_rref(rows) == 2);
  CHECK(rows.size() == 2);
  // RREF: descending leading bits, pivot columns cleared from *all* other
  // rows, so 110 loses its bit-1 entry to the second pivot.
  CHECK(rows[0] == 0b101);
  CHECK(rows[1] == 0b011);

  CHECK(gf2_rank({0b1, 0b10, 0b100}) == 3);
  CHECK(gf2_rank({0, 0}) == 0);
  CHECK(gf2_rank({}) == 0);
}

TEST_CASE("gf2 span membership") {
  std::vector<uint64_t> gens{0b110, 0b011};
  CHECK(gf2_span_contains(gens, 0));
  CHECK(gf2_span_contains(gens, 0b110));
  CHECK(gf2_span_contains(gens, 0b101));
  CHECK(!gf2_span_contains(gens, 0b100));
  CHECK(!gf2_span_contains(gens, 0b001));
}

TEST_CASE("gf2 nullspace is the orthogonal complement") {
  // V = span{011} in F_2^3; V-perp = {000, 011, 100, 111}.
  auto ns = gf2_nullspace({0b011}, 3);
  CHECK(ns.size() == 2);
  auto vp = SubspaceF2::from_vectors(3, ns);
  CHECK(vp.elements() == std::vector<uint64_t>{0b000, 0b011, 0b100, 0b111});
  for (uint64_t y : vp.elements()) CHECK(gf2_dot(y, 0b011) == 0);

  // Double complement returns the original subspace.
  auto v = SubspaceF2::from_vectors(3, {0b011});
  CHECK(v.orthogonal_complement().orthogonal_complement() == v);
  CHECK(v.orthogonal_complement() == vp);

  // Full space and zero space are each other's complements.
  auto full = SubspaceF2::from_vectors(4, {1, 2, 4, 8});
  CHECK(full.orthogonal_complement().dim() == 0);
  CHECK(SubspaceF2::from_vectors(4, {}).orthogonal_complement() == full);
}

TEST_CASE("subspace canonical form") {
  // Different generating sets of the same subspace compare equal.
  auto a = SubspaceF2::from_vectors(4, {0b0011, 0b0101});
  auto b = SubspaceF2::from_vectors(4, {0b0110, 0b0101, 0b0011});
  CHECK(a == b);
  CHECK(a.dim() == 2);
  CHECK(a.contains(0b0110));
  CHECK(!a.contains(0b1000));
  CHECK(a.elements().size() == 4);
  CHECK_THROWS_AS(SubspaceF2::from_vectors(3, {0b1000}), std::invalid_argument);
}

TEST_CASE("subspace enumeration matches the gaussian binomial") {
  for (unsigned m = 1; m <= 5; ++m) {
    for (unsigned l = 0; l <= m; ++l) {
      auto subs = enumerate_subspaces(m, l);
      CHECK(BigInt(subs.size()) == count_subspaces(m, l));
      std::set<SubspaceF2> uniq(subs.begin(), subs.end());
      CHECK(uniq.size() == subs.size());
      for (const auto& s : subs) {
        CHECK(s.dim() == l);
        CHECK(s.contains(0));
        CHECK(SubspaceF2::from_vectors(m, s.basis) == s);  // already canonical
      }
    }
  }
  CHECK(enumerate_subspaces(4, 2).size() == 35);
  CHECK(enumerate_subspaces(3, 1).size() == 7);
}

TEST_CASE("subspace counts") {
  CHECK(count_subspaces(4, 2) == 35);
  CHECK(count_subspaces(5, 2) == 155);
  CHECK(count_subspaces(6, 3) == 1395);
  CHECK(count_subspaces(2, 3) == 0);
  CHECK(count_subspaces(8, 0) == 1);
  CHECK(count_subspaces(8, 8) == 1);

  // 2^(l(m-l)) <= [m choose l]_2 <= 2^((l+1)(m-l)) style sandwich, in the
  // form used for sizing experiments: 2^(ml - l^2) <= N <= 2^(ml - l^2 + l).
  for (unsigned m = 1; m <= 6; ++m)
    for (unsigned l = 0; l <= m; ++l) {
      BigInt n = count_subspaces(m, l);
      CHECK(n >= BigInt(1) << (m * l - l * l));
      CHECK(n <= BigInt(1) << (m * l - l * l + l));
    }
}

TEST_CASE("invariant function counts") {
  // Injections from the 2^(m-l) cosets into 2^m values.
  CHECK(count_invariant_functions(3, 1) == 1680);  // 8*7*6*5
  CHECK(count_invariant_functions(2, 2) == 4);
  CHECK(count_invariant_functions(4, 3) == 16 * 15);
  CHECK_THROWS_AS(count_invariant_functions(20, 1), std::invalid_argument);
}

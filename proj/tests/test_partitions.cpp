#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "qlearn/class_zoo.hpp"
#include "qlearn/partitions.hpp"
#include "qlearn/splitmix.hpp"

using namespace qlearn;

namespace {

ConceptClass make_cls(unsigned n, const std::vector<uint64_t>& masks) {
  std::vector<Concept> rows;
  for (uint64_t m : masks) {
    Concept c(uint64_t{1} << n);
    for (uint64_t x = 0; x < c.size(); ++x) c.set(x, (m >> x) & 1);
    rows.push_back(c);
  }
  return ConceptClass(n, std::move(rows));
}

// Sorted list of all concept indices covered by the pieces.
std::vector<size_t> flatten(const std::vector<std::vector<size_t>>& pieces) {
  std::vector<size_t> all;
  for (const auto& p : pieces) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  return all;
}

void check_split_invariants(const ConceptClass& cls, const Partition& part) {
  for (const auto& [key, rec] : part.splits) {
    CHECK(rec.key == key);
    // Children partition the key.
    std::vector<size_t> merged = rec.star;
    merged.insert(merged.end(), rec.zero.begin(), rec.zero.end());
    std::sort(merged.begin(), merged.end());
    CHECK(merged == key);
    CHECK_FALSE(rec.star.empty());
    CHECK_FALSE(rec.zero.empty());
    // Balanced on the set the split was computed from.
    CHECK(rec.basis_star + rec.basis_zero == rec.basis.size());
    CHECK(2 * rec.basis_star >= rec.basis.size());
    CHECK(4 * rec.basis_zero > rec.basis.size());
    if (rec.depth > 0) CHECK(rec.basis == rec.key);
    // The zero child is exactly the all-zero set through K^J.
    BitVec flips = rec.K ^ rec.J;
    for (size_t c : key) {
      bool zero = true;
      for (uint64_t x : rec.inputs)
        if (cls.value(c, x) ^ flips.get(x)) zero = false;
      bool in_zero =
          std::find(rec.zero.begin(), rec.zero.end(), c) != rec.zero.end();
      CHECK(zero == in_zero);
    }
  }
}

void check_locate_exhaustive(const ConceptClass& cls, const Partition& part,
                             uint64_t query_cap) {
  for (size_t t = 0; t < cls.size(); ++t) {
    size_t expected = part.pieces.size();
    for (size_t p = 0; p < part.pieces.size(); ++p)
      if (std::find(part.pieces[p].begin(), part.pieces[p].end(), t) !=
          part.pieces[p].end())
        expected = p;
    REQUIRE(expected < part.pieces.size());

    QueryLedger ledger;
    BoolOracle oracle;
    const Concept& row = cls.row(t);
    oracle.concept_fn = [&row](uint64_t x) { return row.get(x); };
    oracle.input_bits = cls.n();
    oracle.ledger = &ledger;
    CHECK(locate_piece(cls, part, oracle) == expected);
    CHECK(ledger.classical_total() <= query_cap);
    CHECK(ledger.quantum_total() == 0);
  }
}

}  // namespace

TEST_CASE("balanced split: point functions, hand trace") {
  ConceptClass cls = make_cls(2, {0b0001, 0b0010, 0b0100, 0b1000});
  BalancedSplit bs = balanced_split_inputs(ClassView(cls));
  CHECK(bs.inputs == std::vector<uint64_t>{0, 1});
  CHECK_FALSE(bs.frozen_flips.any());  // no column ever had a majority of 1s
  CHECK(bs.covered.set_positions() == std::vector<size_t>{0, 1});
}

TEST_CASE("balanced split: preconditions") {
  // A column where both concepts output 1 breaks 1-sensitivity.
  ConceptClass bad = make_cls(1, {0b11, 0b01});
  CHECK_THROWS_AS(balanced_split_inputs(ClassView(bad)), std::invalid_argument);
  // One concept is too few to split.
  ConceptClass tiny = make_cls(1, {0b01});
  CHECK_THROWS_AS(balanced_split_inputs(ClassView(tiny)), std::invalid_argument);
}

TEST_CASE("balanced split: ratios and complement on seeded classes") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    unsigned n = 2 + static_cast<unsigned>(seed % 3);
    uint64_t size = 3 + seed % 10;
    ConceptClass cls = random_class(n, size, 1000 + seed);
    BitVec K = one_sensitive_mask(cls, cls.full_subset());
    ClassView view(cls, cls.full_subset(), K);
    BalancedSplit bs = balanced_split_inputs(view);

    size_t covered = bs.covered.popcount();
    CHECK(2 * covered >= cls.size());
    CHECK(4 * (cls.size() - covered) > cls.size());

    // Exactly the uncovered concepts are all-zero on I through K^J.
    BitVec flips = K ^ bs.frozen_flips;
    for (size_t c = 0; c < cls.size(); ++c) {
      bool zero = true;
      for (uint64_t x : bs.inputs)
        if (cls.value(c, x) ^ flips.get(x)) zero = false;
      CHECK(zero == !bs.covered.get(c));
    }

    // Probe-set size obeys the inverse-gamma cap, and inputs are distinct.
    int64_t cap = gamma_hat(cls).gamma_hat.reciprocal().floor();
    CHECK(static_cast<int64_t>(bs.inputs.size()) <= cap);
    std::set<uint64_t> uniq(bs.inputs.begin(), bs.inputs.end());
    CHECK(uniq.size() == bs.inputs.size());
    // Frozen flips only touch probed columns.
    for (size_t x : bs.frozen_flips.set_positions())
      CHECK(uniq.count(x) == 1);
  }
}

TEST_CASE("partition of point functions: counts, caps, gamma") {
  ConceptClass cls = make_cls(3, {1ull << 0, 1ull << 1, 1ull << 2, 1ull << 3,
                                  1ull << 4, 1ull << 5, 1ull << 6, 1ull << 7});
  Rational ghat = gamma_hat(cls).gamma_hat;
  REQUIRE(ghat == Rational(1, 8));

  for (unsigned k : {2u, 4u, 8u}) {
    Partition part = build_partition(cls, k);
    CHECK(part.k == k);
    CHECK(part.pieces.size() == k);
    CHECK(part.splits.size() == k - 1);
    std::vector<size_t> all = flatten(part.pieces);
    CHECK(all == part.root);

    unsigned lg = 0;
    while ((1u << lg) < k) ++lg;
    CHECK(part.rounds <= lg + 1);

    check_split_invariants(cls, part);
    CHECK(gamma_hat_partition(cls, part.pieces) == ghat);
    check_locate_exhaustive(cls, part, (lg + 1) * 8);
  }
}

TEST_CASE("partition keeps gamma-hat on seeded classes") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    unsigned n = 3 + static_cast<unsigned>(seed % 2);
    uint64_t size = 4 + seed % 9;
    ConceptClass cls = random_class(n, size, 500 + seed);
    Rational ghat = gamma_hat(cls).gamma_hat;
    int64_t inv = ghat.reciprocal().floor();

    for (unsigned k : {2u, 4u, static_cast<unsigned>(cls.size())}) {
      if (k > cls.size()) continue;
      Partition part = build_partition(cls, k);
      CHECK(part.pieces.size() == k);
      CHECK(flatten(part.pieces) == part.root);
      check_split_invariants(cls, part);
      for (const auto& [key, rec] : part.splits)
        CHECK(static_cast<int64_t>(rec.inputs.size()) <= inv);

      auto gp = gamma_hat_partition(cls, part.pieces);
      if (k >= 2) {
        REQUIRE(gp.has_value());
        CHECK(*gp == ghat);
      }
      // Walks are exact for every member; the cap scales with tree depth.
      check_locate_exhaustive(cls, part, part.rounds * static_cast<uint64_t>(inv));
    }
  }
}

TEST_CASE("partition edge cases") {
  ConceptClass cls = make_cls(2, {0b0001, 0b0010, 0b0100, 0b1000});
  Partition one = build_partition(cls, 1);
  CHECK(one.pieces.size() == 1);
  CHECK(one.splits.empty());
  CHECK(one.rounds == 0);
  QueryLedger ledger;
  BoolOracle oracle;
  oracle.concept_fn = [](uint64_t x) { return x == 2; };
  oracle.input_bits = 2;
  oracle.ledger = &ledger;
  CHECK(locate_piece(cls, one, oracle) == 0);
  CHECK(ledger.classical_total() == 0);

  Partition full = build_partition(cls, 4);
  CHECK(full.pieces == std::vector<std::vector<size_t>>{{0}, {1}, {2}, {3}});

  CHECK_THROWS_AS(build_partition(cls, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_partition(cls, 5), std::invalid_argument);
}

TEST_CASE("partition-restricted gamma on fixed partitions") {
  ConceptClass cls = make_cls(2, {0b0001, 0b0010, 0b0100, 0b1000});
  // Halved: the full class (gamma 1/4) still straddles both pieces.
  CHECK(gamma_hat_partition(cls, {{0, 1}, {2, 3}}) == Rational(1, 4));
  // Lopsided: nothing fragmented contains more than 3 concepts.
  CHECK(gamma_hat_partition(cls, {{0, 1, 2}, {3}}) == Rational(1, 3));
  // One piece fragments nothing.
  CHECK_FALSE(gamma_hat_partition(cls, {{0, 1, 2, 3}}).has_value());
  // All singletons fragment everything: plain gamma-hat.
  CHECK(gamma_hat_partition(cls, {{0}, {1}, {2}, {3}}) == Rational(1, 4));

  CHECK_THROWS_AS(gamma_hat_partition(cls, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(gamma_hat_partition(cls, {{0, 1}, {1, 2, 3}}),
                  std::invalid_argument);
}

TEST_CASE("partition serialization carries the walk data") {
  ConceptClass cls = make_cls(3, {1ull << 0, 1ull << 1, 1ull << 2, 1ull << 3});
  Partition part = build_partition(cls, 3);
  std::string text = part.to_json();
  CHECK(text.find("\"splits\"") != std::string::npos);
  CHECK(text.find("\"pieces\"") != std::string::npos);
  CHECK(text.find("\"K\"") != std::string::npos);
  CHECK(text.find("\"J\"") != std::string::npos);
}

TEST_CASE("hidden-subspace learner recovers the subspace") {
  const unsigned m = 4;
  std::vector<uint64_t> basis = {0b0011, 0b0101};
  SubspaceF2 V = SubspaceF2::from_vectors(m, basis);
  SubspaceF2 dual = V.orthogonal_complement();

  for (uint64_t seed = 0; seed < 40; ++seed) {
    MultiOutputFunction f = v_invariant_function(m, basis, seed);
    QueryLedger ledger;
    SplitMix64 rng(seed * 31 + 1);
    SimonResult res = simon_partition_learn(f, 2, ledger, rng);
    CHECK(res.V == V);
    CHECK(res.samples <= 3 * m);
    CHECK(ledger.quantum_total() == res.samples);
    CHECK(res.span.size() == m - 2);
    for (uint64_t y : res.span) CHECK(dual.contains(y));
  }
}

TEST_CASE("hidden-subspace learner: budget exhaustion carries partial progress") {
  const unsigned m = 4;
  std::vector<uint64_t> basis = {0b0011, 0b0101};
  SubspaceF2 dual = SubspaceF2::from_vectors(m, basis).orthogonal_complement();
  MultiOutputFunction f = v_invariant_function(m, basis, 9);
  QueryLedger ledger;
  SplitMix64 rng(5);
  // Asking for rank 4 evidence when the dual has dimension 2 must exhaust
  // the 3m budget.
  bool threw = false;
  try {
    simon_partition_learn(f, 0, ledger, rng);
  } catch (const SimonBudgetError& e) {
    threw = true;
    CHECK(e.partial_span.size() == 2);
    for (uint64_t y : e.partial_span) CHECK(dual.contains(y));
  }
  CHECK(threw);
  CHECK(ledger.quantum_total() == 3 * m);

  CHECK_THROWS_AS(simon_partition_learn(f, m, ledger, rng), std::invalid_argument);
}

TEST_CASE("collision baseline certifies via collisions only") {
  const unsigned m = 4;
  std::vector<uint64_t> basis = {0b0011, 0b0101};
  SubspaceF2 V = SubspaceF2::from_vectors(m, basis);

  for (uint64_t seed = 0; seed < 20; ++seed) {
    MultiOutputFunction f = v_invariant_function(m, basis, seed);
    SplitMix64 rng(seed + 7);
    CollisionResult res = classical_collision_baseline(f, 2, rng, 500);
    CHECK(res.success);
    CHECK(res.V == V);
    CHECK(res.queries >= 3);  // two independent collisions need three hits
    CHECK(res.queries <= 500);
  }

  // Determinism in the seed.
  MultiOutputFunction f = v_invariant_function(m, basis, 3);
  SplitMix64 r1(11), r2(11);
  CHECK(classical_collision_baseline(f, 2, r1, 500).queries ==
        classical_collision_baseline(f, 2, r2, 500).queries);

  // An injective function never yields a certificate: the budget burns, or
  // the whole domain is exhausted first (queries are distinct inputs).
  MultiOutputFunction inj = v_invariant_function(m, std::vector<uint64_t>{}, 1);
  SplitMix64 rng(2);
  CollisionResult none = classical_collision_baseline(inj, 0, rng, 12);
  CHECK_FALSE(none.success);
  CHECK(none.queries == 12);
  CHECK(none.V.dim() == 0);
  SplitMix64 rng2(2);
  CollisionResult drained = classical_collision_baseline(inj, 0, rng2, 500);
  CHECK_FALSE(drained.success);
  CHECK(drained.queries == 16);  // every input seen once, no repeats
}

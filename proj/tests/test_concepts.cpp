#include <doctest.h>

#include <algorithm>

#include "qlearn/concepts.hpp"

using namespace qlearn;

namespace {

// All 2^n linear parity functions c_a(x) = <a, x> over n variables.
ConceptClass parity_class(unsigned n) {
  const uint64_t N = uint64_t{1} << n;
  std::vector<Concept> rows;
  for (uint64_t a = 0; a < N; ++a) {
    Concept r(N);
    for (uint64_t x = 0; x < N; ++x)
      if (__builtin_parityll(a & x)) r.set(x, true);
    rows.push_back(r);
  }
  return ConceptClass(n, std::move(rows));
}

// Point functions c_i(x) = [x == i].
ConceptClass delta_class(unsigned n) {
  const uint64_t N = uint64_t{1} << n;
  std::vector<Concept> rows;
  for (uint64_t i = 0; i < N; ++i) {
    Concept r(N);
    r.set(i, true);
    rows.push_back(r);
  }
  return ConceptClass(n, std::move(rows));
}

ConceptClass from_tables(unsigned n, const std::vector<uint64_t>& tables) {
  const uint64_t N = uint64_t{1} << n;
  std::vector<Concept> rows;
  for (uint64_t t : tables) {
    Concept r(N);
    for (uint64_t x = 0; x < N; ++x)
      if ((t >> x) & 1) r.set(x, true);
    rows.push_back(r);
  }
  return ConceptClass(n, std::move(rows));
}

}  // namespace

TEST_CASE("concept class construction and dedup") {
  auto cls = from_tables(2, {0b0011, 0b0101, 0b0011, 0b1111});
  CHECK(cls.size() == 3);  // duplicate row dropped, order kept
  CHECK(cls.value(0, 0) == true);
  CHECK(cls.value(0, 2) == false);
  CHECK(cls.column(0).popcount() == 3);  // every surviving row has bit 0
  CHECK(cls.domain_size() == 4);
  CHECK_THROWS_AS(ConceptClass(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(from_tables(17, {1}), std::invalid_argument);
}

TEST_CASE("json round trip") {
  auto cls = from_tables(2, {0b0011, 0b0101});
  auto back = ConceptClass::from_json(cls.to_json());
  CHECK(back.n() == 2);
  CHECK(back.size() == 2);
  for (size_t c = 0; c < 2; ++c)
    for (uint64_t x = 0; x < 4; ++x) CHECK(back.value(c, x) == cls.value(c, x));

  ConceptClass labeled(1, {BitVec::from_hex("01", 2), BitVec::from_hex("02", 2)},
                       {"zero", "one"});
  auto lb = ConceptClass::from_json(labeled.to_json());
  CHECK(lb.labels() == std::vector<std::string>{"zero", "one"});
}

TEST_CASE("gamma at single inputs") {
  auto par2 = parity_class(2);
  CHECK(gamma_at(par2, 0) == Rational(0, 1));  // every parity vanishes at 0
  CHECK(gamma_at(par2, 1) == Rational(1, 2));
  CHECK(gamma_at(par2, 3) == Rational(1, 2));

  auto del2 = delta_class(2);
  CHECK(gamma_at(del2, 2) == Rational(1, 4));
}

TEST_CASE("gamma of explicit subsets") {
  auto par2 = parity_class(2);
  auto [g3, x3] = gamma_of_subset(par2, {0, 1, 2});
  CHECK(g3 == Rational(1, 3));
  CHECK(x3 == 1);  // first input where the 2-1 split appears
  auto [g2, x2] = gamma_of_subset(par2, {1, 2});
  CHECK(g2 == Rational(1, 2));
  CHECK(x2 == 1);
  CHECK_THROWS_AS(gamma_of_subset(par2, {1}), std::invalid_argument);
  CHECK_THROWS_AS(gamma_of_subset(par2, {1, 1}), std::invalid_argument);
}

TEST_CASE("gamma hat of the parity class is 1/3") {
  for (unsigned n = 2; n <= 4; ++n) {
    auto rep = gamma_hat(parity_class(n));
    CHECK(rep.gamma_hat == Rational(1, 3));
    CHECK(rep.exhaustive);
    CHECK(rep.witness_subset.size() == 3);
    auto [g, x] = gamma_of_subset(parity_class(n), rep.witness_subset);
    CHECK(g == Rational(1, 3));
  }
  // n = 1: only {id, const-0}-type pairs, no 3-subset beats 1/2.
  CHECK(gamma_hat(parity_class(1)).gamma_hat == Rational(1, 2));
}

TEST_CASE("gamma hat of the point-function class is 1/2^n") {
  for (unsigned n = 1; n <= 4; ++n) {
    auto cls = delta_class(n);
    auto rep = gamma_hat(cls);
    CHECK(rep.gamma_hat == Rational(1, int64_t{1} << n));
    // The minimum needs every point function present.
    CHECK(rep.witness_subset.size() == cls.size());
  }
}

TEST_CASE("gamma hat respects the universal bounds") {
  // Any class: 1/(N+1) <= gamma-hat <= 1/2, and any 3 distinct concepts give
  // gamma exactly 1/3, so gamma-hat <= 1/3 once |C| >= 3.
  auto cls = from_tables(3, {0x0f, 0x33, 0x55, 0x80, 0xfe});
  auto rep = gamma_hat(cls);
  CHECK(rep.gamma_hat <= Rational(1, 3));
  CHECK(rep.gamma_hat >= Rational(1, 9));
  CHECK(gamma_hat(from_tables(2, {0b0011, 0b0101})).gamma_hat == Rational(1, 2));
  CHECK_THROWS_AS(gamma_hat(from_tables(2, {1})), std::invalid_argument);
}

TEST_CASE("per input gammas in the report") {
  auto rep = gamma_hat(delta_class(2));
  CHECK(rep.per_input.size() == 4);
  for (uint64_t x = 0; x < 4; ++x) CHECK(rep.per_input.at(x) == Rational(1, 4));
}

TEST_CASE("one sensitive mask flips strict-majority columns") {
  // Columns of this class at inputs 0..3: ones = 2,3,1,0 of 3 concepts.
  auto cls = from_tables(2, {0b0011, 0b0111, 0b0010});
  auto mask = one_sensitive_mask(cls, cls.full_subset());
  CHECK(mask.get(0) == true);   // 2 of 3 is a strict majority
  CHECK(mask.get(1) == true);   // 3 of 3
  CHECK(mask.get(2) == false);  // 1 of 3
  CHECK(mask.get(3) == false);

  auto flipped = apply_flip(cls, mask);
  for (uint64_t x = 0; x < 4; ++x)
    CHECK(2 * flipped.column(x).popcount() <= flipped.size());

  // Exactly-half columns are not flipped.
  auto even = from_tables(2, {0b0001, 0b0010});
  CHECK(!one_sensitive_mask(even, even.full_subset()).any());
}

TEST_CASE("majority concept breaks ties to zero") {
  auto cls = from_tables(2, {0b0011, 0b0101, 0b0001});
  auto maj = majority_concept(cls);
  CHECK(maj.get(0) == true);   // 3 of 3
  CHECK(maj.get(1) == false);  // 1 of 3
  CHECK(maj.get(2) == false);
  CHECK(maj.get(3) == false);

  auto even = from_tables(2, {0b0001, 0b0010});  // input 0: 1-1 tie
  CHECK(majority_concept(even).get(0) == false);
}

TEST_CASE("semi rich check is exact") {
  auto del2 = delta_class(2);
  // On I = {0,1}, concepts 0 and 1 are 1 on 1/2 >= 1/4 of I: that is 2 >= 2.
  CHECK(semi_rich_check(del2, {0, 1}, Rational(1, 4)));
  // Against threshold 3/4 only those same two qualify, still half the class.
  CHECK(semi_rich_check(del2, {0, 1}, Rational(1, 2)));
  CHECK(!semi_rich_check(del2, {0}, Rational(1, 2)));  // only concept 0 is rich
  CHECK_THROWS_AS(semi_rich_check(del2, {}, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("semirich set on point functions picks inputs in order") {
  auto del2 = delta_class(2);
  auto I = build_semirich_set(del2);
  CHECK(I == std::vector<uint64_t>{0, 1});
  auto rep = gamma_hat(del2);
  CHECK(static_cast<int64_t>(I.size()) <= rep.gamma_hat.reciprocal().floor());
  CHECK(semi_rich_check(del2, I, rep.gamma_hat));
}

TEST_CASE("semirich set on a two-concept class is a single separator") {
  auto cls = from_tables(2, {0b0000, 0b1100});
  auto I = build_semirich_set(cls);
  CHECK(I == std::vector<uint64_t>{2});  // smallest input separating the pair
  CHECK(semi_rich_check(cls, I, gamma_hat(cls).gamma_hat));
}

TEST_CASE("semirich set invariants on assorted classes") {
  auto check_class = [](const ConceptClass& cls) {
    auto rep = gamma_hat(cls);
    auto I = build_semirich_set(cls);
    CHECK(!I.empty());
    std::vector<uint64_t> sorted = I;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(static_cast<int64_t>(I.size()) <= rep.gamma_hat.reciprocal().floor());
    CHECK(semi_rich_check(cls, I, rep.gamma_hat));
  };
  check_class(parity_class(2));
  check_class(parity_class(3));
  check_class(delta_class(3));
  check_class(from_tables(3, {0x0f, 0x33, 0x55, 0x80, 0xfe, 0x01}));
}

TEST_CASE("vc dimension of small classes") {
  CHECK(vc_dimension(delta_class(2)) == 1);
  CHECK(vc_dimension(delta_class(3)) == 1);
  CHECK(vc_dimension(parity_class(2)) == 2);
  CHECK(vc_dimension(parity_class(3)) == 3);
  CHECK(vc_dimension(from_tables(1, {0b01, 0b10})) == 1);
  // A class that realizes every pattern on {0,1} but not three points.
  CHECK(vc_dimension(from_tables(2, {0b0000, 0b0001, 0b0010, 0b0011})) == 2);
}

TEST_CASE("class view applies flips") {
  auto cls = from_tables(2, {0b0011, 0b0101});
  BitVec flips(4);
  flips.set(0, true);
  ClassView view(cls, cls.full_subset(), flips);
  CHECK(view.value(0, 0) == false);  // raw 1 xor flip
  CHECK(view.value(0, 1) == true);
  CHECK(view.ones_at(0, cls.full_subset()) == 0);  // both rows had a 1
  BitVec only1(2);
  only1.set(1, true);
  CHECK(view.ones_at(1, only1) == 0);  // row 1 value at x=1 is 0
}

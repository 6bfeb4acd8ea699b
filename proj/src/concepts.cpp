#include "qlearn/concepts.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace qlearn {

ConceptClass::ConceptClass(unsigned n, std::vector<Concept> rows,
                           std::vector<std::string> labels)
    : n_(n) {
  if (n == 0 || n > 16)
    throw std::invalid_argument("ConceptClass: n must be in [1, 16]");
  if (rows.empty()) throw std::invalid_argument("ConceptClass: empty class");
  const uint64_t N = uint64_t{1} << n;
  if (!labels.empty() && labels.size() != rows.size())
    throw std::invalid_argument("ConceptClass: label count mismatch");

  // Deduplicate rows, keeping first occurrences in order.
  std::set<Concept> seen;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != N)
      throw std::invalid_argument("ConceptClass: row length != 2^n");
    if (seen.insert(rows[i]).second) {
      rows_.push_back(rows[i]);
      if (!labels.empty()) labels_.push_back(labels[i]);
    }
  }

  cols_.assign(N, BitVec(rows_.size()));
  for (size_t c = 0; c < rows_.size(); ++c)
    for (uint64_t x = 0; x < N; ++x)
      if (rows_[c].get(x)) cols_[x].set(c, true);
}

std::string ConceptClass::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  auto& arr = j["concepts"] = nlohmann::json::array();
  for (const auto& r : rows_) arr.push_back(r.to_hex());
  if (!labels_.empty()) j["labels"] = labels_;
  return j.dump();
}

ConceptClass ConceptClass::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  unsigned n = j.at("n").get<unsigned>();
  if (n == 0 || n > 16)
    throw std::invalid_argument("ConceptClass::from_json: n out of range");
  const uint64_t N = uint64_t{1} << n;
  std::vector<Concept> rows;
  for (const auto& h : j.at("concepts"))
    rows.push_back(BitVec::from_hex(h.get<std::string>(), N));
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return ConceptClass(n, std::move(rows), std::move(labels));
}

Rational gamma_at(const ConceptClass& cls, uint64_t input) {
  size_t ones = cls.column(input).popcount();
  size_t zeros = cls.size() - ones;
  return Rational(static_cast<int64_t>(std::min(ones, zeros)),
                  static_cast<int64_t>(cls.size()));
}

std::pair<Rational, uint64_t> gamma_of_subset(const ConceptClass& cls,
                                              const std::vector<size_t>& subset) {
  if (subset.size() < 2)
    throw std::invalid_argument("gamma_of_subset: need at least 2 concepts");
  BitVec mask(cls.size());
  for (size_t c : subset) mask.set(c, true);
  if (mask.popcount() != subset.size())
    throw std::invalid_argument("gamma_of_subset: duplicate concept index");

  size_t k = subset.size();
  size_t best = 0;
  uint64_t best_x = 0;
  for (uint64_t x = 0; x < cls.domain_size(); ++x) {
    size_t o = cls.column_ones(x, mask);
    size_t mn = std::min(o, k - o);
    if (mn > best) {
      best = mn;
      best_x = x;
    }
  }
  return {Rational(static_cast<int64_t>(best), static_cast<int64_t>(k)), best_x};
}

GammaReport gamma_hat(const ConceptClass& cls) {
  const size_t C = cls.size();
  if (C < 2) throw std::invalid_argument("gamma_hat: need at least 2 concepts");
  if (C > kGammaHatBruteCap)
    throw std::invalid_argument("gamma_hat: class too large for exhaustive search");

  // Columns as small masks over concepts; duplicates carry no information.
  std::vector<uint32_t> cols;
  cols.reserve(cls.domain_size());
  for (uint64_t x = 0; x < cls.domain_size(); ++x) {
    uint32_t m = 0;
    for (size_t c = 0; c < C; ++c)
      if (cls.value(c, x)) m |= (1u << c);
    cols.push_back(m);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

  // best = best_num/best_den; a subset is abandoned as soon as its running
  // max min-count m satisfies m/k >= best.
  int64_t best_num = 1, best_den = 1;  // sentinel 1 > 1/2 >= any gamma
  uint32_t best_sub = 0;
  for (uint32_t sub = 1, end = static_cast<uint32_t>((1ULL << C) - 1); sub <= end;
       ++sub) {
    int k = std::popcount(sub);
    if (k < 2) continue;
    int64_t mx = 0;
    bool abandoned = false;
    for (uint32_t cm : cols) {
      int o = std::popcount(sub & cm);
      int64_t mn = std::min(o, k - o);
      if (mn > mx) {
        mx = mn;
        if (mx * best_den >= best_num * k) {
          abandoned = true;
          break;
        }
      }
    }
    if (!abandoned && mx * best_den < best_num * k) {
      best_num = mx;
      best_den = k;
      best_sub = sub;
    }
    if (sub == end) break;  // avoid wraparound when C == 32 (cannot happen, C<=20)
  }

  GammaReport rep;
  rep.gamma_hat = Rational(best_num, best_den);
  for (size_t c = 0; c < C; ++c)
    if ((best_sub >> c) & 1) rep.witness_subset.push_back(c);
  for (uint64_t x = 0; x < cls.domain_size(); ++x)
    rep.per_input.emplace(x, gamma_at(cls, x));
  rep.exhaustive = true;
  return rep;
}

BitVec one_sensitive_mask(const ConceptClass& cls, const BitVec& subset) {
  size_t k = subset.popcount();
  if (k == 0) throw std::invalid_argument("one_sensitive_mask: empty subset");
  BitVec mask(cls.domain_size());
  for (uint64_t x = 0; x < cls.domain_size(); ++x)
    if (2 * cls.column_ones(x, subset) > k) mask.set(x, true);
  return mask;
}

ConceptClass apply_flip(const ConceptClass& cls, const BitVec& mask) {
  if (mask.size() != cls.domain_size())
    throw std::invalid_argument("apply_flip: mask length != 2^n");
  std::vector<Concept> rows;
  rows.reserve(cls.size());
  for (size_t c = 0; c < cls.size(); ++c) rows.push_back(cls.row(c) ^ mask);
  return ConceptClass(cls.n(), std::move(rows), cls.labels());
}

Concept majority_concept(const ConceptClass& cls) {
  Concept out(cls.domain_size());
  for (uint64_t x = 0; x < cls.domain_size(); ++x)
    if (2 * cls.column(x).popcount() > cls.size()) out.set(x, true);
  return out;
}

bool semi_rich_check(const ConceptClass& cls, const std::vector<uint64_t>& inputs,
                     const Rational& gamma) {
  if (inputs.empty()) throw std::invalid_argument("semi_rich_check: empty input set");
  const auto I = static_cast<int64_t>(inputs.size());
  size_t rich = 0;
  for (size_t c = 0; c < cls.size(); ++c) {
    int64_t ones = 0;
    for (uint64_t x : inputs) ones += cls.value(c, x) ? 1 : 0;
    // ones/|I| >= gamma  <=>  ones*den >= num*|I|
    if (ones * gamma.den >= gamma.num * I) ++rich;
  }
  return rich >= (cls.size() + 1) / 2;
}

std::vector<uint64_t> build_semirich_set(const ClassView& view) {
  const ConceptClass& cls = *view.cls;
  const uint64_t N = cls.domain_size();
  const size_t total = view.subset_size();
  if (total < 2) throw std::invalid_argument("build_semirich_set: need >= 2 concepts");

  BitVec covered(cls.size());
  BitVec in_I(N);
  std::vector<uint64_t> I;
  size_t covered_count = 0;

  while (2 * covered_count < total && I.size() < N) {
    BitVec rem = view.subset;
    rem &= covered.inverted();
    const size_t rem_size = total - covered_count;

    // Pick the input (outside I) with the most 1s after flipping the
    // remaining concepts to 1-sensitivity; ties go to the smaller input.
    size_t best = 0;
    uint64_t best_x = N;  // sentinel
    for (uint64_t x = 0; x < N; ++x) {
      if (in_I.get(x)) continue;
      size_t o = view.ones_at(x, rem);
      if (2 * o > rem_size) o = rem_size - o;
      if (best_x == N || o > best) {
        best = o;
        best_x = x;
      }
    }
    I.push_back(best_x);
    in_I.set(best_x, true);

    // Cover the concepts whose value at best_x is 1 in the view itself
    // (i.e. before this round's transient flip).
    for (size_t c = 0; c < cls.size(); ++c) {
      if (rem.get(c) && view.value(c, best_x)) {
        covered.set(c, true);
        ++covered_count;
      }
    }
  }
  if (2 * covered_count < total)
    throw std::logic_error("build_semirich_set: failed to cover half the class");
  return I;
}

std::vector<uint64_t> build_semirich_set(const ConceptClass& cls) {
  return build_semirich_set(ClassView(cls));
}

namespace {
// Does the class realize all 2^k patterns on the given inputs?
bool shatters(const ConceptClass& cls, const std::vector<uint64_t>& pts) {
  const size_t k = pts.size();
  std::vector<bool> hit(size_t{1} << k, false);
  size_t found = 0;
  for (size_t c = 0; c < cls.size(); ++c) {
    size_t pat = 0;
    for (size_t i = 0; i < k; ++i)
      if (cls.value(c, pts[i])) pat |= (size_t{1} << i);
    if (!hit[pat]) {
      hit[pat] = true;
      if (++found == hit.size()) return true;
    }
  }
  return found == hit.size();
}

bool any_shattered(const ConceptClass& cls, unsigned k, std::vector<uint64_t>& pts,
                   uint64_t start, uint64_t& budget) {
  if (pts.size() == k) {
    if (budget-- == 0) throw std::runtime_error("vc_dimension: search too large");
    return shatters(cls, pts);
  }
  for (uint64_t x = start; x < cls.domain_size(); ++x) {
    pts.push_back(x);
    if (any_shattered(cls, k, pts, x + 1, budget)) {
      pts.pop_back();
      return true;
    }
    pts.pop_back();
  }
  return false;
}
}  // namespace

unsigned vc_dimension(const ConceptClass& cls) {
  unsigned best = 0;
  uint64_t budget = 50'000'000;  // guard against infeasible domains
  // Need 2^k distinct patterns, so k <= log2 |C|; also k points must exist.
  for (unsigned k = 1; (size_t{1} << k) <= cls.size() && k <= cls.domain_size(); ++k) {
    std::vector<uint64_t> pts;
    if (any_shattered(cls, k, pts, 0, budget))
      best = k;
    else
      break;  // shattering is monotone: no k+1 set without a k set
  }
  return best;
}

}  // namespace qlearn

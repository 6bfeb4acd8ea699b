#include "qlearn/partitions.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include <json.hpp>

namespace qlearn {

BalancedSplit balanced_split_inputs(const ClassView& view) {
  const ConceptClass& cls = *view.cls;
  const uint64_t N = cls.domain_size();
  const size_t total = view.subset_size();
  if (total < 2)
    throw std::invalid_argument("balanced_split_inputs: need >= 2 concepts");
  for (uint64_t x = 0; x < N; ++x)
    if (2 * view.ones_at(x, view.subset) > total)
      throw std::invalid_argument("balanced_split_inputs: view is not 1-sensitive");

  BalancedSplit out;
  out.frozen_flips = BitVec(N);
  out.covered = BitVec(cls.size());
  BitVec in_I(N);
  size_t covered_count = 0;

  while (2 * covered_count < total) {
    if (out.inputs.size() >= N)
      throw std::logic_error("balanced_split_inputs: exhausted the domain");
    BitVec rem = view.subset;
    rem &= out.covered.inverted();
    const size_t rem_size = total - covered_count;

    // Same pick rule as the semi-rich construction: most 1s after flipping
    // the remaining concepts to 1-sensitivity, smaller input on ties.
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
    out.inputs.push_back(best_x);
    in_I.set(best_x, true);

    // Unlike the semi-rich construction, coverage counts the *flipped*
    // column, and a pick whose column was transiently flipped freezes that
    // flip, so covered concepts keep a 1 there through flips^J.
    bool flipped = 2 * view.ones_at(best_x, rem) > rem_size;
    if (flipped) out.frozen_flips.set(best_x, true);
    for (size_t c : rem.set_positions()) {
      if (view.value(c, best_x) != flipped) {  // 1 after the transient flip
        out.covered.set(c, true);
        ++covered_count;
      }
    }
  }
  return out;
}

namespace {

BitVec mask_of(size_t universe, const std::vector<size_t>& key) {
  BitVec m(universe);
  for (size_t c : key) m.set(c, true);
  return m;
}

SplitRecord split_piece(const ConceptClass& cls, const std::vector<size_t>& key,
                        unsigned depth, const std::vector<size_t>* witness) {
  SplitRecord rec;
  rec.key = key;
  rec.depth = depth;
  rec.basis = witness ? *witness : key;

  BitVec basis_mask = mask_of(cls.size(), rec.basis);
  rec.K = one_sensitive_mask(cls, basis_mask);
  ClassView view(cls, basis_mask, rec.K);
  BalancedSplit bs = balanced_split_inputs(view);
  rec.inputs = bs.inputs;
  rec.J = bs.frozen_flips;

  BitVec flips = rec.K ^ rec.J;
  for (size_t c : key) {
    bool zero = true;
    for (uint64_t x : rec.inputs)
      if (cls.value(c, x) ^ flips.get(x)) {
        zero = false;
        break;
      }
    (zero ? rec.zero : rec.star).push_back(c);
  }
  if (rec.star.empty() || rec.zero.empty())
    throw std::logic_error("build_partition: degenerate split");

  BitVec star_mask = mask_of(cls.size(), rec.star);
  rec.basis_star = star_mask.count_and(basis_mask);
  rec.basis_zero = rec.basis.size() - rec.basis_star;
  return rec;
}

}  // namespace

Partition build_partition(const ConceptClass& cls, unsigned k) {
  if (k == 0 || k > cls.size())
    throw std::invalid_argument("build_partition: k must be in [1, |C|]");

  Partition part;
  part.k = k;
  part.root.resize(cls.size());
  std::iota(part.root.begin(), part.root.end(), size_t{0});
  if (k == 1) {
    part.pieces = {part.root};
    return part;
  }

  // The first split comes from a gamma-hat witness: the split leaves at
  // least 1/4 of the witness on each side, and refinements only fragment it
  // further, so the witness keeps the partition's gamma at gamma-hat.
  GammaReport gr = gamma_hat(cls);

  std::deque<std::pair<std::vector<size_t>, unsigned>> pending;
  pending.emplace_back(part.root, 0u);
  std::vector<std::vector<size_t>> finished;  // popped but unsplittable
  size_t count = 1;
  while (count < k) {
    if (pending.empty())
      throw std::logic_error("build_partition: ran out of splittable pieces");
    auto [key, depth] = pending.front();
    pending.pop_front();
    if (key.size() < 2) {
      finished.push_back(std::move(key));
      continue;
    }
    SplitRecord rec =
        split_piece(cls, key, depth, depth == 0 ? &gr.witness_subset : nullptr);
    part.rounds = std::max(part.rounds, depth + 1);
    pending.emplace_back(rec.star, depth + 1);
    pending.emplace_back(rec.zero, depth + 1);
    part.splits.emplace(key, std::move(rec));
    ++count;
  }

  for (auto& kv : pending) finished.push_back(std::move(kv.first));
  // Pieces are disjoint, so first elements are unique; sort for a canonical
  // presentation independent of queue order.
  std::sort(finished.begin(), finished.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  part.pieces = std::move(finished);
  return part;
}

size_t locate_piece(const ConceptClass& cls, const Partition& part, BoolOracle& oracle) {
  if (oracle.input_bits != cls.n())
    throw std::invalid_argument("locate_piece: oracle arity mismatch");
  std::vector<size_t> key = part.root;
  while (true) {
    auto it = part.splits.find(key);
    if (it == part.splits.end()) break;
    const SplitRecord& rec = it->second;
    bool all_zero = true;
    for (uint64_t x : rec.inputs) {
      if (oracle.classical_query(x) ^ rec.K.get(x) ^ rec.J.get(x)) {
        all_zero = false;
        break;
      }
    }
    key = all_zero ? rec.zero : rec.star;
  }
  for (size_t i = 0; i < part.pieces.size(); ++i)
    if (part.pieces[i] == key) return i;
  throw std::logic_error("locate_piece: walk ended outside the partition");
}

std::optional<Rational> gamma_hat_partition(
    const ConceptClass& cls, const std::vector<std::vector<size_t>>& pieces) {
  const size_t C = cls.size();
  if (C < 2)
    throw std::invalid_argument("gamma_hat_partition: need at least 2 concepts");
  if (C > kGammaHatBruteCap)
    throw std::invalid_argument("gamma_hat_partition: class too large");

  std::vector<int> piece_of(C, -1);
  for (size_t p = 0; p < pieces.size(); ++p)
    for (size_t c : pieces[p]) {
      if (c >= C || piece_of[c] != -1)
        throw std::invalid_argument("gamma_hat_partition: not a partition");
      piece_of[c] = static_cast<int>(p);
    }
  for (int p : piece_of)
    if (p == -1) throw std::invalid_argument("gamma_hat_partition: not a partition");

  std::vector<uint32_t> cols;
  for (uint64_t x = 0; x < cls.domain_size(); ++x) {
    uint32_t m = 0;
    for (size_t c = 0; c < C; ++c)
      if (cls.value(c, x)) m |= (1u << c);
    cols.push_back(m);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

  std::optional<Rational> best;
  std::vector<size_t> in_piece(pieces.size());
  for (uint32_t sub = 1, end = static_cast<uint32_t>((1ULL << C) - 1);; ++sub) {
    int k = std::popcount(sub);
    if (k >= 2) {
      // Fragmented iff no piece holds ceil(3k/4) or more of the subset.
      std::fill(in_piece.begin(), in_piece.end(), size_t{0});
      size_t largest = 0;
      for (size_t c = 0; c < C; ++c)
        if ((sub >> c) & 1) largest = std::max(largest, ++in_piece[piece_of[c]]);
      if (largest < (3 * static_cast<size_t>(k) + 3) / 4) {
        int64_t mx = 0;
        for (uint32_t cm : cols) {
          int o = std::popcount(sub & cm);
          mx = std::max(mx, static_cast<int64_t>(std::min(o, k - o)));
        }
        Rational g(mx, k);
        if (!best || g < *best) best = g;
      }
    }
    if (sub == end) break;
  }
  return best;
}

std::string Partition::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["rounds"] = rounds;
  j["pieces"] = pieces;
  auto& arr = j["splits"] = nlohmann::json::array();
  for (const auto& [key, rec] : splits) {
    nlohmann::json e;
    e["key"] = rec.key;
    e["basis"] = rec.basis;
    e["inputs"] = rec.inputs;
    e["K"] = rec.K.to_hex();
    e["J"] = rec.J.to_hex();
    e["star"] = rec.star;
    e["zero"] = rec.zero;
    e["depth"] = rec.depth;
    arr.push_back(std::move(e));
  }
  return j.dump();
}

SimonResult simon_partition_learn(const MultiOutputFunction& f, unsigned l,
                                  QueryLedger& ledger, SplitMix64& rng) {
  const unsigned m = f.m;
  if (l >= m) throw std::invalid_argument("simon_partition_learn: need l < m");
  const unsigned target = m - l;
  const uint64_t budget = 3ull * m;

  SimonResult res;
  unsigned rank = 0;
  while (rank < target) {
    if (res.samples >= budget)
      throw SimonBudgetError("simon_partition_learn: sample budget exhausted",
                             res.span);
    uint64_t y = simon_sample(f, ledger, rng);
    ++res.samples;
    if (y != 0 && !gf2_span_contains(res.span, y)) {
      res.span.push_back(y);
      ++rank;
    }
  }
  res.V = SubspaceF2::from_vectors(m, gf2_nullspace(res.span, m));
  return res;
}

CollisionResult classical_collision_baseline(const MultiOutputFunction& f, unsigned l,
                                             SplitMix64& rng, uint64_t max_queries) {
  const unsigned m = f.m;
  if (l >= m)
    throw std::invalid_argument("classical_collision_baseline: need l < m");

  CollisionResult res;
  const uint64_t domain = uint64_t{1} << m;
  std::map<uint64_t, std::vector<uint64_t>> buckets;  // f-value -> inputs seen
  std::set<uint64_t> seen;
  unsigned rank = 0;
  // Collision XORs all lie in V (dim l), so the rank can never overshoot;
  // for l = 0 there is no collision certificate and the budget just burns.
  while (rank < l || l == 0) {
    if (res.queries >= max_queries || seen.size() == domain) break;
    uint64_t x = rng.next_below(domain);
    while (seen.count(x)) x = rng.next_below(domain);  // fresh inputs only, rejects are free
    seen.insert(x);
    ++res.queries;
    auto& xs = buckets[f(x)];
    for (uint64_t y : xs) {
      uint64_t d = x ^ y;
      if (!gf2_span_contains(res.span, d)) {
        res.span.push_back(d);
        ++rank;
      }
    }
    xs.push_back(x);
  }
  res.success = (l > 0 && rank == l);
  res.V = SubspaceF2::from_vectors(m, res.span);
  return res;
}

}  // namespace qlearn

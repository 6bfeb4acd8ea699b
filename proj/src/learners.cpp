#include "qlearn/learners.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qlearn {

namespace {

// Smallest k with 2^k >= v.
uint64_t ceil_log2(uint64_t v) { return v <= 1 ? 0 : std::bit_width(v - 1); }

// Per-round repetition count max(1, ceil(log2(3 log2 |C|))): enough to push
// the per-round miss probability below 1/(3 log2 |C|), so the union over all
// rounds stays under 1/3.
uint64_t inner_reps(size_t class_size) {
  double lg = std::log2(static_cast<double>(class_size));
  double r = std::ceil(std::log2(3.0 * lg));
  return r < 1.0 ? 1 : static_cast<uint64_t>(r);
}

struct QuantumOutcome {
  LearnResult res;
  bool inconsistent = false;  // version space emptied: oracle not in the class
};

// The randomized learner proper. Inconsistency is reported through the flag
// (with the partial ledger intact) so the trial driver can count the queries
// already spent; the public wrapper turns it into an exception.
QuantumOutcome quantum_core(const ConceptClass& cls, const Concept& target,
                            SplitMix64& rng) {
  if (cls.size() == 0) throw std::invalid_argument("quantum_exact_learn: empty class");
  if (target.size() != cls.domain_size())
    throw std::invalid_argument("quantum_exact_learn: target/domain size mismatch");

  QuantumOutcome out;
  LearnResult& res = out.res;

  BoolOracle oracle;
  oracle.concept_fn = [&target](uint64_t x) { return target.get(x); };
  oracle.input_bits = cls.n();
  oracle.ledger = &res.ledger;

  BitVec S = cls.full_subset();
  const uint64_t reps = inner_reps(cls.size());
  // Each round provably at least halves |S| (found: flipped columns have at
  // most half 1s; all-miss: at least half the concepts have a 1 somewhere on
  // I). The slack only guards against implementation bugs.
  const unsigned outer_cap = static_cast<unsigned>(ceil_log2(cls.size())) + 8;

  while (S.popcount() > 1) {
    ++res.outer_iterations;
    if (res.outer_iterations > outer_cap)
      throw std::logic_error("quantum_exact_learn: version space failed to shrink");
    std::string phase = "round" + std::to_string(res.outer_iterations);
    res.ledger.begin_phase(phase);

    BitVec K = one_sensitive_mask(cls, S);
    ClassView view(cls, S, K);
    std::vector<uint64_t> I = build_semirich_set(view);
    oracle.flips = K;

    bool found = false;
    uint64_t a_found = 0;
    for (uint64_t r = 0; r < reps && !found; ++r) {
      uint64_t a = bbht_subset_search(oracle, I, rng);
      bool ans = oracle.classical_query(a);
      res.transcript.push_back({phase, a, ans});
      if (ans) {
        found = true;
        a_found = a;
      }
    }

    BitVec next(S.size());
    for (size_t c : S.set_positions()) {
      bool keep;
      if (found) {
        keep = view.value(c, a_found);
      } else {
        keep = true;
        for (uint64_t x : I)
          if (view.value(c, x)) {
            keep = false;
            break;
          }
      }
      if (keep) next.set(c, true);
    }
    S = next;
    oracle.flips = BitVec();

    if (!S.any()) {
      out.inconsistent = true;
      return out;
    }
  }

  size_t idx = S.set_positions().front();
  res.hypothesis = cls.row(idx);
  res.identified_index = idx;
  res.success = (res.hypothesis == target);
  return out;
}

}  // namespace

LearnerKind learner_kind_from_string(const std::string& name) {
  if (name == "quantum") return LearnerKind::quantum;
  if (name == "halving") return LearnerKind::halving;
  if (name == "nestedbv") return LearnerKind::nested_bv;
  throw std::invalid_argument("unknown learner: " + name);
}

std::string learner_kind_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::quantum: return "quantum";
    case LearnerKind::halving: return "halving";
    case LearnerKind::nested_bv: return "nestedbv";
  }
  throw std::logic_error("unreachable");
}

LearnResult quantum_exact_learn(const ConceptClass& cls, const Concept& target,
                                SplitMix64& rng) {
  QuantumOutcome out = quantum_core(cls, target, rng);
  if (out.inconsistent) throw std::runtime_error("oracle inconsistent with class");
  return std::move(out.res);
}

LearnResult classical_halving_learn(const ConceptClass& cls, const Concept& target) {
  if (cls.size() == 0) throw std::invalid_argument("classical_halving_learn: empty class");
  if (target.size() != cls.domain_size())
    throw std::invalid_argument("classical_halving_learn: target/domain size mismatch");

  LearnResult res;
  BoolOracle oracle;
  oracle.concept_fn = [&target](uint64_t x) { return target.get(x); };
  oracle.input_bits = cls.n();
  oracle.ledger = &res.ledger;

  BitVec S = cls.full_subset();
  while (S.popcount() > 1) {
    ++res.outer_iterations;
    size_t total = S.popcount();
    uint64_t best_a = 0;
    size_t best_bal = 0;
    for (uint64_t x = 0; x < cls.domain_size(); ++x) {
      size_t ones = cls.column_ones(x, S);
      size_t bal = std::min(ones, total - ones);
      if (bal > best_bal) {
        best_bal = bal;
        best_a = x;
      }
    }
    if (best_bal == 0)
      throw std::logic_error("distinct concepts with no separating input");

    bool ans = oracle.classical_query(best_a);
    res.transcript.push_back({"main", best_a, ans});

    BitVec next(S.size());
    for (size_t c : S.set_positions())
      if (cls.value(c, best_a) == ans) next.set(c, true);
    S = next;
    if (!S.any()) throw std::runtime_error("oracle inconsistent with class");
  }

  size_t idx = S.set_positions().front();
  res.hypothesis = cls.row(idx);
  res.identified_index = idx;
  res.success = (res.hypothesis == target);
  return res;
}

namespace {

// Number of parity blocks: d = 1 is a single block over all n bits; for
// d >= 2 the input splits into r blocks with r^d = n (so each block has
// n^((d-1)/d) bits). Throws when no integral r exists.
unsigned nested_block_count(unsigned n, unsigned d) {
  if (d == 0) throw std::invalid_argument("nested parity: depth must be >= 1");
  if (d == 1) return 1;
  for (unsigned r = 1; r <= n; ++r) {
    uint64_t p = 1;
    bool over = false;
    for (unsigned i = 0; i < d; ++i) {
      p *= r;
      if (p > n) {
        over = true;
        break;
      }
    }
    if (!over && p == n) return r;
    if (over || p > n) break;
  }
  throw std::invalid_argument("nested parity: n admits no integral block split");
}

}  // namespace

LearnResult nested_bv_learn(const ClassSpec& spec,
                            const std::function<bool(uint64_t)>& target) {
  unsigned pieces, width;
  if (spec.kind == ClassSpec::Kind::nested_bv) {
    pieces = nested_block_count(spec.n, spec.d);
    width = spec.n / pieces;  // block i = input bits [i*width, (i+1)*width)
  } else if (spec.kind == ClassSpec::Kind::prefixed_parity) {
    if (spec.k == 0 || spec.k >= spec.n)
      throw std::invalid_argument("prefix parity: need 0 < k < n");
    pieces = 1u << spec.k;
    width = spec.n - spec.k;  // concept index packs a^i at [i*width, (i+1)*width)
  } else {
    throw std::invalid_argument("nested_bv_learn: unsupported class kind");
  }

  LearnResult res;
  BoolOracle sub;
  sub.input_bits = width;
  sub.ledger = &res.ledger;

  uint64_t index = 0;
  for (unsigned i = 0; i < pieces; ++i) {
    res.ledger.begin_phase("block" + std::to_string(i));
    if (spec.kind == ClassSpec::Kind::nested_bv) {
      // All other blocks zero, so the OR collapses to block i's parity.
      sub.concept_fn = [&target, i, width](uint64_t y) {
        return target(y << (i * width));
      };
    } else {
      // Fix the prefix to i; the suffix is the parity argument.
      unsigned k = spec.k;
      sub.concept_fn = [&target, i, k](uint64_t y) {
        return target((y << k) | i);
      };
    }
    uint64_t ai = bernstein_vazirani(sub, width);
    index |= ai << (i * width);
    ++res.outer_iterations;
  }

  res.identified_index = index;
  res.hypothesis = Concept(uint64_t{1} << spec.n);
  bool ok = true;
  for (uint64_t x = 0; x < res.hypothesis.size(); ++x) {
    bool v = concept_value(spec, index, x);
    res.hypothesis.set(x, v);
    if (v != target(x)) ok = false;
  }
  res.success = ok;
  return res;
}

LearnResult nested_bv_learn(const ClassSpec& spec, uint64_t target_index) {
  auto fn = [&spec, target_index](uint64_t x) {
    return concept_value(spec, target_index, x);
  };
  return nested_bv_learn(spec, fn);
}

uint64_t quantum_query_cap(size_t class_size, const Rational& gamma_hat) {
  if (class_size < 2) return 0;
  uint64_t outer = ceil_log2(class_size);
  uint64_t reps = inner_reps(class_size);
  auto isize = static_cast<size_t>(gamma_hat.reciprocal().floor());
  return outer * reps * bbht_budget(isize);
}

uint64_t halving_query_cap(size_t class_size, const Rational& gamma_hat) {
  if (class_size < 2) return 0;
  double shrink = -std::log2(1.0 - gamma_hat.value());
  double q = std::log2(static_cast<double>(class_size)) / shrink;
  // The ratio is never within 1e-9 of an integer from above for the class
  // sizes in range, so the epsilon only undoes floating-point overshoot.
  return static_cast<uint64_t>(std::ceil(q - 1e-9));
}

namespace {

void finish_stats(TrialReport& rep, std::vector<uint64_t>& q, std::vector<uint64_t>& c) {
  if (rep.trials == 0) return;
  rep.success_rate = static_cast<double>(rep.successes) / static_cast<double>(rep.trials);
  std::sort(q.begin(), q.end());
  std::sort(c.begin(), c.end());
  size_t mid = (q.size() - 1) / 2;  // lower median
  rep.quantum_min = q.front();
  rep.quantum_median = q[mid];
  rep.quantum_max = q.back();
  rep.classical_min = c.front();
  rep.classical_median = c[mid];
  rep.classical_max = c.back();
}

}  // namespace

TrialReport run_trials(const ConceptClass& cls, LearnerKind kind, uint64_t trials,
                       uint64_t seed) {
  if (kind == LearnerKind::nested_bv)
    throw std::invalid_argument("run_trials: block-parity learner needs a class spec");
  TrialReport rep;
  rep.trials = trials;
  rep.seed = seed;
  if (trials == 0) return rep;

  SplitMix64 master(seed);
  std::vector<uint64_t> trial_seeds(trials);
  for (auto& s : trial_seeds) s = master.next();

  bool exhaustive = cls.size() <= trials;
  std::vector<uint64_t> q, c;
  q.reserve(trials);
  c.reserve(trials);
  for (uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(trial_seeds[t]);
    size_t idx = exhaustive ? static_cast<size_t>(t % cls.size())
                            : static_cast<size_t>(rng.next_below(cls.size()));
    const Concept& target = cls.row(idx);

    bool ok;
    uint64_t qn, cn;
    if (kind == LearnerKind::quantum) {
      QuantumOutcome out = quantum_core(cls, target, rng);
      ok = !out.inconsistent && out.res.success;
      qn = out.res.ledger.quantum_total();
      cn = out.res.ledger.classical_total();
    } else {
      LearnResult r = classical_halving_learn(cls, target);
      ok = r.success;
      qn = r.ledger.quantum_total();
      cn = r.ledger.classical_total();
    }
    if (ok) ++rep.successes;
    q.push_back(qn);
    c.push_back(cn);
  }
  finish_stats(rep, q, c);
  return rep;
}

TrialReport run_trials(const ClassSpec& spec, LearnerKind kind, uint64_t trials,
                       uint64_t seed) {
  if (kind != LearnerKind::nested_bv) return run_trials(make_class(spec), kind, trials, seed);

  TrialReport rep;
  rep.trials = trials;
  rep.seed = seed;
  if (trials == 0) return rep;

  BigInt total_big = class_size(spec);
  if (total_big > BigInt(uint64_t{1} << 62))
    throw std::invalid_argument("run_trials: class too large to index");
  auto total = static_cast<uint64_t>(total_big);

  SplitMix64 master(seed);
  std::vector<uint64_t> trial_seeds(trials);
  for (auto& s : trial_seeds) s = master.next();

  bool exhaustive = total <= trials;
  std::vector<uint64_t> q, c;
  q.reserve(trials);
  c.reserve(trials);
  for (uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(trial_seeds[t]);
    uint64_t idx = exhaustive ? t % total : rng.next_below(total);
    LearnResult r = nested_bv_learn(spec, idx);
    if (r.success) ++rep.successes;
    q.push_back(r.ledger.quantum_total());
    c.push_back(r.ledger.classical_total());
  }
  finish_stats(rep, q, c);
  return rep;
}

}  // namespace qlearn

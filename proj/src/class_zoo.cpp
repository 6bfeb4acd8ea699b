#include "qlearn/class_zoo.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qlearn/splitmix.hpp"

namespace qlearn {

namespace {

void check_n(unsigned n) {
  if (n == 0 || n > 16) throw std::invalid_argument("class spec: n must be in [1, 16]");
}

// Integer r with r^d == n, if one exists.
std::optional<unsigned> integral_root(unsigned n, unsigned d) {
  for (unsigned r = 1; r <= n; ++r) {
    uint64_t p = 1;
    for (unsigned i = 0; i < d && p <= n; ++i) p *= r;
    if (p == n) return r;
    if (p > n) return std::nullopt;
  }
  return std::nullopt;
}

ConceptClass materialize(unsigned n, uint64_t count,
                         bool (*value)(const ClassSpec&, uint64_t, uint64_t),
                         const ClassSpec& spec) {
  const uint64_t N = uint64_t{1} << n;
  std::vector<Concept> rows;
  rows.reserve(count);
  for (uint64_t c = 0; c < count; ++c) {
    Concept r(N);
    for (uint64_t x = 0; x < N; ++x)
      if (value(spec, c, x)) r.set(x, true);
    rows.push_back(std::move(r));
  }
  return ConceptClass(n, std::move(rows));
}

// Keep materialized truth-table matrices under ~2^27 bits (16 MiB).
void check_matrix_size(BigInt rows, unsigned n) {
  if (rows * (BigInt(1) << n) > (BigInt(1) << 27))
    throw std::invalid_argument("class spec: too large to materialize");
}

}  // namespace

ConceptClass parity_class(unsigned n) {
  check_n(n);
  ClassSpec s;
  s.kind = ClassSpec::Kind::parity;
  s.n = n;
  return materialize(n, uint64_t{1} << n, &concept_value, s);
}

ConceptClass delta_class(unsigned n) {
  check_n(n);
  ClassSpec s;
  s.kind = ClassSpec::Kind::delta;
  s.n = n;
  return materialize(n, uint64_t{1} << n, &concept_value, s);
}

bool nested_bv_value(unsigned n, unsigned d, uint64_t a, uint64_t x) {
  if (d <= 1) return gf2_dot(a, x) != 0;
  auto r = integral_root(n, d);
  if (!r) throw std::invalid_argument("nested_bv: n^(1/d) is not an integer");
  const unsigned w = n / *r;
  const uint64_t wm = (uint64_t{1} << w) - 1;
  for (unsigned i = 0; i < *r; ++i)
    if (gf2_dot((a >> (i * w)) & wm, (x >> (i * w)) & wm)) return true;
  return false;
}

ConceptClass nested_bv_class(unsigned n, unsigned d) {
  check_n(n);
  if (d == 0) throw std::invalid_argument("nested_bv: d must be positive");
  if (d > 1 && !integral_root(n, d))
    throw std::invalid_argument("nested_bv: n^(1/d) is not an integer");
  check_matrix_size(BigInt(1) << n, n);
  ClassSpec s;
  s.kind = ClassSpec::Kind::nested_bv;
  s.n = n;
  s.d = d;
  return materialize(n, uint64_t{1} << n, &concept_value, s);
}

bool prefixed_parity_value(unsigned n, unsigned k, uint64_t index, uint64_t x) {
  const unsigned w = n - k;
  const uint64_t i = x & ((uint64_t{1} << k) - 1);
  const uint64_t y = x >> k;
  const uint64_t ai = (index >> (i * w)) & ((uint64_t{1} << w) - 1);
  return gf2_dot(ai, y) != 0;
}

ConceptClass prefixed_parity_class(unsigned n, unsigned k) {
  check_n(n);
  if (k == 0 || k >= n) throw std::invalid_argument("prefixed_parity: need 1 <= k < n");
  const unsigned bits = (unsigned{1} << k) * (n - k);
  if (bits > 24) throw std::invalid_argument("prefixed_parity: class size cap exceeded");
  check_matrix_size(BigInt(1) << bits, n);
  ClassSpec s;
  s.kind = ClassSpec::Kind::prefixed_parity;
  s.n = n;
  s.k = k;
  return materialize(n, uint64_t{1} << bits, &concept_value, s);
}

ConceptClass random_class(unsigned n, uint64_t size, uint64_t seed) {
  check_n(n);
  const uint64_t N = uint64_t{1} << n;
  const BigInt space = BigInt(1) << N;
  if (size < 1 || BigInt(size) > space || size > 4096)
    throw std::invalid_argument("random_class: infeasible size");
  check_matrix_size(BigInt(size), n);

  SplitMix64 rng(seed);
  std::set<Concept> seen;
  std::vector<Concept> rows;
  uint64_t attempts = 0;
  const uint64_t max_attempts = 1000 * size + 10000;
  while (rows.size() < size) {
    if (++attempts > max_attempts)
      throw std::runtime_error("random_class: rejection sampling stalled");
    Concept r(N);
    for (uint64_t x = 0; x < N; ++x)
      if (rng.next() & 1) r.set(x, true);
    if (seen.insert(r).second) rows.push_back(std::move(r));
  }
  return ConceptClass(n, std::move(rows));
}

bool concept_value(const ClassSpec& spec, uint64_t index, uint64_t x) {
  switch (spec.kind) {
    case ClassSpec::Kind::parity:
      return gf2_dot(index, x) != 0;
    case ClassSpec::Kind::delta:
      return x == index;
    case ClassSpec::Kind::nested_bv:
      return nested_bv_value(spec.n, spec.d, index, x);
    case ClassSpec::Kind::prefixed_parity:
      return prefixed_parity_value(spec.n, spec.k, index, x);
    default:
      throw std::invalid_argument("concept_value: class kind has no lazy evaluator");
  }
}

BigInt class_size(const ClassSpec& spec) {
  switch (spec.kind) {
    case ClassSpec::Kind::parity:
    case ClassSpec::Kind::delta:
    case ClassSpec::Kind::nested_bv:
      return BigInt(1) << spec.n;
    case ClassSpec::Kind::prefixed_parity:
      return BigInt(1) << ((uint64_t{1} << spec.k) * (spec.n - spec.k));
    case ClassSpec::Kind::v_invariant:
      return count_subspaces(spec.m, spec.l) * 4;
    case ClassSpec::Kind::random:
      return spec.size;
    case ClassSpec::Kind::json_file:
      return ConceptClass::from_json([&] {
               std::ifstream in(spec.path);
               if (!in) throw std::runtime_error("class spec: cannot open " + spec.path);
               std::ostringstream ss;
               ss << in.rdbuf();
               return ss.str();
             }())
          .size();
  }
  throw std::logic_error("class_size: unreachable");
}

ConceptClass make_class(const ClassSpec& spec) {
  switch (spec.kind) {
    case ClassSpec::Kind::parity:
      return parity_class(spec.n);
    case ClassSpec::Kind::delta:
      return delta_class(spec.n);
    case ClassSpec::Kind::nested_bv:
      return nested_bv_class(spec.n, spec.d);
    case ClassSpec::Kind::prefixed_parity:
      return prefixed_parity_class(spec.n, spec.k);
    case ClassSpec::Kind::v_invariant:
      return v_invariant_class(spec.m, spec.l, spec.seed);
    case ClassSpec::Kind::random:
      return random_class(spec.n, spec.size, spec.seed);
    case ClassSpec::Kind::json_file: {
      std::ifstream in(spec.path);
      if (!in) throw std::runtime_error("class spec: cannot open " + spec.path);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ConceptClass::from_json(ss.str());
    }
  }
  throw std::logic_error("make_class: unreachable");
}

std::optional<Rational> analytic_gamma_hat(const ClassSpec& spec) {
  switch (spec.kind) {
    case ClassSpec::Kind::parity:
      return spec.n >= 2 ? Rational(1, 3) : Rational(1, 2);
    case ClassSpec::Kind::delta:
      return Rational(1, int64_t{1} << spec.n);
    default:
      return std::nullopt;
  }
}

// --- ClassSpec parsing --------------------------------------------------------

namespace {

const char* kind_name(ClassSpec::Kind k) {
  switch (k) {
    case ClassSpec::Kind::parity: return "parity";
    case ClassSpec::Kind::delta: return "delta";
    case ClassSpec::Kind::nested_bv: return "nestedbv";
    case ClassSpec::Kind::prefixed_parity: return "prefparity";
    case ClassSpec::Kind::v_invariant: return "vinv";
    case ClassSpec::Kind::random: return "rand";
    case ClassSpec::Kind::json_file: return "json";
  }
  return "?";
}

}  // namespace

ClassSpec ClassSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  ClassSpec spec;
  if (kind == "json") {
    spec.kind = Kind::json_file;
    if (rest.empty()) throw std::invalid_argument("class spec: json needs a path");
    spec.path = rest;
    return spec;
  }

  std::map<std::string, uint64_t> kv;
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("class spec: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
  }
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(std::string("class spec: missing ") + key);
    uint64_t v = it->second;
    kv.erase(it);
    return v;
  };

  if (kind == "parity") {
    spec.kind = Kind::parity;
    spec.n = static_cast<unsigned>(need("n"));
  } else if (kind == "delta") {
    spec.kind = Kind::delta;
    spec.n = static_cast<unsigned>(need("n"));
  } else if (kind == "nestedbv") {
    spec.kind = Kind::nested_bv;
    spec.n = static_cast<unsigned>(need("n"));
    spec.d = static_cast<unsigned>(need("d"));
  } else if (kind == "prefparity") {
    spec.kind = Kind::prefixed_parity;
    spec.n = static_cast<unsigned>(need("n"));
    spec.k = static_cast<unsigned>(need("k"));
  } else if (kind == "vinv") {
    spec.kind = Kind::v_invariant;
    spec.m = static_cast<unsigned>(need("m"));
    spec.l = static_cast<unsigned>(need("l"));
    spec.seed = kv.count("seed") ? need("seed") : 0;
  } else if (kind == "rand") {
    spec.kind = Kind::random;
    spec.n = static_cast<unsigned>(need("n"));
    spec.size = need("size");
    spec.seed = kv.count("seed") ? need("seed") : 0;
  } else {
    throw std::invalid_argument("class spec: unknown kind '" + kind + "'");
  }
  if (!kv.empty())
    throw std::invalid_argument("class spec: unknown key '" + kv.begin()->first + "'");
  return spec;
}

std::string ClassSpec::str() const {
  std::ostringstream ss;
  ss << kind_name(kind);
  switch (kind) {
    case Kind::parity:
    case Kind::delta:
      ss << ":n=" << n;
      break;
    case Kind::nested_bv:
      ss << ":n=" << n << ",d=" << d;
      break;
    case Kind::prefixed_parity:
      ss << ":n=" << n << ",k=" << k;
      break;
    case Kind::v_invariant:
      ss << ":m=" << m << ",l=" << l << ",seed=" << seed;
      break;
    case Kind::random:
      ss << ":n=" << n << ",size=" << size << ",seed=" << seed;
      break;
    case Kind::json_file:
      ss << ":" << path;
      break;
  }
  return ss.str();
}

// --- V-invariant functions ----------------------------------------------------

MultiOutputFunction v_invariant_function(const SubspaceF2& V, uint64_t seed) {
  const unsigned m = V.m;
  if (m == 0 || m > 10) throw std::invalid_argument("v_invariant_function: m out of range");
  if (V.dim() >= m) throw std::invalid_argument("v_invariant_function: dim V must be < m");
  const uint64_t N = uint64_t{1} << m;

  // Canonical coset representative: reduce by the RREF basis.
  auto rep = [&](uint64_t x) {
    for (uint64_t row : V.basis) {
      unsigned p = 63 - static_cast<unsigned>(std::countl_zero(row));
      if ((x >> p) & 1) x ^= row;
    }
    return x;
  };

  std::vector<uint64_t> reps;
  std::vector<int64_t> rep_index(N, -1);
  for (uint64_t x = 0; x < N; ++x) {
    uint64_t r = rep(x);
    if (rep_index[r] < 0) {
      rep_index[r] = static_cast<int64_t>(reps.size());
      reps.push_back(r);
    }
  }

  // Injection of cosets into {0,1}^m: partial Fisher-Yates over all values.
  SplitMix64 rng(seed);
  std::vector<uint64_t> pool(N);
  for (uint64_t v = 0; v < N; ++v) pool[v] = v;
  for (size_t i = 0; i < reps.size(); ++i) {
    size_t j = i + static_cast<size_t>(rng.next_below(N - i));
    std::swap(pool[i], pool[j]);
  }

  MultiOutputFunction f;
  f.m = m;
  f.table.resize(N);
  for (uint64_t x = 0; x < N; ++x) f.table[x] = pool[rep_index[rep(x)]];
  return f;
}

MultiOutputFunction v_invariant_function(unsigned m, const std::vector<uint64_t>& basis,
                                         uint64_t seed) {
  if (gf2_rank(basis) != basis.size())
    throw std::invalid_argument("v_invariant_function: dependent basis");
  return v_invariant_function(SubspaceF2::from_vectors(m, basis), seed);
}

bool verify_v_invariant(const MultiOutputFunction& f, const SubspaceF2& V) {
  const uint64_t N = uint64_t{1} << f.m;
  if (V.m != f.m || f.table.size() != N) return false;
  for (uint64_t x = 0; x < N; ++x)
    for (uint64_t y = x; y < N; ++y)
      if ((f.table[x] == f.table[y]) != V.contains(x ^ y)) return false;
  return true;
}

unsigned flattened_bits(unsigned m) {
  unsigned j = 0;
  while ((unsigned{1} << j) < m) ++j;  // ceil(log2 m); 0 when m == 1
  return m + j;
}

Concept flatten_to_boolean(const MultiOutputFunction& f) {
  const unsigned m = f.m;
  const unsigned n = flattened_bits(m);
  Concept out(uint64_t{1} << n);
  const uint64_t X = uint64_t{1} << m;
  const uint64_t J = uint64_t{1} << (n - m);
  for (uint64_t j = 0; j < J; ++j) {
    if (j >= m) break;  // out-of-range bit indexes read as 0
    for (uint64_t x = 0; x < X; ++x)
      if ((f.table[x] >> j) & 1) out.set(x | (j << m), true);
  }
  return out;
}

ConceptClass v_invariant_class(unsigned m, unsigned l, uint64_t seed,
                               unsigned per_subspace) {
  if (m == 0 || m > 10) throw std::invalid_argument("v_invariant_class: m out of range");
  if (l >= m) throw std::invalid_argument("v_invariant_class: need l < m");
  if (per_subspace == 0) throw std::invalid_argument("v_invariant_class: need samples");
  if (count_subspaces(m, l) * per_subspace > 8192)
    throw std::invalid_argument("v_invariant_class: too many pieces");

  auto subspaces = enumerate_subspaces(m, l);
  SplitMix64 master(seed);
  std::vector<Concept> rows;
  std::vector<std::string> labels;
  for (size_t i = 0; i < subspaces.size(); ++i) {
    for (unsigned s = 0; s < per_subspace; ++s) {
      rows.push_back(flatten_to_boolean(v_invariant_function(subspaces[i], master.next())));
      labels.push_back("V" + std::to_string(i) + "." + std::to_string(s));
    }
  }
  return ConceptClass(flattened_bits(m), std::move(rows), std::move(labels));
}

}  // namespace qlearn

#include "qlearn/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qlearn {

unsigned gf2_rref(std::vector<uint64_t>& rows) {
  size_t r = 0;
  for (int bit = 63; bit >= 0 && r < rows.size(); --bit) {
    size_t pivot = r;
    while (pivot < rows.size() && !((rows[pivot] >> bit) & 1)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && ((rows[i] >> bit) & 1)) rows[i] ^= rows[r];
    ++r;
  }
  rows.resize(r);
  return static_cast<unsigned>(r);
}

unsigned gf2_rank(std::vector<uint64_t> rows) { return gf2_rref(rows); }

std::vector<uint64_t> gf2_nullspace(const std::vector<uint64_t>& rows, unsigned m) {
  if (m == 0 || m > 64) throw std::invalid_argument("gf2_nullspace: bad dimension");
  std::vector<uint64_t> rr = rows;
  gf2_rref(rr);
  uint64_t pivots = 0;
  for (uint64_t row : rr) pivots |= uint64_t{1} << (63 - std::countl_zero(row));

  std::vector<uint64_t> basis;
  for (unsigned q = 0; q < m; ++q) {
    if ((pivots >> q) & 1) continue;
    uint64_t v = uint64_t{1} << q;
    for (uint64_t row : rr) {
      if ((row >> q) & 1) {
        unsigned p = 63 - static_cast<unsigned>(std::countl_zero(row));
        v |= uint64_t{1} << p;
      }
    }
    basis.push_back(v);
  }
  return basis;
}

bool gf2_span_contains(const std::vector<uint64_t>& rows, uint64_t v) {
  std::vector<uint64_t> rr = rows;
  gf2_rref(rr);
  for (uint64_t row : rr) {
    unsigned p = 63 - static_cast<unsigned>(std::countl_zero(row));
    if ((v >> p) & 1) v ^= row;
  }
  return v == 0;
}

SubspaceF2 SubspaceF2::from_vectors(unsigned m, std::vector<uint64_t> gens) {
  if (m == 0 || m > 64) throw std::invalid_argument("SubspaceF2: bad dimension");
  for (uint64_t g : gens)
    if (m < 64 && (g >> m) != 0)
      throw std::invalid_argument("SubspaceF2: vector outside F_2^m");
  gf2_rref(gens);
  SubspaceF2 s;
  s.m = m;
  s.basis = std::move(gens);
  return s;
}

bool SubspaceF2::contains(uint64_t v) const {
  for (uint64_t row : basis) {
    unsigned p = 63 - static_cast<unsigned>(std::countl_zero(row));
    if ((v >> p) & 1) v ^= row;
  }
  return v == 0;
}

std::vector<uint64_t> SubspaceF2::elements() const {
  std::vector<uint64_t> out;
  out.reserve(size_t{1} << dim());
  for (uint64_t mask = 0; mask < (uint64_t{1} << dim()); ++mask) {
    uint64_t v = 0;
    for (unsigned i = 0; i < dim(); ++i)
      if ((mask >> i) & 1) v ^= basis[i];
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubspaceF2 SubspaceF2::orthogonal_complement() const {
  return from_vectors(m, gf2_nullspace(basis, m));
}

std::vector<SubspaceF2> enumerate_subspaces(unsigned m, unsigned l) {
  if (m == 0 || m > 16) throw std::invalid_argument("enumerate_subspaces: m out of range");
  if (l > m) throw std::invalid_argument("enumerate_subspaces: l > m");
  std::vector<SubspaceF2> out;
  if (l == 0) {
    out.push_back(SubspaceF2::from_vectors(m, {}));
    return out;
  }

  // Choose pivot positions p_1 > ... > p_l, then enumerate every assignment
  // of the free entries of the RREF basis matrix.
  std::vector<unsigned> pivots(l);
  std::vector<bool> is_pivot(m, false);

  auto emit_combo = [&]() {
    std::fill(is_pivot.begin(), is_pivot.end(), false);
    for (unsigned p : pivots) is_pivot[p] = true;
    // Free positions per row: bits below the row's pivot, not pivots of
    // other rows.
    std::vector<std::vector<unsigned>> free_pos(l);
    size_t total_free = 0;
    for (unsigned i = 0; i < l; ++i) {
      for (unsigned q = 0; q < pivots[i]; ++q)
        if (!is_pivot[q]) free_pos[i].push_back(q);
      total_free += free_pos[i].size();
    }
    for (uint64_t assign = 0; assign < (uint64_t{1} << total_free); ++assign) {
      std::vector<uint64_t> basis(l);
      size_t bit = 0;
      for (unsigned i = 0; i < l; ++i) {
        uint64_t row = uint64_t{1} << pivots[i];
        for (unsigned q : free_pos[i]) {
          if ((assign >> bit) & 1) row |= uint64_t{1} << q;
          ++bit;
        }
        basis[i] = row;
      }
      SubspaceF2 s;
      s.m = m;
      s.basis = std::move(basis);  // already canonical RREF by construction
      out.push_back(std::move(s));
    }
  };

  // Enumerate descending combinations of pivot positions.
  std::vector<unsigned> combo(l);
  auto rec = [&](auto&& self, unsigned idx, unsigned next) -> void {
    if (idx == l) {
      for (unsigned i = 0; i < l; ++i) pivots[i] = combo[i];
      emit_combo();
      return;
    }
    for (unsigned p = next + 1; p-- > static_cast<unsigned>(l - idx - 1);) {
      combo[idx] = p;
      self(self, idx + 1, p - 1);
    }
  };
  rec(rec, 0, m - 1);
  std::sort(out.begin(), out.end());
  return out;
}

BigInt count_subspaces(unsigned m, unsigned l) {
  if (l > m) return 0;
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < l; ++i) {
    num *= (BigInt(1) << m) - (BigInt(1) << i);
    den *= (BigInt(1) << l) - (BigInt(1) << i);
  }
  return num / den;
}

BigInt count_invariant_functions(unsigned m, unsigned l) {
  if (m == 0 || m > 32) throw std::invalid_argument("count_invariant_functions: m out of range");
  if (l > m) throw std::invalid_argument("count_invariant_functions: l > m");
  if (m - l > 16)
    throw std::invalid_argument("count_invariant_functions: too many cosets to enumerate");
  const uint64_t cosets = uint64_t{1} << (m - l);
  BigInt out = 1;
  for (uint64_t j = 0; j < cosets; ++j) out *= (BigInt(1) << m) - j;
  return out;
}

}  // namespace qlearn

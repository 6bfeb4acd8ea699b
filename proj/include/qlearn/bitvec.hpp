#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlearn {

// Fixed-length packed bit vector. Used for truth tables (one bit per input),
// concept-subset masks (one bit per concept) and input flip masks. Bit i of
// word i/64 is element i, so element 0 is the least significant bit of the
// first word.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVec filled(size_t size, bool value) {
    BitVec v(size);
    if (value) {
      for (auto& w : v.words_) w = ~0ULL;
      v.trim();
    }
    return v;
  }

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t mask = 1ULL << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

  size_t popcount() const {
    size_t c = 0;
    for (uint64_t w : words_) c += static_cast<size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }

  // Number of positions set in both vectors (sizes must match).
  size_t count_and(const BitVec& other) const {
    check_size(other);
    size_t c = 0;
    for (size_t i = 0; i < words_.size(); ++i)
      c += static_cast<size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  BitVec& operator^=(const BitVec& other) {
    check_size(other);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& other) {
    check_size(other);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& other) {
    check_size(other);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  BitVec inverted() const {
    BitVec v = *this;
    for (auto& w : v.words_) w = ~w;
    v.trim();
    return v;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }
  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

  const std::vector<uint64_t>& words() const { return words_; }

  std::vector<size_t> set_positions() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < size_; ++i)
      if (get(i)) out.push_back(i);
    return out;
  }

  // Hex encoding: bytes in ascending element order, element 0 = LSB of the
  // first byte. Two hex digits per byte, lowercase.
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    size_t nbytes = (size_ + 7) / 8;
    std::string s;
    s.reserve(2 * nbytes);
    for (size_t b = 0; b < nbytes; ++b) {
      uint8_t byte = static_cast<uint8_t>(words_[b >> 3] >> ((b & 7) * 8));
      s.push_back(digits[byte >> 4]);
      s.push_back(digits[byte & 15]);
    }
    return s;
  }

  static BitVec from_hex(const std::string& hex, size_t size) {
    BitVec v(size);
    size_t nbytes = (size + 7) / 8;
    if (hex.size() != 2 * nbytes)
      throw std::invalid_argument("BitVec::from_hex: bad length");
    auto nibble = [](char c) -> uint64_t {
      if (c >= '0' && c <= '9') return static_cast<uint64_t>(c - '0');
      if (c >= 'a' && c <= 'f') return static_cast<uint64_t>(c - 'a' + 10);
      if (c >= 'A' && c <= 'F') return static_cast<uint64_t>(c - 'A' + 10);
      throw std::invalid_argument("BitVec::from_hex: bad digit");
    };
    for (size_t b = 0; b < nbytes; ++b) {
      uint64_t byte = (nibble(hex[2 * b]) << 4) | nibble(hex[2 * b + 1]);
      v.words_[b >> 3] |= byte << ((b & 7) * 8);
    }
    v.trim();
    return v;
  }

 private:
  void check_size(const BitVec& other) const {
    if (size_ != other.size_) throw std::invalid_argument("BitVec: size mismatch");
  }
  void trim() {
    size_t tail = size_ & 63;
    if (tail && !words_.empty()) words_.back() &= (1ULL << tail) - 1;
  }

  size_t size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace qlearn

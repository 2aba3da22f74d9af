#pragma once

#include <cstdint>
#include <vector>

namespace planarsucc {

// Number of bits needed to store values in [0, max_value].
unsigned bits_for(std::uint64_t max_value);

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n, bool value = false);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
  }
  std::size_t popcount() const;
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::size_t bits() const { return words_.size() * 64; }

  // Reads/writes `width` <= 64 bits starting at bit `pos`.
  std::uint64_t get_bits(std::size_t pos, unsigned width) const;
  void set_bits(std::size_t pos, unsigned width, std::uint64_t value);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Fixed-width packed array; width is fixed at construction.
class CompactArray {
 public:
  CompactArray() = default;
  CompactArray(std::size_t length, unsigned width);
  static CompactArray for_max(std::size_t length, std::uint64_t max_value) {
    return CompactArray(length, bits_for(max_value));
  }

  std::size_t size() const { return n_; }
  unsigned width() const { return width_; }
  std::uint64_t get(std::size_t i) const { return width_ ? bits_.get_bits(i * width_, width_) : 0; }
  void set(std::size_t i, std::uint64_t v);
  std::size_t bits() const { return n_ * width_; }

 private:
  std::size_t n_ = 0;
  unsigned width_ = 0;
  BitVector bits_;
};

// Rank/select over S subset of [0, universe): bitmap with a two-level rank
// directory (512-bit superblocks, 9-bit word counts), select by binary search.
class IndexableDictionary {
 public:
  IndexableDictionary() = default;
  IndexableDictionary(std::size_t universe, const std::vector<std::uint32_t>& sorted_members);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return count_; }
  // |{y in S : y < x}| for x in [0, universe].
  std::size_t rank(std::size_t x) const;
  std::uint32_t select(std::size_t i) const;
  bool member(std::size_t x) const;
  std::size_t bits() const;

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  BitVector bits_;
  std::vector<std::uint32_t> super_;  // absolute rank at each 512-bit boundary
  std::vector<std::uint64_t> rel_;    // 7 x 9-bit word ranks inside a superblock
};

}  // namespace planarsucc

#include "planarsucc/succinct.hpp"

#include <bit>

#include "planarsucc/errors.hpp"

namespace planarsucc {

unsigned bits_for(std::uint64_t max_value) {
  return max_value == 0 ? 0 : static_cast<unsigned>(std::bit_width(max_value));
}

BitVector::BitVector(std::size_t n, bool value)
    : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  if (value && (n & 63)) words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
}

std::size_t BitVector::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::uint64_t BitVector::get_bits(std::size_t pos, unsigned width) const {
  const std::size_t w = pos >> 6;
  const unsigned off = pos & 63;
  std::uint64_t v = words_[w] >> off;
  if (off + width > 64) v |= words_[w + 1] << (64 - off);
  return width == 64 ? v : v & ((std::uint64_t{1} << width) - 1);
}

void BitVector::set_bits(std::size_t pos, unsigned width, std::uint64_t value) {
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  value &= mask;
  const std::size_t w = pos >> 6;
  const unsigned off = pos & 63;
  words_[w] = (words_[w] & ~(mask << off)) | (value << off);
  if (off + width > 64) {
    const unsigned spill = off + width - 64;
    const std::uint64_t hi = (std::uint64_t{1} << spill) - 1;
    words_[w + 1] = (words_[w + 1] & ~hi) | (value >> (64 - off));
  }
}

CompactArray::CompactArray(std::size_t length, unsigned width)
    : n_(length), width_(width), bits_(length * width + 64) {}

void CompactArray::set(std::size_t i, std::uint64_t v) {
  if (width_ < 64 && (v >> width_) != 0)
    fail(ErrorKind::InvalidArgument, "value does not fit entry width");
  if (width_) bits_.set_bits(i * width_, width_, v);
}

IndexableDictionary::IndexableDictionary(std::size_t universe,
                                         const std::vector<std::uint32_t>& members)
    : universe_(universe), count_(members.size()), bits_(universe) {
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] >= universe) fail(ErrorKind::OutOfUniverse, "member outside universe");
    if (k && members[k] <= members[k - 1])
      fail(ErrorKind::InvalidArgument, "members must be strictly increasing");
    bits_.set(members[k]);
  }
  const auto& w = bits_.words();
  const std::size_t nsuper = w.size() / 8 + 1;
  super_.assign(nsuper + 1, 0);
  rel_.assign(nsuper, 0);
  std::uint32_t total = 0;
  for (std::size_t s = 0; s < nsuper; ++s) {
    super_[s] = total;
    std::uint32_t inner = 0;
    for (std::size_t k = 0; k < 8; ++k) {
      const std::size_t wi = s * 8 + k;
      if (k) rel_[s] |= static_cast<std::uint64_t>(inner) << (9 * (k - 1));
      if (wi < w.size()) inner += std::popcount(w[wi]);
    }
    total += inner;
  }
  super_[nsuper] = total;
}

std::size_t IndexableDictionary::rank(std::size_t x) const {
  if (x > universe_) fail(ErrorKind::OutOfUniverse, "rank argument outside universe");
  counters().probes++;
  const std::size_t wi = x >> 6;
  const std::size_t s = wi >> 3, k = wi & 7;
  std::size_t r = super_[s];
  if (k) r += (rel_[s] >> (9 * (k - 1))) & 511;
  if ((x & 63) && wi < bits_.words().size())
    r += std::popcount(bits_.words()[wi] & ((std::uint64_t{1} << (x & 63)) - 1));
  return r;
}

std::uint32_t IndexableDictionary::select(std::size_t i) const {
  if (i >= count_) fail(ErrorKind::IndexOutOfRange, "select index out of range");
  counters().probes++;
  std::size_t lo = 0, hi = super_.size() - 1;  // last superblock with super_[s] <= i
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (super_[mid] <= i) lo = mid; else hi = mid;
  }
  std::size_t left = i - super_[lo];
  const auto& w = bits_.words();
  for (std::size_t wi = lo * 8; wi < w.size(); ++wi) {
    const std::size_t c = std::popcount(w[wi]);
    if (left < c) {
      std::uint64_t word = w[wi];
      for (std::size_t t = 0; t < left; ++t) word &= word - 1;
      return static_cast<std::uint32_t>(wi * 64 + std::countr_zero(word));
    }
    left -= c;
  }
  fail(ErrorKind::IndexOutOfRange, "select directory corrupt");
}

bool IndexableDictionary::member(std::size_t x) const {
  if (x >= universe_) fail(ErrorKind::OutOfUniverse, "member argument outside universe");
  counters().probes++;
  return bits_.get(x);
}

std::size_t IndexableDictionary::bits() const {
  return bits_.bits() + super_.size() * 32 + rel_.size() * 64 + 2 * 64;
}

}  // namespace planarsucc

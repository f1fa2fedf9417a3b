#pragma once

// Fixed-universe dynamic bitset used for rotation sets and per-rotation men
// sets. Word-parallel boolean algebra is the workhorse of closure and repair
// computations, so this stays minimal and inline.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#if defined(_MSC_VER)
#include <intrin.h>
#endif

namespace rsm {

class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe)
      : size_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += popcount(w);
    return c;
  }

  IndexSet& operator|=(const IndexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // this \ o
  IndexSet& subtract(const IndexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }

  bool subset_of(const IndexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const IndexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool operator==(const IndexSet& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }
  bool operator!=(const IndexSet& o) const { return !(*this == o); }

  // Ascending member indices.
  std::vector<int> members() const {
    std::vector<int> out;
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

  template <typename F>
  void for_each(F&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        std::size_t bit = ctz(w);
        fn(wi * 64 + bit);
        w &= w - 1;
      }
    }
  }

  // True lexicographic order on the ascending member sequences: {1} sorts
  // after {0,2}, which a numeric word compare would get wrong.
  bool lex_less(const IndexSet& o) const {
    std::size_t a = first_from(0), b = o.first_from(0);
    while (a < size_ && b < o.size_) {
      if (a != b) return a < b;
      a = first_from(a + 1);
      b = o.first_from(b + 1);
    }
    return a >= size_ && b < o.size_;
  }

  std::size_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) {
      h ^= w;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t first_from(std::size_t i) const {
    while (i < size_ && !test(i)) {
      if ((i & 63) == 0 && words_[i >> 6] == 0)
        i += 64;
      else
        ++i;
    }
    return i < size_ ? i : size_;
  }

  static std::size_t popcount(std::uint64_t w) {
#if defined(__GNUC__) || defined(__clang__)
    return static_cast<std::size_t>(__builtin_popcountll(w));
#else
    std::size_t c = 0;
    for (; w; w &= w - 1) ++c;
    return c;
#endif
  }
  static std::size_t ctz(std::uint64_t w) {
#if defined(__GNUC__) || defined(__clang__)
    return static_cast<std::size_t>(__builtin_ctzll(w));
#else
    std::size_t c = 0;
    while (!(w & 1)) {
      w >>= 1;
      ++c;
    }
    return c;
#endif
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

}  // namespace rsm

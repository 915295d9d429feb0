#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace rootarr {

/// Fixed-capacity set of small unsigned integers packed into 64-bit words.
///
/// Used everywhere a set of positive-root indices is needed (ideals, flats,
/// blocks, memo keys), so it is a regular value type: cheap to copy, hashable,
/// totally ordered.
template <std::size_t Bits>
class FixedBitSet {
  static_assert(Bits > 0 && Bits % 64 == 0, "capacity must be a multiple of 64");

 public:
  static constexpr std::size_t capacity = Bits;
  static constexpr std::size_t words = Bits / 64;

  constexpr FixedBitSet() = default;

  FixedBitSet(std::initializer_list<int> elems) {
    for (int e : elems) set(e);
  }

  /// The set {0, 1, ..., n-1}.
  static FixedBitSet prefix(std::size_t n) {
    if (n > Bits) throw std::out_of_range("FixedBitSet::prefix: n exceeds capacity");
    FixedBitSet s;
    for (std::size_t w = 0; w < words && n > 0; ++w) {
      std::size_t take = n < 64 ? n : 64;
      s.w_[w] = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
      n -= take;
    }
    return s;
  }

  static FixedBitSet singleton(int i) {
    FixedBitSet s;
    s.set(i);
    return s;
  }

  void set(int i) { w_[word(i)] |= mask(i); }
  void reset(int i) { w_[word(i)] &= ~mask(i); }
  [[nodiscard]] bool test(int i) const { return (w_[word(i)] & mask(i)) != 0; }

  [[nodiscard]] int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  [[nodiscard]] bool empty() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }

  /// Smallest element, or -1 when empty.
  [[nodiscard]] int first() const {
    for (std::size_t w = 0; w < words; ++w)
      if (w_[w]) return static_cast<int>(w * 64 + std::countr_zero(w_[w]));
    return -1;
  }

  /// Smallest element strictly greater than i, or -1.
  [[nodiscard]] int next(int i) const {
    int start = i + 1;
    if (start >= static_cast<int>(Bits)) return -1;
    std::size_t w = static_cast<std::size_t>(start) / 64;
    std::uint64_t cur = w_[w] & (~std::uint64_t{0} << (start % 64));
    while (true) {
      if (cur) return static_cast<int>(w * 64 + std::countr_zero(cur));
      if (++w == words) return -1;
      cur = w_[w];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t cur = w_[w];
      while (cur) {
        int b = std::countr_zero(cur);
        f(static_cast<int>(w * 64 + b));
        cur &= cur - 1;
      }
    }
  }

  [[nodiscard]] std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  [[nodiscard]] bool subset_of(const FixedBitSet& o) const {
    for (std::size_t w = 0; w < words; ++w)
      if (w_[w] & ~o.w_[w]) return false;
    return true;
  }
  [[nodiscard]] bool intersects(const FixedBitSet& o) const {
    for (std::size_t w = 0; w < words; ++w)
      if (w_[w] & o.w_[w]) return true;
    return false;
  }

  FixedBitSet& operator|=(const FixedBitSet& o) {
    for (std::size_t w = 0; w < words; ++w) w_[w] |= o.w_[w];
    return *this;
  }
  FixedBitSet& operator&=(const FixedBitSet& o) {
    for (std::size_t w = 0; w < words; ++w) w_[w] &= o.w_[w];
    return *this;
  }
  /// Set difference.
  FixedBitSet& operator-=(const FixedBitSet& o) {
    for (std::size_t w = 0; w < words; ++w) w_[w] &= ~o.w_[w];
    return *this;
  }
  friend FixedBitSet operator|(FixedBitSet a, const FixedBitSet& b) { return a |= b; }
  friend FixedBitSet operator&(FixedBitSet a, const FixedBitSet& b) { return a &= b; }
  friend FixedBitSet operator-(FixedBitSet a, const FixedBitSet& b) { return a -= b; }

  friend bool operator==(const FixedBitSet&, const FixedBitSet&) = default;

  /// Storage order; only meaningful as a total order for containers.
  friend auto operator<=>(const FixedBitSet& a, const FixedBitSet& b) {
    for (std::size_t w = words; w-- > 0;)
      if (a.w_[w] != b.w_[w]) return a.w_[w] <=> b.w_[w];
    return std::strong_ordering::equal;
  }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : w_) h = (h ^ std::hash<std::uint64_t>{}(x)) * 0x100000001b3ULL;
    return h;
  }

  [[nodiscard]] const std::array<std::uint64_t, words>& raw() const { return w_; }

 private:
  static std::size_t word(int i) {
    if (i < 0 || static_cast<std::size_t>(i) >= Bits) throw std::out_of_range("FixedBitSet index");
    return static_cast<std::size_t>(i) / 64;
  }
  static std::uint64_t mask(int i) { return std::uint64_t{1} << (i % 64); }

  std::array<std::uint64_t, words> w_{};
};

/// Lexicographic order on the ascending element lists; used for deterministic
/// tie-breaking between candidate blocks.
template <std::size_t Bits>
bool lex_less(const FixedBitSet<Bits>& a, const FixedBitSet<Bits>& b) {
  int x = a.first(), y = b.first();
  while (x >= 0 && y >= 0) {
    if (x != y) return x < y;
    x = a.next(x);
    y = b.next(y);
  }
  return x < 0 && y >= 0;
}

/// E8 has 120 positive roots.
inline constexpr std::size_t kMaxRoots = 128;
using RootSet = FixedBitSet<kMaxRoots>;

struct RootSetHash {
  std::size_t operator()(const RootSet& s) const noexcept { return s.hash(); }
};

}  // namespace rootarr

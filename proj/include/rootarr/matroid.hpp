#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "bitset.hpp"
#include "linalg.hpp"
#include "rootsystem.hpp"

namespace rootarr {

/// A set of positive roots viewed as a vector configuration (equivalently the
/// hyperplane arrangement of their orthogonal complements). Distinct positive
/// roots are never parallel.
struct Arrangement {
  const RootSystem* system = nullptr;
  RootSet ground;
};

struct Flat {
  RootSet members;
  int rank = 0;
  friend bool operator==(const Flat&, const Flat&) = default;
};

namespace detail {

inline EchelonBasis basis_of(const RootSystem& rs, const RootSet& s) {
  EchelonBasis b(rs.rank());
  s.for_each([&](int i) { b.insert(rs.root(i)); });
  return b;
}

inline void require_subset(const Arrangement& A, const RootSet& s) {
  if (!s.subset_of(A.ground)) throw std::invalid_argument("subset is not contained in the arrangement");
}

}  // namespace detail

/// Dimension of the rational span.
inline int rank(const RootSystem& rs, const RootSet& s) { return detail::basis_of(rs, s).rank(); }

/// within ∩ span(s).
inline RootSet span_closure(const RootSystem& rs, const RootSet& s, const RootSet& within) {
  auto b = detail::basis_of(rs, s);
  RootSet out;
  within.for_each([&](int i) {
    if (s.test(i) || b.contains(rs.root(i))) out.set(i);
  });
  return out;
}

inline int rank(const Arrangement& A, const RootSet& s) {
  detail::require_subset(A, s);
  return rank(*A.system, s);
}

/// cl(S) = A ∩ span S; the empty set is the rank-0 flat.
inline Flat closure(const Arrangement& A, const RootSet& s) {
  detail::require_subset(A, s);
  auto b = detail::basis_of(*A.system, s);
  Flat f;
  f.rank = b.rank();
  A.ground.for_each([&](int i) {
    if (s.test(i) || b.contains(A.system->root(i))) f.members.set(i);
  });
  return f;
}

inline bool is_flat(const Arrangement& A, const RootSet& s) { return closure(A, s).members == s; }

/// Closures of all pairs, deduplicated, in order of first appearance.
inline std::vector<Flat> two_flats(const Arrangement& A) {
  std::vector<Flat> out;
  std::unordered_set<RootSet, RootSetHash> seen;
  A.ground.for_each([&](int x) {
    A.ground.for_each([&](int y) {
      if (y <= x) return;
      RootSet f = A.system->pair_flat(x, y) & A.ground;
      if (seen.insert(f).second) out.push_back({f, 2});
    });
  });
  return out;
}

/// Calls f(const RootSet&) for every independent subset of size 1..max_size,
/// depth-first in ascending element order.
template <typename F>
void for_each_independent_set(const Arrangement& A, int max_size, F&& f) {
  const auto elems = A.ground.elements();
  const RootSystem& rs = *A.system;
  std::function<void(std::size_t, const RootSet&, const EchelonBasis&, int)> rec =
      [&](std::size_t from, const RootSet& cur, const EchelonBasis& b, int depth) {
        if (depth == max_size) return;
        for (std::size_t k = from; k < elems.size(); ++k) {
          EchelonBasis nb = b;
          if (!nb.insert(rs.root(elems[k]))) continue;
          RootSet next = cur;
          next.set(elems[k]);
          f(next);
          rec(k + 1, next, nb, depth + 1);
        }
      };
  rec(0, RootSet{}, EchelonBasis(rs.rank()), 0);
}

inline std::vector<RootSet> independent_sets(const Arrangement& A, int max_size) {
  std::vector<RootSet> out;
  for_each_independent_set(A, max_size, [&](const RootSet& s) { out.push_back(s); });
  return out;
}

/// Least superset of S containing cl({a, b}) for all a, b in it.
inline RootSet two_closure(const Arrangement& A, const RootSet& s) {
  detail::require_subset(A, s);
  RootSet t = s;
  std::vector<int> elems = s.elements();
  for (std::size_t done = 0; done < elems.size(); ++done) {
    const int y = elems[done];
    for (std::size_t i = 0; i < done; ++i) {
      RootSet add = (A.system->pair_flat(elems[i], y) & A.ground) - t;
      add.for_each([&](int z) { elems.push_back(z); });
      t |= add;
    }
  }
  return t;
}

inline bool is_two_closed(const Arrangement& A, const RootSet& s) { return two_closure(A, s) == s; }

struct LineClosedResult {
  bool line_closed = true;
  std::optional<RootSet> witness;  // 2-closed, not a flat
};

/// Decides whether every 2-closed subset of A is a flat.
///
/// Sufficiency of independent sets: if S is 2-closed and B ⊆ S is a maximal
/// independent subset, then lc(B) ⊆ S ⊆ cl(S) = cl(B), where lc is the
/// 2-closure. So A is line-closed iff lc(B) = cl(B) for every independent B.
/// Since lc(B ∪ {x}) = lc(lc(B) ∪ {x}), the distinct values lc(B) are reached
/// breadth-first from the empty set by adding one element at a time; each
/// level is checked for flatness before it is extended, and the first failure
/// (of least rank) is returned as the witness.
inline LineClosedResult is_line_closed(const Arrangement& A) {
  std::unordered_set<RootSet, RootSetHash> visited;
  std::vector<RootSet> frontier{RootSet{}};
  while (!frontier.empty()) {
    std::vector<RootSet> next;
    for (const auto& s : frontier) {
      (A.ground - s).for_each([&](int x) {
        RootSet seed = s;
        seed.set(x);
        RootSet t = two_closure(A, seed);
        if (visited.insert(t).second) next.push_back(t);
      });
    }
    for (const auto& t : next)
      if (!is_flat(A, t)) return {false, t};
    frontier = std::move(next);
  }
  return {true, std::nullopt};
}

/// Same decision by direct enumeration of all independent sets; exponential,
/// kept as a cross-check for the breadth-first procedure.
inline LineClosedResult is_line_closed_by_independent_sets(const Arrangement& A) {
  LineClosedResult res;
  const int r = rank(A, A.ground);
  for_each_independent_set(A, r, [&](const RootSet& b) {
    if (!res.line_closed) return;
    RootSet lc = two_closure(A, b);
    if (lc != closure(A, b).members) res = {false, lc};
  });
  return res;
}

// ---------------------------------------------------------------------------
// Flat lattice
// ---------------------------------------------------------------------------

/// All flats of an arrangement grouped by rank: level k holds the rank-k
/// flats. Rank k+1 flats are the closures of F ∪ {x} over rank-k flats F.
inline std::vector<std::vector<RootSet>> flat_levels(const RootSystem& rs, const RootSet& ground) {
  const Arrangement A{&rs, ground};
  const int r = rank(rs, ground);
  std::vector<std::vector<RootSet>> levels(static_cast<std::size_t>(r) + 1);
  levels[0].push_back(RootSet{});
  for (int k = 0; k < r; ++k) {
    std::unordered_set<RootSet, RootSetHash> seen;
    for (const auto& f : levels[static_cast<std::size_t>(k)]) {
      RootSet covered = f;
      (ground - f).for_each([&](int x) {
        if (covered.test(x)) return;
        RootSet seed = f;
        seed.set(x);
        RootSet t = closure(A, seed).members;
        covered |= t;
        if (seen.insert(t).second) levels[static_cast<std::size_t>(k) + 1].push_back(t);
      });
    }
    auto& lvl = levels[static_cast<std::size_t>(k) + 1];
    std::sort(lvl.begin(), lvl.end(), [](const RootSet& a, const RootSet& b) { return lex_less(a, b); });
  }
  return levels;
}

/// Flat lattice of the whole positive system, shared read-only.
///
/// Every flat of a sub-arrangement A is G ∩ A for exactly one flat G of the
/// whole system with rank(G ∩ A) = rank(G), namely G = cl(G ∩ A); so flats of
/// any root subset are read off this table instead of being regenerated.
class FlatLattice {
 public:
  explicit FlatLattice(const RootSystem& rs) : rs_(&rs), levels_(flat_levels(rs, rs.all())) {}

  /// Rebuilds from stored levels (e.g. a disk cache); validated cheaply.
  FlatLattice(const RootSystem& rs, std::vector<std::vector<RootSet>> levels) : rs_(&rs), levels_(std::move(levels)) {
    if (levels_.size() != static_cast<std::size_t>(rs.rank()) + 1 || levels_[0].size() != 1 ||
        !levels_[0][0].empty() || levels_.back().size() != 1 || levels_.back()[0] != rs.all() ||
        levels_[1].size() != static_cast<std::size_t>(rs.size()))
      throw std::invalid_argument("FlatLattice: stored levels do not match the root system");
  }

  [[nodiscard]] const RootSystem& system() const { return *rs_; }
  [[nodiscard]] const std::vector<std::vector<RootSet>>& levels() const { return levels_; }
  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
  }

  /// Flats of rank k of the arrangement A (a subset of the positive roots).
  [[nodiscard]] std::vector<RootSet> flats_of_rank(const RootSet& ground, int k) const {
    std::vector<RootSet> out;
    if (k < 0 || k >= static_cast<int>(levels_.size())) return out;
    for (const auto& g : levels_[static_cast<std::size_t>(k)]) {
      RootSet t = g & ground;
      if (t.count() < k) continue;
      if (rank(*rs_, t) == k) out.push_back(t);
    }
    return out;
  }

  /// All flats of A, ordered by rank.
  [[nodiscard]] std::vector<Flat> flats_of(const RootSet& ground) const {
    std::vector<Flat> out;
    const int r = rank(*rs_, ground);
    for (int k = 0; k <= r; ++k)
      for (auto& f : flats_of_rank(ground, k)) out.push_back({f, k});
    return out;
  }

 private:
  const RootSystem* rs_;
  std::vector<std::vector<RootSet>> levels_;
};

// ---------------------------------------------------------------------------
// Characteristic polynomial
// ---------------------------------------------------------------------------

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
struct Polynomial {
  std::vector<std::int64_t> coeffs;

  static Polynomial from_roots(const std::vector<int>& roots) {
    Polynomial p{{1}};
    for (int e : roots) {
      std::vector<std::int64_t> next(p.coeffs.size() + 1, 0);
      for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        next[i + 1] += p.coeffs[i];
        next[i] -= e * p.coeffs[i];
      }
      p.coeffs = std::move(next);
    }
    p.trim();
    return p;
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  [[nodiscard]] std::string str() const {
    std::string out;
    for (int d = degree(); d >= 0; --d) {
      auto c = coeffs[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      auto a = c < 0 ? -c : c;
      if (a != 1 || d == 0) out += std::to_string(a);
      if (d >= 1) out += "t";
      if (d >= 2) out += "^" + std::to_string(d);
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// chi(t) = sum over flats F of mu(0, F) t^(r - rank F), with mu computed by
/// the recursion mu(0, F) = -sum_{G < F} mu(0, G) over the flat lattice.
inline Polynomial characteristic_polynomial(const std::vector<Flat>& flats, int r) {
  std::vector<std::int64_t> mu(flats.size(), 0);
  Polynomial p{std::vector<std::int64_t>(static_cast<std::size_t>(r) + 1, 0)};
  for (std::size_t i = 0; i < flats.size(); ++i) {
    if (flats[i].rank == 0) {
      mu[i] = 1;
    } else {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < i; ++j)
        if (flats[j].rank < flats[i].rank && flats[j].members.subset_of(flats[i].members)) s += mu[j];
      mu[i] = -s;
    }
    p.coeffs[static_cast<std::size_t>(r - flats[i].rank)] += mu[i];
  }
  p.trim();
  return p;
}

inline Polynomial characteristic_polynomial(const FlatLattice& lattice, const RootSet& ground) {
  return characteristic_polynomial(lattice.flats_of(ground), rank(lattice.system(), ground));
}

inline Polynomial characteristic_polynomial(const Arrangement& A) {
  std::vector<Flat> flats;
  auto levels = flat_levels(*A.system, A.ground);
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (auto& f : levels[k]) flats.push_back({f, static_cast<int>(k)});
  return characteristic_polynomial(flats, static_cast<int>(levels.size()) - 1);
}

}  // namespace rootarr

#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "rootsystem.hpp"

namespace rootarr {

// ---------------------------------------------------------------------------
// Order ideals
// ---------------------------------------------------------------------------

/// A downward-closed set of positive roots. The system must outlive the ideal.
struct Ideal {
  const RootSystem* system = nullptr;
  RootSet members;

  [[nodiscard]] int size() const { return members.count(); }
  [[nodiscard]] bool contains(int i) const { return members.test(i); }
  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.system == b.system && a.members == b.members;
  }
};

inline bool is_order_ideal(const RootSystem& rs, const RootSet& s) {
  bool ok = true;
  s.for_each([&](int i) { ok = ok && rs.poset().down[i].subset_of(s); });
  return ok;
}

inline bool is_order_filter_within(const RootSystem& rs, const RootSet& f, const RootSet& within) {
  bool ok = f.subset_of(within);
  f.for_each([&](int i) { ok = ok && (rs.poset().up[i] & within).subset_of(f); });
  return ok;
}

inline RootSet downward_closure(const RootSystem& rs, const RootSet& gens) {
  RootSet out;
  gens.for_each([&](int i) { out |= rs.poset().down[i]; });
  return out;
}

inline Ideal make_ideal(const RootSystem& rs, const RootSet& members) {
  if (!is_order_ideal(rs, members)) throw std::invalid_argument("make_ideal: set is not downward closed");
  return Ideal{&rs, members};
}

/// Ideal text: generator roots separated by ',' in digit form ("1110,1101,0111"),
/// or by ';' when a generator uses the comma form ("1,1,1,0;1,1,0,1").
/// The ideal is the downward closure of the generators; "" is the empty ideal.
inline Ideal parse_ideal(const RootSystem& rs, std::string_view text) {
  RootSet gens;
  auto add_all = [&](char sep) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find(sep, pos);
      auto tok = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
      if (!tok.empty()) gens.set(rs.parse_root(tok));
      if (end == std::string_view::npos) break;
      pos = end + 1;
    }
  };
  if (text.find(';') != std::string_view::npos) {
    add_all(';');
  } else if (text.find(',') != std::string_view::npos) {
    // Either several digit-form generators or one comma-form root.
    bool digit_tokens = true;
    std::size_t pos = 0;
    while (true) {
      auto end = text.find(',', pos);
      auto len = (end == std::string_view::npos ? text.size() : end) - pos;
      digit_tokens = digit_tokens && static_cast<int>(len) == rs.rank();
      if (end == std::string_view::npos) break;
      pos = end + 1;
    }
    if (digit_tokens)
      add_all(',');
    else
      gens.set(rs.parse_root(text));
  } else if (!text.empty()) {
    gens.set(rs.parse_root(text));
  }
  return Ideal{&rs, downward_closure(rs, gens)};
}

/// Coordinate strings of the members, in root index order.
inline std::vector<std::string> coordinate_list(const RootSystem& rs, const RootSet& s) {
  std::vector<std::string> out;
  s.for_each([&](int i) { out.push_back(rs.format(i)); });
  return out;
}

/// Calls f(const Ideal&) for every order ideal exactly once.
///
/// Depth-first over the addable frontier. Root indices form a linear extension
/// of the order, so the largest index in a nonempty ideal is a maximal element;
/// removing it gives the canonical parent. Extending only by addable roots of
/// larger index than every current member therefore reaches each ideal once.
template <typename F>
void for_each_ideal(const RootSystem& rs, F&& f) {
  const int m = rs.size();
  std::function<void(const RootSet&, int)> rec = [&](const RootSet& cur, int last) {
    f(Ideal{&rs, cur});
    for (int x = last + 1; x < m; ++x) {
      RootSet below = rs.poset().down[x];
      below.reset(x);
      if (below.subset_of(cur)) {
        RootSet next = cur;
        next.set(x);
        rec(next, x);
      }
    }
  };
  rec(RootSet{}, -1);
}

inline std::vector<Ideal> enumerate_ideals(const RootSystem& rs) {
  std::vector<Ideal> out;
  for_each_ideal(rs, [&](const Ideal& i) { out.push_back(i); });
  return out;
}

// ---------------------------------------------------------------------------
// Subsystem views
// ---------------------------------------------------------------------------

/// A root subsystem Phi' = Phi ∩ span(simple') whose positive roots are
/// nonnegative integer combinations of `simple'`. Members are stored as parent
/// root indices together with their coordinates in the simple' basis; the root
/// order of the subsystem is the componentwise order on those coordinates.
///
/// The whole system is the view with simple' = the simple roots.
class SubsystemView {
 public:
  static SubsystemView full(const RootSystem& rs) {
    SubsystemView v(rs);
    for (int i = 0; i < rs.rank(); ++i) v.simple_.push_back(i);
    v.roots_ = rs.all();
    for (int i = 0; i < rs.size(); ++i) v.coords_[i] = rs.root(i);
    return v;
  }

  [[nodiscard]] const RootSystem& parent() const { return *parent_; }
  [[nodiscard]] int rank() const { return static_cast<int>(simple_.size()); }
  /// Simple roots of the view as parent indices; position k is coordinate k.
  [[nodiscard]] const std::vector<int>& simple() const { return simple_; }
  [[nodiscard]] RootSet simple_set() const {
    RootSet s;
    for (int i : simple_) s.set(i);
    return s;
  }
  [[nodiscard]] const RootSet& roots() const { return roots_; }
  [[nodiscard]] bool contains(int i) const { return roots_.test(i); }
  [[nodiscard]] const Coordinates& coords(int i) const {
    if (!roots_.test(i)) throw std::out_of_range("SubsystemView::coords: root not in view");
    return coords_[static_cast<std::size_t>(i)];
  }
  /// Position of a parent root among the view's simple roots, or -1.
  [[nodiscard]] int position(int parent_index) const {
    auto it = std::find(simple_.begin(), simple_.end(), parent_index);
    return it == simple_.end() ? -1 : static_cast<int>(it - simple_.begin());
  }

  /// Local-to-parent index map; local index k is the k-th member in parent order.
  [[nodiscard]] std::vector<int> reindex() const { return roots_.elements(); }

  [[nodiscard]] bool leq(int i, int j) const {
    const auto& a = coords(i);
    const auto& b = coords(j);
    for (int k = 0; k < rank(); ++k)
      if (a[k] > b[k]) return false;
    return true;
  }

  /// Roots of the view supported on the given simple positions, re-expressed
  /// in the basis of those positions.
  [[nodiscard]] SubsystemView parabolic(const std::vector<int>& positions) const {
    SubsystemView v(*parent_);
    for (int p : positions) v.simple_.push_back(simple_.at(static_cast<std::size_t>(p)));
    roots_.for_each([&](int i) {
      const auto& c = coords_[static_cast<std::size_t>(i)];
      int inside = 0, total = 0;
      Coordinates nc{};
      for (int k = 0; k < rank(); ++k) total += c[k];
      for (std::size_t q = 0; q < positions.size(); ++q) {
        nc[q] = c[positions[q]];
        inside += nc[q];
      }
      if (inside == total) {
        v.roots_.set(i);
        v.coords_[static_cast<std::size_t>(i)] = nc;
      }
    });
    return v;
  }

  /// Parent index of the root with the given coordinates, if any.
  [[nodiscard]] std::optional<int> find(const Coordinates& c) const {
    std::optional<int> out;
    roots_.for_each([&](int i) {
      if (!out && coords_[static_cast<std::size_t>(i)] == c) out = i;
    });
    return out;
  }

 private:
  explicit SubsystemView(const RootSystem& rs) : parent_(&rs), coords_(static_cast<std::size_t>(rs.size())) {}

  friend std::pair<SubsystemView, RootSet> restrict_without_g(const SubsystemView&, const RootSet&, int, int, int,
                                                              int);

  const RootSystem* parent_;
  std::vector<int> simple_;
  RootSet roots_;
  std::vector<Coordinates> coords_;
};

namespace detail {

inline void check_simple(const SubsystemView& v, int pos) {
  if (pos < 0 || pos >= v.rank()) throw std::out_of_range("not a simple root position of the view");
}

/// Parent index of a*alpha + b*beta in the view, if it is a root.
inline std::optional<int> two_root(const SubsystemView& v, int pa, int pb, int a, int b) {
  Coordinates c{};
  c[pa] = a;
  c[pb] = b;
  return v.find(c);
}

/// True iff (x, y) = k (a, b) for some k in {0, 1, 2, ...}.
inline bool is_multiple(int x, int y, int a, int b) {
  if (x % a != 0) return false;
  int k = x / a;
  return k >= 0 && y == k * b;
}

}  // namespace detail

/// F_I(alpha) = { gamma in I : gamma >= alpha } for the simple root at `pos`.
inline RootSet principal_filter(const SubsystemView& v, const RootSet& ideal, int pos) {
  detail::check_simple(v, pos);
  if (!ideal.test(v.simple()[static_cast<std::size_t>(pos)]))
    throw std::invalid_argument("principal_filter: simple root not in the ideal");
  RootSet out;
  ideal.for_each([&](int i) {
    if (v.coords(i)[pos] >= 1) out.set(i);
  });
  return out;
}

/// All (a, b), a, b >= 1, with a*alpha + b*beta a positive root of the view,
/// in ascending order.
inline std::vector<std::pair<int, int>> candidate_ab_pairs(const SubsystemView& v, int pa, int pb) {
  detail::check_simple(v, pa);
  detail::check_simple(v, pb);
  if (pa == pb) throw std::invalid_argument("candidate_ab_pairs: alpha == beta");
  std::vector<std::pair<int, int>> out;
  v.roots().for_each([&](int i) {
    const auto& c = v.coords(i);
    if (c[pa] == 0 || c[pb] == 0) return;
    for (int k = 0; k < v.rank(); ++k)
      if (k != pa && k != pb && c[k] != 0) return;
    out.emplace_back(c[pa], c[pb]);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// G_I(alpha, beta, a, b) = { gamma in I : gamma_alpha alpha + gamma_beta beta
/// is not k (a alpha + b beta) for any k >= 0 }. Roots avoiding both alpha and
/// beta (k = 0) are therefore not in G.
inline RootSet g_set(const SubsystemView& v, const RootSet& ideal, int pa, int pb, int a, int b) {
  detail::check_simple(v, pa);
  detail::check_simple(v, pb);
  if (pa == pb) throw std::invalid_argument("g_set: alpha == beta");
  if (a < 1 || b < 1 || !detail::two_root(v, pa, pb, a, b))
    throw std::invalid_argument("g_set: a*alpha + b*beta is not a positive root");
  RootSet out;
  ideal.for_each([&](int i) {
    const auto& c = v.coords(i);
    if (!detail::is_multiple(c[pa], c[pb], a, b)) out.set(i);
  });
  return out;
}

/// The subsystem with simple roots {a alpha + b beta} ∪ simple \ {alpha, beta}
/// and the image of I \ G_I(alpha, beta, a, b) in it. The new simple root takes
/// the smaller of the two vacated positions.
inline std::pair<SubsystemView, RootSet> restrict_without_g(const SubsystemView& v, const RootSet& ideal, int pa,
                                                            int pb, int a, int b) {
  const RootSet g = g_set(v, ideal, pa, pb, a, b);
  const int merged = *detail::two_root(v, pa, pb, a, b);
  const int lo = std::min(pa, pb);
  SubsystemView out(v.parent());
  std::vector<int> old_pos;
  for (int k = 0; k < v.rank(); ++k) {
    if (k == lo) {
      out.simple_.push_back(merged);
      old_pos.push_back(-1);
    } else if (k != pa && k != pb) {
      out.simple_.push_back(v.simple()[static_cast<std::size_t>(k)]);
      old_pos.push_back(k);
    }
  }
  v.roots().for_each([&](int i) {
    const auto& c = v.coords(i);
    if (!detail::is_multiple(c[pa], c[pb], a, b)) return;
    Coordinates nc{};
    for (std::size_t q = 0; q < old_pos.size(); ++q) nc[q] = old_pos[q] < 0 ? c[pa] / a : c[old_pos[q]];
    out.roots_.set(i);
    out.coords_[static_cast<std::size_t>(i)] = nc;
  });
  return {std::move(out), ideal - g};
}

inline bool is_order_ideal(const SubsystemView& v, const RootSet& s) {
  if (!s.subset_of(v.roots())) return false;
  bool ok = true;
  v.roots().for_each([&](int j) {
    if (!ok || s.test(j)) return;
    s.for_each([&](int i) { ok = ok && !v.leq(j, i); });
  });
  return ok;
}

// Whole-system conveniences (alpha, beta are simple root indices).

inline RootSet principal_filter(const Ideal& I, int alpha) {
  return principal_filter(SubsystemView::full(*I.system), I.members, alpha);
}
inline RootSet g_set(const Ideal& I, int alpha, int beta, int a, int b) {
  return g_set(SubsystemView::full(*I.system), I.members, alpha, beta, a, b);
}
inline std::vector<std::pair<int, int>> candidate_ab_pairs(const RootSystem& rs, int alpha, int beta) {
  return candidate_ab_pairs(SubsystemView::full(rs), alpha, beta);
}
inline std::pair<SubsystemView, RootSet> restrict_without_g(const Ideal& I, int alpha, int beta, int a, int b) {
  return restrict_without_g(SubsystemView::full(*I.system), I.members, alpha, beta, a, b);
}

// ---------------------------------------------------------------------------
// Bad ideals
// ---------------------------------------------------------------------------

enum class BadIdealKind { Star, F4 };

/// Witness for one of the two minimal non-supersolvable configurations.
///
/// Star: simple = (a1, a2, a3, a4) with a2 the branch node, generators =
/// (a1+a2+a3, a1+a2+a4, a2+a3+a4). F4: simple = (a1, a2, a3, a4) and
/// generators = (a1+2a2+a3, a1+a2+a3+a4, 2a2+a3+a4), whose downward closure is
/// the 13 roots of height <= 4.
struct BadIdealWitness {
  BadIdealKind kind = BadIdealKind::Star;
  std::array<int, 4> simple{};
  std::array<int, 3> generators{};
  friend bool operator==(const BadIdealWitness&, const BadIdealWitness&) = default;
};

inline std::string to_string(BadIdealKind k) { return k == BadIdealKind::Star ? "star" : "F4"; }

/// Only simply laced systems are searched; the three neighbours of a
/// degree-3 node are taken in index order.
inline std::optional<BadIdealWitness> find_star_ideal(const RootSystem& rs, const RootSet& ideal) {
  if (!rs.simply_laced()) return std::nullopt;
  auto unit = [&](std::initializer_list<int> idx) {
    Coordinates c{};
    for (int k : idx) c[k] = 1;
    return rs.find(c);
  };
  for (int center = 0; center < rs.rank(); ++center) {
    auto nb = rs.neighbours(center);
    if (nb.size() < 3) continue;
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y)
        for (std::size_t z = y + 1; z < nb.size(); ++z) {
          const int a1 = nb[x], a3 = nb[y], a4 = nb[z];
          auto g4 = unit({a1, center, a3});
          auto g3 = unit({a1, center, a4});
          auto g1 = unit({center, a3, a4});
          if (g4 && g3 && g1 && ideal.test(*g4) && ideal.test(*g3) && ideal.test(*g1))
            return BadIdealWitness{BadIdealKind::Star, {a1, center, a3, a4}, {*g4, *g3, *g1}};
        }
  }
  return std::nullopt;
}

inline std::optional<BadIdealWitness> find_star_ideal(const Ideal& I) { return find_star_ideal(*I.system, I.members); }

/// The F4 roots of height at most 4 (empty for other types).
inline RootSet f4_bad_ideal(const RootSystem& rs) {
  RootSet s;
  if (rs.label().family != Family::F) return s;
  for (int i = 0; i < rs.size(); ++i)
    if (rs.height(i) <= 4) s.set(i);
  return s;
}

inline bool contains_f4_bad_ideal(const RootSystem& rs, const RootSet& ideal) {
  if (rs.label().family != Family::F) return false;
  return f4_bad_ideal(rs).subset_of(ideal);
}
inline bool contains_f4_bad_ideal(const Ideal& I) { return contains_f4_bad_ideal(*I.system, I.members); }

inline BadIdealWitness f4_witness(const RootSystem& rs) {
  if (rs.label().family != Family::F) throw std::invalid_argument("f4_witness: not type F4");
  return BadIdealWitness{BadIdealKind::F4,
                         {0, 1, 2, 3},
                         {rs.parse_root("1210"), rs.parse_root("1111"), rs.parse_root("0211")}};
}

/// Star witness in simply laced systems, F4 witness when the ideal contains
/// the height <= 4 roots of F4, otherwise nothing.
inline std::optional<BadIdealWitness> find_bad_ideal(const RootSystem& rs, const RootSet& ideal) {
  if (auto w = find_star_ideal(rs, ideal)) return w;
  if (contains_f4_bad_ideal(rs, ideal)) return f4_witness(rs);
  return std::nullopt;
}

/// supp(gamma) is a path in the Dynkin diagram and every coordinate on it is 1.
inline bool is_path_root(const RootSystem& rs, int gamma) {
  auto supp = rs.support(gamma);
  for (int k : supp)
    if (rs.root(gamma)[k] != 1) return false;
  // Supports are connected and the diagram is a forest, so the induced
  // subgraph is a path iff no node has three neighbours inside it.
  for (int k : supp) {
    int deg = 0;
    for (int j : supp) deg += rs.bond(k, j) > 0 ? 1 : 0;
    if (deg > 2) return false;
  }
  return true;
}

}  // namespace rootarr

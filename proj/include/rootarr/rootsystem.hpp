#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "linalg.hpp"

namespace rootarr {

/// Malformed user input: bad type labels, unknown root coordinates, etc.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { A, B, C, D, E, F, G };

struct TypeLabel {
  Family family = Family::A;
  int rank = 1;

  [[nodiscard]] bool admissible() const {
    if (rank < 1 || rank > kMaxRank) return false;
    switch (family) {
      case Family::A: return rank >= 1;
      case Family::B:
      case Family::C: return rank >= 2;
      case Family::D: return rank >= 3;
      case Family::E: return rank >= 6 && rank <= 8;
      case Family::F: return rank == 4;
      case Family::G: return rank == 2;
    }
    return false;
  }

  [[nodiscard]] char letter() const { return "ABCDEFG"[static_cast<int>(family)]; }
  [[nodiscard]] std::string str() const { return std::string(1, letter()) + std::to_string(rank); }

  /// Parses labels such as "D4", "f4" or "A12".
  static TypeLabel parse(std::string_view text) {
    if (text.size() < 2) throw InputError("bad type label '" + std::string(text) + "'");
    char f = static_cast<char>(text[0] >= 'a' && text[0] <= 'z' ? text[0] - 'a' + 'A' : text[0]);
    if (f < 'A' || f > 'G') throw InputError("unknown root system family in '" + std::string(text) + "'");
    int r = 0;
    auto digits = text.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw InputError("bad rank in type label '" + std::string(text) + "'");
    TypeLabel t{static_cast<Family>(f - 'A'), r};
    if (!t.admissible()) throw InputError("inadmissible root system type " + t.str());
    return t;
  }

  friend bool operator==(const TypeLabel&, const TypeLabel&) = default;
};

/// s_alpha(gamma) for a positive gamma is either a positive root or the negative
/// of one (only when gamma = alpha).
struct SignedRoot {
  int index = -1;
  bool negative = false;
  friend bool operator==(const SignedRoot&, const SignedRoot&) = default;
};

/// Componentwise order on the positive roots.
struct RootPoset {
  std::vector<std::pair<int, int>> covers;  // (lower, upper)
  std::vector<int> heights;
  std::vector<RootSet> down;  // down[i] = { j : j <= i }
  std::vector<RootSet> up;    // up[i]   = { j : j >= i }

  [[nodiscard]] bool leq(int i, int j) const { return down[static_cast<std::size_t>(j)].test(i); }
  [[nodiscard]] bool comparable(int i, int j) const { return leq(i, j) || leq(j, i); }
};

// ---------------------------------------------------------------------------
// Root coordinate text format
// ---------------------------------------------------------------------------

/// Digits in simple-root order ("1211"); comma-separated if any coordinate
/// needs more than one digit.
inline std::string format_coordinates(const Coordinates& c, int rank) {
  bool wide = false;
  for (int i = 0; i < rank; ++i) wide = wide || c[i] > 9 || c[i] < 0;
  std::string out;
  for (int i = 0; i < rank; ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

inline Coordinates parse_coordinates(std::string_view text, int rank) {
  Coordinates c{};
  auto bad = [&](const char* why) {
    return InputError("bad root coordinates '" + std::string(text) + "': " + why);
  };
  if (text.find(',') == std::string_view::npos) {
    if (static_cast<int>(text.size()) != rank) throw bad("wrong number of digits");
    for (int i = 0; i < rank; ++i) {
      if (text[i] < '0' || text[i] > '9') throw bad("not a digit");
      c[i] = text[i] - '0';
    }
    return c;
  }
  int i = 0;
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (i >= rank) throw bad("too many coordinates");
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) throw bad("not an integer");
    c[i++] = v;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (i != rank) throw bad("too few coordinates");
  return c;
}

// ---------------------------------------------------------------------------
// RootSystem
// ---------------------------------------------------------------------------

/// Finite crystallographic root system with its positive roots in the
/// simple-root basis.
///
/// Conventions:
///  - Cartan matrix C[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_j, alpha_i)/(alpha_i, alpha_i).
///  - Symmetrizer d_i with (alpha_i, alpha_i) = 2 d_i; short roots have d = 1,
///    long roots d = 2 (B, C, F) or d = 3 (G2). The form is integer valued.
///  - Numbering. A_n, B_n, C_n: linear chain 1..n, the double bond of B_n/C_n
///    between n-1 and n (alpha_n short in B_n, long in C_n). D_n: chain
///    1..n-1 with alpha_n attached to alpha_{n-2}, so in D4 the branch node is
///    alpha_2. E_n: 1-3-4-5-6-7-8 with alpha_2 attached to alpha_4. F4:
///    1-2=>3-4 with alpha_1, alpha_2 short and alpha_3, alpha_4 long (top root
///    2432). G2: alpha_1 short, alpha_2 long.
///  - Root order: by height, then lexicographically descending coordinates, so
///    simple root i has index i. Fixed for the lifetime of the object.
///
/// Immutable after construction.
class RootSystem {
 public:
  explicit RootSystem(TypeLabel label) : label_(label) {
    if (!label.admissible()) throw InputError("inadmissible root system type " + label.str());
    n_ = label.rank;
    init_diagram();
    generate_roots();
    init_poset();
    init_pair_flats();
  }

  [[nodiscard]] const TypeLabel& label() const { return label_; }
  [[nodiscard]] int rank() const { return n_; }
  [[nodiscard]] int size() const { return static_cast<int>(roots_.size()); }

  [[nodiscard]] const Coordinates& root(int i) const { return roots_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] std::span<const Coordinates> roots() const { return roots_; }

  [[nodiscard]] const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  [[nodiscard]] const std::vector<int>& symmetrizer() const { return sym_; }
  /// Gram matrix of the symmetrized form on the simple roots.
  [[nodiscard]] const std::vector<std::vector<int>>& gram() const { return gram_; }

  /// Number of edges between simple roots i and j in the Dynkin diagram.
  [[nodiscard]] int bond(int i, int j) const { return i == j ? 0 : cartan_[i][j] * cartan_[j][i]; }
  [[nodiscard]] std::vector<int> neighbours(int i) const {
    std::vector<int> out;
    for (int j = 0; j < n_; ++j)
      if (bond(i, j) > 0) out.push_back(j);
    return out;
  }
  [[nodiscard]] int max_bond() const {
    int m = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m = std::max(m, bond(i, j));
    return m;
  }
  [[nodiscard]] bool simply_laced() const { return max_bond() <= 1; }

  [[nodiscard]] std::optional<int> find(const Coordinates& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] int height(int i) const { return poset_.heights.at(static_cast<std::size_t>(i)); }
  /// Simple-root positions with nonzero coordinate.
  [[nodiscard]] std::vector<int> support(int i) const {
    std::vector<int> s;
    for (int k = 0; k < n_; ++k)
      if (root(i)[k] != 0) s.push_back(k);
    return s;
  }

  [[nodiscard]] bool leq(int i, int j) const { return poset_.leq(i, j); }
  [[nodiscard]] const RootPoset& poset() const { return poset_; }

  [[nodiscard]] RootSet all() const { return RootSet::prefix(roots_.size()); }
  [[nodiscard]] RootSet simple_roots() const { return RootSet::prefix(static_cast<std::size_t>(n_)); }

  /// Positive roots in span{root i, root j}; {i} when i == j.
  [[nodiscard]] const RootSet& pair_flat(int i, int j) const {
    return pair_flats_[static_cast<std::size_t>(i) * roots_.size() + static_cast<std::size_t>(j)];
  }

  [[nodiscard]] int form(const Coordinates& u, const Coordinates& v) const {
    int s = 0;
    for (int i = 0; i < n_; ++i) {
      if (u[i] == 0) continue;
      for (int j = 0; j < n_; ++j) s += u[i] * gram_[i][j] * v[j];
    }
    return s;
  }

  /// <v, alpha_k^vee>.
  [[nodiscard]] int pairing(const Coordinates& v, int k) const {
    int s = 0;
    for (int j = 0; j < n_; ++j) s += cartan_[k][j] * v[j];
    return s;
  }

  [[nodiscard]] std::string format(int i) const { return format_coordinates(root(i), n_); }

  /// Root index for coordinate text; throws InputError if not a positive root.
  [[nodiscard]] int parse_root(std::string_view text) const {
    auto c = parse_coordinates(text, n_);
    auto idx = find(c);
    if (!idx) throw InputError("'" + std::string(text) + "' is not a positive root of " + label_.str());
    return *idx;
  }

 private:
  void init_diagram() {
    sym_.assign(static_cast<std::size_t>(n_), 1);
    std::vector<std::pair<int, int>> edges;
    auto chain = [&](int count) {
      for (int i = 0; i + 1 < count; ++i) edges.emplace_back(i, i + 1);
    };
    switch (label_.family) {
      case Family::A: chain(n_); break;
      case Family::B:
        chain(n_);
        for (int i = 0; i + 1 < n_; ++i) sym_[i] = 2;
        break;
      case Family::C:
        chain(n_);
        sym_[n_ - 1] = 2;
        break;
      case Family::D:
        chain(n_ - 1);
        edges.emplace_back(n_ - 3, n_ - 1);
        break;
      case Family::E:
        edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}};
        if (n_ >= 7) edges.emplace_back(5, 6);
        if (n_ >= 8) edges.emplace_back(6, 7);
        break;
      case Family::F:
        chain(4);
        sym_ = {1, 1, 2, 2};
        break;
      case Family::G:
        chain(2);
        sym_ = {1, 3};
        break;
    }
    gram_.assign(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_), 0));
    for (int i = 0; i < n_; ++i) gram_[i][i] = 2 * sym_[i];
    for (auto [i, j] : edges) gram_[i][j] = gram_[j][i] = -std::max(sym_[i], sym_[j]);
    cartan_.assign(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_), 0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) cartan_[i][j] = gram_[i][j] / sym_[i];
  }

  // Height-by-height generation with root strings: for a root g and simple
  // alpha, let p be the largest k with g - k*alpha a root; then g + alpha is a
  // root iff p - <g, alpha^vee> > 0.
  void generate_roots() {
    std::map<Coordinates, int> seen;
    std::vector<Coordinates> layer;
    for (int i = 0; i < n_; ++i) {
      Coordinates c{};
      c[i] = 1;
      layer.push_back(c);
      seen.emplace(c, 0);
    }
    std::vector<Coordinates> all = layer;
    while (!layer.empty()) {
      std::vector<Coordinates> next;
      for (const auto& g : layer) {
        for (int k = 0; k < n_; ++k) {
          int p = 0;
          while (true) {
            Coordinates d = g;
            d[k] -= p + 1;
            if (d[k] < 0 || !seen.contains(d)) break;
            ++p;
          }
          if (p - pairing(g, k) <= 0) continue;
          Coordinates up = g;
          up[k] += 1;
          if (seen.emplace(up, 0).second) next.push_back(up);
        }
      }
      all.insert(all.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    if (all.size() > kMaxRoots) throw InputError("root system too large: " + label_.str());
    auto hgt = [&](const Coordinates& c) {
      int h = 0;
      for (int i = 0; i < n_; ++i) h += c[i];
      return h;
    };
    std::sort(all.begin(), all.end(), [&](const Coordinates& a, const Coordinates& b) {
      int ha = hgt(a), hb = hgt(b);
      if (ha != hb) return ha < hb;
      return a > b;
    });
    roots_ = std::move(all);
    for (std::size_t i = 0; i < roots_.size(); ++i) index_.emplace(roots_[i], static_cast<int>(i));
  }

  void init_poset() {
    const int m = size();
    poset_.heights.resize(static_cast<std::size_t>(m));
    poset_.down.assign(static_cast<std::size_t>(m), RootSet{});
    poset_.up.assign(static_cast<std::size_t>(m), RootSet{});
    for (int i = 0; i < m; ++i) {
      int h = 0;
      for (int k = 0; k < n_; ++k) h += roots_[i][k];
      poset_.heights[i] = h;
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        bool le = true;
        for (int k = 0; k < n_ && le; ++k) le = roots_[i][k] <= roots_[j][k];
        if (!le) continue;
        poset_.down[j].set(i);
        poset_.up[i].set(j);
        if (poset_.heights[j] == poset_.heights[i] + 1) poset_.covers.emplace_back(i, j);
      }
  }

  void init_pair_flats() {
    const std::size_t m = roots_.size();
    pair_flats_.assign(m * m, RootSet{});
    for (std::size_t i = 0; i < m; ++i) {
      pair_flats_[i * m + i].set(static_cast<int>(i));
      for (std::size_t j = i + 1; j < m; ++j) {
        EchelonBasis b(n_);
        b.insert(roots_[i]);
        b.insert(roots_[j]);
        RootSet s;
        for (std::size_t k = 0; k < m; ++k)
          if (b.contains(roots_[k])) s.set(static_cast<int>(k));
        pair_flats_[i * m + j] = s;
        pair_flats_[j * m + i] = s;
      }
    }
  }

  TypeLabel label_;
  int n_ = 0;
  std::vector<int> sym_;
  std::vector<std::vector<int>> gram_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Coordinates> roots_;
  std::map<Coordinates, int> index_;
  RootPoset poset_;
  std::vector<RootSet> pair_flats_;
};

// ---------------------------------------------------------------------------
// Free operations
// ---------------------------------------------------------------------------

inline RootSystem build_root_system(TypeLabel label) { return RootSystem(label); }

/// (gamma, delta) under the symmetrized form (short roots have squared length 2).
inline int inner_product(const RootSystem& rs, int gamma, int delta) {
  return rs.form(rs.root(gamma), rs.root(delta));
}

/// s_alpha(gamma) = gamma - <gamma, alpha^vee> alpha for a simple root alpha.
inline SignedRoot reflect(const RootSystem& rs, int alpha, int gamma) {
  if (alpha < 0 || alpha >= rs.rank()) throw std::out_of_range("reflect: not a simple root index");
  Coordinates c = rs.root(gamma);
  c[alpha] -= rs.pairing(c, alpha);
  bool neg = false;
  for (int k = 0; k < rs.rank(); ++k) neg = neg || c[k] < 0;
  if (neg)
    for (int k = 0; k < rs.rank(); ++k) c[k] = -c[k];
  auto idx = rs.find(c);
  if (!idx) throw std::logic_error("reflect: image is not a root");
  return {*idx, neg};
}

/// All positive roots in the span of two distinct positive roots.
inline RootSet rank2_subsystem(const RootSystem& rs, int g1, int g2) {
  if (g1 == g2) throw std::invalid_argument("rank2_subsystem: inputs are parallel");
  return rs.pair_flat(g1, g2);
}

/// Bond multiplicity of the rank-2 subsystem through two roots: 0 for A1xA1,
/// 1 for A2, 2 for B2, 3 for G2 (read off from its number of positive roots).
inline int rank2_lacing(const RootSystem& rs, int g1, int g2) {
  switch (rank2_subsystem(rs, g1, g2).count()) {
    case 2: return 0;
    case 3: return 1;
    case 4: return 2;
    case 6: return 3;
  }
  throw std::logic_error("rank2_lacing: not a rank-2 root system");
}

inline const RootPoset& root_poset(const RootSystem& rs) { return rs.poset(); }

/// Minimal elements of a subset under the root order.
inline RootSet minimal_elements(const RootSystem& rs, const RootSet& s) {
  RootSet out;
  s.for_each([&](int i) {
    if ((rs.poset().down[i] & s).count() == 1) out.set(i);
  });
  return out;
}

/// True iff every two elements of s are comparable.
inline bool is_chain(const RootSystem& rs, const RootSet& s) {
  bool ok = true;
  s.for_each([&](int i) {
    if (ok && !(s - rs.poset().down[i] - rs.poset().up[i]).empty()) ok = false;
  });
  return ok;
}

}  // namespace rootarr

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "ideals.hpp"
#include "matroid.hpp"
#include "rootsystem.hpp"

namespace rootarr {

/// Raised when predicates that are proven equivalent disagree on an ideal.
/// Always an implementation bug; never swallowed by the classifier.
class EquivalenceViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CertificateKind { Peeling, Supersolving };

/// How a block arose: the filter F(alpha), a set G(alpha, beta, a, b), or the
/// complement of a modular coatom found by the generic matroid search.
enum class BlockShape { Filter, GSet, Flat };

struct BlockMeta {
  BlockShape shape = BlockShape::Flat;
  int alpha = -1;  // root indices of the simple roots involved, in the
  int beta = -1;   // subsystem where the block was formed
  int a = 0;
  int b = 0;
  friend bool operator==(const BlockMeta&, const BlockMeta&) = default;
};

/// Ordered partition Pi_1, ..., Pi_n; blocks[0] is Pi_1.
struct PartitionCertificate {
  CertificateKind kind = CertificateKind::Supersolving;
  std::vector<RootSet> blocks;
  std::vector<BlockMeta> meta;

  [[nodiscard]] RootSet ground() const {
    RootSet g;
    for (const auto& b : blocks) g |= b;
    return g;
  }
  friend bool operator==(const PartitionCertificate&, const PartitionCertificate&) = default;
};

inline std::string to_string(CertificateKind k) { return k == CertificateKind::Peeling ? "peeling" : "supersolving"; }
inline std::string to_string(BlockShape s) {
  switch (s) {
    case BlockShape::Filter: return "F";
    case BlockShape::GSet: return "G";
    case BlockShape::Flat: return "coatom-complement";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Certificate validation
// ---------------------------------------------------------------------------

/// Checks the supersolving-partition conditions for A = union of blocks:
/// blocks are disjoint and nonempty, Pi_1 ∪ ... ∪ Pi_i has rank i, and no
/// 2-flat of that union lies inside Pi_i. Returns a reason on failure.
inline std::optional<std::string> check_supersolving(const RootSystem& rs, const PartitionCertificate& cert) {
  RootSet acc;
  for (std::size_t i = 0; i < cert.blocks.size(); ++i) {
    const RootSet& blk = cert.blocks[i];
    const std::string at = "block " + std::to_string(i + 1);
    if (blk.empty()) return at + " is empty";
    if (blk.intersects(acc)) return at + " overlaps an earlier block";
    acc |= blk;
    if (rank(rs, acc) != static_cast<int>(i) + 1) return at + ": stage rank is not " + std::to_string(i + 1);
    std::optional<std::string> bad;
    blk.for_each([&](int x) {
      blk.for_each([&](int y) {
        if (bad || y <= x) return;
        if ((rs.pair_flat(x, y) & acc).subset_of(blk))
          bad = at + " contains the 2-flat through " + rs.format(x) + " and " + rs.format(y);
      });
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

/// Checks the chain-peeling conditions on the root order for P = union of
/// blocks: the bottom block is a chain equal to what remains; every other
/// stage is not a chain and its top block is a chain and an order filter of
/// the stage containing one of its minimal elements.
inline std::optional<std::string> check_peeling(const RootSystem& rs, const PartitionCertificate& cert) {
  RootSet p = cert.ground();
  for (std::size_t i = cert.blocks.size(); i-- > 0;) {
    const RootSet& blk = cert.blocks[i];
    const std::string at = "block " + std::to_string(i + 1);
    if (!blk.subset_of(p) || blk.empty()) return at + " is not part of the remaining poset";
    if (!is_chain(rs, blk)) return at + " is not a chain";
    if (i == 0) {
      if (blk != p) return "bottom block is not the whole remaining poset";
      break;
    }
    if (is_chain(rs, p)) return at + ": remaining poset is already a chain";
    if (!is_order_filter_within(rs, blk, p)) return at + " is not an order filter";
    if (!blk.intersects(minimal_elements(rs, p))) return at + " contains no minimal element";
    p -= blk;
  }
  return std::nullopt;
}

/// Block sizes, ascending. Throws std::invalid_argument unless the
/// certificate is a valid supersolving partition of the union of its blocks.
inline std::vector<int> exponents(const RootSystem& rs, const PartitionCertificate& cert) {
  if (auto why = check_supersolving(rs, cert)) throw std::invalid_argument("exponents: not supersolving: " + *why);
  std::vector<int> e;
  for (const auto& b : cert.blocks) e.push_back(b.count());
  std::sort(e.begin(), e.end());
  return e;
}

// ---------------------------------------------------------------------------
// Classification record
// ---------------------------------------------------------------------------

struct ClassificationRecord {
  std::string type;
  RootSet members;
  std::vector<std::string> ideal;  // coordinates, root index order
  int size = 0;
  bool chain_peelable = false;
  bool supersolvable = false;
  bool line_closed = false;
  /// Not computed algebraically: set equal to `supersolvable`, which is
  /// equivalent to Koszulness of the Orlik-Solomon algebra for root ideal
  /// arrangements.
  bool koszul = false;
  std::optional<BadIdealWitness> bad_ideal;
  std::optional<std::vector<int>> exponents;
  std::optional<PartitionCertificate> peeling;
  std::optional<PartitionCertificate> supersolving;  // generic matroid search
  std::optional<PartitionCertificate> rootideal;     // F/G block search
  std::optional<RootSet> non_flat_witness;
  bool greedy_peeling_stuck = false;
};

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

/// Runs the predicates on ideals of one root system, with memo tables keyed on
/// root bit sets. Not thread-safe; use one instance per worker. The flat
/// lattice may be shared between instances.
class Classifier {
 public:
  explicit Classifier(const RootSystem& rs, std::shared_ptr<const FlatLattice> lattice = nullptr)
      : rs_(&rs), lattice_(std::move(lattice)) {}

  [[nodiscard]] const RootSystem& system() const { return *rs_; }
  /// Built on first use when not supplied.
  const FlatLattice& lattice() {
    if (!lattice_) lattice_ = std::make_shared<const FlatLattice>(*rs_);
    return *lattice_;
  }

  // -- chain peeling -------------------------------------------------------

  /// A chain peeling of the poset `p` (a set of positive roots under the root
  /// order), or nothing. Backtracks over the choice of minimal element in
  /// index order; never assumes greedy choices are safe.
  std::optional<PartitionCertificate> chain_peeling(const RootSet& p) {
    auto top_down = peel(p);
    if (!top_down) return std::nullopt;
    PartitionCertificate c{CertificateKind::Peeling, {}, {}};
    for (auto it = top_down->rbegin(); it != top_down->rend(); ++it) {
      c.blocks.push_back(it->first);
      c.meta.push_back({BlockShape::Filter, it->second, -1, 0, 0});
    }
    return c;
  }

  /// True iff always taking the first minimal element with a chain filter
  /// peels `p` completely.
  [[nodiscard]] bool greedy_peeling_succeeds(RootSet p) const {
    while (!p.empty() && !is_chain(*rs_, p)) {
      bool moved = false;
      minimal_elements(*rs_, p).for_each([&](int m) {
        if (moved) return;
        RootSet f = rs_->poset().up[m] & p;
        if (is_chain(*rs_, f)) {
          p -= f;
          moved = true;
        }
      });
      if (!moved) return false;
    }
    return true;
  }

  // -- generic supersolvability -------------------------------------------

  /// Supersolving partition of any root subset, or nothing.
  ///
  /// Top-down: Pi_n = A \ X over the coatoms X of A such that every pair in
  /// Pi_n spans a line meeting X (no 2-flat inside Pi_n); recurse on X.
  /// Candidates are tried in lexicographic order of Pi_n.
  std::optional<PartitionCertificate> supersolvable_generic(const RootSet& ground) {
    auto blocks = generic(ground);
    if (!blocks) return std::nullopt;
    PartitionCertificate c{CertificateKind::Supersolving, *blocks, {}};
    c.meta.assign(c.blocks.size(), BlockMeta{});
    return c;
  }

  // -- root ideal supersolvability ----------------------------------------

  /// Same verdict as the generic search for an order ideal of a root
  /// (sub)system, with Pi_n restricted to chain filters F_I(alpha) and to the
  /// sets G_I(alpha, beta, a, b). After an F block the search continues on
  /// I \ F_I(alpha); after a G block it continues in the subsystem spanned by
  /// {a alpha + b beta} ∪ simple \ {alpha, beta}. F candidates come before G
  /// candidates, each in simple-root order.
  std::optional<PartitionCertificate> supersolvable_rootideal(const SubsystemView& view, const RootSet& ideal) {
    auto top_down = rootideal(view, ideal);
    if (!top_down) return std::nullopt;
    PartitionCertificate c{CertificateKind::Supersolving, {}, {}};
    for (auto it = top_down->rbegin(); it != top_down->rend(); ++it) {
      c.blocks.push_back(it->first);
      c.meta.push_back(it->second);
    }
    return c;
  }
  std::optional<PartitionCertificate> supersolvable_rootideal(const RootSet& ideal) {
    return supersolvable_rootideal(SubsystemView::full(*rs_), ideal);
  }

  // -- everything ----------------------------------------------------------

  /// All predicates, run independently and cross-checked. Throws
  /// EquivalenceViolation on any disagreement or invalid certificate.
  ClassificationRecord classify(const RootSet& ideal) {
    const RootSystem& rs = *rs_;
    if (!is_order_ideal(rs, ideal)) throw std::invalid_argument("classify: not an order ideal");

    ClassificationRecord r;
    r.type = rs.label().str();
    r.members = ideal;
    r.ideal = coordinate_list(rs, ideal);
    r.size = ideal.count();

    r.peeling = chain_peeling(ideal);
    r.supersolving = supersolvable_generic(ideal);
    r.rootideal = supersolvable_rootideal(ideal);
    const auto lc = is_line_closed(Arrangement{&rs, ideal});
    r.bad_ideal = find_bad_ideal(rs, ideal);

    r.chain_peelable = r.peeling.has_value();
    r.supersolvable = r.supersolving.has_value();
    r.line_closed = lc.line_closed;
    r.non_flat_witness = lc.witness;
    r.koszul = r.supersolvable;

    auto fail = [&](const std::string& what) {
      std::string ideal_text;
      for (const auto& s : r.ideal) ideal_text += (ideal_text.empty() ? "" : ",") + s;
      throw EquivalenceViolation(r.type + " ideal {" + ideal_text + "}: " + what);
    };
    auto verdicts = [&] {
      return std::string("peelable=") + (r.chain_peelable ? "1" : "0") +
             " supersolvable=" + (r.supersolvable ? "1" : "0") +
             " rootideal=" + (r.rootideal ? "1" : "0") + " line_closed=" + (r.line_closed ? "1" : "0") +
             " bad_ideal=" + (r.bad_ideal ? "1" : "0");
    };
    const bool ok = r.supersolvable;
    if (r.chain_peelable != ok || r.rootideal.has_value() != ok || r.line_closed != ok || r.bad_ideal.has_value() == ok)
      fail("predicates disagree: " + verdicts());

    if (r.peeling) {
      if (auto why = check_peeling(rs, *r.peeling)) fail("invalid peeling: " + *why);
      if (auto why = check_supersolving(rs, *r.peeling)) fail("peeling is not supersolving: " + *why);
      r.greedy_peeling_stuck = !greedy_peeling_succeeds(ideal);
    }
    if (r.supersolving) {
      if (auto why = check_supersolving(rs, *r.supersolving)) fail("invalid generic certificate: " + *why);
      r.exponents = exponents(rs, *r.supersolving);
      for (const auto* other : {&r.peeling, &r.rootideal}) {
        if (auto why = check_supersolving(rs, **other)) fail("invalid certificate: " + *why);
        if (exponents(rs, **other) != *r.exponents) fail("exponents differ between certificates");
      }
    }
    return r;
  }

 private:
  using PeelSteps = std::vector<std::pair<RootSet, int>>;  // (block, minimal element), top first

  std::optional<PeelSteps> peel(const RootSet& p) {
    if (p.empty()) return PeelSteps{};
    if (is_chain(*rs_, p)) return PeelSteps{{p, p.first()}};
    if (auto it = peel_memo_.find(p); it != peel_memo_.end()) return it->second;
    std::optional<PeelSteps> result;
    for (int m : minimal_elements(*rs_, p).elements()) {
      RootSet f = rs_->poset().up[m] & p;
      if (!is_chain(*rs_, f)) continue;
      if (auto rest = peel(p - f)) {
        rest->insert(rest->begin(), {f, m});
        result = std::move(rest);
        break;
      }
    }
    peel_memo_.emplace(p, result);
    return result;
  }

  // Blocks bottom-up.
  std::optional<std::vector<RootSet>> generic(const RootSet& a) {
    const int r = rank(*rs_, a);
    if (r == 0) return std::vector<RootSet>{};
    if (r == 1) return std::vector<RootSet>{a};
    if (auto it = generic_memo_.find(a); it != generic_memo_.end()) return it->second;

    std::vector<RootSet> tops;
    for (const auto& x : lattice().flats_of_rank(a, r - 1)) tops.push_back(a - x);
    std::sort(tops.begin(), tops.end(), [](const RootSet& u, const RootSet& v) { return lex_less(u, v); });

    std::optional<std::vector<RootSet>> result;
    for (const auto& top : tops) {
      const RootSet rest = a - top;
      if (!no_two_flat_inside(top, rest)) continue;
      if (auto sub = generic(rest)) {
        sub->push_back(top);
        result = std::move(sub);
        break;
      }
    }
    generic_memo_.emplace(a, result);
    return result;
  }

  /// Every line through two elements of `top` meets `rest`.
  [[nodiscard]] bool no_two_flat_inside(const RootSet& top, const RootSet& rest) const {
    bool ok = true;
    top.for_each([&](int x) {
      top.for_each([&](int y) {
        if (ok && y > x && !rs_->pair_flat(x, y).intersects(rest)) ok = false;
      });
    });
    return ok;
  }

  using RootIdealSteps = std::vector<std::pair<RootSet, BlockMeta>>;  // top first

  static bool is_chain_in(const SubsystemView& v, const RootSet& s) {
    bool ok = true;
    s.for_each([&](int i) {
      s.for_each([&](int j) { ok = ok && (j <= i || v.leq(i, j) || v.leq(j, i)); });
    });
    return ok;
  }

  std::optional<RootIdealSteps> rootideal(SubsystemView view, const RootSet& ideal) {
    if (ideal.empty()) return RootIdealSteps{};
    std::vector<int> present;
    for (int k = 0; k < view.rank(); ++k)
      if (ideal.test(view.simple()[static_cast<std::size_t>(k)])) present.push_back(k);
    if (static_cast<int>(present.size()) < view.rank()) view = view.parabolic(present);
    const int n = view.rank();

    const auto key = std::make_pair(view.simple_set(), ideal);
    if (auto it = rootideal_memo_.find(key); it != rootideal_memo_.end()) return it->second;

    auto valid_top = [&](const RootSet& top) {
      const RootSet rest = ideal - top;
      return !top.empty() && rank(*rs_, rest) == n - 1 && no_two_flat_inside(top, rest);
    };

    std::optional<RootIdealSteps> result;
    for (int pos = 0; pos < n && !result; ++pos) {
      RootSet f = principal_filter(view, ideal, pos);
      if (!is_chain_in(view, f) || !valid_top(f)) continue;
      if (auto sub = rootideal(view, ideal - f)) {
        sub->insert(sub->begin(), {f, {BlockShape::Filter, view.simple()[static_cast<std::size_t>(pos)], -1, 0, 0}});
        result = std::move(sub);
      }
    }
    for (int pa = 0; pa < n && !result; ++pa)
      for (int pb = pa + 1; pb < n && !result; ++pb)
        for (auto [a, b] : candidate_ab_pairs(view, pa, pb)) {
          RootSet g = g_set(view, ideal, pa, pb, a, b);
          if (!valid_top(g)) continue;
          auto [sub_view, sub_ideal] = restrict_without_g(view, ideal, pa, pb, a, b);
          if (auto sub = rootideal(sub_view, sub_ideal)) {
            sub->insert(sub->begin(), {g,
                                       {BlockShape::GSet, view.simple()[static_cast<std::size_t>(pa)],
                                        view.simple()[static_cast<std::size_t>(pb)], a, b}});
            result = std::move(sub);
            break;
          }
        }
    rootideal_memo_.emplace(key, result);
    return result;
  }

  const RootSystem* rs_;
  std::shared_ptr<const FlatLattice> lattice_;
  std::unordered_map<RootSet, std::optional<PeelSteps>, RootSetHash> peel_memo_;
  std::unordered_map<RootSet, std::optional<std::vector<RootSet>>, RootSetHash> generic_memo_;
  std::map<std::pair<RootSet, RootSet>, std::optional<RootIdealSteps>> rootideal_memo_;
};

// Stand-alone conveniences; each builds a fresh Classifier.

inline std::optional<PartitionCertificate> chain_peeling(const Ideal& I) {
  return Classifier(*I.system).chain_peeling(I.members);
}
inline std::optional<PartitionCertificate> is_supersolvable_generic(const Arrangement& A) {
  return Classifier(*A.system).supersolvable_generic(A.ground);
}
inline std::optional<PartitionCertificate> is_supersolvable_rootideal(const Ideal& I) {
  return Classifier(*I.system).supersolvable_rootideal(I.members);
}
inline ClassificationRecord classify_ideal(const Ideal& I) { return Classifier(*I.system).classify(I.members); }

}  // namespace rootarr

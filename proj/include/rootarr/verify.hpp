#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "classify.hpp"
#include "ideals.hpp"
#include "matroid.hpp"
#include "rootsystem.hpp"

namespace rootarr {

/// Outcome of one exhaustive property suite on one root system.
struct SuiteResult {
  std::string suite;
  std::string type;
  long long checked = 0;
  std::vector<std::string> failures;  // counterexamples, verbatim
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const { return failures.empty(); }
  void fail(std::string what) {
    if (failures.size() < 20) failures.push_back(std::move(what));
    else if (failures.size() == 20) failures.push_back("... further failures suppressed");
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rank2",          "chainroot",       "twocases",
                                              "peel-implies-ss", "exponents-vs-chi", "line-closed-oracle"};
  return names;
}

namespace detail {

inline std::string set_text(const RootSystem& rs, const RootSet& s) {
  std::string out = "{";
  for (const auto& c : coordinate_list(rs, s)) out += (out.size() > 1 ? "," : "") + c;
  return out + "}";
}

/// beta - gamma (or its negative) is a positive root.
inline bool difference_is_root(const RootSystem& rs, int beta, int gamma) {
  Coordinates d{};
  for (int k = 0; k < rs.rank(); ++k) d[k] = rs.root(beta)[k] - rs.root(gamma)[k];
  if (rs.find(d)) return true;
  for (int k = 0; k < rs.rank(); ++k) d[k] = -d[k];
  return rs.find(d).has_value();
}

inline bool sum_is_root(const RootSystem& rs, int beta, int gamma) {
  Coordinates s{};
  for (int k = 0; k < rs.rank(); ++k) s[k] = rs.root(beta)[k] + rs.root(gamma)[k];
  return rs.find(s).has_value();
}

}  // namespace detail

/// Rank-2 subsystems: at most one incomparable pair, and such a pair is
/// minimal in the subsystem. For systems without triple bonds also checks
/// that the sign of (beta, gamma) decides whether beta -/+ gamma are roots.
inline SuiteResult verify_rank2(const RootSystem& rs) {
  SuiteResult res{"rank2", rs.label().str(), 0, {}, {}};
  const int m = rs.size();
  std::set<RootSet> seen;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const RootSet sub = rank2_subsystem(rs, i, j);
      if (!seen.insert(sub).second) continue;
      ++res.checked;
      std::vector<std::pair<int, int>> incomparable;
      sub.for_each([&](int x) {
        sub.for_each([&](int y) {
          if (y > x && !rs.poset().comparable(x, y)) incomparable.emplace_back(x, y);
        });
      });
      if (incomparable.size() > 1) {
        res.fail("subsystem " + detail::set_text(rs, sub) + " has " + std::to_string(incomparable.size()) +
                 " incomparable pairs");
      } else if (incomparable.size() == 1) {
        const RootSet mins = minimal_elements(rs, sub);
        auto [x, y] = incomparable[0];
        if (!mins.test(x) || !mins.test(y))
          res.fail("incomparable pair " + rs.format(x) + "," + rs.format(y) + " not minimal in " +
                   detail::set_text(rs, sub));
      }
    }
  res.notes.push_back(std::to_string(res.checked) + " distinct rank-2 subsystems");

  if (rs.max_bond() <= 2) {
    long long pairs = 0;
    for (int b = 0; b < m; ++b)
      for (int g = 0; g < m; ++g) {
        if (b == g) continue;
        ++pairs;
        const int ip = inner_product(rs, b, g);
        const bool diff = detail::difference_is_root(rs, b, g);
        const bool sum = detail::sum_is_root(rs, b, g);
        bool good = true;
        if (ip > 0) good = diff && !sum;
        else if (ip < 0) good = !diff && sum;
        else if (rs.simply_laced()) good = !diff && !sum;
        if (!good)
          res.fail("(" + rs.format(b) + ", " + rs.format(g) + ") = " + std::to_string(ip) +
                   " but difference/sum root membership is " + (diff ? "1" : "0") + "/" + (sum ? "1" : "0"));
      }
    res.checked += pairs;
    res.notes.push_back(std::to_string(pairs) + " ordered pairs checked against the inner-product sign rule");
  }
  return res;
}

/// Every interval [b1, b2] (b1 < b2) that is a chain has b2 - b1 = k*beta for a
/// positive root beta and k in {1, 2, 3}; k = 3 needs a triple bond and k = 2
/// a double or triple bond.
inline SuiteResult verify_chainroot(const RootSystem& rs) {
  SuiteResult res{"chainroot", rs.label().str(), 0, {}, {}};
  std::map<int, long long> by_k;
  const int m = rs.size();
  std::optional<std::string> example_k2;
  for (int lo = 0; lo < m; ++lo)
    for (int hi = 0; hi < m; ++hi) {
      if (lo == hi || !rs.leq(lo, hi)) continue;
      const RootSet interval = rs.poset().up[lo] & rs.poset().down[hi];
      if (!is_chain(rs, interval)) continue;
      ++res.checked;
      Coordinates d{};
      for (int k = 0; k < rs.rank(); ++k) d[k] = rs.root(hi)[k] - rs.root(lo)[k];
      int found = 0;
      for (int k = 1; k <= 3 && !found; ++k) {
        Coordinates q{};
        bool divisible = true;
        for (int t = 0; t < rs.rank(); ++t) {
          divisible = divisible && d[t] % k == 0;
          q[t] = d[t] / k;
        }
        if (divisible && rs.find(q)) found = k;
      }
      const std::string iv = "[" + rs.format(lo) + ", " + rs.format(hi) + "]";
      if (!found) {
        res.fail("chain interval " + iv + ": difference is not k*beta");
        continue;
      }
      ++by_k[found];
      if (found == 3 && rs.max_bond() < 3) res.fail("chain interval " + iv + " has k = 3 without a triple bond");
      if (found == 2 && rs.max_bond() < 2) res.fail("chain interval " + iv + " has k = 2 in a simply laced system");
      if (found == 2 && !example_k2) example_k2 = iv;
    }
  std::string ks;
  for (auto [k, c] : by_k) ks += (ks.empty() ? "" : ", ") + ("k=" + std::to_string(k) + ": " + std::to_string(c));
  res.notes.push_back("chain intervals by k: " + (ks.empty() ? std::string("none") : ks));
  if (example_k2) res.notes.push_back("example with k = 2: " + *example_k2);
  return res;
}

/// Checks that each block of a supersolving partition of a root ideal, from
/// the top down, is a chain filter F_I(alpha) or a set G_I(alpha, beta, a, b)
/// of the current subsystem, descending into the subsystem after a G block.
/// Returns the failing stage, if any.
inline std::optional<std::string> check_two_cases(const RootSystem& rs, const RootSet& ideal,
                                                  const PartitionCertificate& cert) {
  SubsystemView view = SubsystemView::full(rs);
  RootSet cur = ideal;
  for (std::size_t i = cert.blocks.size(); i-- > 0;) {
    const RootSet& top = cert.blocks[i];
    if (!is_order_ideal(view, cur)) return "stage " + std::to_string(i + 1) + " is not an ideal of its subsystem";
    std::vector<int> present;
    for (int k = 0; k < view.rank(); ++k)
      if (cur.test(view.simple()[static_cast<std::size_t>(k)])) present.push_back(k);
    view = view.parabolic(present);
    bool matched = false;
    for (int pos = 0; pos < view.rank() && !matched; ++pos) {
      RootSet f = principal_filter(view, cur, pos);
      if (f == top) {
        if (!is_chain(rs, f)) return "top block at stage " + std::to_string(i + 1) + " is F(alpha) but not a chain";
        cur -= f;
        matched = true;
      }
    }
    for (int pa = 0; pa < view.rank() && !matched; ++pa)
      for (int pb = pa + 1; pb < view.rank() && !matched; ++pb)
        for (auto [a, b] : candidate_ab_pairs(view, pa, pb)) {
          if (g_set(view, cur, pa, pb, a, b) != top) continue;
          auto next = restrict_without_g(view, cur, pa, pb, a, b);
          view = std::move(next.first);
          cur = next.second;
          matched = true;
          break;
        }
    if (!matched)
      return "block " + std::to_string(i + 1) + " " + detail::set_text(rs, top) + " is neither F- nor G-shaped";
  }
  return std::nullopt;
}

/// Every supersolving partition found by the generic search on a root ideal
/// has F- or G-shaped blocks.
inline SuiteResult verify_twocases(const RootSystem& rs, Classifier& cls) {
  SuiteResult res{"twocases", rs.label().str(), 0, {}, {}};
  long long ss = 0, f_top = 0, g_top = 0;
  for_each_ideal(rs, [&](const Ideal& I) {
    ++res.checked;
    auto cert = cls.supersolvable_generic(I.members);
    if (!cert || cert->blocks.empty()) return;
    ++ss;
    if (auto why = check_two_cases(rs, I.members, *cert)) {
      res.fail(detail::set_text(rs, I.members) + ": " + *why);
      return;
    }
    // Classify the top block for the summary.
    const auto& top = cert->blocks.back();
    bool is_f = false;
    for (int a = 0; a < rs.rank(); ++a)
      if (I.members.test(a) && principal_filter(I, a) == top) is_f = true;
    ++(is_f ? f_top : g_top);
  });
  res.notes.push_back(std::to_string(ss) + " nonempty supersolvable ideals; top block F-shaped " + std::to_string(f_top) +
                      ", G-shaped " + std::to_string(g_top));
  return res;
}

/// Every chain peeling is a supersolving partition.
inline SuiteResult verify_peel_implies_ss(const RootSystem& rs, Classifier& cls) {
  SuiteResult res{"peel-implies-ss", rs.label().str(), 0, {}, {}};
  long long peelable = 0;
  for_each_ideal(rs, [&](const Ideal& I) {
    ++res.checked;
    auto cert = cls.chain_peeling(I.members);
    if (!cert) return;
    ++peelable;
    if (auto why = check_peeling(rs, *cert)) res.fail(detail::set_text(rs, I.members) + ": invalid peeling: " + *why);
    if (auto why = check_supersolving(rs, *cert))
      res.fail(detail::set_text(rs, I.members) + ": peeling not supersolving: " + *why);
  });
  res.notes.push_back(std::to_string(peelable) + " peelable ideals");
  return res;
}

/// chi(t) = prod (t - |Pi_i|) for every certificate of every supersolvable ideal.
inline SuiteResult verify_exponents_vs_chi(const RootSystem& rs, Classifier& cls) {
  SuiteResult res{"exponents-vs-chi", rs.label().str(), 0, {}, {}};
  std::map<std::vector<int>, long long> seen;
  for_each_ideal(rs, [&](const Ideal& I) {
    auto gen = cls.supersolvable_generic(I.members);
    if (!gen) return;
    ++res.checked;
    const Polynomial chi = characteristic_polynomial(cls.lattice(), I.members);
    for (const auto& cert : {gen, cls.supersolvable_rootideal(I.members), cls.chain_peeling(I.members)}) {
      if (!cert) {
        res.fail(detail::set_text(rs, I.members) + ": certificate missing");
        continue;
      }
      std::vector<int> e;
      for (const auto& b : cert->blocks) e.push_back(b.count());
      if (Polynomial::from_roots(e) != chi)
        res.fail(detail::set_text(rs, I.members) + ": chi = " + chi.str() + " but blocks give " +
                 Polynomial::from_roots(e).str());
    }
    ++seen[exponents(rs, *gen)];
  });
  res.notes.push_back(std::to_string(seen.size()) + " distinct exponent multisets");
  if (auto cert = cls.supersolvable_generic(rs.all())) {
    std::string e;
    for (int x : exponents(rs, *cert)) e += (e.empty() ? "" : ",") + std::to_string(x);
    res.notes.push_back("full positive system: exponents {" + e + "}, chi = " +
                        characteristic_polynomial(cls.lattice(), rs.all()).str());
  }
  return res;
}

/// The breadth-first line-closedness decision agrees with brute force over
/// all independent sets, and every reported witness is 2-closed but not a flat.
inline SuiteResult verify_line_closed_oracle(const RootSystem& rs) {
  SuiteResult res{"line-closed-oracle", rs.label().str(), 0, {}, {}};
  long long closed = 0;
  for_each_ideal(rs, [&](const Ideal& I) {
    ++res.checked;
    const Arrangement A{&rs, I.members};
    const auto fast = is_line_closed(A);
    const auto slow = is_line_closed_by_independent_sets(A);
    if (fast.line_closed != slow.line_closed) {
      res.fail(detail::set_text(rs, I.members) + ": procedures disagree");
      return;
    }
    closed += fast.line_closed ? 1 : 0;
    for (const auto* r : {&fast, &slow}) {
      if (!r->witness) continue;
      if (!is_two_closed(A, *r->witness) || is_flat(A, *r->witness))
        res.fail(detail::set_text(rs, I.members) + ": bad witness " + detail::set_text(rs, *r->witness));
    }
  });
  res.notes.push_back(std::to_string(closed) + " line-closed ideals");
  return res;
}

/// Runs a named suite.
inline SuiteResult run_suite(const std::string& name, const RootSystem& rs, Classifier& cls) {
  if (name == "rank2") return verify_rank2(rs);
  if (name == "chainroot") return verify_chainroot(rs);
  if (name == "twocases") return verify_twocases(rs, cls);
  if (name == "peel-implies-ss") return verify_peel_implies_ss(rs, cls);
  if (name == "exponents-vs-chi") return verify_exponents_vs_chi(rs, cls);
  if (name == "line-closed-oracle") return verify_line_closed_oracle(rs);
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace rootarr

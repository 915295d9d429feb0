#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rootarr/ideals.hpp"
#include "rootarr/matroid.hpp"

using namespace rootarr;

namespace {

std::set<std::string> names(const RootSystem& rs, const RootSet& s) {
  std::set<std::string> out;
  s.for_each([&](int i) { out.insert(rs.format(i)); });
  return out;
}

RootSet roots_of(const RootSystem& rs, std::initializer_list<const char*> cs) {
  RootSet s;
  for (const char* c : cs) s.set(rs.parse_root(c));
  return s;
}

RootSet by_height(const RootSystem& rs, int h) {
  RootSet s;
  for (int i = 0; i < rs.size(); ++i)
    if (rs.height(i) <= h) s.set(i);
  return s;
}

std::vector<long long> coeffs(const Polynomial& p) { return {p.coeffs.begin(), p.coeffs.end()}; }

/// Every subset is tested: 2-closed subsets must be flats.
bool line_closed_all_subsets(const oracle::SmallMatroid& m) {
  const int n = m.size();
  std::vector<oracle::Mask> pair(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pair[static_cast<std::size_t>(a * n + b)] = m.closure((1u << a) | (1u << b));
  for (oracle::Mask s = 0; s < (1u << n); ++s) {
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = a + 1; b < n && closed; ++b)
        if ((s >> a & 1) && (s >> b & 1)) closed = (pair[static_cast<std::size_t>(a * n + b)] & ~s) == 0;
    if (closed && m.closure(s) != s) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rank and closure
// ---------------------------------------------------------------------------

TEST(Rank, MatchesRationalElimination) {
  std::mt19937 rng(12345);
  for (const char* t : {"A4", "B4", "C5", "D5", "E6", "E7", "E8", "F4", "G2"}) {
    const RootSystem rs(TypeLabel::parse(t));
    const auto dim = static_cast<std::size_t>(rs.rank());
    std::uniform_int_distribution<int> pick(0, rs.size() - 1), len(0, rs.rank() + 2);
    for (int trial = 0; trial < 300; ++trial) {
      RootSet s;
      std::vector<oracle::Vec> vs;
      for (int k = len(rng); k > 0; --k) {
        const int i = pick(rng);
        if (!s.test(i)) vs.push_back(oracle::coords(rs, i));
        s.set(i);
      }
      const Arrangement A{&rs, rs.all()};
      ASSERT_EQ(rank(A, s), oracle::rank_of(vs, dim)) << t;
      // closure: everything in the rational span
      oracle::RationalSpan sp(dim);
      for (const auto& v : vs) sp.add(v);
      RootSet expect;
      for (int g = 0; g < rs.size(); ++g)
        if (sp.contains(oracle::coords(rs, g))) expect.set(g);
      const Flat f = closure(A, s);
      ASSERT_EQ(f.members, expect) << t;
      EXPECT_EQ(f.rank, oracle::rank_of(vs, dim));
      EXPECT_EQ(closure(A, f.members).members, f.members);
      EXPECT_TRUE(is_flat(A, f.members));
    }
  }
}

TEST(Rank, Examples) {
  const RootSystem a2(TypeLabel::parse("A2"));
  const Arrangement A2{&a2, a2.all()};
  EXPECT_EQ(rank(A2, RootSet{}), 0);
  EXPECT_EQ(rank(A2, a2.all()), 2);
  const Flat f = closure(A2, roots_of(a2, {"10", "11"}));
  EXPECT_EQ(f.members, a2.all());
  EXPECT_EQ(f.rank, 2);

  const RootSystem f4(TypeLabel::parse("F4"));
  EXPECT_EQ(rank(Arrangement{&f4, f4.all()}, f4_bad_ideal(f4)), 4);

  const RootSystem d4(TypeLabel::parse("D4"));
  const Arrangement star{&d4, by_height(d4, 3)};
  // 0100 and 0111 span no other root of height <= 3
  EXPECT_EQ(names(d4, closure(star, roots_of(d4, {"0100", "0111"})).members),
            (std::set<std::string>{"0100", "0111"}));
  EXPECT_THROW(closure(star, roots_of(d4, {"1211"})), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Flats
// ---------------------------------------------------------------------------

TEST(Flats, LatticeMatchesOracle) {
  for (const char* t : {"A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"}) {
    const RootSystem rs(TypeLabel::parse(t));
    const auto members = rs.all().elements();
    const auto m = oracle::matroid_of(rs, members);
    std::set<std::pair<oracle::Mask, int>> expect;
    for (auto [f, k] : m.flats()) expect.insert({f, k});
    const FlatLattice L(rs);
    std::set<std::pair<oracle::Mask, int>> got;
    for (const auto& f : L.flats_of(rs.all())) got.insert({oracle::local_mask(members, f.members), f.rank});
    EXPECT_EQ(got, expect) << t;
    EXPECT_EQ(L.size(), expect.size());
  }
}

TEST(Flats, TypeACountIsBell) {
  // flats of A_n are set partitions of n + 1 points
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52, 203, 877};
  for (int n = 1; n <= 6; ++n) {
    const RootSystem rs({Family::A, n});
    EXPECT_EQ(FlatLattice(rs).size(), bell[static_cast<std::size_t>(n + 1)]);
  }
}

TEST(Flats, RestrictionToIdealsMatchesOracle) {
  for (const char* t : {"B3", "D4", "G2", "F4"}) {
    const RootSystem rs(TypeLabel::parse(t));
    const FlatLattice L(rs);
    for_each_ideal(rs, [&](const Ideal& I) {
      const auto members = I.members.elements();
      const auto m = oracle::matroid_of(rs, members);
      std::set<std::pair<oracle::Mask, int>> expect, got;
      for (auto [f, k] : m.flats()) expect.insert({f, k});
      for (const auto& f : L.flats_of(I.members)) got.insert({oracle::local_mask(members, f.members), f.rank});
      ASSERT_EQ(got, expect) << t;
    });
  }
}

TEST(Flats, TwoFlats) {
  const RootSystem a2(TypeLabel::parse("A2"));
  const auto tf = two_flats(Arrangement{&a2, a2.all()});
  ASSERT_EQ(tf.size(), 1u);
  EXPECT_EQ(tf[0].members, a2.all());

  for (const char* t : {"D4", "F4", "B3"}) {
    const RootSystem rs(TypeLabel::parse(t));
    for_each_ideal(rs, [&](const Ideal& I) {
      const auto members = I.members.elements();
      const auto m = oracle::matroid_of(rs, members);
      std::set<oracle::Mask> expect, got;
      for (auto [f, k] : m.flats())
        if (k == 2) expect.insert(f);
      for (const auto& f : two_flats(Arrangement{&rs, I.members})) {
        EXPECT_EQ(f.rank, 2);
        got.insert(oracle::local_mask(members, f.members));
      }
      ASSERT_EQ(got, expect);
    });
  }
}

TEST(Flats, IndependentSets) {
  const RootSystem a2(TypeLabel::parse("A2"));
  EXPECT_EQ(independent_sets(Arrangement{&a2, a2.all()}, 2).size(), 6u);

  const RootSystem d4(TypeLabel::parse("D4"));
  const Arrangement D4{&d4, d4.all()};
  bool found = false;
  const RootSet triple = roots_of(d4, {"1110", "1101", "0111"});
  for (const auto& s : independent_sets(D4, 3)) found = found || s == triple;
  EXPECT_TRUE(found);

  const auto members = d4.all().elements();
  const auto m = oracle::matroid_of(d4, members);
  std::set<oracle::Mask> expect, got;
  for (oracle::Mask s = 1; s < (1u << members.size()); ++s)
    if (__builtin_popcount(s) <= 3 && m.rank(s) == __builtin_popcount(s)) expect.insert(s);
  for (const auto& s : independent_sets(D4, 3)) EXPECT_TRUE(got.insert(oracle::local_mask(members, s)).second);
  EXPECT_EQ(got, expect);
}

// ---------------------------------------------------------------------------
// 2-closure and line-closedness
// ---------------------------------------------------------------------------

TEST(TwoClosure, Examples) {
  const RootSystem a2(TypeLabel::parse("A2"));
  const Arrangement A2{&a2, a2.all()};
  EXPECT_EQ(two_closure(A2, roots_of(a2, {"10", "01"})), a2.all());
  EXPECT_EQ(two_closure(A2, roots_of(a2, {"10"})), roots_of(a2, {"10"}));

  const RootSystem d4(TypeLabel::parse("D4"));
  const Arrangement star{&d4, by_height(d4, 3)};
  const RootSet s = roots_of(d4, {"0100", "0111", "1101", "1110"});
  EXPECT_EQ(two_closure(star, s), s);
  EXPECT_FALSE(is_flat(star, s));
  EXPECT_TRUE(closure(star, s).members.test(d4.parse_root("1000")));
}

TEST(TwoClosure, IsSmallestPairClosedSuperset) {
  std::mt19937 rng(7);
  for (const char* t : {"D4", "F4", "B4"}) {
    const RootSystem rs(TypeLabel::parse(t));
    const auto members = rs.all().elements();
    const auto m = oracle::matroid_of(rs, members);
    std::uniform_int_distribution<int> pick(0, rs.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      RootSet s;
      for (int k = 0; k < 3; ++k) s.set(pick(rng));
      oracle::Mask x = oracle::local_mask(members, s);
      for (bool grew = true; grew;) {
        grew = false;
        for (int a = 0; a < m.size(); ++a)
          for (int b = a + 1; b < m.size(); ++b)
            if ((x >> a & 1) && (x >> b & 1)) {
              const oracle::Mask c = m.closure((1u << a) | (1u << b));
              if ((c & ~x) != 0) {
                x |= c;
                grew = true;
              }
            }
      }
      ASSERT_EQ(oracle::local_mask(members, two_closure(Arrangement{&rs, rs.all()}, s)), x);
    }
  }
}

class LineClosed : public ::testing::TestWithParam<std::string> {};

TEST_P(LineClosed, AgreesWithOracles) {
  const RootSystem rs(TypeLabel::parse(GetParam()));
  for_each_ideal(rs, [&](const Ideal& I) {
    const Arrangement A{&rs, I.members};
    const auto members = I.members.elements();
    const auto m = oracle::matroid_of(rs, members);
    const auto bfs = is_line_closed(A);
    const auto ind = is_line_closed_by_independent_sets(A);
    const bool expect = m.line_closed();
    ASSERT_EQ(bfs.line_closed, expect);
    ASSERT_EQ(ind.line_closed, expect);
    if (members.size() <= 16) {
      ASSERT_EQ(line_closed_all_subsets(m), expect);
    }
    for (const auto* r : {&bfs, &ind}) {
      if (r->line_closed) {
        EXPECT_FALSE(r->witness);
        continue;
      }
      ASSERT_TRUE(r->witness);
      EXPECT_TRUE(is_two_closed(A, *r->witness));
      EXPECT_FALSE(is_flat(A, *r->witness));
    }
  });
}

INSTANTIATE_TEST_SUITE_P(RankAtMost4, LineClosed, ::testing::Values("A3", "A4", "B3", "C3", "B4", "C4", "D4", "G2", "F4"));

TEST(LineClosedExamples, StarAndFull) {
  const RootSystem a2(TypeLabel::parse("A2"));
  EXPECT_TRUE(is_line_closed(Arrangement{&a2, a2.all()}).line_closed);
  const RootSystem d4(TypeLabel::parse("D4"));
  const auto r = is_line_closed(Arrangement{&d4, by_height(d4, 3)});
  EXPECT_FALSE(r.line_closed);
}

// ---------------------------------------------------------------------------
// Characteristic polynomial
// ---------------------------------------------------------------------------

TEST(Chi, Examples) {
  const RootSystem a1(TypeLabel::parse("A1"));
  EXPECT_EQ(coeffs(characteristic_polynomial(Arrangement{&a1, a1.all()})), (std::vector<long long>{-1, 1}));
  const RootSystem a2(TypeLabel::parse("A2"));
  EXPECT_EQ(coeffs(characteristic_polynomial(Arrangement{&a2, a2.all()})), (std::vector<long long>{2, -3, 1}));
  const RootSystem b2(TypeLabel::parse("B2"));
  EXPECT_EQ(coeffs(characteristic_polynomial(Arrangement{&b2, b2.all()})), (std::vector<long long>{3, -4, 1}));
  EXPECT_EQ(characteristic_polynomial(Arrangement{&a2, a2.all()}).str(), "t^2 - 3t + 2");
  EXPECT_EQ(coeffs(Polynomial::from_roots({1, 2})), (std::vector<long long>{2, -3, 1}));
}

TEST(Chi, FullSystemFactorsOverExponents) {
  for (const char* t : {"A3", "A5", "B3", "B4", "C4", "D4", "D5", "E6", "F4", "G2"}) {
    const TypeLabel label = TypeLabel::parse(t);
    const RootSystem rs(label);
    EXPECT_EQ(coeffs(characteristic_polynomial(Arrangement{&rs, rs.all()})),
              coeffs(Polynomial::from_roots(oracle::weyl_exponents(label))))
        << t;
  }
}

class ChiIdeals : public ::testing::TestWithParam<std::string> {};

TEST_P(ChiIdeals, MatchesMoebiusAndWhitney) {
  const RootSystem rs(TypeLabel::parse(GetParam()));
  const FlatLattice L(rs);
  for_each_ideal(rs, [&](const Ideal& I) {
    const auto members = I.members.elements();
    const auto m = oracle::matroid_of(rs, members);
    const auto lib = coeffs(characteristic_polynomial(L, I.members));
    const auto mob = m.chi_moebius();
    ASSERT_EQ(lib, mob);
    if (members.size() <= 14) {
      ASSERT_EQ(lib, m.chi_whitney());
    }
  });
}

INSTANTIATE_TEST_SUITE_P(RankAtMost4, ChiIdeals, ::testing::Values("A3", "B3", "C3", "D4", "G2", "F4", "B4"));

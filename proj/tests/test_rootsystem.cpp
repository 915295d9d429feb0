#include <gtest/gtest.h>

#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rootarr/rootsystem.hpp"

using namespace rootarr;

namespace {

std::vector<TypeLabel> every_type() {
  std::vector<TypeLabel> out;
  for (int n = 1; n <= 8; ++n) out.push_back({Family::A, n});
  for (int n = 2; n <= 8; ++n) out.push_back({Family::B, n});
  for (int n = 2; n <= 8; ++n) out.push_back({Family::C, n});
  for (int n = 3; n <= 8; ++n) out.push_back({Family::D, n});
  for (int n = 6; n <= 8; ++n) out.push_back({Family::E, n});
  out.push_back({Family::F, 4});
  out.push_back({Family::G, 2});
  return out;
}

int idx(const RootSystem& rs, const std::string& c) { return rs.parse_root(c); }

std::set<std::string> names(const RootSystem& rs, const RootSet& s) {
  std::set<std::string> out;
  s.for_each([&](int i) { out.insert(rs.format(i)); });
  return out;
}

}  // namespace

class EveryType : public ::testing::TestWithParam<TypeLabel> {};

TEST_P(EveryType, PositiveRootsMatchEuclideanModel) {
  const RootSystem rs(GetParam());
  const auto model = oracle::euclidean_model(GetParam());
  const auto pos = oracle::positive_roots(model);
  ASSERT_EQ(model.roots.size(), 2 * pos.size());
  ASSERT_EQ(rs.size(), static_cast<int>(pos.size()));
  for (int i = 0; i < rs.size(); ++i) EXPECT_TRUE(pos.count(oracle::coords(rs, i))) << rs.format(i);
}

TEST_P(EveryType, PositiveRootCountIsSumOfExponents) {
  const RootSystem rs(GetParam());
  const auto e = oracle::weyl_exponents(GetParam());
  EXPECT_EQ(rs.size(), std::accumulate(e.begin(), e.end(), 0));
}

TEST_P(EveryType, ReflectionOrbitGivesSameRoots) {
  const RootSystem rs(GetParam());
  std::set<oracle::Vec> lib;
  for (int i = 0; i < rs.size(); ++i) lib.insert(oracle::coords(rs, i));
  std::set<oracle::Vec> positive;
  for (const auto& v : oracle::reflection_orbit(oracle::euclidean_model(GetParam())))
    if (std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; })) positive.insert(v);
  EXPECT_EQ(lib, positive);
}

TEST_P(EveryType, InnerProductMatchesModelUpToScale) {
  const RootSystem rs(GetParam());
  const auto model = oracle::euclidean_model(GetParam());
  const auto pos = oracle::positive_roots(model);
  long long shortest = 0;
  for (const auto& s : model.simple) {
    const long long l = oracle::dot(s, s);
    shortest = shortest == 0 ? l : std::min(shortest, l);
  }
  const long long scale = shortest / 2;  // short roots have squared length 2
  for (int g = 0; g < rs.size(); ++g) {
    const auto& vg = pos.at(oracle::coords(rs, g));
    EXPECT_GT(inner_product(rs, g, g), 0);
    for (int d = 0; d < rs.size(); ++d) {
      const auto& vd = pos.at(oracle::coords(rs, d));
      ASSERT_EQ(inner_product(rs, g, d) * scale, oracle::dot(vg, vd)) << rs.format(g) << " " << rs.format(d);
    }
  }
}

TEST_P(EveryType, SimpleReflectionsMatchModel) {
  const RootSystem rs(GetParam());
  const auto model = oracle::euclidean_model(GetParam());
  const auto pos = oracle::positive_roots(model);
  for (int a = 0; a < rs.rank(); ++a) {
    const auto& va = model.simple[static_cast<std::size_t>(a)];
    std::set<int> images;
    for (int g = 0; g < rs.size(); ++g) {
      const auto& vg = pos.at(oracle::coords(rs, g));
      const long long c = 2 * oracle::dot(vg, va) / oracle::dot(va, va);
      oracle::Vec w = oracle::detail::add(vg, va, -c);
      const auto wc = oracle::integer_coordinates(model.simple, w);
      ASSERT_TRUE(wc);
      const SignedRoot s = reflect(rs, a, g);
      oracle::Vec expect = oracle::coords(rs, s.index);
      if (s.negative)
        for (auto& x : expect) x = -x;
      EXPECT_EQ(expect, *wc);
      if (g != a) images.insert(s.index);
    }
    // s_alpha permutes the positive roots other than alpha
    EXPECT_EQ(static_cast<int>(images.size()), rs.size() - 1);
    EXPECT_TRUE(reflect(rs, a, a).negative);
    EXPECT_EQ(reflect(rs, a, a).index, a);
  }
}

TEST_P(EveryType, PosetIsComponentwiseOrder) {
  const RootSystem rs(GetParam());
  for (int i = 0; i < rs.size(); ++i) {
    int h = 0;
    for (int k = 0; k < rs.rank(); ++k) h += rs.root(i)[static_cast<std::size_t>(k)];
    EXPECT_EQ(rs.height(i), h);
    for (int j = 0; j < rs.size(); ++j) {
      bool le = true;
      for (int k = 0; k < rs.rank(); ++k) le = le && rs.root(i)[static_cast<std::size_t>(k)] <= rs.root(j)[static_cast<std::size_t>(k)];
      ASSERT_EQ(rs.leq(i, j), le);
    }
  }
  // covers differ by a simple root
  for (auto [lo, hi] : rs.poset().covers) {
    EXPECT_TRUE(rs.leq(lo, hi));
    EXPECT_EQ(rs.height(hi), rs.height(lo) + 1);
  }
  std::size_t expected_covers = 0;
  for (int i = 0; i < rs.size(); ++i)
    for (int j = 0; j < rs.size(); ++j) expected_covers += rs.leq(i, j) && rs.height(j) == rs.height(i) + 1;
  EXPECT_EQ(rs.poset().covers.size(), expected_covers);
}

TEST_P(EveryType, SupportIsConnected) {
  const RootSystem rs(GetParam());
  for (int g = 0; g < rs.size(); ++g) {
    std::vector<int> supp;
    for (int k = 0; k < rs.rank(); ++k)
      if (rs.root(g)[static_cast<std::size_t>(k)] > 0) supp.push_back(k);
    std::set<int> reached{supp[0]}, in(supp.begin(), supp.end());
    std::vector<int> todo{supp[0]};
    while (!todo.empty()) {
      const int a = todo.back();
      todo.pop_back();
      for (int b : in)
        if (rs.cartan()[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] < 0 && reached.insert(b).second)
          todo.push_back(b);
    }
    EXPECT_EQ(reached, in) << rs.format(g);
  }
}

TEST_P(EveryType, SymmetrizedCartanIsGram) {
  const RootSystem rs(GetParam());
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j)
      EXPECT_EQ(rs.cartan()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                    rs.symmetrizer()[static_cast<std::size_t>(i)],
                inner_product(rs, i, j));
}

INSTANTIATE_TEST_SUITE_P(AllTypes, EveryType, ::testing::ValuesIn(every_type()),
                         [](const auto& info) { return info.param.str(); });

class SmallType : public ::testing::TestWithParam<TypeLabel> {};

TEST_P(SmallType, Rank2SubsystemIsSpanIntersection) {
  const RootSystem rs(GetParam());
  const auto dim = static_cast<std::size_t>(rs.rank());
  for (int a = 0; a < rs.size(); ++a)
    for (int b = 0; b < rs.size(); ++b) {
      if (a == b) {
        EXPECT_THROW(rank2_subsystem(rs, a, b), std::invalid_argument);
        continue;
      }
      oracle::RationalSpan sp(dim);
      sp.add(oracle::coords(rs, a));
      sp.add(oracle::coords(rs, b));
      RootSet expect;
      for (int g = 0; g < rs.size(); ++g)
        if (sp.contains(oracle::coords(rs, g))) expect.set(g);
      const RootSet got = rank2_subsystem(rs, a, b);
      ASSERT_EQ(got, expect) << rs.format(a) << " " << rs.format(b);
      EXPECT_EQ(got, rs.pair_flat(a, b));
      // a rank-2 positive system has 2, 3, 4 or 6 roots
      const int c = got.count();
      EXPECT_TRUE(c == 2 || c == 3 || c == 4 || c == 6);
      EXPECT_EQ(rank2_lacing(rs, a, b), c == 2 ? 0 : c == 3 ? 1 : c == 4 ? 2 : 3);
    }
}

TEST_P(SmallType, AtMostOneIncomparablePairInRank2Subsystems) {
  const RootSystem rs(GetParam());
  for (int a = 0; a < rs.size(); ++a)
    for (int b = a + 1; b < rs.size(); ++b) {
      const auto els = rank2_subsystem(rs, a, b).elements();
      int incomparable = 0;
      for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = i + 1; j < els.size(); ++j) incomparable += !rs.poset().comparable(els[i], els[j]);
      EXPECT_LE(incomparable, 1);
    }
}

INSTANTIATE_TEST_SUITE_P(RankAtMost4, SmallType,
                         ::testing::Values(TypeLabel{Family::A, 2}, TypeLabel{Family::A, 3}, TypeLabel{Family::A, 4},
                                           TypeLabel{Family::B, 2}, TypeLabel{Family::B, 3}, TypeLabel{Family::B, 4},
                                           TypeLabel{Family::C, 3}, TypeLabel{Family::C, 4}, TypeLabel{Family::D, 4},
                                           TypeLabel{Family::F, 4}, TypeLabel{Family::G, 2}),
                         [](const auto& info) { return info.param.str(); });

TEST(RootSystem, A2Roots) {
  const RootSystem rs(TypeLabel::parse("A2"));
  EXPECT_EQ(names(rs, rs.all()), (std::set<std::string>{"10", "01", "11"}));
  EXPECT_EQ(inner_product(rs, idx(rs, "10"), idx(rs, "01")), -1);
  EXPECT_EQ(inner_product(rs, 0, 0), 2);
  const auto s = reflect(rs, 0, idx(rs, "01"));
  EXPECT_FALSE(s.negative);
  EXPECT_EQ(rs.format(s.index), "11");
  EXPECT_EQ(names(rs, rank2_subsystem(rs, 0, 1)), (std::set<std::string>{"10", "01", "11"}));
  std::set<std::pair<std::string, std::string>> covers;
  for (auto [lo, hi] : rs.poset().covers) covers.insert({rs.format(lo), rs.format(hi)});
  EXPECT_EQ(covers, (std::set<std::pair<std::string, std::string>>{{"10", "11"}, {"01", "11"}}));
}

TEST(RootSystem, D4PositiveRoots) {
  const RootSystem rs(TypeLabel::parse("D4"));
  const std::set<std::string> fig{"1000", "0100", "0010", "0001", "1100", "0110",
                                  "0101", "1110", "1101", "0111", "1111", "1211"};
  EXPECT_EQ(names(rs, rs.all()), fig);
  EXPECT_EQ(rs.height(rs.size() - 1), 5);
  EXPECT_EQ(rs.format(rs.size() - 1), "1211");
  int covered_1111 = 0;
  for (auto [lo, hi] : rs.poset().covers)
    if (rs.format(lo) == "1111") {
      ++covered_1111;
      EXPECT_EQ(rs.format(hi), "1211");
    }
  EXPECT_EQ(covered_1111, 1);
}

TEST(RootSystem, D4OrthogonalHeightThreeRoots) {
  // 1110 = e1 - e4 and 0111 = e2 + e4 in the model, so they are orthogonal.
  const RootSystem rs(TypeLabel::parse("D4"));
  EXPECT_EQ(inner_product(rs, idx(rs, "1110"), idx(rs, "0111")), 0);
  EXPECT_EQ(names(rs, rank2_subsystem(rs, idx(rs, "1110"), idx(rs, "0111"))),
            (std::set<std::string>{"1110", "0111"}));
}

TEST(RootSystem, F4PositiveRoots) {
  const RootSystem rs(TypeLabel::parse("F4"));
  const std::set<std::string> fig{"1000", "0100", "0010", "0001", "1100", "0110", "0011", "1110",
                                  "0210", "0111", "1210", "1111", "0211", "2210", "1211", "0221",
                                  "2211", "1221", "2221", "1321", "2321", "2421", "2431", "2432"};
  EXPECT_EQ(names(rs, rs.all()), fig);
  EXPECT_EQ(rs.format(rs.size() - 1), "2432");
  std::set<std::string> h4;
  for (int i = 0; i < rs.size(); ++i)
    if (rs.height(i) == 4) h4.insert(rs.format(i));
  EXPECT_EQ(h4, (std::set<std::string>{"1210", "1111", "0211"}));
  // the height-3 roots are each covered by two roots
  for (const char* r : {"1110", "0210", "0111"}) {
    int up = 0;
    for (auto [lo, hi] : rs.poset().covers) up += rs.format(lo) == r;
    EXPECT_EQ(up, 2) << r;
  }
  // eta1 + eta2 lies in their rank-2 subsystem
  EXPECT_TRUE(names(rs, rank2_subsystem(rs, idx(rs, "1210"), idx(rs, "1111"))).count("2321"));
}

TEST(RootSystem, F4ReflectionInShortSimpleRoot) {
  // alpha2 is short and alpha3 long, so <alpha3, alpha2 check> = -2.
  const RootSystem rs(TypeLabel::parse("F4"));
  const auto s = reflect(rs, 1, idx(rs, "0010"));
  EXPECT_FALSE(s.negative);
  EXPECT_EQ(rs.format(s.index), "0210");
  const auto m = reflect(rs, 1, 1);
  EXPECT_TRUE(m.negative);
  EXPECT_EQ(rs.format(m.index), "0100");
  // cartan()[i][j] = <alpha_j, alpha_i check>
  EXPECT_EQ(rs.cartan()[1][2], -2);
  EXPECT_EQ(rs.cartan()[2][1], -1);
}

TEST(RootSystem, G2) {
  const RootSystem rs(TypeLabel::parse("G2"));
  EXPECT_EQ(names(rs, rs.all()), (std::set<std::string>{"10", "01", "11", "21", "31", "32"}));
  EXPECT_EQ(rs.max_bond(), 3);
  EXPECT_EQ(rank2_lacing(rs, 0, 1), 3);
}

TEST(RootSystem, A1) {
  const RootSystem rs(TypeLabel::parse("A1"));
  EXPECT_EQ(rs.size(), 1);
  EXPECT_EQ(rs.format(0), "1");
}

TEST(RootSystem, Labels) {
  EXPECT_EQ(TypeLabel::parse("e7").str(), "E7");
  for (const char* bad : {"", "D2", "B1", "C1", "E5", "E9", "F3", "G3", "H3", "A0", "A9", "Dx", "A-1"})
    EXPECT_THROW(TypeLabel::parse(bad), InputError) << bad;
  EXPECT_TRUE(TypeLabel::parse("C3").admissible());
  // low-rank coincidences are admissible labels in their own right
  EXPECT_EQ(RootSystem(TypeLabel::parse("C2")).size(), 4);
  EXPECT_EQ(RootSystem(TypeLabel::parse("D3")).size(), 6);
}

TEST(RootSystem, CoordinateText) {
  const RootSystem rs(TypeLabel::parse("F4"));
  EXPECT_EQ(rs.parse_root("2432"), rs.size() - 1);
  EXPECT_EQ(rs.parse_root("2,4,3,2"), rs.size() - 1);
  for (const char* bad : {"243", "9999", "24a2", "0000"}) EXPECT_THROW((void)rs.parse_root(bad), InputError) << bad;
}

TEST(RootSystem, ChainHelpers) {
  const RootSystem rs(TypeLabel::parse("A3"));
  RootSet s;
  s.set(idx(rs, "100"));
  s.set(idx(rs, "110"));
  s.set(idx(rs, "111"));
  EXPECT_TRUE(is_chain(rs, s));
  s.set(idx(rs, "010"));
  EXPECT_FALSE(is_chain(rs, s));
  EXPECT_EQ(names(rs, minimal_elements(rs, s)), (std::set<std::string>{"100", "010"}));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "hyperramsey/error.hpp"
#include "hyperramsey/subset.hpp"
#include "support/oracles.hpp"
#include "support/subset_oracle.hpp"

using namespace hyperramsey;

using namespace subset_oracle;

TEST(Classify, Examples) {
  EXPECT_EQ(classify_partition({1, 1, 1, 1}).kind, PartitionKind::AllOnes);
  EXPECT_EQ(classify_partition({1}).kind, PartitionKind::AllOnes);
  const auto ab = classify_partition({3, 3, 2});
  EXPECT_EQ(ab.kind, PartitionKind::AlmostBalanced);
  EXPECT_EQ(ab.r0, 3u);
  EXPECT_EQ(ab.deficit_position, 2u);
  EXPECT_EQ(classify_partition({3, 2, 1}).kind, PartitionKind::Other);
  EXPECT_EQ(classify_partition({2, 2}).kind, PartitionKind::Balanced);
  EXPECT_EQ(classify_partition({2, 1}).kind, PartitionKind::AlmostBalanced);
  EXPECT_EQ(classify_partition({4}).kind, PartitionKind::Other);
}

TEST(C0, Examples) {
  EXPECT_EQ(c0({3, 1, 1}), std::make_pair(0u, 0u));
  EXPECT_EQ(c0({2, 2}), std::make_pair(0u, 1u));
  EXPECT_EQ(c0({1}), std::make_pair(0u, 0u));
  EXPECT_EQ(c0bar({3, 1, 1}, 7), 7u);
  EXPECT_EQ(c0bar({2, 2}, 7), 8u);
  EXPECT_EQ(c0bar({2, 2, 2}, 7), 10u);  // m + r = 5 odd, r = 2
}

TEST(FOfR, Values) {
  EXPECT_EQ(f_of_r(2), 1u);
  EXPECT_EQ(f_of_r(3), 3u);
  EXPECT_EQ(f_of_r(4), 4u);
  EXPECT_EQ(f_of_r(5), 5u);
  EXPECT_EQ(f_of_r(6), 4u);
  EXPECT_EQ(f_of_r(10), 4u);
  EXPECT_EQ(f_of_r(11), 5u);
  EXPECT_THROW(f_of_r(1), InvalidArgument);
}

TEST(RawColour, WorkedExamples) {
  const unsigned k = 6;
  auto c2 = [](std::span<const std::uint64_t> v) { return static_cast<Colour>(v[0] % 6); };
  const std::vector<std::uint64_t> a{2, 3, 3, 3, 15}, b{7, 7, 4}, c{3, 9};
  EXPECT_EQ(raw_subset_colour(a, k, c2), k);
  EXPECT_EQ(raw_subset_colour(b, k, c2), k + 4);
  EXPECT_EQ(raw_subset_colour(c, k, c2), 3u);
}

TEST(RawColour, MatchesLiteralDefinitionOnAllMultisets) {
  for (unsigned r = 2; r <= 7; ++r) {
    for (const auto& p : partitions_of(r)) {
      for (const auto& v : realisations(std::vector<unsigned>(p.parts().begin(), p.parts().end()))) {
        auto c2 = [](std::span<const std::uint64_t> s) { return static_cast<Colour>(s.size() % 3); };
        ASSERT_EQ(raw_subset_colour(v, 3, c2),
                  literal_colour(v, 3, [](const std::vector<std::uint64_t>& s) {
                    return static_cast<Colour>(s.size() % 3);
                  }));
      }
    }
  }
}

TEST(BalancedMultisets, NoMultisetIsMonochromaticInKPlus4) {
  for (unsigned r = 2; r <= 8; ++r) {
    for (const auto& p : partitions_of(r + 1)) {
      for (const auto& v : realisations(std::vector<unsigned>(p.parts().begin(), p.parts().end()))) {
        bool escapes = false;
        for (const auto& w : drop_one(v))
          escapes = escapes || literal_colour(w, 0, [](const auto&) { return 0u; }) != 4;
        ASSERT_TRUE(escapes) << "r=" << r << " histogram " << p.to_string();
      }
    }
  }
}

TEST(Cases, EveryNonConstantMultisetSeesTwoColours) {
  for (unsigned r = 2; r <= 8; ++r) {
    for (const auto& p : partitions_of(r + 1)) {
      if (p.size() < 2 || p[0] == 1) continue;
      for (const auto& v : realisations(std::vector<unsigned>(p.parts().begin(), p.parts().end()))) {
        for (Colour fixed : {0u, 4u}) {
          std::set<Colour> seen;
          for (const auto& w : drop_one(v))
            seen.insert(raw_subset_colour(w, 5, [&](std::span<const std::uint64_t>) { return fixed; }));
          ASSERT_GE(seen.size(), 2u) << "r=" << r << " histogram " << p.to_string();
        }
      }
    }
  }
}

TEST(Extras, CountsMatchF) {
  EXPECT_EQ(reachable_extras(2, 4).size(), 1u);
  EXPECT_EQ(reachable_extras(3, 4).size(), 3u);
  for (unsigned r = 2; r <= 16; ++r) {
    const auto ex = reachable_extras(r, 4);
    // f(r) is a count the statement allows; the image can be smaller.
    EXPECT_LE(ex.size(), f_of_r(r)) << r;
    if (r <= 4) EXPECT_EQ(ex.size(), f_of_r(r)) << r;
    if (r >= 4 && f_of_r(r) == 4) EXPECT_EQ(std::count(ex.begin(), ex.end(), 8u), 0) << r;
    // k+4 appears iff some almost balanced partition of r exists.
    bool almost = false;
    for (const auto& p : partitions_of(r)) almost = almost || classify_partition(p).kind == PartitionKind::AlmostBalanced;
    EXPECT_EQ(std::count(ex.begin(), ex.end(), 8u) == 1, almost) << r;
  }
}

TEST(Extras, AgreeWithEnumeratedImage) {
  for (unsigned r = 2; r <= 8; ++r) {
    std::set<Colour> image;
    for (const auto& p : partitions_of(r))
      for (const auto& v : realisations(std::vector<unsigned>(p.parts().begin(), p.parts().end())))
        image.insert(literal_colour(v, 4, [](const auto&) { return 0u; }));
    image.erase(0);
    EXPECT_EQ(std::vector<Colour>(image.begin(), image.end()), reachable_extras(r, 4)) << r;
  }
}

TEST(CertifiedC2, SmallCases) {
  SubsetBuildOptions o;
  VerificationReport rep;
  for (unsigned r = 2; r <= 4; ++r) {
    for (std::uint32_t n : {1u, 3u, 5u, 9u, 14u}) {
      const auto [table, source] = certified_c2(n, r, o, &rep);
      EXPECT_FALSE(source.empty());
      if (n > r) EXPECT_TRUE(rep.passed()) << rep.to_text();
      EXPECT_GE(table->n(), std::max<std::uint32_t>(n, 1));
    }
  }
}

TEST(Build, SingleEdgeOfSizeFour) {
  Hypergraph h{4, {{0, 1, 2, 3}}};
  const auto res = build_subset_colouring(h, 3, std::vector<std::uint32_t>{0, 0, 1, 1});
  EXPECT_EQ(res.colouring->total_colours(), res.colouring->k() + 3);
  const auto& c = *res.colouring;
  const auto rep = verify_hypergraph_colouring(h, 3, [&](std::span<const std::uint32_t> s) { return c.colour(s); });
  EXPECT_TRUE(rep.passed());
}

TEST(Build, NoLargeEdgesIsVacuous) {
  Hypergraph h{5, {{0, 1}, {2, 3}}};
  const auto res = build_subset_colouring(h, 3, std::nullopt);
  const auto& c = *res.colouring;
  EXPECT_TRUE(verify_hypergraph_colouring(h, 3, [&](std::span<const std::uint32_t> s) { return c.colour(s); }).passed());
}

TEST(Build, RejectsImproperVertexColouring) {
  Hypergraph h{4, {{0, 1, 2, 3}}};
  EXPECT_THROW(build_subset_colouring(h, 3, std::vector<std::uint32_t>{0, 0, 0, 0}), InvalidData);
  EXPECT_THROW(build_subset_colouring(h, 3, std::vector<std::uint32_t>{0, 1}), InvalidData);
}

TEST(Build, RandomHypergraphsAreNeverMonochromatic) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 150; ++i) {
    const unsigned r = 2 + i % 3;
    const Hypergraph h = random_hypergraph(rng, r);
    const auto res = build_subset_colouring(h, r, std::nullopt);
    const auto& c = *res.colouring;
    EXPECT_LE(c.total_colours(), c.k() + f_of_r(r));
    std::vector<Colour> used;
    const auto rep = verify_hypergraph_colouring(h, r, [&](std::span<const std::uint32_t> s) {
      const Colour col = c.colour(s);
      EXPECT_LT(col, c.total_colours());
      return col;
    });
    ASSERT_TRUE(rep.passed()) << rep.to_text();
  }
}

TEST(Greedy, ProducesProperColourings) {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 200; ++i) {
    const unsigned r = 2 + i % 3;
    const Hypergraph h = random_hypergraph(rng, r);
    EXPECT_NO_THROW(check_vertex_colouring(h, r, greedy_vertex_colouring(h, r)));
  }
}

TEST(KComplete, TinyValues) {
  const auto a = k_complete_lower(1, 2);
  EXPECT_EQ(a.k, 1u);
  EXPECT_TRUE(a.exact);
  const auto b = k_complete_lower(2, 2);
  EXPECT_EQ(b.k, 2u);
  EXPECT_TRUE(b.exact);
  const auto c = k_complete_lower(3, 2);
  EXPECT_EQ(c.k, 3u);
  EXPECT_TRUE(c.exact);
  ASSERT_TRUE(c.witness);
  ArrowClaim claim{Ground{6, 0}, 2, {3, 3, 3}, true};
  EXPECT_TRUE(verify_exhaustive(*c.witness, claim).passed());
}

TEST(KComplete, TwoColouringsOfK6AlwaysHaveATriangle) {
  // Independent check: all 2^15 colourings of the edges of K6.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) edges.emplace_back(i, j);
  auto idx = [&](int i, int j) {
    return static_cast<int>(std::find(edges.begin(), edges.end(), std::make_pair(i, j)) - edges.begin());
  };
  for (int mask = 0; mask < (1 << 15); ++mask) {
    bool tri = false;
    for (int a = 0; a < 6 && !tri; ++a)
      for (int b = a + 1; b < 6 && !tri; ++b)
        for (int c = b + 1; c < 6 && !tri; ++c) {
          const int x = (mask >> idx(a, b)) & 1, y = (mask >> idx(a, c)) & 1, z = (mask >> idx(b, c)) & 1;
          tri = x == y && y == z;
        }
    ASSERT_TRUE(tri) << mask;
  }
}

TEST(Sandwich, TinyScale) {
  for (unsigned n : {2u, 3u}) {
    const unsigned lower = k_complete_lower(n, 2).k;
    const unsigned small = least_colours_without_mono(n, 2).k;
    const unsigned upper = small + f_of_r(2);
    EXPECT_LE(lower, upper) << n;
    EXPECT_LE(upper, lower + 5) << n;
  }
}

TEST(Parsers, HypergraphAndColouring) {
  std::istringstream h("hypergraph 5\n0 1 2\n# comment\n\n4 3\n");
  const Hypergraph g = parse_hypergraph(h);
  EXPECT_EQ(g.vertex_count, 5u);
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[1], (std::vector<std::uint32_t>{3, 4}));
  std::istringstream bad1("graph 5\n");
  EXPECT_THROW(parse_hypergraph(bad1), ParseError);
  std::istringstream bad2("hypergraph 3\n0 5\n");
  EXPECT_THROW(parse_hypergraph(bad2), InvalidData);
  std::istringstream bad3("hypergraph 3\n0 0\n");
  EXPECT_THROW(parse_hypergraph(bad3), InvalidData);

  std::istringstream c("colours 2\n0 1\n1 0\n2 1\n");
  std::uint32_t count = 0;
  EXPECT_EQ(parse_vertex_colouring(c, 3, &count), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(count, 2u);
  std::istringstream missing("colours 2\n0 1\n");
  EXPECT_THROW(parse_vertex_colouring(missing, 2), InvalidData);
  std::istringstream range("colours 2\n0 2\n1 0\n");
  EXPECT_THROW(parse_vertex_colouring(range, 2), InvalidData);
}

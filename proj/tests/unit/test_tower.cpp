#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hyperramsey/error.hpp"
#include "hyperramsey/tower.hpp"
#include "hyperramsey/verify.hpp"
#include "support/oracles.hpp"

using namespace hyperramsey;

namespace {

const std::string kData = HR_DATA_DIR;

ColouringHandle load(const std::string& name, TowerOptions options = {}) {
  return build_tower(load_tower_spec(kData + "/" + name), options);
}

SchurPartition span4() { return SchurPartition{4, {{1, 4}, {2, 3}}}; }

ColouringTowerSpec spec_of(std::vector<StepRule> steps) { return ColouringTowerSpec{span4(), std::move(steps)}; }

// The five-case table, written out independently.
Colour table_colour(unsigned r, unsigned k, unsigned p, unsigned q) {
  const unsigned s = p + q;
  if (s == r + 1) {
    if (p % 2 == 0) return k;
    return r % 2 == 1 ? 0 : k + 2;
  }
  return s % 2 == 0 ? k + 1 : 1;
}

std::vector<Vertex> labels(const oracle::Values& v, std::uint64_t width) {
  std::vector<Vertex> out;
  for (auto x : v) out.push_back(make_vertex(x, width));
  return out;
}

}  // namespace

TEST(Eta, PrintedAndEffective) {
  EXPECT_EQ(eta(3), 1u);
  EXPECT_EQ(eta(4), 2u);
  EXPECT_EQ(eta(5), 3u);
  EXPECT_EQ(eta(6), 2u);
  EXPECT_EQ(eta(7), 3u);
  EXPECT_THROW(eta(2), InvalidArgument);
  const unsigned expected[] = {1, 3, 2, 3, 2};
  for (unsigned r = 3; r <= 7; ++r) EXPECT_EQ(eta_effective(r), expected[r - 3]) << r;
}

TEST(Eta, EffectiveMatchesIndependentEnumeration) {
  for (unsigned r = 3; r <= 16; ++r) {
    std::set<Colour> extras;
    for (unsigned p = 2; p <= r; ++p)
      for (unsigned q = 2; p + q <= r + 1; ++q) {
        const Colour c = table_colour(r, 7, p, q);
        if (c >= 7) extras.insert(c);
      }
    EXPECT_EQ(eta_effective(r), extras.size()) << r;
    const auto lib = main_step_extra_colours(r, 7);
    EXPECT_EQ(std::vector<Colour>(extras.begin(), extras.end()), lib) << r;
    // The extras are k, k+1, ... so no compaction is needed.
    for (std::size_t i = 0; i < lib.size(); ++i) EXPECT_EQ(lib[i], 7 + i);
  }
}

TEST(Eta, OddUniformityNeverUsesKPlus2) {
  for (unsigned r = 3; r <= 15; r += 2) {
    const auto lib = main_step_extra_colours(r, 4);
    EXPECT_EQ(std::count(lib.begin(), lib.end(), 6u), 0) << r;
  }
  EXPECT_EQ(main_step_extra_colours(3, 4), (std::vector<Colour>{4}));
}

TEST(MainStepTable, MatchesIndependentTable) {
  for (unsigned r = 3; r <= 10; ++r)
    for (unsigned k = 2; k <= 6; ++k)
      for (unsigned p = 2; p <= r; ++p)
        for (unsigned q = 2; p + q <= r + 1; ++q)
          EXPECT_EQ(main_step_raw_colour(r, k, SplitType{p, q}), table_colour(r, k, p, q));
}

TEST(Build, ClaimsOfTheFixtures) {
  EXPECT_EQ(load("base_only.tower").claim().to_string(), "5 -/-> (3,3)^2");
  EXPECT_EQ(load("cat23.tower").claim().to_string(), "32 -/-> (5,5)^3");
  EXPECT_EQ(load("dbl23.tower").claim().to_string(), "32 -/-> (4,4,4,4)^3");
  const auto m = load("dbl23_main.tower");
  EXPECT_EQ(m.claim().to_string(), "4294967296 -/-> (5,5,5,5,5)^4");
  EXPECT_EQ(m.vertex_width(), 32u);
  const auto mm = load("dbl23_main_main.tower");
  EXPECT_EQ(mm.claim().to_string(), "2^4294967296 -/-> (6,6,6,6,6,6,6,6)^5");
  EXPECT_EQ(mm.info().claim_printed_eta.to_string(), "2^4294967296 -/-> (6,6,6,6,6,6,6)^5");
  EXPECT_EQ(mm.info().eta_printed, 2u);
  EXPECT_EQ(mm.info().eta_effective, 3u);
  EXPECT_NE(mm.describe().find("eta_discrepancy"), std::string::npos);
  EXPECT_EQ(load("cat23_main.tower").claim().to_string(), "4294967296 -/-> (6,6,5)^4");
}

TEST(Build, RuleErrors) {
  try {
    load("main_on_base.tower");
    FAIL();
  } catch (const InvalidData& e) {
    EXPECT_NE(std::string(e.what()).find("uniformity"), std::string::npos);
  }
  EXPECT_THROW(build_tower(spec_of({StepRule::Caterpillar23, StepRule::Caterpillar23})), InvalidData);
  EXPECT_THROW(build_tower(spec_of({StepRule::Caterpillar23, StepRule::Doubling23})), InvalidData);
  EXPECT_THROW(build_tower(ColouringTowerSpec{SchurPartition{2, {{1, 2}}}, {}}), InvalidData);
}

TEST(Build, EachMainStepUsesEffectiveEta) {
  auto h = build_tower(spec_of({StepRule::Doubling23, StepRule::Main, StepRule::Main, StepRule::Main,
                                StepRule::Main}));
  unsigned colours = 4;
  for (std::size_t level = 2; level < h.depth(); ++level) {
    const auto& info = h.at_level(level).info();
    const unsigned r = info.uniformity - 1;
    colours += eta_effective(r);
    EXPECT_EQ(info.colour_count, colours);
    EXPECT_EQ(info.claim.colour_count(), colours);
    const auto& t = info.claim.targets;
    for (std::size_t c = 0; c < t.size(); ++c) EXPECT_GE(t[c], info.uniformity + 1);
    EXPECT_EQ(t.back(), r + 2);
  }
}

TEST(Colour, Cat23AgreesWithDeltaOracle) {
  const auto h = load("cat23.tower");
  const auto& base = h.base();
  oracle::Values ground(32);
  for (std::uint64_t i = 0; i < 32; ++i) ground[i] = i;
  for (const auto& t : oracle::subsets(ground, 3)) {
    const auto d = oracle::delta(t);
    ASSERT_EQ(d.size(), 2u);
    const Colour expect = base.colour_of_pair(*d.begin(), *d.rbegin());
    ASSERT_EQ(h.colour(labels(t, 5)), expect);
  }
}

TEST(Colour, Dbl23AgreesWithFormula) {
  const auto h = load("dbl23.tower");
  const auto& base = h.base();
  oracle::Values ground(32);
  for (std::uint64_t i = 0; i < 32; ++i) ground[i] = i;
  for (const auto& t : oracle::subsets(ground, 3)) {
    const auto d1 = static_cast<std::uint64_t>(oracle::top_diff(t[0], t[1]));
    const auto d2 = static_cast<std::uint64_t>(oracle::top_diff(t[1], t[2]));
    const Colour expect = 2 * base.colour_of_pair(std::min(d1, d2), std::max(d1, d2)) + (d1 < d2 ? 1 : 0);
    ASSERT_EQ(h.colour(labels(t, 5)), expect);
  }
}

TEST(Colour, MainStepAgreesWithDefinition) {
  const auto h = load("dbl23_main.tower");
  const auto prev = h.previous();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    const auto x = i % 2 ? random_caterpillar(4, 32, 32, rng).values() : oracle::random_set(rng, 4, 32);
    const auto t = oracle::type(x);
    Colour expect;
    if (!t) {
      const auto d = oracle::delta(x);
      expect = prev.colour(labels(oracle::Values(d.begin(), d.end()), 5));
    } else {
      expect = table_colour(3, prev.colour_count(), t->first, t->second);
    }
    ASSERT_EQ(h.colour(labels(x, 32)), expect);
  }
}

TEST(Colour, InputChecks) {
  const auto h = load("dbl23_main_main.tower");
  EXPECT_EQ(h.evaluable_bits(), std::uint64_t{1} << 20);
  EXPECT_EQ(h.vertex_width(), std::uint64_t{1} << 32);
  const auto above = build_tower(spec_of({StepRule::Doubling23, StepRule::Main, StepRule::Main, StepRule::Main}));
  EXPECT_FALSE(above.evaluable());
  EXPECT_THROW(above.vertex_width(), WidthCapExceeded);
  const std::uint64_t w = std::uint64_t{1} << 32;
  std::vector<Vertex> ok;
  for (std::uint64_t v : {1, 2, 3, 4, 8}) ok.push_back(make_vertex(v, w));
  EXPECT_LT(h.colour(ok), h.colour_count());
  std::vector<Vertex> far = ok;
  const std::vector<std::uint64_t> pos{(std::uint64_t{1} << 20) + 5};
  far.back() = Vertex::from_positions(pos, w);
  EXPECT_THROW(h.colour(far), WidthCapExceeded);
  std::vector<Vertex> unsorted{ok[1], ok[0], ok[2], ok[3], ok[4]};
  EXPECT_THROW(h.colour(unsorted), InvalidArgument);
  EXPECT_THROW(h.colour(std::span<const Vertex>(ok).first(4)), InvalidArgument);
  const auto cat = load("cat23.tower");
  EXPECT_THROW(cat.colour(labels({1, 2, 3}, 6)), InvalidArgument);
}

TEST(Colour, MemoDoesNotChangeResults) {
  TowerOptions memo;
  memo.memo_capacity = 64;
  const auto a = load("dbl23_main_main.tower");
  const auto b = load("dbl23_main_main.tower", memo);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 3000; ++i) {
    const auto s = random_caterpillar(5, 64, std::uint64_t{1} << 32, rng);
    ASSERT_EQ(a.colour(s), b.colour(s));
  }
}

TEST(Verify, SmallTowersExhaustively) {
  EXPECT_TRUE(verify_exhaustive(load("cat23.tower"), load("cat23.tower").claim()).passed());
  EXPECT_TRUE(verify_exhaustive(load("dbl23.tower"), load("dbl23.tower").claim()).passed());
}

TEST(Verify, MainStepOnAnInitialSegment) {
  const auto h = load("dbl23_main.tower");
  ArrowClaim restricted = h.claim();
  restricted.ground = Ground{64, 0};
  const auto rep = verify_exhaustive(h, restricted);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
}

TEST(Spec, ParseAndErrors) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_tower_spec(in, kData);
  };
  const auto s = parse("# comment\n\nbase schur schur_span4.cert\nstep dbl23\nstep main\n");
  EXPECT_EQ(s.base, span4());
  EXPECT_EQ(s.steps, (std::vector<StepRule>{StepRule::Doubling23, StepRule::Main}));
  EXPECT_TRUE(parse("base schur schur_span4.cert\n").steps.empty());
  EXPECT_THROW(parse("step main\n"), ParseError);
  EXPECT_THROW(parse("base schur schur_span4.cert\nstep up\n"), ParseError);
  EXPECT_THROW(parse("base schur schur_span4.cert\nbase schur schur_span4.cert\n"), ParseError);
  EXPECT_THROW(parse("base schur missing.cert\n"), ParseError);
  EXPECT_THROW(parse("base foo x\n"), ParseError);
}

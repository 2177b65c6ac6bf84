#include <gtest/gtest.h>

#include <random>

#include "hyperramsey/error.hpp"
#include "hyperramsey/tower.hpp"
#include "hyperramsey/verify.hpp"
#include "support/oracles.hpp"
#include "support/verifier_agreement.hpp"

using namespace hyperramsey;

namespace {

const std::string kData = HR_DATA_DIR;

ColouringHandle load(const std::string& name) { return build_tower(load_tower_spec(kData + "/" + name)); }

std::vector<Vertex> labels(std::initializer_list<std::uint64_t> v, std::uint64_t width) {
  std::vector<Vertex> out;
  for (auto x : v) out.push_back(make_vertex(x, width));
  return out;
}

}  // namespace

TEST(Exhaustive, AgreesWithNaiveEnumerator) {
  const auto r = agreement::run(300, 99);
  EXPECT_EQ(r.disagreements, 0u) << r.first;
  EXPECT_EQ(r.bad_witnesses, 0u);
  EXPECT_GT(r.passes, 20u);
  EXPECT_LT(r.passes, 280u);
}

TEST(Exhaustive, ReportsAreThreadCountIndependent) {
  const auto h = load("cat23.tower");
  ArrowClaim tight = h.claim();
  tight.targets = {4, 4};
  SearchBudget one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = verify_exhaustive(h, tight, one), b = verify_exhaustive(h, tight, many);
  EXPECT_EQ(a.verdict, Verdict::Fail);
  EXPECT_EQ(a.to_text(), b.to_text());
}

TEST(Exhaustive, RefusalsAreUnknown) {
  const auto top = load("dbl23_main_main.tower");
  const auto a = verify_exhaustive(top, top.claim());
  EXPECT_EQ(a.verdict, Verdict::Unknown);
  ASSERT_FALSE(a.notes.empty());
  EXPECT_NE(a.notes[0].find("width cap"), std::string::npos) << a.notes[0];
  const auto main = load("dbl23_main.tower");
  const auto b = verify_exhaustive(main, main.claim());
  EXPECT_EQ(b.verdict, Verdict::Unknown);
  SearchBudget tiny;
  tiny.max_subsets = 10;
  const auto cat = load("cat23.tower");
  EXPECT_EQ(verify_exhaustive(cat, cat.claim(), tiny).verdict, Verdict::Unknown);
}

TEST(Exhaustive, ClaimShapeChecked) {
  const auto cat = load("cat23.tower");
  ArrowClaim wrong = cat.claim();
  wrong.uniformity = 4;
  EXPECT_THROW(verify_exhaustive(cat, wrong), Error);
}

TEST(Witness, RecheckCatchesBadWitnesses) {
  const auto cat = load("cat23.tower");
  const auto claim = cat.claim();
  EXPECT_TRUE(recheck_witness(cat, claim, Witness{labels({0, 1, 2, 4, 8}, 5), 0, ""}).has_value());
  EXPECT_TRUE(recheck_witness(cat, claim, Witness{labels({0, 1, 2}, 5), 0, ""}).has_value());
  const PlantedColouring bad(cat, labels({0, 1, 2, 4, 8}, 5), 1);
  EXPECT_FALSE(recheck_witness(bad, claim, Witness{labels({0, 1, 2, 4, 8}, 5), 1, ""}).has_value());
}

TEST(Planted, ExhaustiveVerdictFlips) {
  const auto cat = load("cat23.tower");
  EXPECT_EQ(agreement::planted_flip(cat, cat.claim(), labels({3, 7, 9, 20, 30}, 5), 0, false), "");
  const auto dbl = load("dbl23.tower");
  EXPECT_EQ(agreement::planted_flip(dbl, dbl.claim(), labels({1, 5, 17, 31}, 5), 3, false), "");
}

TEST(Planted, SampledVerdictFlipsWithCoveringBudget) {
  const auto cat = load("cat23.tower");
  SearchBudget b;
  b.max_subsets = 2'000'000;
  EXPECT_EQ(agreement::planted_flip(cat, cat.claim(), labels({3, 7, 9, 20, 30}, 5), 0, true, b), "");
}

TEST(Planted, ParsePlant) {
  const auto [set, colour] = parse_plant("3,7,9,14,1e@1", 5);
  EXPECT_EQ(colour, 1u);
  ASSERT_EQ(set.size(), 5u);
  EXPECT_EQ(set[4], make_vertex(30, 5));
  EXPECT_THROW(parse_plant("3,7@", 5), Error);
  EXPECT_THROW(parse_plant("3,7,zz@1", 5), Error);
}

TEST(Sampled, DeterministicAcrossThreadCounts) {
  const auto h = load("dbl23_main.tower");
  SearchBudget a, b;
  a.max_subsets = b.max_subsets = 20000;
  a.structured_samples = b.structured_samples = 2000;
  a.threads = 1;
  b.threads = 3;
  const auto ra = verify_sampled(h, h.claim(), a), rb = verify_sampled(h, h.claim(), b);
  EXPECT_TRUE(ra.passed());
  EXPECT_EQ(ra.to_text(), rb.to_text());
  SearchBudget c = a;
  c.seed = 7;
  EXPECT_NE(verify_sampled(h, h.claim(), c).to_text(), ra.to_text());
}

TEST(Sampled, FindsAPlantedSetInASmallWindow) {
  const auto h = load("dbl23_main.tower");
  const PlantedColouring bad(h, labels({1, 2, 4, 8, 16}, 32), 2);
  SearchBudget b;
  b.window_bits = 5;
  b.max_subsets = 1'000'000;
  const auto rep = verify_sampled(bad, h.claim(), b);
  EXPECT_EQ(rep.verdict, Verdict::Fail) << rep.to_text();
}

TEST(Local, MainStepLevelHasNoViolations) {
  const auto h = load("dbl23_main.tower");
  LocalOptions o;
  o.trials = 20000;
  const auto rep = verify_local_properties(h, o);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  EXPECT_EQ(rep.counters.at("validity_violations"), 0u);
  EXPECT_EQ(rep.counters.at("caterpillar_mismatches"), 0u);
  EXPECT_EQ(rep.counters.at("shape_patterns_missing"), 0u);
}

TEST(Local, CaterpillarReductionIsExercised) {
  const auto h = load("cat23_main.tower");
  LocalOptions o;
  o.trials = 5000;
  const auto rep = verify_local_properties(h, o);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  EXPECT_GT(rep.counters.at("caterpillar_mono_found"), 0u);
}

TEST(Local, DetectsACorruptedLevel) {
  const auto h = load("dbl23_main.tower");
  // Recolour one type-(2,2) 4-set's neighbourhood: all 4-subsets of a 5-set
  // of type (2,3) share one colour, which violates the two-colour property.
  const PlantedColouring bad(h, labels({0, 1, 4, 5, 6}, 32), 0);
  LocalOptions o;
  o.trials = 1000;
  o.window_bits = 3;
  const auto rep = verify_local_properties(bad, h.previous(), o);
  EXPECT_EQ(rep.verdict, Verdict::Fail) << rep.to_text();
  ASSERT_TRUE(rep.witness);
}

TEST(Local, RejectsNonMainLevels) {
  EXPECT_THROW(verify_local_properties(load("cat23.tower")), Error);
}

TEST(ValidityCase, Labels) {
  EXPECT_EQ(validity_case(4, 3, 3), "P+Q=r+2,P,Q>=3");
  EXPECT_EQ(validity_case(4, 2, 4), "(P,Q)=(2,r)");
  EXPECT_EQ(validity_case(4, 4, 2), "(P,Q)=(r,2)");
  EXPECT_EQ(validity_case(5, 3, 2), "P+Q<=r+1,P>=3");
  EXPECT_EQ(validity_case(5, 2, 3), "P+Q<=r+1,Q>=3");
  EXPECT_EQ(validity_case(5, 2, 2), "(P,Q)=(2,2)");
}

TEST(MaxMono, AgreesWithNaiveSearch) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    const auto in = agreement::random_instance(rng);
    const auto& t = in.colouring;
    const auto res = max_mono_search(t, 0);
    ASSERT_TRUE(res.complete);
    std::size_t best = t.uniformity() - 1;
    for (std::size_t s = t.uniformity(); s <= t.n(); ++s) {
      std::vector<std::uint64_t> targets(t.colour_count(), t.n() + 1);
      targets[0] = s;
      const bool found = oracle::naive_mono(t.n(), t.uniformity(), targets, [&](const oracle::Values& e) {
                           std::vector<std::uint32_t> idx(e.begin(), e.end());
                           return t.at_rank(colex_rank(idx));
                         }).has_value();
      if (!found) break;
      best = s;
    }
    ASSERT_EQ(std::max<std::size_t>(res.best.size(), t.uniformity() - 1), best) << in.claim.to_string();
  }
}

TEST(Hypergraph, DetectsMonochromaticEdges) {
  Hypergraph h{5, {{0, 1, 2}, {2, 3, 4}, {0, 4}}};
  h.normalise();
  const auto ok = verify_hypergraph_colouring(h, 2, [](std::span<const std::uint32_t> e) { return (e[0] + e[1]) % 2; });
  EXPECT_EQ(ok.verdict, Verdict::Pass) << ok.to_text();
  const auto bad = verify_hypergraph_colouring(h, 2, [](std::span<const std::uint32_t>) { return 0u; });
  EXPECT_EQ(bad.verdict, Verdict::Fail);
  ASSERT_TRUE(bad.witness);
}

TEST(Report, TextFormatIsStable) {
  const auto cat = load("cat23.tower");
  const PlantedColouring bad(cat, labels({3, 7, 9, 20, 30}, 5), 0);
  SearchBudget b;
  b.threads = 1;
  const auto rep = verify_exhaustive(bad, cat.claim(), b);
  const std::string text = rep.to_text();
  EXPECT_EQ(text.rfind("claim: 32 -/-> (5,5)^3\nmode: exhaustive\nverdict: fail\nwitness: colour 0 size 5 {", 0), 0u)
      << text;
  EXPECT_NE(text.find("seed: 1592598564"), std::string::npos);
  EXPECT_EQ(rep.to_text(), verify_exhaustive(bad, cat.claim(), b).to_text());
}

TEST(Budget, ValidateRejectsNonsense) {
  SearchBudget b;
  b.max_seconds = 0;
  EXPECT_THROW(b.validate(), InvalidArgument);
}

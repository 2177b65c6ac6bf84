// Random small colourings checked by both the naive enumerator and the pruned
// verifier, plus the planted-corruption mutation check.
#pragma once

#include <random>
#include <string>

#include "hyperramsey/verify.hpp"
#include "support/oracles.hpp"

namespace agreement {

using namespace hyperramsey;

struct Instance {
  TableColouring colouring;
  ArrowClaim claim;
};

inline Instance random_instance(std::mt19937_64& rng) {
  const unsigned r = 2 + static_cast<unsigned>(rng() % 2);
  const auto n = static_cast<std::uint32_t>(r + 2 + rng() % (17 - r - 2));
  const unsigned k = 1 + static_cast<unsigned>(rng() % 3);
  std::vector<Colour> table(binomial(n, r));
  // Skewed colour weights so both verdicts occur.
  for (auto& c : table) c = static_cast<Colour>(rng() % (k + 1)) % k;
  ArrowClaim claim{Ground{n, 0}, r, {}, true};
  for (unsigned c = 0; c < k; ++c) claim.targets.push_back(r + 1 + rng() % 3);
  return Instance{TableColouring(n, r, k, std::move(table)), std::move(claim)};
}

inline bool naive_pass(const Instance& in) {
  const auto& t = in.colouring;
  return !oracle::naive_mono(t.n(), t.uniformity(), in.claim.targets, [&](const oracle::Values& e) {
            std::vector<std::uint32_t> idx(e.begin(), e.end());
            return t.at_rank(colex_rank(idx));
          }).has_value();
}

struct Result {
  unsigned instances = 0;
  unsigned disagreements = 0;
  unsigned passes = 0;
  unsigned bad_witnesses = 0;
  std::string first;
};

inline Result run(unsigned count, std::uint64_t seed, unsigned threads = 0) {
  std::mt19937_64 rng(seed);
  Result out;
  SearchBudget budget;
  budget.threads = threads;
  for (unsigned i = 0; i < count; ++i) {
    const Instance in = random_instance(rng);
    const bool naive = naive_pass(in);
    const auto rep = verify_exhaustive(in.colouring, in.claim, budget);
    ++out.instances;
    out.passes += naive;
    if (rep.verdict == Verdict::Unknown || rep.passed() != naive) {
      ++out.disagreements;
      if (out.first.empty()) out.first = in.claim.to_string() + " naive=" + (naive ? "pass" : "fail") + " verifier=" + std::string(to_string(rep.verdict));
    }
    if (rep.verdict == Verdict::Fail && (!rep.witness || recheck_witness(in.colouring, in.claim, *rep.witness)))
      ++out.bad_witnesses;
  }
  return out;
}

// Passing colouring, corrupted by recolouring every r-subset of a target-size
// set: the verdict must flip and the witness must recheck.
inline std::string planted_flip(const Colouring& colouring, const ArrowClaim& claim, std::vector<Vertex> plant,
                                Colour colour, bool sampled, const SearchBudget& budget = {}) {
  const auto before = sampled ? verify_sampled(colouring, claim, budget) : verify_exhaustive(colouring, claim, budget);
  if (!before.passed()) return "clean colouring did not pass";
  const PlantedColouring bad(colouring, std::move(plant), colour);
  const auto after = sampled ? verify_sampled(bad, claim, budget) : verify_exhaustive(bad, claim, budget);
  if (after.verdict != Verdict::Fail) return "verdict did not flip: " + std::string(to_string(after.verdict));
  if (!after.witness) return "failure without witness";
  if (auto why = recheck_witness(bad, claim, *after.witness)) return "witness does not recheck: " + *why;
  return "";
}

}  // namespace agreement

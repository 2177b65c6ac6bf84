#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperramsey/tower.hpp"
#include "hyperramsey/types.hpp"

namespace hyperramsey {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct SearchBudget {
  /// Exhaustive: cap on colour evaluations. Sampled: uniform samples per colour.
  std::uint64_t max_subsets = 2'000'000'000;
  double max_seconds = 3600;
  std::uint64_t seed = kDefaultSeed;
  /// 0 means every core. Results never depend on it.
  unsigned threads = 0;
  /// Exhaustive search refuses larger ground sets.
  std::uint64_t max_ground = std::uint64_t{1} << 22;
  /// Sampled labels use only their low window_bits positions; 0 means the
  /// evaluable width of the colouring.
  std::uint64_t window_bits = 0;
  /// Sampled: extra random caterpillars and random typed sets per colour and
  /// per type.
  std::uint64_t structured_samples = 0;

  /// Throws InvalidArgument for non-positive limits.
  void validate() const;
};

enum class VerifyMode { Exhaustive, Sampled, LocalProperty, Hypergraph };
enum class Verdict { Pass, Fail, Unknown };

std::string_view to_string(VerifyMode mode);
std::string_view to_string(Verdict verdict);

struct Witness {
  std::vector<Vertex> set;
  Colour colour = 0;
  /// What the set violates.
  std::string reason;
};

struct VerificationReport {
  std::string statement;
  VerifyMode mode = VerifyMode::Exhaustive;
  Verdict verdict = Verdict::Unknown;
  std::optional<Witness> witness;
  std::uint64_t subsets_examined = 0;
  std::uint64_t samples_drawn = 0;
  std::uint64_t seed = 0;
  /// Mode-specific counters, printed in key order.
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::string> notes;

  bool passed() const noexcept { return verdict == Verdict::Pass; }
  /// Stable text form: statement, mode, verdict, witness, counters, seed, notes.
  std::string to_text() const;
};

/// nullopt when `w` really is monochromatic in its colour with at least the
/// claimed target size; otherwise what is wrong with it.
std::optional<std::string> recheck_witness(const Colouring& colouring, const ArrowClaim& claim,
                                           const Witness& w);

/// Monochromatic clique extension over the labels [N] of the claim's ground
/// set, parallel over (colour, smallest label). Unknown when the ground set,
/// the width cap, or the budget rules out a complete search.
VerificationReport verify_exhaustive(const Colouring& colouring, const ArrowClaim& claim,
                                     const SearchBudget& budget = {});

/// Random subsets per colour drawn in fixed-size blocks with per-block seeds,
/// so the report is identical for every thread count. Pass means no
/// counterexample was found.
VerificationReport verify_sampled(const Colouring& colouring, const ArrowClaim& claim,
                                  const SearchBudget& budget = {});

struct LocalOptions {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  /// Low bits used by random trial sets; 0 means the evaluable width.
  std::uint64_t window_bits = 0;
  /// Every (r+2)-subset of [2^shape_bits] is checked, covering each type
  /// shape and spine pattern. 0 skips the scan.
  unsigned shape_bits = 5;
  /// Random (r+1)-sets tried at the previous level to find monochromatic ones
  /// for the caterpillar reduction.
  std::uint64_t mono_search_attempts = 20'000;
};

/// The six validity cases for a non-caterpillar (r+2)-set of type (P, Q)
/// stepped up from uniformity r.
std::string validity_case(unsigned r, unsigned p, unsigned q);

/// Local checks at a main-step level: non-caterpillar (r+2)-sets see at least
/// two colours; caterpillar X is monochromatic iff delta(X) is at the previous
/// level; caterpillars get colours below k and non-caterpillars avoid
/// 2..k-1; plus the exhaustive shape scan.
VerificationReport verify_local_properties(const ColouringHandle& level,
                                           const LocalOptions& options = {});
/// Same checks against explicit level and previous-level colourings.
VerificationReport verify_local_properties(const Colouring& level, const Colouring& previous,
                                           const LocalOptions& options = {});

struct MonoSearchResult {
  std::vector<Vertex> best;
  bool complete = false;
  std::uint64_t nodes = 0;
};

/// Largest set of labels in [N] monochromatic in `colour`, by branch and
/// bound; `complete` is false when the budget ran out first.
MonoSearchResult max_mono_search(const Colouring& colouring, Colour colour,
                                 const SearchBudget& budget = {});

/// Every hyperedge of size >= r+1 must see at least two colours among its
/// r-subsets. `colour` receives ascending vertex indices.
VerificationReport verify_hypergraph_colouring(
    const Hypergraph& h, unsigned r,
    const std::function<Colour(std::span<const std::uint32_t>)>& colour, unsigned threads = 0);

/// Wraps a colouring and recolours every r-subset of `plant` with `colour`.
/// Used to check that the verifier notices corruption.
class PlantedColouring final : public Colouring {
 public:
  PlantedColouring(const Colouring& inner, std::vector<Vertex> plant, Colour colour);

  unsigned uniformity() const override { return inner_.uniformity(); }
  unsigned colour_count() const override { return inner_.colour_count(); }
  Ground ground() const override { return inner_.ground(); }
  std::uint64_t vertex_width() const override { return inner_.vertex_width(); }
  std::uint64_t evaluable_bits() const override { return inner_.evaluable_bits(); }
  Colour colour(std::span<const Vertex> subset) const override;
  using Colouring::colour;

 private:
  const Colouring& inner_;
  std::vector<Vertex> plant_;
  Colour colour_;
};

/// Parses "<hex>,<hex>,...@<colour>" with hex labels at the given width.
std::pair<std::vector<Vertex>, Colour> parse_plant(const std::string& text, std::uint64_t width);

}  // namespace hyperramsey

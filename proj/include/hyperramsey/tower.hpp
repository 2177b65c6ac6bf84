#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperramsey/schur.hpp"
#include "hyperramsey/split.hpp"
#include "hyperramsey/types.hpp"

namespace hyperramsey {

enum class StepRule {
  Main,           // r -> r+1 for r >= 3, caterpillars delegate through delta
  Caterpillar23,  // 2 -> 3, colours kept, targets 3 -> 5
  Doubling23,     // 2 -> 3, colours doubled, targets s -> s+1
};

std::string_view to_string(StepRule rule);

struct ColouringTowerSpec {
  SchurPartition base;
  std::vector<StepRule> steps;
};

struct TowerOptions {
  /// Labels longer than this are never evaluated.
  std::uint64_t width_cap_bits = std::uint64_t{1} << 20;
  /// Memo entries kept per level; 0 disables memoisation.
  std::size_t memo_capacity = 0;
};

/// Extra colours one main step adds, as printed: 1 for r = 3, 2 for even
/// r > 3, 3 for odd r > 3. Throws InvalidArgument for r < 3.
unsigned eta(unsigned r);

/// Extra colours the main step colouring table can actually produce, found by
/// enumerating every type (p, q) with p, q >= 2 and p + q <= r + 1.
unsigned eta_effective(unsigned r);

/// Table colour of a non-caterpillar (r+1)-set of type t, before compaction:
/// one of 0, 1, k, k+1, k+2.
Colour main_step_raw_colour(unsigned r, unsigned k, SplitType t);

/// The raw extra colours (subset of {k, k+1, k+2}) reachable at uniformity r,
/// ascending.
std::vector<Colour> main_step_extra_colours(unsigned r, unsigned k);

struct LevelInfo {
  std::optional<StepRule> rule;  // empty for the base
  unsigned uniformity = 2;
  unsigned colour_count = 0;
  Ground ground;
  /// Label width; empty when it does not fit in 64 bits.
  std::optional<std::uint64_t> width;
  /// Claim with the extra colours the table can actually emit.
  ArrowClaim claim;
  /// Claim using the printed eta at every main step.
  ArrowClaim claim_printed_eta;
  unsigned eta_printed = 0;
  unsigned eta_effective = 0;
  /// Raw extra colours in use, ascending; compacted to k, k+1, ...
  std::vector<Colour> extra_colours;
  /// Non-empty when some or all labels cannot be evaluated.
  std::string evaluation_limit;
};

namespace detail {
struct Tower;
}

/// A level of a lazily evaluated colouring tower.
class ColouringHandle final : public Colouring {
 public:
  unsigned uniformity() const override { return info().uniformity; }
  unsigned colour_count() const override { return info().colour_count; }
  Ground ground() const override { return info().ground; }
  /// Throws WidthCapExceeded when the width is not representable.
  std::uint64_t vertex_width() const override;
  std::uint64_t evaluable_bits() const override;
  /// Throws InvalidArgument on size, order, or width mismatch and
  /// WidthCapExceeded for labels beyond the cap.
  Colour colour(std::span<const Vertex> subset) const override;
  using Colouring::colour;

  const LevelInfo& info() const;
  const ArrowClaim& claim() const { return info().claim; }
  std::size_t level() const noexcept { return level_; }
  std::size_t depth() const;
  ColouringHandle at_level(std::size_t level) const;
  /// The level this one was stepped up from. Throws at the base.
  ColouringHandle previous() const;
  bool is_base() const noexcept { return level_ == 0; }
  const SchurEdgeColouring& base() const;
  const ColouringTowerSpec& spec() const;
  const TowerOptions& options() const;
  /// False when the label width is not representable.
  bool evaluable() const;

  /// Multi-line description of every level up to this one.
  std::string describe() const;

 private:
  friend ColouringHandle build_tower(const ColouringTowerSpec&, const TowerOptions&);
  ColouringHandle(std::shared_ptr<const detail::Tower> tower, std::size_t level)
      : tower_(std::move(tower)), level_(level) {}

  Colour evaluate_unchecked(std::span<const Vertex> subset) const;
  Colour compute(std::span<const Vertex> subset) const;

  std::shared_ptr<const detail::Tower> tower_;
  std::size_t level_ = 0;
};

/// Throws InvalidData for a rule applied at the wrong uniformity or colour
/// count and InvalidData for an invalid base partition.
ColouringHandle build_tower(const ColouringTowerSpec& spec, const TowerOptions& options = {});

/// Colour of an (r+1)-set at the level stepped up from f_r by a main step.
Colour main_step_colour(const ColouringHandle& f_r, std::span<const Vertex> subset);
/// Colour of a triple at the level stepped up from a 2-uniform f_2 by the
/// caterpillar rule: f_2 on delta(T).
Colour caterpillar23_colour(const ColouringHandle& f_2, std::span<const Vertex> triple);
/// Colour of x < y < z at the doubling level: 2 f_2({d1, d2}) + [d1 < d2]
/// with d1 = s({x, y}), d2 = s({y, z}).
Colour doubling23_colour(const ColouringHandle& f_2, std::span<const Vertex> triple);

/// Tower spec text: "base schur <certificate>" then "step main|cat23|dbl23"
/// lines. Relative certificate paths resolve against `base_dir`.
ColouringTowerSpec parse_tower_spec(std::istream& in, const std::string& base_dir);
ColouringTowerSpec load_tower_spec(const std::string& path);

}  // namespace hyperramsey

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperramsey/types.hpp"

namespace hyperramsey {

/// A partition of {1, ..., span} into sum-free classes.
struct SchurPartition {
  std::uint32_t span = 0;
  std::vector<std::vector<std::uint32_t>> classes;

  unsigned class_count() const noexcept { return static_cast<unsigned>(classes.size()); }
  friend bool operator==(const SchurPartition&, const SchurPartition&) = default;
};

/// True iff no x, y, z in s (x = y allowed) satisfy x + y = z.
bool is_sum_free(std::span<const std::uint32_t> s);

/// nullopt when the partition is valid, otherwise a description of the first
/// problem found (gap, overlap, or a violating triple).
std::optional<std::string> schur_partition_problem(const SchurPartition& p);

bool validate_schur_partition(const SchurPartition& p);

struct SchurSearchResult {
  std::optional<SchurPartition> partition;
  /// True when the search ran to completion; together with an empty partition
  /// this proves that no partition exists.
  bool exhaustive = false;
  std::uint64_t nodes = 0;
};

/// Backtracking over 1..span in increasing order, classes opened in order.
SchurSearchResult search_schur_partition(unsigned k, std::uint32_t span,
                                         std::uint64_t node_budget = 50'000'000);

/// Partition of {1, ..., 2ss' + s + s'} into k + l classes from a k-class
/// partition of [s] and an l-class partition of [s']. Writing
/// x = (2s + 1)a + b with -s <= b <= s, x goes to the class of b in p when
/// b > 0 and to the class of a in q otherwise. The result is validated;
/// InvalidData is thrown if validation fails.
SchurPartition compose_partitions(const SchurPartition& p, const SchurPartition& q);

/// Certificate text: "schur k span", then one line per class.
std::string format_schur_certificate(const SchurPartition& p);
/// Throws ParseError for grammar problems and InvalidData (with line numbers)
/// for overlaps, gaps, or classes that are not sum-free.
SchurPartition parse_schur_certificate(std::istream& in);
SchurPartition load_schur_certificate(const std::string& path);

/// The difference colouring of pairs of [span + 1]: {x, y} gets the class of
/// |x - y|.
class SchurEdgeColouring final : public Colouring {
 public:
  /// Throws InvalidData for an invalid partition.
  explicit SchurEdgeColouring(SchurPartition partition);

  unsigned uniformity() const override { return 2; }
  unsigned colour_count() const override { return partition_.class_count(); }
  Ground ground() const override { return Ground{partition_.span + 1ULL, 0}; }
  std::uint64_t vertex_width() const override { return bits_for_ground(partition_.span + 1ULL); }
  Colour colour(std::span<const Vertex> subset) const override;
  using Colouring::colour;

  /// Colour of the pair {x, y} of distinct labels in [span + 1].
  Colour colour_of_pair(std::uint64_t x, std::uint64_t y) const;
  const SchurPartition& partition() const noexcept { return partition_; }
  /// (span + 1) -/-> (3)_k^2.
  ArrowClaim claim() const;

 private:
  SchurPartition partition_;
  std::vector<Colour> class_of_;  // indexed by difference
};

}  // namespace hyperramsey

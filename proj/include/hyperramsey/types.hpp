#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperramsey/vertex.hpp"

namespace hyperramsey {

using Colour = std::uint32_t;

/// A finite set of distinct vertices sharing one width, kept in ascending
/// order.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts; throws InvalidArgument on duplicates or mixed widths.
  explicit VertexSet(std::vector<Vertex> elements);
  /// Convenience for small literal sets.
  static VertexSet of(std::initializer_list<std::uint64_t> values, std::uint64_t width);
  static VertexSet of(std::span<const std::uint64_t> values, std::uint64_t width);

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::uint64_t width() const noexcept { return width_; }
  std::span<const Vertex> elements() const noexcept { return elements_; }
  const Vertex& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  /// Decoded values; throws when a label is wider than 64 bits.
  std::vector<std::uint64_t> values() const;
  std::string to_string() const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) noexcept {
    return a.elements_ == b.elements_;
  }

 private:
  std::vector<Vertex> elements_;
  std::uint64_t width_ = 0;
};

/// The size of a ground set of the form twr_{height+1}(base): `base` with
/// `height` exponentiations by 2 applied on top. Level i of a colouring tower
/// has height i.
struct Ground {
  std::uint64_t base = 0;
  std::uint32_t height = 0;

  /// The exact size when it fits in 64 bits.
  std::optional<std::uint64_t> exact() const noexcept;
  /// log2 of the size as another Ground; only defined for height >= 1.
  Ground log2() const;
  std::string to_string() const;

  friend bool operator==(const Ground&, const Ground&) = default;
};

/// n -/-> (s_0, ..., s_{k-1})^r, or its positive form.
struct ArrowClaim {
  Ground ground;
  unsigned uniformity = 2;
  std::vector<std::uint64_t> targets;
  bool negated = true;

  std::size_t colour_count() const noexcept { return targets.size(); }
  /// Throws InvalidData unless every target is at least r+1. Targets above
  /// the ground size are allowed and hold vacuously.
  void validate() const;
  /// True when no colour's target fits in the ground set.
  bool vacuous() const noexcept;
  std::string to_string() const;

  friend bool operator==(const ArrowClaim&, const ArrowClaim&) = default;
};

/// The same colouring read against larger targets and extra (unused) colours.
/// Throws InvalidArgument if a target would shrink or colours would be dropped.
ArrowClaim weaken_claim(const ArrowClaim& claim, std::span<const std::uint64_t> new_targets);

/// Non-increasing sequence of positive parts.
class IntegerPartition {
 public:
  IntegerPartition() = default;
  /// Sorts into non-increasing order; throws InvalidArgument on a zero part.
  explicit IntegerPartition(std::vector<unsigned> parts);
  IntegerPartition(std::initializer_list<unsigned> parts)
      : IntegerPartition(std::vector<unsigned>(parts)) {}

  std::span<const unsigned> parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  unsigned total() const noexcept { return total_; }
  unsigned operator[](std::size_t i) const { return parts_[i]; }
  unsigned last() const { return parts_.back(); }
  std::string to_string() const;

  friend bool operator==(const IntegerPartition& a, const IntegerPartition& b) noexcept {
    return a.parts_ == b.parts_;
  }

 private:
  std::vector<unsigned> parts_;
  unsigned total_ = 0;
};

/// All partitions of n, in reverse lexicographic order.
std::vector<IntegerPartition> partitions_of(unsigned n);

/// Vertices are 0..vertex_count-1; edges are sorted index lists of size >= 2.
struct Hypergraph {
  std::uint32_t vertex_count = 0;
  std::vector<std::vector<std::uint32_t>> edges;

  /// Sorts every edge and checks the invariants.
  void normalise();
};

/// A colouring of the r-subsets of some ground set.
///
/// Implementations must be pure: colour() is safe to call concurrently and
/// always returns the same value for the same subset.
class Colouring {
 public:
  virtual ~Colouring() = default;

  virtual unsigned uniformity() const = 0;
  virtual unsigned colour_count() const = 0;
  virtual Ground ground() const = 0;
  /// Width every vertex passed to colour() must carry.
  virtual std::uint64_t vertex_width() const = 0;
  /// Largest label bit-length colour() accepts. Equals the width unless the
  /// level sits above the width cap.
  virtual std::uint64_t evaluable_bits() const { return vertex_width(); }
  /// Colour of an ascending, duplicate-free subset of size uniformity().
  virtual Colour colour(std::span<const Vertex> subset) const = 0;

  Colour colour(const VertexSet& subset) const { return colour(subset.elements()); }
  /// Colour of a subset of small labels given as ascending integers.
  Colour colour_of_values(std::span<const std::uint64_t> values) const;
};

/// Explicit table over every r-subset of [n], indexed by colex rank.
class TableColouring final : public Colouring {
 public:
  TableColouring(std::uint32_t n, unsigned r, unsigned colour_count, std::vector<Colour> table);
  /// Tabulates another colouring restricted to its first n labels.
  static TableColouring tabulate(const Colouring& source, std::uint32_t n);

  unsigned uniformity() const override { return r_; }
  unsigned colour_count() const override { return k_; }
  Ground ground() const override { return Ground{n_, 0}; }
  std::uint64_t vertex_width() const override { return bits_for_ground(n_); }
  Colour colour(std::span<const Vertex> subset) const override;
  using Colouring::colour;

  Colour at_rank(std::uint64_t rank) const { return table_[rank]; }
  std::span<const Colour> table() const noexcept { return table_; }
  std::uint32_t n() const noexcept { return n_; }

 private:
  std::uint32_t n_;
  unsigned r_;
  unsigned k_;
  std::vector<Colour> table_;
};

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// Colex rank of an ascending index subset.
std::uint64_t colex_rank(std::span<const std::uint32_t> subset) noexcept;

/// Calls fn(span) for every k-subset of [n] in colex order; stops when fn
/// returns false.
template <typename Fn>
bool for_each_subset(std::uint32_t n, unsigned k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::uint32_t> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::span<const std::uint32_t>(idx))) return false;
    // next combination in colex order
    unsigned i = 0;
    while (i < k && (i + 1 == k ? idx[i] + 1 >= n : idx[i] + 1 >= idx[i + 1])) ++i;
    if (i == k) return true;
    ++idx[i];
    for (unsigned j = 0; j < i; ++j) idx[j] = j;
  }
}

}  // namespace hyperramsey

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "hyperramsey/types.hpp"

namespace hyperramsey {

/// d(n): ascending set-bit positions of n.
std::vector<std::uint64_t> binary_expansion(std::uint64_t n);
std::vector<std::uint64_t> binary_expansion(const Vertex& v);

/// The first split S = (low | high) at the most significant position where
/// two elements differ. Every element of `low` is below every element of
/// `high`.
struct SplitResult {
  std::uint64_t index = 0;
  VertexSet low;
  VertexSet high;
};

/// Throws InvalidArgument when |S| < 2.
SplitResult first_split(const VertexSet& s);

/// Empty sets and singletons are caterpillars; otherwise one side of the first
/// split must be a singleton and the other a caterpillar.
bool is_caterpillar(const VertexSet& s);

/// Pairwise first splitting indices of a caterpillar, ascending. Throws
/// InvalidArgument for non-caterpillars.
std::vector<std::uint64_t> delta(const VertexSet& s);

struct Caterpillar {
  friend bool operator==(Caterpillar, Caterpillar) = default;
};
struct SplitType {
  unsigned p = 0;
  unsigned q = 0;
  friend bool operator==(SplitType, SplitType) = default;
};
using TypeTag = std::variant<Caterpillar, SplitType>;

/// Caterpillar, or the sizes (p, q) of the first split with both sides of size
/// at least two reached by descending through singleton sides. |S| >= 2.
TypeTag type_of(const VertexSet& s);

/// Multiplicities of the distinct values, as a partition. Throws on empty input.
IntegerPartition histogram(std::span<const std::uint64_t> values);

/// A caterpillar 4-subset of a 5-set, chosen by the shape of its first split.
VertexSet find_caterpillar4(const VertexSet& s);

/// Split structure of an ascending vertex sequence, computed from the
/// splitting indices of consecutive elements. This is the form the colouring
/// engine uses; the VertexSet functions above are the reference definitions.
class SplitShape {
 public:
  explicit SplitShape(std::span<const Vertex> ascending);

  std::size_t size() const noexcept { return n_; }
  bool caterpillar() const noexcept { return caterpillar_; }
  /// Valid when !caterpillar().
  SplitType type() const noexcept { return type_; }
  /// Consecutive splitting indices; their set equals delta() on caterpillars.
  std::span<const std::uint64_t> gaps() const noexcept { return {gaps_.data(), gaps_.size()}; }
  /// delta() as an ascending list. Only meaningful for caterpillars.
  boost::container::small_vector<std::uint64_t, 8> sorted_delta() const;

 private:
  std::size_t n_ = 0;
  bool caterpillar_ = true;
  SplitType type_{};
  boost::container::small_vector<std::uint64_t, 8> gaps_;
};

/// Random caterpillar of `size` labels whose free bits lie below
/// `window_bits`. Built by adjoining one element at a time above or below the
/// structure grown so far. Requires window_bits >= size - 1.
VertexSet random_caterpillar(std::size_t size, std::uint64_t window_bits, std::uint64_t width,
                             std::mt19937_64& rng);

/// Caterpillar whose delta is exactly `indices` (ascending, distinct, each
/// below width). The side of each singleton is chosen by rng.
VertexSet caterpillar_with_delta(std::span<const std::uint64_t> indices, std::uint64_t width,
                                 std::mt19937_64& rng);

/// Random set of `size` labels of type (p, q): size - p - q singleton splits
/// on top of a (p | q) split. Requires p, q >= 2 and enough window bits.
VertexSet random_typed_set(unsigned p, unsigned q, std::size_t size, std::uint64_t window_bits,
                           std::uint64_t width, std::mt19937_64& rng);

/// Bits a random_typed_set call needs at minimum.
std::uint64_t typed_set_min_bits(unsigned p, unsigned q, std::size_t size);

}  // namespace hyperramsey

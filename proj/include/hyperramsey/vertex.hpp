#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace hyperramsey {

/// A finite bit vector labelling an element of [2^width].
///
/// Bit 0 is the least significant position. Storage is trimmed to the highest
/// non-zero word, so two vertices compare equal exactly when their set-bit
/// positions agree; the width is carried for context and checked by the
/// operations that care about it. Widths up to 2^64 - 1 are representable,
/// which lets a level of a colouring tower whose ground set is 2^(2^32) hold
/// labels that only use their low bits.
class Vertex {
 public:
  using Word = std::uint64_t;
  static constexpr unsigned kWordBits = 64;

  Vertex() = default;

  /// Builds from little-endian words. Throws InvalidArgument if a set bit lies
  /// at a position >= width.
  static Vertex from_words(std::span<const Word> words, std::uint64_t width);

  /// Builds from a set of bit positions.
  static Vertex from_positions(std::span<const std::uint64_t> positions, std::uint64_t width);

  /// Parses the canonical encoding "<lowercase hex>/<width>", e.g. "1f/5".
  static Vertex parse(std::string_view text);

  std::uint64_t width() const noexcept { return width_; }
  bool is_zero() const noexcept { return words_.empty(); }
  bool test(std::uint64_t position) const noexcept;

  /// Position of the most significant set bit, or nullopt for zero.
  std::optional<std::uint64_t> highest_bit() const noexcept;

  /// Number of significant bits (0 for zero).
  std::uint64_t bit_length() const noexcept;

  /// d(value): the ascending list of set-bit positions.
  std::vector<std::uint64_t> set_bits() const;

  std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }

  bool fits_u64() const noexcept { return words_.size() <= 1; }
  /// Throws InvalidArgument unless fits_u64().
  std::uint64_t to_u64() const;

  /// Same bits, different width. Throws if a set bit would fall outside.
  Vertex with_width(std::uint64_t width) const;

  /// Canonical text form: lowercase hex of the value, "/", decimal width.
  std::string to_string() const;

  friend bool operator==(const Vertex& a, const Vertex& b) noexcept {
    return a.words_ == b.words_;
  }
  /// Numeric order of the represented naturals. Ignores width; use
  /// compare_vertices() where widths must agree.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) noexcept;

 private:
  void trim() noexcept;

  boost::container::small_vector<Word, 1> words_;
  std::uint64_t width_ = 0;
};

/// Vertex with the binary expansion of value. Requires value < 2^width.
Vertex make_vertex(std::uint64_t value, std::uint64_t width);

/// Numeric comparison of two labels of the same width.
std::strong_ordering compare_vertices(const Vertex& x, const Vertex& y);

/// s({x, y}): the most significant position where x and y differ, or nullopt
/// when they are equal.
std::optional<std::uint64_t> highest_differing_bit(const Vertex& x, const Vertex& y) noexcept;

/// Uniform label with only the low `window_bits` positions free.
Vertex random_vertex(std::uint64_t window_bits, std::uint64_t width, std::mt19937_64& rng);

/// Bits needed to write every element of [n] (at least 1).
std::uint64_t bits_for_ground(std::uint64_t n) noexcept;

}  // namespace hyperramsey

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperramsey/types.hpp"

namespace hyperramsey {

using BigInt = boost::multiprecision::cpp_int;

/// `height` exponentiations by 2 applied on top of `top`. Kept normalised:
/// an exponentiation is carried out whenever its result fits in 4096 bits,
/// so a positive height means the value has more than 4096 bits.
struct TowerValue {
  std::uint32_t height = 0;
  BigInt top = 0;

  static constexpr unsigned kMaxBits = 4096;

  /// Decimal when height is 0, otherwise "2^2^...^(top)".
  std::string to_string() const;
  std::optional<BigInt> exact() const;

  friend bool operator==(const TowerValue&, const TowerValue&) = default;
  friend std::strong_ordering operator<=>(const TowerValue& a, const TowerValue& b);
};

/// twr_r(x): twr_1(x) = x and twr_{r+1}(x) = 2^twr_r(x). r >= 1.
TowerValue tower(unsigned r, const BigInt& x);

/// log2(1073)/6, the log of C1 = 1073^(1/6).
double alpha();
/// alpha rendered with `places` decimals from a 50-digit evaluation.
std::string alpha_digits(unsigned places);

enum class BoundKind { Lower, Upper };
std::string_view to_string(BoundKind kind);

/// r_k(s; r) compared with twr_height(slope * k + offset + symbolic).
struct BoundRow {
  unsigned k = 0;
  unsigned r = 0;
  std::uint64_t s = 0;
  BoundKind kind = BoundKind::Lower;
  unsigned height = 0;
  double slope = 0;
  double offset = 0;
  /// Unspecified constant part, e.g. "beta" or "O(1)"; empty when none.
  std::string symbolic;
  std::string source;
  bool within_validity = true;
  /// False for rows whose whole argument is an unspecified constant.
  bool numeric = true;

  /// The computed part slope * k + offset.
  double numeric_argument() const { return slope * k + offset; }
  /// "1.2584+beta" style rendering of the argument.
  std::string argument() const;
  std::string expression() const;
};

/// target_offset 1 gives r_k(r+1; r), 2 gives r_k(r+2; r). Throws
/// InvalidArgument for r < 3 or k below the validity range.
BoundRow corollary_bound(unsigned k, unsigned r, unsigned target_offset);
/// Whether (k, r) lies in the stated range for the given target.
bool corollary_valid(unsigned k, unsigned r, unsigned target_offset);

struct ChainRow {
  /// The relation with the colour count as printed.
  ArrowClaim claim;
  /// Colour count when each step adds eta_effective colours.
  std::uint64_t effective_colours = 0;
  /// Steps of the main lemma applied to reach it.
  unsigned steps = 0;
  /// True when effective_colours differs from the printed count.
  bool eta_flag = false;
  std::string source;
};

/// From n -/-> (s)_{K+2}^3: twr_{2t+2}(n) -/-> (s+2t+1)_{K+5t+3}^{4+2t} and
/// twr_{2t+3}(n) -/-> (s+2t+2)_{K+5t+5}^{5+2t}.
std::pair<ChainRow, ChainRow> chain_bounds(std::uint64_t K, std::uint64_t s, std::uint64_t n,
                                           unsigned t);

/// max(1, log2 x).
double Log(double x);
/// Log applied `times` times.
double iterated_Log(double x, unsigned times);

struct Bracket {
  double lower = 0;
  std::string lower_symbolic = "o(1)";
  double upper = 0;
  std::string upper_symbolic = "O(1)";
};

/// (1/3) Log^(r-1)(rn) / Log^(r)(rn) and (2/alpha) Log^(r-1)(rn) + 5r/2.
Bracket k_n_r_bracket(std::uint64_t n, unsigned r);

/// Step-up rows against the AGLM bound, the BBH18 r_k(5;3) row, and the
/// Erdos-Rado upper bound, for k in [k_min, k_max].
std::vector<BoundRow> comparison_table(unsigned r, unsigned k_min, unsigned k_max);

/// Aligned plain text with a header line.
std::string format_rows_text(const std::vector<BoundRow>& rows);
/// Tab separated: k, r, s, kind, height, argument, source.
std::string format_rows_tsv(const std::vector<BoundRow>& rows);

}  // namespace hyperramsey

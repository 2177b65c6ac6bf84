#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperramsey/split.hpp"
#include "hyperramsey/types.hpp"
#include "hyperramsey/verify.hpp"

namespace hyperramsey {

enum class PartitionKind { AllOnes, Balanced, AlmostBalanced, Other };

std::string_view to_string(PartitionKind kind);

struct PartitionClass {
  PartitionKind kind = PartitionKind::Other;
  /// The repeated part a of an almost balanced (a, ..., a, a-1).
  unsigned r0 = 0;
  /// Index of the part a-1 (always the last).
  std::size_t deficit_position = 0;
};

/// AllOnes whenever every part is 1; otherwise Balanced or AlmostBalanced
/// (both need at least two parts), else Other.
PartitionClass classify_partition(const IntegerPartition& r);

/// (a, b): a = 0 iff m + r_{m-1} is even, b = 0 iff r_{m-1} = 1.
std::pair<unsigned, unsigned> c0(const IntegerPartition& r);
/// k + 2a + b.
Colour c0bar(const IntegerPartition& r, unsigned k);

/// Extra colours of the subset colouring: 1, 3, 4 (r+1 prime), else 5.
unsigned f_of_r(unsigned r);

/// Raw colour of an r-subset from the vertex colours of its elements:
/// C2 on the distinct values, k+4 for an almost balanced histogram whose
/// smallest value appears r_{m-1} times, else C0bar. `c2` gets the ascending
/// distinct values.
template <typename C2>
Colour raw_subset_colour(std::span<const std::uint64_t> vertex_colours, unsigned k, C2&& c2);

/// Raw colours >= k that raw_subset_colour can produce for r-subsets,
/// ascending. These are compacted to k, k+1, ...
std::vector<Colour> reachable_extras(unsigned r, unsigned k);

/// The r-subset colouring of a hypergraph built from a vertex colouring C1
/// into [n] and a colouring C2 of the r-subsets of [n] with k colours.
class SubsetColouring {
 public:
  /// c2 must be r-uniform over at least n labels.
  SubsetColouring(std::vector<std::uint32_t> vertex_colours, std::uint32_t n, unsigned r,
                  std::shared_ptr<const Colouring> c2);

  unsigned r() const noexcept { return r_; }
  unsigned k() const noexcept { return k_; }
  std::uint32_t n() const noexcept { return n_; }
  unsigned total_colours() const noexcept { return k_ + static_cast<unsigned>(extras_.size()); }
  std::span<const Colour> extras() const noexcept { return extras_; }
  std::span<const std::uint32_t> vertex_colours() const noexcept { return c1_; }
  const Colouring& c2() const noexcept { return *c2_; }

  /// Colour before compaction, in [k + 5].
  Colour raw_colour(std::span<const std::uint32_t> vertices) const;
  /// Colour after compaction, in [total_colours()].
  Colour colour(std::span<const std::uint32_t> vertices) const;
  Colour compact(Colour raw) const;

 private:
  std::vector<std::uint32_t> c1_;
  std::uint32_t n_;
  unsigned r_;
  unsigned k_;
  std::shared_ptr<const Colouring> c2_;
  std::vector<Colour> extras_;
};

struct SubsetBuildOptions {
  SearchBudget budget;
  /// Node budget for Schur-partition searches used to mint bases.
  std::uint64_t schur_budget = 50'000'000;
};

struct SubsetBuildResult {
  std::shared_ptr<SubsetColouring> colouring;
  /// How C2 was obtained.
  std::string c2_source;
  /// The claim n -/-> (r+1)_k^r of C2 and its exhaustive verification.
  ArrowClaim c2_claim;
  VerificationReport c2_report;
  bool greedy_vertex_colouring = false;
};

/// Greedy colouring in degree order leaving no edge of size >= r+1
/// monochromatic.
std::vector<std::uint32_t> greedy_vertex_colouring(const Hypergraph& h, unsigned r);

/// Checks C1 against the edges of size >= r+1; throws InvalidData naming the
/// first monochromatic edge.
void check_vertex_colouring(const Hypergraph& h, unsigned r, std::span<const std::uint32_t> c1);

/// A colouring of the r-subsets of [n] with no monochromatic (r+1)-set,
/// tabulated: one colour when n <= r, a Schur base for r = 2, and
/// base -> dbl23 -> main^(r-3) above. Verified exhaustively; throws
/// InvalidData if verification does not pass.
std::pair<std::shared_ptr<const TableColouring>, std::string> certified_c2(
    std::uint32_t n, unsigned r, const SubsetBuildOptions& options, VerificationReport* report);

SubsetBuildResult build_subset_colouring(const Hypergraph& h, unsigned r,
                                         std::optional<std::vector<std::uint32_t>> c1,
                                         const SubsetBuildOptions& options = {});

struct KCompleteResult {
  unsigned k = 0;
  /// True when k-1 colours were proven insufficient by a complete search.
  bool exact = false;
  std::optional<TableColouring> witness;
  std::uint64_t nodes = 0;
  std::string note;
};

/// Least k with rn -/-> (r+1)_k^r found by backtracking over colourings of the
/// r-subsets of [rn] with canonical colour order.
KCompleteResult k_complete_lower(unsigned n, unsigned r, std::uint64_t node_budget = 200'000'000);

/// Least k with n -/-> (r+1)_k^r by the same search.
KCompleteResult least_colours_without_mono(std::uint32_t ground, unsigned r,
                                           std::uint64_t node_budget = 200'000'000);

/// "hypergraph <vertex_count>" then one edge per line.
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph load_hypergraph(const std::string& path);
/// "colours <n>" then "vertex colour" lines; every vertex must be coloured.
std::vector<std::uint32_t> parse_vertex_colouring(std::istream& in, std::uint32_t vertex_count,
                                                  std::uint32_t* colour_count = nullptr);
std::vector<std::uint32_t> load_vertex_colouring(const std::string& path,
                                                 std::uint32_t vertex_count,
                                                 std::uint32_t* colour_count = nullptr);

/// True when the smallest value occurs exactly r_{m-1} times.
bool min_appears_last_count(std::span<const std::uint64_t> values, const IntegerPartition& h);

template <typename C2>
Colour raw_subset_colour(std::span<const std::uint64_t> vertex_colours, unsigned k, C2&& c2) {
  const IntegerPartition h = histogram(vertex_colours);
  const auto cls = classify_partition(h);
  if (cls.kind == PartitionKind::AllOnes) {
    std::vector<std::uint64_t> sorted(vertex_colours.begin(), vertex_colours.end());
    std::sort(sorted.begin(), sorted.end());
    return c2(std::span<const std::uint64_t>(sorted));
  }
  if (cls.kind == PartitionKind::AlmostBalanced && min_appears_last_count(vertex_colours, h)) {
    return k + 4;
  }
  return c0bar(h, k);
}

}  // namespace hyperramsey

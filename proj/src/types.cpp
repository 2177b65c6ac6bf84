#include "hyperramsey/types.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "hyperramsey/error.hpp"

namespace hyperramsey {

VertexSet::VertexSet(std::vector<Vertex> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) return;
  width_ = elements_.front().width();
  for (const auto& v : elements_) {
    if (v.width() != width_) {
      throw InvalidArgument("vertex set mixes widths " + std::to_string(width_) + " and " +
                            std::to_string(v.width()));
    }
  }
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw InvalidArgument("vertex set contains a repeated element");
  }
}

VertexSet VertexSet::of(std::initializer_list<std::uint64_t> values, std::uint64_t width) {
  return of(std::span<const std::uint64_t>(values.begin(), values.size()), width);
}

VertexSet VertexSet::of(std::span<const std::uint64_t> values, std::uint64_t width) {
  std::vector<Vertex> vs;
  vs.reserve(values.size());
  for (auto v : values) vs.push_back(make_vertex(v, width));
  VertexSet s(std::move(vs));
  s.width_ = width;
  return s;
}

std::vector<std::uint64_t> VertexSet::values() const {
  std::vector<std::uint64_t> out;
  out.reserve(elements_.size());
  for (const auto& v : elements_) out.push_back(v.to_u64());
  return out;
}

std::string VertexSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out += ' ';
    out += elements_[i].to_string();
  }
  return out + "}";
}

std::optional<std::uint64_t> Ground::exact() const noexcept {
  std::uint64_t value = base;
  for (std::uint32_t i = 0; i < height; ++i) {
    if (value >= 64) return std::nullopt;
    value = std::uint64_t{1} << value;
  }
  return value;
}

Ground Ground::log2() const {
  if (height == 0) throw InvalidArgument("log2 of a base ground size is not tracked");
  return Ground{base, height - 1};
}

std::string Ground::to_string() const {
  if (const auto e = exact()) return std::to_string(*e);
  const Ground inner = log2();
  const std::string s = inner.to_string();
  return inner.exact() ? "2^" + s : "2^(" + s + ")";
}

void ArrowClaim::validate() const {
  if (uniformity < 1) throw InvalidData("uniformity must be positive");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < uniformity + 1) {
      throw InvalidData("target " + std::to_string(targets[i]) + " of colour " +
                        std::to_string(i) + " is below r+1 = " + std::to_string(uniformity + 1));
    }
  }
}

bool ArrowClaim::vacuous() const noexcept {
  const auto n = ground.exact();
  if (!n) return false;
  return std::all_of(targets.begin(), targets.end(), [&](std::uint64_t s) { return s > *n; });
}

std::string ArrowClaim::to_string() const {
  std::ostringstream out;
  out << ground.to_string() << (negated ? " -/-> (" : " -> (");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i) out << ',';
    out << targets[i];
  }
  out << ")^" << uniformity;
  return out.str();
}

ArrowClaim weaken_claim(const ArrowClaim& claim, std::span<const std::uint64_t> new_targets) {
  if (!claim.negated) throw InvalidArgument("only negative claims can be weakened");
  if (new_targets.size() < claim.targets.size()) {
    throw InvalidArgument("weakening cannot drop colours");
  }
  for (std::size_t i = 0; i < claim.targets.size(); ++i) {
    if (new_targets[i] < claim.targets[i]) {
      throw InvalidArgument("weakening cannot lower the target of colour " + std::to_string(i));
    }
  }
  ArrowClaim out = claim;
  out.targets.assign(new_targets.begin(), new_targets.end());
  return out;
}

IntegerPartition::IntegerPartition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  for (unsigned p : parts_) {
    if (p == 0) throw InvalidArgument("partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0U);
}

std::string IntegerPartition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

std::vector<IntegerPartition> partitions_of(unsigned n) {
  std::vector<IntegerPartition> out;
  std::vector<unsigned> current;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  if (n > 0) rec(n, n);
  return out;
}

void Hypergraph::normalise() {
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InvalidData("hyperedge repeats a vertex");
    }
    if (e.size() < 2) throw InvalidData("hyperedges need at least two vertices");
    if (e.back() >= vertex_count) {
      throw InvalidData("hyperedge vertex " + std::to_string(e.back()) + " outside [" +
                        std::to_string(vertex_count) + "]");
    }
  }
}

Colour Colouring::colour_of_values(std::span<const std::uint64_t> values) const {
  std::vector<Vertex> vs;
  vs.reserve(values.size());
  for (auto v : values) vs.push_back(make_vertex(v, vertex_width()));
  return colour(std::span<const Vertex>(vs));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t colex_rank(std::span<const std::uint32_t> subset) noexcept {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) rank += binomial(subset[i], i + 1);
  return rank;
}

TableColouring::TableColouring(std::uint32_t n, unsigned r, unsigned colour_count,
                               std::vector<Colour> table)
    : n_(n), r_(r), k_(colour_count), table_(std::move(table)) {
  if (table_.size() != binomial(n, r)) {
    throw InvalidArgument("colour table has " + std::to_string(table_.size()) +
                          " entries, expected C(" + std::to_string(n) + "," +
                          std::to_string(r) + ")");
  }
  for (Colour c : table_) {
    if (c >= k_) throw InvalidArgument("colour table entry exceeds the colour count");
  }
}

TableColouring TableColouring::tabulate(const Colouring& source, std::uint32_t n) {
  const unsigned r = source.uniformity();
  std::vector<Colour> table;
  table.reserve(binomial(n, r));
  std::vector<Vertex> buf(r);
  for_each_subset(n, r, [&](std::span<const std::uint32_t> idx) {
    for (unsigned i = 0; i < r; ++i) buf[i] = make_vertex(idx[i], source.vertex_width());
    table.push_back(source.colour(std::span<const Vertex>(buf)));
    return true;
  });
  return TableColouring(n, r, source.colour_count(), std::move(table));
}

Colour TableColouring::colour(std::span<const Vertex> subset) const {
  if (subset.size() != r_) {
    throw InvalidArgument("expected a " + std::to_string(r_) + "-subset, got " +
                          std::to_string(subset.size()) + " elements");
  }
  std::uint32_t idx[64];
  if (r_ > 64) throw InvalidArgument("uniformity above 64 is not tabulated");
  for (unsigned i = 0; i < r_; ++i) {
    if (subset[i].width() != vertex_width()) {
      throw InvalidArgument("vertex " + subset[i].to_string() + " has the wrong width for a table over [" +
                            std::to_string(n_) + "]");
    }
    const std::uint64_t v = subset[i].to_u64();
    if (v >= n_) throw InvalidArgument("vertex " + subset[i].to_string() + " outside the table");
    if (i > 0 && v <= idx[i - 1]) throw InvalidArgument("subset must be ascending and distinct");
    idx[i] = static_cast<std::uint32_t>(v);
  }
  return table_[colex_rank(std::span<const std::uint32_t>(idx, r_))];
}

}  // namespace hyperramsey

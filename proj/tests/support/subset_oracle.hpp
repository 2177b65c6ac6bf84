// Literal reading of the subset colouring on colour multisets, plus random
// hypergraphs, shared by the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "hyperramsey/subset.hpp"
#include "support/oracles.hpp"

namespace subset_oracle {

using namespace hyperramsey;

// Direct reading of the printed colouring C on colour values, without the
// library's partition helpers. c2 is called on ascending distinct values.
template <typename C2>
inline Colour literal_colour(std::vector<std::uint64_t> c, unsigned k, C2 c2) {
  const std::vector<unsigned> h = oracle::histogram(c);
  const std::size_t m = h.size();
  if (std::all_of(h.begin(), h.end(), [](unsigned x) { return x == 1; })) {
    std::sort(c.begin(), c.end());
    return c2(c);
  }
  bool almost = m > 1 && h.back() + 1 == h.front();
  for (std::size_t i = 0; i + 1 < m; ++i) almost = almost && h[i] == h.front();
  const std::uint64_t lo = *std::min_element(c.begin(), c.end());
  const auto lo_count = static_cast<unsigned>(std::count(c.begin(), c.end(), lo));
  if (almost && lo_count == h.back()) return k + 4;
  const unsigned a = (m + h.back()) % 2 == 0 ? 0 : 1;
  const unsigned b = h.back() == 1 ? 0 : 1;
  return k + 2 * a + b;
}

// Every multiset of r+1 values with histogram `parts`, one per assignment of
// parts to the ordered values 0..m-1.
inline std::vector<std::vector<std::uint64_t>> realisations(std::vector<unsigned> parts) {
  std::vector<std::vector<std::uint64_t>> out;
  std::sort(parts.begin(), parts.end());
  do {
    std::vector<std::uint64_t> v;
    for (std::size_t i = 0; i < parts.size(); ++i) v.insert(v.end(), parts[i], i);
    out.push_back(v);
  } while (std::next_permutation(parts.begin(), parts.end()));
  return out;
}

inline std::vector<std::vector<std::uint64_t>> drop_one(const std::vector<std::uint64_t>& v) {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto w = v;
    w.erase(w.begin() + static_cast<long>(i));
    out.push_back(w);
  }
  return out;
}

inline Hypergraph random_hypergraph(std::mt19937_64& rng, unsigned r) {
  Hypergraph h;
  h.vertex_count = 6 + static_cast<std::uint32_t>(rng() % 9);
  const unsigned edges = 1 + rng() % 6;
  for (unsigned e = 0; e < edges; ++e) {
    const std::size_t size = std::min<std::size_t>(h.vertex_count, r + 1 + rng() % 3);
    const auto vs = oracle::random_below(rng, size, h.vertex_count);
    h.edges.emplace_back(vs.begin(), vs.end());
  }
  h.normalise();
  return h;
}

}  // namespace subset_oracle

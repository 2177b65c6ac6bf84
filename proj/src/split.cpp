#include "hyperramsey/split.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hyperramsey/error.hpp"

namespace hyperramsey {

std::vector<std::uint64_t> binary_expansion(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; n != 0; ++i, n >>= 1) {
    if (n & 1U) out.push_back(i);
  }
  return out;
}

std::vector<std::uint64_t> binary_expansion(const Vertex& v) { return v.set_bits(); }

SplitResult first_split(const VertexSet& s) {
  if (s.size() < 2) throw InvalidArgument("first split needs at least two elements");
  std::uint64_t index = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    index = std::max(index, *highest_differing_bit(s[i], s[0]));
  }
  std::vector<Vertex> low;
  std::vector<Vertex> high;
  for (const auto& v : s) (v.test(index) ? high : low).push_back(v);
  return SplitResult{index, VertexSet(std::move(low)), VertexSet(std::move(high))};
}

bool is_caterpillar(const VertexSet& s) {
  if (s.size() < 2) return true;
  const auto split = first_split(s);
  if (split.low.size() == 1) return is_caterpillar(split.high);
  if (split.high.size() == 1) return is_caterpillar(split.low);
  return false;
}

std::vector<std::uint64_t> delta(const VertexSet& s) {
  if (!is_caterpillar(s)) throw InvalidArgument("delta is only defined on caterpillars");
  std::set<std::uint64_t> indices;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) indices.insert(*highest_differing_bit(s[i], s[j]));
  }
  return {indices.begin(), indices.end()};
}

TypeTag type_of(const VertexSet& s) {
  if (s.size() < 2) throw InvalidArgument("type is defined for sets of at least two elements");
  if (is_caterpillar(s)) return Caterpillar{};
  const auto split = first_split(s);
  if (split.low.size() >= 2 && split.high.size() >= 2) {
    return SplitType{static_cast<unsigned>(split.low.size()),
                     static_cast<unsigned>(split.high.size())};
  }
  return type_of(split.low.size() == 1 ? split.high : split.low);
}

IntegerPartition histogram(std::span<const std::uint64_t> values) {
  if (values.empty()) throw InvalidArgument("histogram of an empty sequence");
  std::map<std::uint64_t, unsigned> counts;
  for (auto v : values) ++counts[v];
  std::vector<unsigned> parts;
  parts.reserve(counts.size());
  for (const auto& [value, count] : counts) parts.push_back(count);
  return IntegerPartition(std::move(parts));
}

VertexSet find_caterpillar4(const VertexSet& s) {
  if (s.size() != 5) throw InvalidArgument("find_caterpillar4 expects exactly five elements");
  const auto split = first_split(s);
  const auto low = split.low.elements();
  const auto high = split.high.elements();
  std::vector<Vertex> pick;
  if (low.size() == 1 || high.size() == 1) {
    // (a | b c d e): a with any three of the other side.
    const auto single = low.size() == 1 ? low : high;
    const auto big = low.size() == 1 ? high : low;
    pick = {single[0], big[0], big[1], big[2]};
  } else {
    // (a b | c d e): drop one element of the pair side.
    const auto pair = low.size() == 2 ? low : high;
    const auto triple = low.size() == 2 ? high : low;
    pick = {pair[0], triple[0], triple[1], triple[2]};
  }
  VertexSet out(std::move(pick));
  if (!is_caterpillar(out)) {
    throw Error("find_caterpillar4 produced a non-caterpillar from " + s.to_string());
  }
  return out;
}

SplitShape::SplitShape(std::span<const Vertex> ascending) : n_(ascending.size()) {
  for (std::size_t i = 0; i + 1 < ascending.size(); ++i) {
    gaps_.push_back(*highest_differing_bit(ascending[i], ascending[i + 1]));
  }
  // Descend through the split tree over element ranges [a, b); the root split
  // of a range sits at its largest gap.
  std::size_t a = 0;
  std::size_t b = n_;
  while (b - a >= 2) {
    std::size_t top = a;
    for (std::size_t g = a; g + 1 < b; ++g) {
      if (gaps_[g] > gaps_[top]) top = g;
    }
    const std::size_t left = top - a + 1;
    const std::size_t right = b - 1 - top;
    if (left == 1) {
      a = top + 1;
    } else if (right == 1) {
      b = top + 1;
    } else {
      caterpillar_ = false;
      type_ = SplitType{static_cast<unsigned>(left), static_cast<unsigned>(right)};
      return;
    }
  }
}

boost::container::small_vector<std::uint64_t, 8> SplitShape::sorted_delta() const {
  auto out = gaps_;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Words = std::vector<Vertex::Word>;

void set_bit(Words& w, std::uint64_t pos, bool value) {
  const auto mask = Vertex::Word{1} << (pos % Vertex::kWordBits);
  if (value) {
    w[pos / Vertex::kWordBits] |= mask;
  } else {
    w[pos / Vertex::kWordBits] &= ~mask;
  }
}

Words random_words(std::uint64_t bits, std::mt19937_64& rng) {
  Words w((bits + Vertex::kWordBits - 1) / Vertex::kWordBits);
  for (auto& x : w) x = rng();
  if (const auto rem = bits % Vertex::kWordBits; rem != 0) w.back() &= (Vertex::Word{1} << rem) - 1;
  return w;
}

// Keep `base` at positions >= pos, take `low` below pos.
Words splice_below(const Words& base, const Words& low, std::uint64_t pos) {
  Words out = base;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t lo = i * Vertex::kWordBits;
    if (lo + Vertex::kWordBits <= pos) {
      out[i] = low[i];
    } else if (lo < pos) {
      const auto mask = (Vertex::Word{1} << (pos - lo)) - 1;
      out[i] = (out[i] & ~mask) | (low[i] & mask);
    }
  }
  return out;
}

std::vector<std::uint64_t> distinct_positions(std::size_t count, std::uint64_t lo,
                                              std::uint64_t hi, std::mt19937_64& rng) {
  std::set<std::uint64_t> chosen;
  std::uniform_int_distribution<std::uint64_t> dist(lo, hi - 1);
  while (chosen.size() < count) chosen.insert(dist(rng));
  return {chosen.rbegin(), chosen.rend()};
}

// Spine of singleton splits at the given descending positions above a shared
// core. Returns the singleton leaves; `core` is updated in place.
std::vector<Words> grow_spine(Words& core, std::span<const std::uint64_t> descending,
                              std::uint64_t window_bits, std::mt19937_64& rng) {
  std::vector<Words> leaves;
  std::bernoulli_distribution side(0.5);
  std::vector<bool> sides;
  for (auto p : descending) {
    const bool s = side(rng);
    sides.push_back(s);
    set_bit(core, p, !s);
  }
  for (std::size_t t = 0; t < descending.size(); ++t) {
    Words leaf = splice_below(core, random_words(window_bits, rng), descending[t]);
    set_bit(leaf, descending[t], sides[t]);
    leaves.push_back(std::move(leaf));
  }
  return leaves;
}

}  // namespace

VertexSet random_caterpillar(std::size_t size, std::uint64_t window_bits, std::uint64_t width,
                             std::mt19937_64& rng) {
  window_bits = std::min(window_bits, width);
  if (size == 0) return VertexSet::of(std::span<const std::uint64_t>{}, width);
  if (window_bits + 1 < size) {
    throw InvalidArgument("a caterpillar of size " + std::to_string(size) + " needs " +
                          std::to_string(size - 1) + " window bits");
  }
  const auto positions = distinct_positions(size - 1, 0, window_bits, rng);
  Words core = random_words(window_bits, rng);
  std::vector<Vertex> out;
  for (const auto& leaf : grow_spine(core, positions, window_bits, rng)) {
    out.push_back(Vertex::from_words(leaf, width));
  }
  out.push_back(Vertex::from_words(core, width));
  return VertexSet(std::move(out));
}

VertexSet caterpillar_with_delta(std::span<const std::uint64_t> indices, std::uint64_t width,
                                 std::mt19937_64& rng) {
  std::vector<std::uint64_t> desc(indices.begin(), indices.end());
  std::sort(desc.rbegin(), desc.rend());
  if (std::adjacent_find(desc.begin(), desc.end()) != desc.end()) {
    throw InvalidArgument("delta indices must be distinct");
  }
  if (!desc.empty() && desc.front() >= width) {
    throw InvalidArgument("delta index " + std::to_string(desc.front()) + " outside width " +
                          std::to_string(width));
  }
  const std::uint64_t bits = desc.empty() ? 1 : desc.front() + 1;
  Words core = random_words(bits, rng);
  std::vector<Vertex> out;
  for (const auto& leaf : grow_spine(core, desc, bits, rng)) {
    out.push_back(Vertex::from_words(leaf, width));
  }
  out.push_back(Vertex::from_words(core, width));
  return VertexSet(std::move(out));
}

std::uint64_t typed_set_min_bits(unsigned p, unsigned q, std::size_t size) {
  const std::uint64_t side = std::max(p, q);
  const std::uint64_t split_floor = bits_for_ground(side);
  return split_floor + (size - p - q) + 1;
}

VertexSet random_typed_set(unsigned p, unsigned q, std::size_t size, std::uint64_t window_bits,
                           std::uint64_t width, std::mt19937_64& rng) {
  window_bits = std::min(window_bits, width);
  if (p < 2 || q < 2 || p + q > size) throw InvalidArgument("invalid type request");
  if (window_bits < typed_set_min_bits(p, q, size)) {
    throw InvalidArgument("window of " + std::to_string(window_bits) + " bits is too narrow");
  }
  const std::size_t spine = size - p - q;
  const std::uint64_t floor_bits = bits_for_ground(std::max(p, q));
  std::uniform_int_distribution<std::uint64_t> pick_split(floor_bits, window_bits - spine - 1);
  const std::uint64_t split = pick_split(rng);
  const auto spine_positions = distinct_positions(spine, split + 1, window_bits, rng);

  Words core = random_words(window_bits, rng);
  std::vector<Vertex> out;
  for (const auto& leaf : grow_spine(core, spine_positions, window_bits, rng)) {
    out.push_back(Vertex::from_words(leaf, width));
  }
  for (const auto& [count, bit] : {std::pair{p, false}, std::pair{q, true}}) {
    std::vector<Vertex> side;
    while (side.size() < count) {
      Words w = splice_below(core, random_words(window_bits, rng), split);
      set_bit(w, split, bit);
      Vertex v = Vertex::from_words(w, width);
      if (std::find(side.begin(), side.end(), v) == side.end()) side.push_back(std::move(v));
    }
    out.insert(out.end(), side.begin(), side.end());
  }
  return VertexSet(std::move(out));
}

}  // namespace hyperramsey

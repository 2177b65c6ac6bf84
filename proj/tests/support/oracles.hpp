// Brute-force reference implementations used as test oracles. They work on
// plain 64-bit values and share no code with the library.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using U64 = std::uint64_t;
using Values = std::vector<U64>;

inline int top_diff(U64 x, U64 y) {
  for (int i = 63; i >= 0; --i)
    if (((x >> i) & 1) != ((y >> i) & 1)) return i;
  return -1;
}

struct Split {
  int index = -1;
  Values low, high;
};

// Largest top_diff over all pairs; low = elements without that bit.
inline Split split(const Values& s) {
  Split out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) out.index = std::max(out.index, top_diff(s[i], s[j]));
  for (U64 v : s) ((v >> out.index) & 1 ? out.high : out.low).push_back(v);
  std::sort(out.low.begin(), out.low.end());
  std::sort(out.high.begin(), out.high.end());
  return out;
}

// No 4-subset a<b<c<d splitting as {a,b} | {c,d}.
inline bool caterpillar_by_scan(Values s) {
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const Split sp = split({s[a], s[b], s[c], s[d]});
          if (sp.low.size() == 2) return false;
        }
  return true;
}

inline std::set<U64> delta(const Values& s) {
  std::set<U64> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) out.insert(static_cast<U64>(top_diff(s[i], s[j])));
  return out;
}

// nullopt for caterpillars, else (p, q).
inline std::optional<std::pair<unsigned, unsigned>> type(Values s) {
  while (s.size() >= 2) {
    const Split sp = split(s);
    if (sp.low.size() >= 2 && sp.high.size() >= 2)
      return std::pair<unsigned, unsigned>(static_cast<unsigned>(sp.low.size()),
                                           static_cast<unsigned>(sp.high.size()));
    s = sp.low.size() == 1 ? sp.high : sp.low;
  }
  return std::nullopt;
}

inline std::vector<unsigned> histogram(const Values& v) {
  std::map<U64, unsigned> count;
  for (U64 x : v) ++count[x];
  std::vector<unsigned> out;
  for (const auto& kv : count) out.push_back(kv.second);
  std::sort(out.rbegin(), out.rend());
  return out;
}

// All k-subsets of s, lexicographic.
inline std::vector<Values> subsets(const Values& s, std::size_t k) {
  std::vector<Values> out;
  if (k > s.size()) return out;
  std::vector<bool> pick(s.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    Values sub;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (pick[i]) sub.push_back(s[i]);
    out.push_back(sub);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// True when some target-size subset of [n] is monochromatic in some colour.
// colour gets ascending index lists of length r.
inline std::optional<std::vector<U64>> naive_mono(
    U64 n, std::size_t r, const std::vector<U64>& targets,
    const std::function<unsigned(const Values&)>& colour) {
  Values ground(n);
  for (U64 i = 0; i < n; ++i) ground[i] = i;
  for (unsigned c = 0; c < targets.size(); ++c) {
    if (targets[c] > n) continue;
    for (const Values& s : subsets(ground, targets[c])) {
      bool mono = true;
      for (const Values& e : subsets(s, r))
        if (colour(e) != c) {
          mono = false;
          break;
        }
      if (mono) return s;
    }
  }
  return std::nullopt;
}

// Distinct values below 2^bits; bits grows until 2^bits >= 2 * size.
inline Values random_set(std::mt19937_64& rng, std::size_t size, unsigned bits) {
  while (bits < 64 && (U64{1} << bits) < 2 * size) ++bits;
  std::set<U64> s;
  const U64 mask = bits >= 64 ? ~U64{0} : (U64{1} << bits) - 1;
  while (s.size() < size) s.insert(rng() & mask);
  return Values(s.begin(), s.end());
}

// Distinct values below n, ascending.
inline Values random_below(std::mt19937_64& rng, std::size_t size, U64 n) {
  std::set<U64> s;
  while (s.size() < size) s.insert(rng() % n);
  return Values(s.begin(), s.end());
}

}  // namespace oracle

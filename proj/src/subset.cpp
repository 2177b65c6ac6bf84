#include "hyperramsey/subset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "hyperramsey/error.hpp"
#include "hyperramsey/schur.hpp"
#include "hyperramsey/tower.hpp"

namespace hyperramsey {

std::string_view to_string(PartitionKind kind) {
  switch (kind) {
    case PartitionKind::AllOnes:
      return "all-ones";
    case PartitionKind::Balanced:
      return "balanced";
    case PartitionKind::AlmostBalanced:
      return "almost-balanced";
    case PartitionKind::Other:
      return "other";
  }
  return "?";
}

PartitionClass classify_partition(const IntegerPartition& r) {
  PartitionClass out;
  const auto parts = r.parts();
  if (parts.empty()) return out;
  if (std::all_of(parts.begin(), parts.end(), [](unsigned p) { return p == 1; })) {
    out.kind = PartitionKind::AllOnes;
    return out;
  }
  const std::size_t m = parts.size();
  if (m < 2) return out;
  const bool head_equal = std::all_of(parts.begin(), parts.end() - 1,
                                      [&](unsigned p) { return p == parts[0]; });
  if (head_equal && parts[m - 1] == parts[0]) {
    out.kind = PartitionKind::Balanced;
  } else if (head_equal && parts[m - 1] + 1 == parts[0]) {
    out.kind = PartitionKind::AlmostBalanced;
    out.r0 = parts[0];
    out.deficit_position = m - 1;
  }
  return out;
}

std::pair<unsigned, unsigned> c0(const IntegerPartition& r) {
  if (r.size() == 0) throw InvalidArgument("C0 needs a non-empty partition");
  const unsigned last = r.last();
  const unsigned a = (r.size() + last) % 2 == 0 ? 0 : 1;
  const unsigned b = last == 1 ? 0 : 1;
  return {a, b};
}

Colour c0bar(const IntegerPartition& r, unsigned k) {
  const auto [a, b] = c0(r);
  return k + 2 * a + b;
}

unsigned f_of_r(unsigned r) {
  if (r < 2) throw InvalidArgument("f(r) is defined for r >= 2");
  if (r == 2) return 1;
  if (r == 3) return 3;
  const unsigned p = r + 1;
  bool prime = true;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) {
      prime = false;
      break;
    }
  }
  return prime ? 4 : 5;
}

bool min_appears_last_count(std::span<const std::uint64_t> values, const IntegerPartition& h) {
  const auto lowest = *std::min_element(values.begin(), values.end());
  const auto count = static_cast<unsigned>(std::count(values.begin(), values.end(), lowest));
  return count == h.last();
}

std::vector<Colour> reachable_extras(unsigned r, unsigned k) {
  std::set<Colour> extras;
  for (const auto& h : partitions_of(r)) {
    const auto cls = classify_partition(h);
    if (cls.kind == PartitionKind::AllOnes) continue;
    if (cls.kind == PartitionKind::AlmostBalanced) {
      // the minimum value may sit on the short part or on a long one
      extras.insert(k + 4);
    }
    extras.insert(c0bar(h, k));
  }
  return {extras.begin(), extras.end()};
}

SubsetColouring::SubsetColouring(std::vector<std::uint32_t> vertex_colours, std::uint32_t n,
                                 unsigned r, std::shared_ptr<const Colouring> c2)
    : c1_(std::move(vertex_colours)), n_(n), r_(r), c2_(std::move(c2)) {
  if (r_ < 2) throw InvalidArgument("subset colouring needs r >= 2");
  if (!c2_ || c2_->uniformity() != r_) throw InvalidArgument("C2 must be r-uniform");
  if (const auto g = c2_->ground().exact(); !g || *g < n_) {
    throw InvalidArgument("C2 must colour the r-subsets of at least n labels");
  }
  for (auto c : c1_) {
    if (c >= n_) throw InvalidArgument("vertex colour " + std::to_string(c) + " outside [n]");
  }
  k_ = c2_->colour_count();
  extras_ = reachable_extras(r_, k_);
}

Colour SubsetColouring::raw_colour(std::span<const std::uint32_t> vertices) const {
  if (vertices.size() != r_) throw InvalidArgument("expected an r-subset of vertices");
  std::vector<std::uint64_t> values;
  values.reserve(r_);
  for (auto v : vertices) {
    if (v >= c1_.size()) throw InvalidArgument("vertex " + std::to_string(v) + " has no colour");
    values.push_back(c1_[v]);
  }
  return raw_subset_colour(values, k_, [&](std::span<const std::uint64_t> distinct) {
    return c2_->colour_of_values(distinct);
  });
}

Colour SubsetColouring::compact(Colour raw) const {
  if (raw < k_) return raw;
  const auto it = std::lower_bound(extras_.begin(), extras_.end(), raw);
  if (it == extras_.end() || *it != raw) {
    throw Error("raw colour " + std::to_string(raw) + " is not among the reachable extras");
  }
  return k_ + static_cast<Colour>(it - extras_.begin());
}

Colour SubsetColouring::colour(std::span<const std::uint32_t> vertices) const {
  return compact(raw_colour(vertices));
}

std::vector<std::uint32_t> greedy_vertex_colouring(const Hypergraph& h, unsigned r) {
  const std::uint32_t n = h.vertex_count;
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (h.edges[e].size() < r + 1) continue;
    for (auto v : h.edges[e]) incident[v].push_back(e);
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return incident[a].size() > incident[b].size();
  });
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> colour(n, kUnset);
  for (auto v : order) {
    std::set<std::uint32_t> banned;
    for (auto e : incident[v]) {
      std::optional<std::uint32_t> shared;
      bool uniform = true;
      for (auto u : h.edges[e]) {
        if (u == v) continue;
        if (colour[u] == kUnset || (shared && *shared != colour[u])) {
          uniform = false;
          break;
        }
        shared = colour[u];
      }
      if (uniform && shared) banned.insert(*shared);
    }
    std::uint32_t c = 0;
    while (banned.contains(c)) ++c;
    colour[v] = c;
  }
  return colour;
}

void check_vertex_colouring(const Hypergraph& h, unsigned r, std::span<const std::uint32_t> c1) {
  if (c1.size() != h.vertex_count) {
    throw InvalidData("vertex colouring covers " + std::to_string(c1.size()) + " of " +
                      std::to_string(h.vertex_count) + " vertices");
  }
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto& edge = h.edges[e];
    if (edge.size() < r + 1) continue;
    const bool mono = std::all_of(edge.begin(), edge.end(),
                                  [&](std::uint32_t v) { return c1[v] == c1[edge[0]]; });
    if (mono) {
      throw InvalidData("edge " + std::to_string(e) + " of size " + std::to_string(edge.size()) +
                        " is monochromatic under the vertex colouring");
    }
  }
}

namespace {

std::optional<SchurPartition> small_schur(unsigned k, std::uint32_t span, std::uint64_t budget) {
  auto found = search_schur_partition(k, span, budget);
  return found.partition;
}

}  // namespace

std::pair<std::shared_ptr<const TableColouring>, std::string> certified_c2(
    std::uint32_t n, unsigned r, const SubsetBuildOptions& options, VerificationReport* report) {
  if (r < 2) throw InvalidArgument("C2 needs r >= 2");
  n = std::max<std::uint32_t>(n, 1);
  std::shared_ptr<const TableColouring> table;
  std::string source;
  if (n <= r) {
    table = std::make_shared<TableColouring>(n, r, 1, std::vector<Colour>(binomial(n, r), 0));
    source = "single colour (no (r+1)-subsets of [n])";
  } else if (r == 2) {
    for (unsigned k = 2; k <= 5 && !table; ++k) {
      if (const auto p = small_schur(k, n - 1, options.schur_budget)) {
        SchurEdgeColouring base(*p);
        table = std::make_shared<TableColouring>(TableColouring::tabulate(base, n));
        source = "Schur difference colouring, " + std::to_string(k) + " classes of [" +
                 std::to_string(n - 1) + "]";
      }
    }
  } else {
    for (unsigned k0 = 1; k0 <= 3 && !table; ++k0) {
      const std::uint32_t span = k0 == 1 ? 1 : k0 == 2 ? 4 : 13;
      const auto p = small_schur(k0, span, options.schur_budget);
      if (!p) continue;
      ColouringTowerSpec spec{*p, {StepRule::Doubling23}};
      for (unsigned i = 3; i < r; ++i) spec.steps.push_back(StepRule::Main);
      const auto top = build_tower(spec);
      const auto ground = top.ground().exact();
      if (!top.evaluable() || !ground || *ground < n) continue;
      table = std::make_shared<TableColouring>(TableColouring::tabulate(top, n));
      source = "tower base(" + std::to_string(k0) + " classes of [" + std::to_string(span) +
               "]) dbl23" + (r > 3 ? " main^" + std::to_string(r - 3) : "") +
               " restricted to [" + std::to_string(n) + "]";
    }
  }
  if (!table) {
    throw InvalidData("no certifiable colouring of the " + std::to_string(r) + "-subsets of [" +
                      std::to_string(n) + "] within budget");
  }
  ArrowClaim claim{Ground{n, 0}, r, std::vector<std::uint64_t>(table->colour_count(), r + 1), true};
  auto verdict = verify_exhaustive(*table, claim, options.budget);
  if (!verdict.passed()) {
    throw InvalidData("C2 failed verification of " + claim.to_string() + ": " +
                      std::string(to_string(verdict.verdict)));
  }
  if (report) *report = std::move(verdict);
  return {table, source};
}

SubsetBuildResult build_subset_colouring(const Hypergraph& h, unsigned r,
                                         std::optional<std::vector<std::uint32_t>> c1,
                                         const SubsetBuildOptions& options) {
  if (r < 2) throw InvalidArgument("subset colouring needs r >= 2");
  SubsetBuildResult result;
  if (!c1) {
    c1 = greedy_vertex_colouring(h, r);
    result.greedy_vertex_colouring = true;
  }
  check_vertex_colouring(h, r, *c1);
  std::uint32_t n = 1;
  for (auto c : *c1) n = std::max(n, c + 1);
  auto [table, source] = certified_c2(n, r, options, &result.c2_report);
  result.c2_source = std::move(source);
  result.c2_claim = ArrowClaim{Ground{n, 0}, r,
                               std::vector<std::uint64_t>(table->colour_count(), r + 1), true};
  result.colouring = std::make_shared<SubsetColouring>(std::move(*c1), n, r, table);
  return result;
}

namespace {

// Backtracking over the r-subsets of [n] in colex order; colours open in
// order so permuted solutions are visited once.
class ColouringSearch {
 public:
  ColouringSearch(std::uint32_t n, unsigned r, unsigned k, std::uint64_t budget)
      : n_(n), r_(r), k_(k), budget_(budget) {
    for_each_subset(n, r, [&](std::span<const std::uint32_t> s) {
      subsets_.emplace_back(s.begin(), s.end());
      return true;
    });
    colour_.assign(subsets_.size(), 0);
  }

  bool run() { return place(0, 0); }
  bool aborted() const noexcept { return aborted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::vector<Colour>& colours() const noexcept { return colour_; }

 private:
  // Would giving subset e colour c complete a monochromatic (r+1)-set?
  bool conflicts(std::size_t e, Colour c) {
    const auto& s = subsets_[e];
    std::vector<std::uint32_t> t(r_ + 1);
    std::vector<std::uint32_t> face(r_);
    for (std::uint32_t low = 0; low < s[0]; ++low) {
      t[0] = low;
      std::copy(s.begin(), s.end(), t.begin() + 1);
      bool mono = true;
      for (unsigned drop = 1; drop <= r_ && mono; ++drop) {
        std::size_t o = 0;
        for (unsigned i = 0; i <= r_; ++i) {
          if (i != drop) face[o++] = t[i];
        }
        mono = colour_[colex_rank(face)] == c;
      }
      if (mono) return true;
    }
    return false;
  }

  bool place(std::size_t e, unsigned used) {
    if (e == subsets_.size()) return true;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return false;
    }
    const unsigned limit = std::min(k_, used + 1);
    for (Colour c = 0; c < limit; ++c) {
      if (conflicts(e, c)) continue;
      colour_[e] = c;
      if (place(e + 1, std::max(used, c + 1))) return true;
      if (aborted_) return false;
    }
    return false;
  }

  std::uint32_t n_;
  unsigned r_;
  unsigned k_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint32_t>> subsets_;
  std::vector<Colour> colour_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

KCompleteResult least_colours_without_mono(std::uint32_t ground, unsigned r,
                                           std::uint64_t node_budget) {
  if (r < 2) throw InvalidArgument("r must be at least 2");
  KCompleteResult out;
  if (ground <= r) {
    out.k = 1;
    out.exact = true;
    out.witness.emplace(ground, r, 1, std::vector<Colour>(binomial(ground, r), 0));
    out.note = "no (r+1)-subset exists; one colour suffices vacuously";
    return out;
  }
  bool all_complete = true;
  for (unsigned k = 1; k <= 8; ++k) {
    ColouringSearch search(ground, r, k, node_budget);
    const bool found = search.run();
    out.nodes += search.nodes();
    if (found) {
      out.k = k;
      out.exact = all_complete;
      out.witness.emplace(ground, r, k, search.colours());
      out.note = all_complete ? "certified exact: every smaller colour count was refuted exhaustively"
                              : "upper bound: a smaller colour count was not settled within budget";
      return out;
    }
    if (search.aborted()) all_complete = false;
  }
  throw InvalidArgument("no colouring found with at most 8 colours within budget");
}

KCompleteResult k_complete_lower(unsigned n, unsigned r, std::uint64_t node_budget) {
  if (n < 1) throw InvalidArgument("n must be positive");
  return least_colours_without_mono(n * r, r, node_budget);
}

Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Hypergraph h;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    if (!header) {
      std::string word;
      if (!(words >> word)) continue;
      long long count = -1;
      if (word != "hypergraph" || !(words >> count) || count < 0) {
        throw ParseError(line_no, "expected 'hypergraph <vertex_count>'");
      }
      h.vertex_count = static_cast<std::uint32_t>(count);
      header = true;
      continue;
    }
    std::vector<std::uint32_t> edge;
    long long v = 0;
    while (words >> v) {
      if (v < 0 || v >= h.vertex_count) {
        throw InvalidData("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                          " outside [" + std::to_string(h.vertex_count) + "]");
      }
      edge.push_back(static_cast<std::uint32_t>(v));
    }
    if (!words.eof()) throw ParseError(line_no, "edge lists must be integers");
    if (edge.empty()) continue;
    std::sort(edge.begin(), edge.end());
    if (std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
      throw InvalidData("line " + std::to_string(line_no) + ": edge repeats a vertex");
    }
    if (edge.size() < 2) {
      throw InvalidData("line " + std::to_string(line_no) + ": edges need at least two vertices");
    }
    h.edges.push_back(std::move(edge));
  }
  if (!header) throw ParseError(line_no + 1, "missing 'hypergraph <vertex_count>' header");
  return h;
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open hypergraph '" + path + "'");
  return parse_hypergraph(in);
}

std::vector<std::uint32_t> parse_vertex_colouring(std::istream& in, std::uint32_t vertex_count,
                                                  std::uint32_t* colour_count) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> out(vertex_count, kUnset);
  std::string line;
  std::size_t line_no = 0;
  long long n = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (n < 0) {
      if (first != "colours" || !(words >> n) || n < 1) {
        throw ParseError(line_no, "expected 'colours <n>'");
      }
      continue;
    }
    long long v = -1;
    long long c = -1;
    try {
      v = std::stoll(first);
    } catch (const std::exception&) {
      throw ParseError(line_no, "expected 'vertex colour'");
    }
    if (!(words >> c)) throw ParseError(line_no, "expected 'vertex colour'");
    if (v < 0 || v >= vertex_count) {
      throw InvalidData("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                        " outside the hypergraph");
    }
    if (c < 0 || c >= n) {
      throw InvalidData("line " + std::to_string(line_no) + ": colour " + std::to_string(c) +
                        " outside [" + std::to_string(n) + "]");
    }
    if (out[v] != kUnset) {
      throw InvalidData("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) +
                        " coloured twice");
    }
    out[v] = static_cast<std::uint32_t>(c);
  }
  if (n < 0) throw ParseError(line_no + 1, "missing 'colours <n>' header");
  for (std::uint32_t v = 0; v < vertex_count; ++v) {
    if (out[v] == kUnset) throw InvalidData("vertex " + std::to_string(v) + " has no colour");
  }
  if (colour_count) *colour_count = static_cast<std::uint32_t>(n);
  return out;
}

std::vector<std::uint32_t> load_vertex_colouring(const std::string& path,
                                                 std::uint32_t vertex_count,
                                                 std::uint32_t* colour_count) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open vertex colouring '" + path + "'");
  return parse_vertex_colouring(in, vertex_count, colour_count);
}

}  // namespace hyperramsey

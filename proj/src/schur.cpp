#include "hyperramsey/schur.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hyperramsey/error.hpp"

namespace hyperramsey {

bool is_sum_free(std::span<const std::uint32_t> s) {
  std::vector<std::uint32_t> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i; j < sorted.size(); ++j) {
      const std::uint64_t sum = std::uint64_t{sorted[i]} + sorted[j];
      if (std::binary_search(sorted.begin(), sorted.end(), sum)) return false;
    }
  }
  return true;
}

std::optional<std::string> schur_partition_problem(const SchurPartition& p) {
  std::vector<int> owner(p.span + 1, -1);
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    for (auto x : p.classes[c]) {
      if (x < 1 || x > p.span) {
        return "element " + std::to_string(x) + " of class " + std::to_string(c) +
               " lies outside 1.." + std::to_string(p.span);
      }
      if (owner[x] >= 0) {
        return "element " + std::to_string(x) + " appears in classes " + std::to_string(owner[x]) +
               " and " + std::to_string(c);
      }
      owner[x] = static_cast<int>(c);
    }
  }
  for (std::uint32_t x = 1; x <= p.span; ++x) {
    if (owner[x] < 0) return "element " + std::to_string(x) + " is not covered";
  }
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    const auto& cls = p.classes[c];
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i; j < cls.size(); ++j) {
        const std::uint64_t sum = std::uint64_t{cls[i]} + cls[j];
        if (sum <= p.span && owner[sum] == static_cast<int>(c)) {
          return "class " + std::to_string(c) + " is not sum-free: " + std::to_string(cls[i]) +
                 " + " + std::to_string(cls[j]) + " = " + std::to_string(sum);
        }
      }
    }
  }
  return std::nullopt;
}

bool validate_schur_partition(const SchurPartition& p) { return !schur_partition_problem(p); }

namespace {

class SchurSearch {
 public:
  SchurSearch(unsigned k, std::uint32_t span, std::uint64_t budget)
      : k_(k), span_(span), budget_(budget), owner_(span + 1, -1) {}

  SchurSearchResult run() {
    SchurSearchResult result;
    const bool found = k_ > 0 && place(1, 0);
    result.nodes = nodes_;
    result.exhaustive = !aborted_;
    if (found) {
      SchurPartition p{span_, std::vector<std::vector<std::uint32_t>>(k_)};
      for (std::uint32_t x = 1; x <= span_; ++x) p.classes[owner_[x]].push_back(x);
      result.partition = std::move(p);
    }
    return result;
  }

 private:
  bool fits(std::uint32_t x, int c) const {
    for (std::uint32_t y = 1; 2 * y <= x; ++y) {
      if (owner_[y] == c && owner_[x - y] == c) return false;
    }
    return true;
  }

  // Places x..span; `used` classes are open, the next one may be opened.
  bool place(std::uint32_t x, unsigned used) {
    if (x > span_) return true;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return false;
    }
    const unsigned limit = std::min(k_, used + 1);
    for (unsigned c = 0; c < limit; ++c) {
      if (!fits(x, static_cast<int>(c))) continue;
      owner_[x] = static_cast<int>(c);
      if (place(x + 1, std::max(used, c + 1))) return true;
      owner_[x] = -1;
      if (aborted_) return false;
    }
    return false;
  }

  unsigned k_;
  std::uint32_t span_;
  std::uint64_t budget_;
  std::vector<int> owner_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

SchurSearchResult search_schur_partition(unsigned k, std::uint32_t span, std::uint64_t node_budget) {
  return SchurSearch(k, span, node_budget).run();
}

SchurPartition compose_partitions(const SchurPartition& p, const SchurPartition& q) {
  if (const auto problem = schur_partition_problem(p)) {
    throw InvalidData("first partition is invalid: " + *problem);
  }
  if (const auto problem = schur_partition_problem(q)) {
    throw InvalidData("second partition is invalid: " + *problem);
  }
  const std::uint64_t s = p.span;
  const std::uint64_t t = q.span;
  const std::uint64_t span = 2 * s * t + s + t;
  if (span > 0xFFFFFFFFULL) throw InvalidArgument("composed span does not fit in 32 bits");
  const std::uint64_t modulus = 2 * s + 1;

  std::vector<Colour> p_class(s + 1);
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    for (auto x : p.classes[c]) p_class[x] = static_cast<Colour>(c);
  }
  std::vector<Colour> q_class(t + 1);
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    for (auto x : q.classes[c]) q_class[x] = static_cast<Colour>(c);
  }

  SchurPartition out{static_cast<std::uint32_t>(span),
                     std::vector<std::vector<std::uint32_t>>(p.classes.size() + q.classes.size())};
  for (std::uint64_t x = 1; x <= span; ++x) {
    // balanced residue b in [-s, s]
    std::uint64_t a = x / modulus;
    std::int64_t b = static_cast<std::int64_t>(x % modulus);
    if (b > static_cast<std::int64_t>(s)) {
      b -= static_cast<std::int64_t>(modulus);
      ++a;
    }
    const std::size_t cls =
        b > 0 ? p_class[static_cast<std::size_t>(b)] : p.classes.size() + q_class[a];
    out.classes[cls].push_back(static_cast<std::uint32_t>(x));
  }
  if (const auto problem = schur_partition_problem(out)) {
    throw InvalidData("composition produced an invalid partition: " + *problem);
  }
  return out;
}

std::string format_schur_certificate(const SchurPartition& p) {
  std::ostringstream out;
  out << "schur " << p.classes.size() << ' ' << p.span << '\n';
  for (const auto& cls : p.classes) {
    for (std::size_t i = 0; i < cls.size(); ++i) out << (i ? " " : "") << cls[i];
    out << '\n';
  }
  return out.str();
}

SchurPartition parse_schur_certificate(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(line_no + 1, "missing 'schur k span' header");
  std::istringstream header(line);
  std::string word;
  long long k = -1;
  long long span = -1;
  if (!(header >> word >> k >> span) || word != "schur" || k < 1 || span < 0) {
    throw ParseError(line_no, "expected 'schur <k> <span>' header");
  }
  if (header >> word) throw ParseError(line_no, "trailing text after header");

  SchurPartition p;
  p.span = static_cast<std::uint32_t>(span);
  std::vector<std::size_t> owner_line(p.span + 1, 0);
  for (long long c = 0; c < k; ++c) {
    if (!next_line()) {
      throw ParseError(line_no + 1, "expected " + std::to_string(k) + " class lines, found " +
                                        std::to_string(c));
    }
    std::istringstream row(line);
    std::vector<std::uint32_t> cls;
    std::string tok;
    while (row >> tok) {
      long long x = 0;
      try {
        std::size_t used = 0;
        x = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(line_no, "'" + tok + "' is not an integer");
      }
      if (x < 1 || x > span) {
        throw InvalidData("line " + std::to_string(line_no) + ": element " + std::to_string(x) +
                          " outside 1.." + std::to_string(span));
      }
      if (!cls.empty() && static_cast<std::uint32_t>(x) <= cls.back()) {
        throw ParseError(line_no, "class elements must be strictly ascending at " + tok);
      }
      if (owner_line[x] != 0) {
        throw InvalidData("line " + std::to_string(line_no) + ": element " + std::to_string(x) +
                          " already appears on line " + std::to_string(owner_line[x]));
      }
      owner_line[x] = line_no;
      cls.push_back(static_cast<std::uint32_t>(x));
    }
    if (!is_sum_free(cls)) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i; j < cls.size(); ++j) {
          const auto sum = cls[i] + cls[j];
          if (std::binary_search(cls.begin(), cls.end(), sum)) {
            throw InvalidData("line " + std::to_string(line_no) + ": class is not sum-free (" +
                              std::to_string(cls[i]) + " + " + std::to_string(cls[j]) + " = " +
                              std::to_string(sum) + ")");
          }
        }
      }
    }
    p.classes.push_back(std::move(cls));
  }
  if (next_line()) throw ParseError(line_no, "unexpected extra line after the classes");
  for (std::uint32_t x = 1; x <= p.span; ++x) {
    if (owner_line[x] == 0) throw InvalidData("element " + std::to_string(x) + " is not covered");
  }
  return p;
}

SchurPartition load_schur_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open certificate '" + path + "'");
  return parse_schur_certificate(in);
}

SchurEdgeColouring::SchurEdgeColouring(SchurPartition partition)
    : partition_(std::move(partition)) {
  if (const auto problem = schur_partition_problem(partition_)) {
    throw InvalidData("invalid Schur partition: " + *problem);
  }
  class_of_.assign(partition_.span + 1, 0);
  for (std::size_t c = 0; c < partition_.classes.size(); ++c) {
    for (auto x : partition_.classes[c]) class_of_[x] = static_cast<Colour>(c);
  }
}

Colour SchurEdgeColouring::colour_of_pair(std::uint64_t x, std::uint64_t y) const {
  const std::uint64_t d = x > y ? x - y : y - x;
  if (d == 0 || x > partition_.span || y > partition_.span) {
    throw InvalidArgument("pair {" + std::to_string(x) + "," + std::to_string(y) +
                          "} is not a pair of [" + std::to_string(partition_.span + 1) + "]");
  }
  return class_of_[d];
}

Colour SchurEdgeColouring::colour(std::span<const Vertex> subset) const {
  if (subset.size() != 2) throw InvalidArgument("edge colouring expects a pair");
  if (subset[0].width() != vertex_width() || subset[1].width() != vertex_width()) {
    throw InvalidArgument("vertex width mismatch at the base level");
  }
  return colour_of_pair(subset[0].to_u64(), subset[1].to_u64());
}

ArrowClaim SchurEdgeColouring::claim() const {
  return ArrowClaim{ground(), 2, std::vector<std::uint64_t>(colour_count(), 3), true};
}

}  // namespace hyperramsey

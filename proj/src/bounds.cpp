#include "hyperramsey/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hyperramsey/error.hpp"
#include "hyperramsey/tower.hpp"

namespace hyperramsey {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

TowerValue lower_one(const TowerValue& v) { return TowerValue{v.height - 1, v.top}; }

TowerValue exp2_of(TowerValue v) {
  if (v.height == 0 && v.top >= 0 && v.top < TowerValue::kMaxBits) {
    BigInt out = 1;
    out <<= static_cast<unsigned>(v.top);
    return TowerValue{0, out};
  }
  ++v.height;
  return v;
}

// -1, 0, 1 as a compares to b.
int compare(const TowerValue& a, const TowerValue& b) {
  if (a.height == b.height) return a.top < b.top ? -1 : (a.top == b.top ? 0 : 1);
  if (a.height > b.height) return -compare(b, a);
  if (a.height > 0) return compare(lower_one(a), lower_one(b));
  // a is a plain number, b = 2^b' with b' >= 0.
  if (a.top <= 0) return -1;
  const auto m = boost::multiprecision::msb(a.top);
  const bool pow2 = boost::multiprecision::lsb(a.top) == m;
  const int c = compare(TowerValue{0, BigInt(m)}, lower_one(b));
  if (c < 0) return -1;
  if (c > 0) return 1;
  return pow2 ? 0 : 1;
}

std::string fixed(double x, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, x);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string validity_note(bool valid) { return valid ? "" : " (outside validity)"; }

}  // namespace

std::strong_ordering operator<=>(const TowerValue& a, const TowerValue& b) {
  const int c = compare(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c == 0 ? std::strong_ordering::equal : std::strong_ordering::greater);
}

std::optional<BigInt> TowerValue::exact() const {
  if (height == 0) return top;
  return std::nullopt;
}

std::string TowerValue::to_string() const {
  std::string out;
  for (std::uint32_t i = 0; i < height; ++i) out += "2^";
  const std::string t = top.str();
  return height > 0 && top < 0 ? out + "(" + t + ")" : out + t;
}

TowerValue tower(unsigned r, const BigInt& x) {
  if (r == 0) throw InvalidArgument("tower height must be at least 1");
  TowerValue v{0, x};
  for (unsigned i = 1; i < r; ++i) v = exp2_of(v);
  return v;
}

double alpha() { return std::log2(1073.0) / 6.0; }

std::string alpha_digits(unsigned places) {
  const Float50 a = boost::multiprecision::log(Float50(1073)) / boost::multiprecision::log(Float50(2)) / 6;
  std::ostringstream out;
  out << std::fixed << std::setprecision(static_cast<int>(places)) << a;
  return out.str();
}

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::Lower ? "lower" : "upper";
}

std::string BoundRow::argument() const {
  if (!numeric) return symbolic;
  std::string out = fixed(numeric_argument(), 4);
  if (!symbolic.empty()) out += "+" + symbolic;
  return out;
}

std::string BoundRow::expression() const {
  std::string out = "r_" + std::to_string(k) + "(" + std::to_string(s) + ";" + std::to_string(r) +
                    (kind == BoundKind::Lower ? ") > " : ") <= ");
  return out + "twr_" + std::to_string(height) + "(" + argument() + ")";
}

bool corollary_valid(unsigned k, unsigned r, unsigned target_offset) {
  if (r < 3) return false;
  const long floor_5r_2 = (5L * r) / 2;
  if (target_offset == 1) return r == 3 ? k >= 4 : static_cast<long>(k) >= floor_5r_2 - 5;
  if (target_offset == 2) return r == 3 ? k >= 2 : static_cast<long>(k) >= floor_5r_2 - 7;
  return false;
}

namespace {

BoundRow corollary_row(unsigned k, unsigned r, unsigned target_offset) {
  if (r < 3) throw InvalidArgument("the corollary needs r >= 3");
  if (target_offset != 1 && target_offset != 2)
    throw InvalidArgument("target must be r+1 or r+2");
  BoundRow row;
  row.k = k;
  row.r = r;
  row.s = r + target_offset;
  row.kind = BoundKind::Lower;
  row.height = r;
  row.slope = target_offset == 1 ? alpha() / 2 : alpha();
  row.offset = -row.slope * (5.0 * r / 2.0);
  row.symbolic = "beta";
  row.within_validity = corollary_valid(k, r, target_offset);
  row.source = std::string("step-up") + validity_note(row.within_validity);
  return row;
}

}  // namespace

BoundRow corollary_bound(unsigned k, unsigned r, unsigned target_offset) {
  BoundRow row = corollary_row(k, r, target_offset);
  if (!row.within_validity)
    throw InvalidArgument("k = " + std::to_string(k) + " is below the range of the bound for r = " +
                          std::to_string(r) + ", s = r+" + std::to_string(target_offset));
  return row;
}

std::pair<ChainRow, ChainRow> chain_bounds(std::uint64_t K, std::uint64_t s, std::uint64_t n,
                                           unsigned t) {
  if (s < 4) throw InvalidArgument("the base n -/-> (s)^3 needs s >= 4");
  auto make = [&](unsigned steps, std::uint64_t target, std::uint64_t printed) {
    ChainRow row;
    row.steps = steps;
    row.claim.ground = Ground{n, steps};
    row.claim.uniformity = 3 + steps;
    row.claim.targets.assign(printed, target);
    row.claim.negated = true;
    std::uint64_t effective = K + 2;
    for (unsigned i = 0; i < steps; ++i) effective += eta_effective(3 + i);
    row.effective_colours = effective;
    row.eta_flag = effective != printed;
    return row;
  };
  ChainRow a = make(2 * t + 1, s + 2 * t + 1, K + 5 * std::uint64_t{t} + 3);
  a.source = "chain, even uniformity";
  ChainRow b = make(2 * t + 2, s + 2 * t + 2, K + 5 * std::uint64_t{t} + 5);
  b.source = "chain, odd uniformity";
  return {std::move(a), std::move(b)};
}

double Log(double x) { return std::max(1.0, std::log2(x)); }

double iterated_Log(double x, unsigned times) {
  for (unsigned i = 0; i < times; ++i) x = Log(x);
  return x;
}

Bracket k_n_r_bracket(std::uint64_t n, unsigned r) {
  if (r < 2 || n < r) throw InvalidArgument("the bracket needs n >= r >= 2");
  const double rn = static_cast<double>(n) * r;
  Bracket b;
  b.lower = iterated_Log(rn, r - 1) / iterated_Log(rn, r) / 3.0;
  b.upper = 2.0 / alpha() * iterated_Log(rn, r - 1) + 5.0 * r / 2.0;
  return b;
}

std::vector<BoundRow> comparison_table(unsigned r, unsigned k_min, unsigned k_max) {
  if (r < 2) throw InvalidArgument("uniformity must be at least 2");
  if (k_min < 2 || k_min > k_max) throw InvalidArgument("empty or invalid k range");
  std::vector<BoundRow> rows;
  for (unsigned k = k_min; k <= k_max; ++k) {
    if (r >= 3) {
      rows.push_back(corollary_row(k, r, 1));
      rows.push_back(corollary_row(k, r, 2));
    }
    BoundRow aglm;
    aglm.k = k;
    aglm.r = r;
    aglm.s = r + 1;
    aglm.height = r;
    aglm.slope = 1.0 / std::ldexp(1.0, static_cast<int>(r));
    aglm.within_validity = k > r * (1u << r);
    aglm.source = "AGLM" + validity_note(aglm.within_validity);
    rows.push_back(aglm);
    if (r == 3) {
      BoundRow prior;
      prior.k = k;
      prior.r = 3;
      prior.s = 5;
      prior.height = 3;
      prior.slope = 1.0;
      prior.symbolic = "O(1)";
      prior.source = "BBH18";
      rows.push_back(prior);
    }
    for (unsigned off = 1; off <= 2; ++off) {
      BoundRow er;
      er.k = k;
      er.r = r;
      er.s = r + off;
      er.kind = BoundKind::Lower;
      er.height = r;
      er.numeric = false;
      er.symbolic = "c'*k";
      er.source = "Erdos-Rado (s large)";
      rows.push_back(er);
      BoundRow up = er;
      up.kind = BoundKind::Upper;
      up.numeric = true;
      up.symbolic.clear();
      up.slope = 3.0 * off * std::log2(static_cast<double>(k));
      up.source = "Erdos-Rado, c <= 3(s-r)";
      rows.push_back(up);
    }
  }
  return rows;
}

std::string format_rows_text(const std::vector<BoundRow>& rows) {
  const std::vector<std::string> header{"k", "r", "s", "kind", "height", "argument", "source"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& row : rows) {
    cells.push_back({std::to_string(row.k), std::to_string(row.r), std::to_string(row.s),
                     std::string(to_string(row.kind)), std::to_string(row.height), row.argument(),
                     row.source});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::string out;
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      text += line[i];
      if (i + 1 < line.size()) text += std::string(width[i] - line[i].size() + 2, ' ');
    }
    out += text + "\n";
  }
  return out;
}

std::string format_rows_tsv(const std::vector<BoundRow>& rows) {
  std::string out = "k\tr\ts\tkind\theight\targument\tsource\n";
  for (const auto& row : rows) {
    out += std::to_string(row.k) + "\t" + std::to_string(row.r) + "\t" + std::to_string(row.s) +
           "\t" + std::string(to_string(row.kind)) + "\t" + std::to_string(row.height) + "\t" +
           row.argument() + "\t" + row.source + "\n";
  }
  return out;
}

}  // namespace hyperramsey

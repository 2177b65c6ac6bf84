#include "hyperramsey/vertex.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "hyperramsey/error.hpp"

namespace hyperramsey {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void Vertex::trim() noexcept {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Vertex Vertex::from_words(std::span<const Word> words, std::uint64_t width) {
  Vertex v;
  v.width_ = width;
  v.words_.assign(words.begin(), words.end());
  v.trim();
  if (v.bit_length() > width) {
    throw InvalidArgument("value needs " + std::to_string(v.bit_length()) +
                          " bits but width is " + std::to_string(width));
  }
  return v;
}

Vertex Vertex::from_positions(std::span<const std::uint64_t> positions, std::uint64_t width) {
  Vertex v;
  v.width_ = width;
  for (std::uint64_t p : positions) {
    if (p >= width) {
      throw InvalidArgument("bit position " + std::to_string(p) + " outside width " +
                            std::to_string(width));
    }
    const std::size_t word = p / kWordBits;
    if (v.words_.size() <= word) v.words_.resize(word + 1, 0);
    v.words_[word] |= Word{1} << (p % kWordBits);
  }
  v.trim();
  return v;
}

Vertex Vertex::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || slash == 0) {
    throw InvalidArgument("vertex '" + std::string(text) + "' is not of the form <hex>/<width>");
  }
  std::uint64_t width = 0;
  const auto wtext = text.substr(slash + 1);
  const auto [ptr, ec] = std::from_chars(wtext.data(), wtext.data() + wtext.size(), width);
  if (ec != std::errc{} || ptr != wtext.data() + wtext.size()) {
    throw InvalidArgument("vertex '" + std::string(text) + "' has a malformed width");
  }
  const auto hex = text.substr(0, slash);
  std::vector<Word> words((hex.size() + 15) / 16, 0);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const int d = hex_value(hex[hex.size() - 1 - i]);
    if (d < 0) throw InvalidArgument("vertex '" + std::string(text) + "' has a non-hex digit");
    words[i / 16] |= static_cast<Word>(d) << (4 * (i % 16));
  }
  return from_words(words, width);
}

bool Vertex::test(std::uint64_t position) const noexcept {
  const std::uint64_t word = position / kWordBits;
  if (word >= words_.size()) return false;
  return (words_[word] >> (position % kWordBits)) & 1U;
}

std::optional<std::uint64_t> Vertex::highest_bit() const noexcept {
  if (words_.empty()) return std::nullopt;
  const Word top = words_.back();
  return (words_.size() - 1) * kWordBits + (kWordBits - 1 - std::countl_zero(top));
}

std::uint64_t Vertex::bit_length() const noexcept {
  const auto h = highest_bit();
  return h ? *h + 1 : 0;
}

std::vector<std::uint64_t> Vertex::set_bits() const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w];
    while (bits != 0) {
      const int tz = std::countr_zero(bits);
      out.push_back(w * kWordBits + static_cast<std::uint64_t>(tz));
      bits &= bits - 1;
    }
  }
  return out;
}

std::uint64_t Vertex::to_u64() const {
  if (!fits_u64()) throw InvalidArgument("vertex " + to_string() + " does not fit in 64 bits");
  return words_.empty() ? 0 : words_[0];
}

Vertex Vertex::with_width(std::uint64_t width) const {
  if (bit_length() > width) {
    throw InvalidArgument("vertex " + to_string() + " does not fit width " + std::to_string(width));
  }
  Vertex v = *this;
  v.width_ = width;
  return v;
}

std::string Vertex::to_string() const {
  std::string hex;
  if (words_.empty()) {
    hex = "0";
  } else {
    for (std::size_t w = words_.size(); w-- > 0;) {
      for (int nibble = 15; nibble >= 0; --nibble) {
        const auto d = static_cast<unsigned>((words_[w] >> (4 * nibble)) & 0xF);
        if (hex.empty() && d == 0) continue;
        hex.push_back(kHexDigits[d]);
      }
    }
  }
  return hex + "/" + std::to_string(width_);
}

std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) noexcept {
  if (a.words_.size() != b.words_.size()) return a.words_.size() <=> b.words_.size();
  for (std::size_t w = a.words_.size(); w-- > 0;) {
    if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
  }
  return std::strong_ordering::equal;
}

Vertex make_vertex(std::uint64_t value, std::uint64_t width) {
  const Vertex::Word w[1] = {value};
  return Vertex::from_words(w, width);
}

std::strong_ordering compare_vertices(const Vertex& x, const Vertex& y) {
  if (x.width() != y.width()) {
    throw InvalidArgument("cannot compare vertices of widths " + std::to_string(x.width()) +
                          " and " + std::to_string(y.width()));
  }
  return x <=> y;
}

std::optional<std::uint64_t> highest_differing_bit(const Vertex& x, const Vertex& y) noexcept {
  const auto xw = x.words();
  const auto yw = y.words();
  const std::size_t n = std::max(xw.size(), yw.size());
  for (std::size_t w = n; w-- > 0;) {
    const Vertex::Word a = w < xw.size() ? xw[w] : 0;
    const Vertex::Word b = w < yw.size() ? yw[w] : 0;
    if (a != b) {
      return w * Vertex::kWordBits + (Vertex::kWordBits - 1 - std::countl_zero(a ^ b));
    }
  }
  return std::nullopt;
}

Vertex random_vertex(std::uint64_t window_bits, std::uint64_t width, std::mt19937_64& rng) {
  window_bits = std::min(window_bits, width);
  std::vector<Vertex::Word> words((window_bits + Vertex::kWordBits - 1) / Vertex::kWordBits);
  for (auto& w : words) w = rng();
  if (const auto rem = window_bits % Vertex::kWordBits; rem != 0 && !words.empty()) {
    words.back() &= (Vertex::Word{1} << rem) - 1;
  }
  return Vertex::from_words(words, width);
}

std::uint64_t bits_for_ground(std::uint64_t n) noexcept {
  if (n <= 2) return 1;
  return static_cast<std::uint64_t>(std::bit_width(n - 1));
}

}  // namespace hyperramsey

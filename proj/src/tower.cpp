#include "hyperramsey/tower.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hyperramsey/error.hpp"

namespace hyperramsey {

std::string_view to_string(StepRule rule) {
  switch (rule) {
    case StepRule::Main:
      return "main";
    case StepRule::Caterpillar23:
      return "cat23";
    case StepRule::Doubling23:
      return "dbl23";
  }
  return "?";
}

unsigned eta(unsigned r) {
  if (r < 3) throw InvalidArgument("eta is defined for r >= 3");
  if (r == 3) return 1;
  return r % 2 == 0 ? 2 : 3;
}

Colour main_step_raw_colour(unsigned r, unsigned k, SplitType t) {
  const unsigned p = t.p;
  const unsigned q = t.q;
  if (p < 2 || q < 2 || p + q > r + 1) {
    throw InvalidArgument("type (" + std::to_string(p) + "," + std::to_string(q) +
                          ") cannot occur among " + std::to_string(r + 1) + "-sets");
  }
  if (p + q == r + 1) {
    if (p % 2 == 0) return k;
    return r % 2 == 1 ? 0 : k + 2;
  }
  return (p + q) % 2 == 0 ? k + 1 : 1;
}

std::vector<Colour> main_step_extra_colours(unsigned r, unsigned k) {
  if (r < 3) throw InvalidArgument("main step needs r >= 3");
  std::set<Colour> extras;
  for (unsigned p = 2; p + 2 <= r + 1; ++p) {
    for (unsigned q = 2; p + q <= r + 1; ++q) {
      const Colour c = main_step_raw_colour(r, k, SplitType{p, q});
      if (c >= k) extras.insert(c);
    }
  }
  return {extras.begin(), extras.end()};
}

unsigned eta_effective(unsigned r) {
  return static_cast<unsigned>(main_step_extra_colours(r, 2).size());
}

namespace detail {

// Bounded FIFO memo of subset colours for one level.
class Memo {
 public:
  explicit Memo(std::size_t capacity) : capacity_(capacity) {}

  std::optional<Colour> find(const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void insert(std::string key, Colour c) {
    std::lock_guard lock(mutex_);
    if (map_.contains(key)) return;
    if (order_.size() >= capacity_) {
      map_.erase(order_.front());
      order_.pop_front();
    }
    order_.push_back(key);
    map_.emplace(std::move(key), c);
  }

 private:
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Colour> map_;
  std::deque<std::string> order_;
};

struct Tower {
  ColouringTowerSpec spec;
  TowerOptions options;
  std::unique_ptr<SchurEdgeColouring> base;
  std::vector<LevelInfo> levels;
  std::vector<std::unique_ptr<Memo>> memos;
};

}  // namespace detail

namespace {

std::string memo_key(std::span<const Vertex> subset) {
  std::string key;
  for (const auto& v : subset) {
    const auto words = v.words();
    const auto n = static_cast<std::uint32_t>(words.size());
    key.append(reinterpret_cast<const char*>(&n), sizeof n);
    key.append(reinterpret_cast<const char*>(words.data()), words.size() * sizeof(Vertex::Word));
  }
  return key;
}

std::vector<std::uint64_t> incremented(const std::vector<std::uint64_t>& targets,
                                       std::uint64_t by) {
  std::vector<std::uint64_t> out = targets;
  for (auto& s : out) s += by;
  return out;
}

LevelInfo step_level(const LevelInfo& prev, StepRule rule, std::size_t index,
                     std::uint64_t base_ground, std::uint64_t cap) {
  LevelInfo next;
  next.rule = rule;
  next.uniformity = prev.uniformity + 1;
  next.ground = Ground{base_ground, static_cast<std::uint32_t>(index)};
  next.width = prev.ground.exact();
  const std::string where = "step " + std::to_string(index) + " (" + std::string(to_string(rule)) + ")";

  switch (rule) {
    case StepRule::Caterpillar23:
    case StepRule::Doubling23: {
      if (index != 1 || prev.uniformity != 2) {
        throw InvalidData(where + ": 2 -> 3 rules apply only as the first step on a 2-uniform base");
      }
      if (rule == StepRule::Caterpillar23) {
        for (auto s : prev.claim.targets) {
          if (s != 3) throw InvalidData(where + ": cat23 needs every base target to be 3");
        }
        next.colour_count = prev.colour_count;
        next.claim.targets.assign(prev.colour_count, 5);
      } else {
        next.colour_count = 2 * prev.colour_count;
        next.claim.targets.clear();
        for (auto s : prev.claim.targets) {
          next.claim.targets.push_back(s + 1);
          next.claim.targets.push_back(s + 1);
        }
      }
      next.claim_printed_eta.targets = next.claim.targets;
      break;
    }
    case StepRule::Main: {
      const unsigned r = prev.uniformity;
      if (r < 3) {
        throw InvalidData(where + ": main step needs uniformity >= 3 but the level has uniformity " +
                          std::to_string(r) + " < 3");
      }
      if (prev.colour_count < 2) throw InvalidData(where + ": main step needs at least two colours");
      if (const auto n = prev.ground.exact(); n && *n <= r) {
        throw InvalidData(where + ": main step needs a ground set larger than r");
      }
      next.eta_printed = eta(r);
      next.extra_colours = main_step_extra_colours(r, prev.colour_count);
      next.eta_effective = static_cast<unsigned>(next.extra_colours.size());
      for (unsigned i = 0; i < next.eta_effective; ++i) {
        if (next.extra_colours[i] != prev.colour_count + i) {
          throw Error(where + ": extra colours are not a prefix of k, k+1, k+2");
        }
      }
      next.colour_count = prev.colour_count + next.eta_effective;
      next.claim.targets = incremented(prev.claim.targets, 1);
      next.claim.targets.insert(next.claim.targets.end(), next.eta_effective, r + 2);
      next.claim_printed_eta.targets = incremented(prev.claim_printed_eta.targets, 1);
      next.claim_printed_eta.targets.insert(next.claim_printed_eta.targets.end(), next.eta_printed,
                                            r + 2);
      break;
    }
  }
  for (ArrowClaim* c : {&next.claim, &next.claim_printed_eta}) {
    c->ground = next.ground;
    c->uniformity = next.uniformity;
    c->negated = true;
  }
  if (!next.width) {
    next.evaluation_limit = "label width " + prev.ground.to_string() +
                            " is not representable; claim bookkeeping only";
  } else if (*next.width > cap) {
    next.evaluation_limit = "labels limited to the low " + std::to_string(cap) +
                            " bits by the width cap (level width " + std::to_string(*next.width) + ")";
  }
  return next;
}

void check_ascending(std::span<const Vertex> subset) {
  for (std::size_t i = 1; i < subset.size(); ++i) {
    if (!(subset[i - 1] < subset[i])) {
      throw InvalidArgument("subset must be strictly ascending");
    }
  }
}

std::vector<Vertex> reencode(std::span<const std::uint64_t> indices, std::uint64_t width) {
  std::vector<Vertex> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(make_vertex(i, width));
  return out;
}

Colour main_step_unchecked(const ColouringHandle& f_r, std::span<const Vertex> subset) {
  const SplitShape shape(subset);
  const LevelInfo& prev = f_r.info();
  if (shape.caterpillar()) {
    const auto d = shape.sorted_delta();
    const auto lower = reencode({d.data(), d.size()}, f_r.vertex_width());
    return f_r.colour(std::span<const Vertex>(lower));
  }
  const unsigned k = prev.colour_count;
  const Colour raw = main_step_raw_colour(prev.uniformity, k, shape.type());
  // The reachable extras always form a prefix of k, k+1, k+2 (checked when
  // the level is built), so compaction leaves raw colours unchanged.
  return raw;
}

Colour caterpillar23_unchecked(const ColouringHandle& f_2, std::span<const Vertex> triple) {
  const SplitShape shape(triple);
  const auto d = shape.sorted_delta();
  const auto lower = reencode({d.data(), d.size()}, f_2.vertex_width());
  return f_2.colour(std::span<const Vertex>(lower));
}

Colour doubling23_unchecked(const ColouringHandle& f_2, std::span<const Vertex> triple) {
  const std::uint64_t d1 = *highest_differing_bit(triple[0], triple[1]);
  const std::uint64_t d2 = *highest_differing_bit(triple[1], triple[2]);
  const std::uint64_t pair[2] = {std::min(d1, d2), std::max(d1, d2)};
  const auto lower = reencode(pair, f_2.vertex_width());
  return 2 * f_2.colour(std::span<const Vertex>(lower)) + (d1 < d2 ? 1 : 0);
}

void check_stepped_subset(const ColouringHandle& prev, std::span<const Vertex> subset,
                          std::size_t expected_size, std::uint64_t cap) {
  if (subset.size() != expected_size) {
    throw InvalidArgument("expected a " + std::to_string(expected_size) + "-subset, got " +
                          std::to_string(subset.size()) + " elements");
  }
  const auto width = prev.ground().exact();
  if (!width) throw WidthCapExceeded("label width " + prev.ground().to_string() + " is not representable");
  for (const auto& v : subset) {
    if (v.width() != *width) {
      throw InvalidArgument("vertex " + v.to_string() + " has width " + std::to_string(v.width()) +
                            ", level expects " + std::to_string(*width));
    }
    if (v.bit_length() > cap) {
      throw WidthCapExceeded("vertex needs " + std::to_string(v.bit_length()) +
                             " bits, beyond the width cap of " + std::to_string(cap));
    }
  }
  check_ascending(subset);
}

}  // namespace

ColouringHandle build_tower(const ColouringTowerSpec& spec, const TowerOptions& options) {
  auto tower = std::make_shared<detail::Tower>();
  tower->spec = spec;
  tower->options = options;
  tower->base = std::make_unique<SchurEdgeColouring>(spec.base);

  LevelInfo base;
  base.uniformity = 2;
  base.colour_count = tower->base->colour_count();
  base.ground = tower->base->ground();
  base.width = tower->base->vertex_width();
  base.claim = tower->base->claim();
  base.claim_printed_eta = base.claim;
  tower->levels.push_back(std::move(base));

  for (std::size_t i = 0; i < spec.steps.size(); ++i) {
    tower->levels.push_back(step_level(tower->levels.back(), spec.steps[i], i + 1,
                                       spec.base.span + 1ULL, options.width_cap_bits));
  }
  for (std::size_t i = 0; i < tower->levels.size(); ++i) {
    tower->memos.push_back(options.memo_capacity > 0
                               ? std::make_unique<detail::Memo>(options.memo_capacity)
                               : nullptr);
  }
  const std::size_t top = tower->levels.size() - 1;
  return ColouringHandle(std::move(tower), top);
}

const LevelInfo& ColouringHandle::info() const { return tower_->levels[level_]; }
std::size_t ColouringHandle::depth() const { return tower_->levels.size(); }
const ColouringTowerSpec& ColouringHandle::spec() const { return tower_->spec; }
const TowerOptions& ColouringHandle::options() const { return tower_->options; }
const SchurEdgeColouring& ColouringHandle::base() const { return *tower_->base; }

ColouringHandle ColouringHandle::at_level(std::size_t level) const {
  if (level >= tower_->levels.size()) throw InvalidArgument("tower has no level " + std::to_string(level));
  return ColouringHandle(tower_, level);
}

ColouringHandle ColouringHandle::previous() const {
  if (level_ == 0) throw InvalidArgument("the base level has no predecessor");
  return ColouringHandle(tower_, level_ - 1);
}

bool ColouringHandle::evaluable() const { return info().width.has_value(); }

std::uint64_t ColouringHandle::vertex_width() const {
  const auto& w = info().width;
  if (!w) throw WidthCapExceeded("level " + std::to_string(level_) + ": " + info().evaluation_limit);
  return *w;
}

std::uint64_t ColouringHandle::evaluable_bits() const {
  return std::min(vertex_width(), tower_->options.width_cap_bits);
}

Colour ColouringHandle::colour(std::span<const Vertex> subset) const {
  if (level_ == 0) return tower_->base->colour(subset);
  check_stepped_subset(previous(), subset, uniformity(), tower_->options.width_cap_bits);
  return evaluate_unchecked(subset);
}

Colour ColouringHandle::evaluate_unchecked(std::span<const Vertex> subset) const {
  const auto& memo = tower_->memos[level_];
  if (!memo) return compute(subset);
  auto key = memo_key(subset);
  if (const auto hit = memo->find(key)) return *hit;
  const Colour c = compute(subset);
  memo->insert(std::move(key), c);
  return c;
}

Colour ColouringHandle::compute(std::span<const Vertex> subset) const {
  const ColouringHandle prev = previous();
  switch (*info().rule) {
    case StepRule::Main:
      return main_step_unchecked(prev, subset);
    case StepRule::Caterpillar23:
      return caterpillar23_unchecked(prev, subset);
    case StepRule::Doubling23:
      return doubling23_unchecked(prev, subset);
  }
  throw Error("unknown step rule");
}

std::string ColouringHandle::describe() const {
  std::ostringstream out;
  out << "tower levels=" << level_ + 1 << '\n';
  for (std::size_t i = 0; i <= level_; ++i) {
    const auto& l = tower_->levels[i];
    out << "level " << i;
    if (!l.rule) {
      out << " base schur k=" << tower_->spec.base.class_count() << " span=" << tower_->spec.base.span;
    } else {
      out << " step " << to_string(*l.rule);
      if (*l.rule == StepRule::Main) {
        out << " r=" << l.uniformity - 1 << " eta=" << l.eta_printed
            << " eta_effective=" << l.eta_effective;
        if (l.eta_printed != l.eta_effective) out << " eta_discrepancy";
      }
    }
    out << " colours=" << l.colour_count << " claim: " << l.claim.to_string() << '\n';
    if (!l.evaluation_limit.empty()) out << "  limit: " << l.evaluation_limit << '\n';
  }
  const auto& top = info();
  out << "claim: " << top.claim.to_string() << '\n';
  out << "claim_printed_eta: " << top.claim_printed_eta.to_string() << '\n';
  return out.str();
}

Colour main_step_colour(const ColouringHandle& f_r, std::span<const Vertex> subset) {
  if (f_r.uniformity() < 3) throw InvalidArgument("main step needs uniformity >= 3");
  check_stepped_subset(f_r, subset, f_r.uniformity() + 1, f_r.options().width_cap_bits);
  return main_step_unchecked(f_r, subset);
}

Colour caterpillar23_colour(const ColouringHandle& f_2, std::span<const Vertex> triple) {
  if (f_2.uniformity() != 2) throw InvalidArgument("cat23 steps up a 2-uniform colouring");
  check_stepped_subset(f_2, triple, 3, f_2.options().width_cap_bits);
  return caterpillar23_unchecked(f_2, triple);
}

Colour doubling23_colour(const ColouringHandle& f_2, std::span<const Vertex> triple) {
  if (f_2.uniformity() != 2) throw InvalidArgument("dbl23 steps up a 2-uniform colouring");
  check_stepped_subset(f_2, triple, 3, f_2.options().width_cap_bits);
  return doubling23_unchecked(f_2, triple);
}

ColouringTowerSpec parse_tower_spec(std::istream& in, const std::string& base_dir) {
  ColouringTowerSpec spec;
  bool have_base = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    if (head == "base") {
      std::string kind;
      std::string path;
      if (have_base) throw ParseError(line_no, "duplicate base line");
      if (!(words >> kind >> path) || kind != "schur") {
        throw ParseError(line_no, "expected 'base schur <certificate-path>'");
      }
      std::filesystem::path p(path);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      std::ifstream cert(p);
      if (!cert) throw ParseError(line_no, "cannot open certificate '" + p.string() + "'");
      spec.base = parse_schur_certificate(cert);
      have_base = true;
    } else if (head == "step") {
      if (!have_base) throw ParseError(line_no, "step before the base line");
      std::string rule;
      if (!(words >> rule)) throw ParseError(line_no, "missing step rule");
      if (rule == "main") {
        spec.steps.push_back(StepRule::Main);
      } else if (rule == "cat23") {
        spec.steps.push_back(StepRule::Caterpillar23);
      } else if (rule == "dbl23") {
        spec.steps.push_back(StepRule::Doubling23);
      } else {
        throw ParseError(line_no, "unknown step rule '" + rule + "'");
      }
    } else {
      throw ParseError(line_no, "unknown directive '" + head + "'");
    }
    std::string extra;
    if (words >> extra) throw ParseError(line_no, "trailing text '" + extra + "'");
  }
  if (!have_base) throw ParseError(line_no + 1, "missing 'base schur <certificate-path>' line");
  return spec;
}

ColouringTowerSpec load_tower_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open tower spec '" + path + "'");
  return parse_tower_spec(in, std::filesystem::path(path).parent_path().string());
}

}  // namespace hyperramsey

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperramsey/bounds.hpp"
#include "hyperramsey/error.hpp"
#include "hyperramsey/schur.hpp"
#include "hyperramsey/subset.hpp"
#include "hyperramsey/tower.hpp"
#include "hyperramsey/verify.hpp"

using namespace hyperramsey;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kInvalid = 3;
constexpr int kUnknown = 4;

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kPass;
    case Verdict::Fail: return kFail;
    default: return kUnknown;
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidArgument("cannot write '" + out_path + "'");
  out << text;
}

struct TowerArgs {
  std::string spec_path;
  std::uint64_t width_cap = std::uint64_t{1} << 20;
  int level = -1;

  ColouringHandle load() const {
    TowerOptions options;
    options.width_cap_bits = width_cap;
    const ColouringHandle top = build_tower(load_tower_spec(spec_path), options);
    if (level < 0) return top;
    if (static_cast<std::size_t>(level) >= top.depth())
      throw InvalidArgument("level " + std::to_string(level) + " does not exist");
    return top.at_level(static_cast<std::size_t>(level));
  }
};

void add_tower_args(CLI::App* cmd, TowerArgs& args) {
  cmd->add_option("spec", args.spec_path, "Tower spec file")->required();
  cmd->add_option("--width-cap", args.width_cap, "Largest label bit-length ever evaluated");
  cmd->add_option("--level", args.level, "Level to use (default: top)");
}

Colour evaluate_subset(const ColouringHandle& h, const std::string& text) {
  std::vector<Vertex> vertices;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto slash = item.find('/');
    const std::string encoded =
        slash == std::string::npos ? item + "/" + std::to_string(h.vertex_width()) : item;
    vertices.push_back(Vertex::parse(encoded));
  }
  std::sort(vertices.begin(), vertices.end());
  return h.colour(std::span<const Vertex>(vertices));
}

std::string eta_audit(unsigned r_max) {
  std::ostringstream out;
  out << "r\teta\teta_effective\tflag\n";
  for (unsigned r = 3; r <= r_max; ++r) {
    const unsigned printed = eta(r);
    const unsigned effective = eta_effective(r);
    out << r << '\t' << printed << '\t' << effective << '\t'
        << (printed == effective ? "agree" : "eta_discrepancy") << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stepped-up colourings and negative arrow relations for hypergraph Ramsey numbers"};
  app.require_subcommand(1, 1);

  // build
  TowerArgs build_args;
  std::string build_out;
  std::vector<std::string> build_subsets;
  auto* build = app.add_subcommand("build", "Build a colouring tower and print its claims");
  add_tower_args(build, build_args);
  build->add_option("-o,--out", build_out, "Write the description here");
  build->add_option("--subset", build_subsets,
                    "Comma separated labels (hex, optionally hex/width) to colour");

  // verify
  TowerArgs verify_args;
  std::string mode = "exhaustive";
  std::string plant;
  SearchBudget budget;
  LocalOptions local;
  auto* verify = app.add_subcommand("verify", "Verify the claim of a tower level");
  add_tower_args(verify, verify_args);
  verify->add_option("--mode", mode, "exhaustive | sampled | local")
      ->check(CLI::IsMember({"exhaustive", "sampled", "local"}));
  verify->add_option("--plant", plant, "Recolour every r-subset of hex,hex,...@colour");
  verify->add_option("--max-subsets", budget.max_subsets, "Evaluations or samples per colour");
  verify->add_option("--max-seconds", budget.max_seconds, "Wall-clock budget");
  verify->add_option("--max-ground", budget.max_ground, "Largest ground set searched exhaustively");
  verify->add_option("--window-bits", budget.window_bits, "Low label bits used by sampling");
  verify->add_option("--structured", budget.structured_samples,
                     "Extra caterpillar and typed samples per colour");
  verify->add_option("--trials", local.trials, "Local mode: random trial sets");
  verify->add_option("--shape-bits", local.shape_bits, "Local mode: exhaustive shape scan window");
  verify->add_option("--mono-attempts", local.mono_search_attempts,
                     "Local mode: previous-level monochromatic set attempts");
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  verify->add_option("--seed", seed, "Seed for every random choice");
  verify->add_option("--threads", threads, "Worker threads (0: all cores)");

  // bounds
  unsigned bounds_r = 3;
  unsigned k_min = 2;
  unsigned k_max = 10;
  std::string format = "text";
  std::vector<std::uint64_t> chain;
  std::uint64_t bracket_n = 0;
  bool show_alpha = false;
  auto* bounds = app.add_subcommand("bounds", "Tower bound tables");
  bounds->add_option("-r,--r", bounds_r, "Uniformity");
  bounds->add_option("--k-min", k_min, "Smallest k");
  bounds->add_option("--k-max", k_max, "Largest k");
  bounds->add_option("--format", format, "text | tsv")->check(CLI::IsMember({"text", "tsv"}));
  bounds->add_option("--chain", chain, "K s n t: print the two chain relations")->expected(4);
  bounds->add_option("--bracket", bracket_n, "n: print the k(n, r) bracket");
  bounds->add_flag("--alpha", show_alpha, "Print alpha to 20 places");

  // subsetcolour
  std::string hypergraph_path;
  std::string c1_path;
  unsigned subset_r = 2;
  std::string subset_out;
  auto* subset = app.add_subcommand("subsetcolour", "Colour the r-subsets of a hypergraph");
  subset->add_option("hypergraph", hypergraph_path, "Hypergraph file")->required();
  subset->add_option("-r,--r", subset_r, "Subset size")->required();
  subset->add_option("--vertex-colouring", c1_path, "Proper vertex colouring (default: greedy)");
  subset->add_option("-o,--out", subset_out, "Write the edge subset colours here");

  // schur
  unsigned schur_k = 2;
  std::uint32_t schur_span = 4;
  std::uint64_t schur_budget = 50'000'000;
  std::string schur_out;
  std::vector<std::string> schur_files;
  auto* schur = app.add_subcommand("schur", "Schur partitions and certificates");
  schur->require_subcommand(1, 1);
  auto* schur_search = schur->add_subcommand("search", "Backtracking search");
  schur_search->add_option("-k", schur_k, "Classes")->required();
  schur_search->add_option("--span", schur_span, "Largest element")->required();
  schur_search->add_option("--budget", schur_budget, "Node budget");
  schur_search->add_option("-o,--out", schur_out, "Certificate output");
  auto* schur_check = schur->add_subcommand("check", "Validate a certificate and verify its claim");
  schur_check->add_option("certificate", schur_files, "Certificate file")->required()->expected(1);
  auto* schur_compose = schur->add_subcommand("compose", "Compose two certificates");
  schur_compose->add_option("certificates", schur_files, "Two certificate files")
      ->required()
      ->expected(2);
  schur_compose->add_option("-o,--out", schur_out, "Certificate output");

  // report
  unsigned report_r_max = 7;
  std::vector<unsigned> kcomplete;
  auto* report = app.add_subcommand("report", "eta audit and small exact values");
  report->add_option("--r-max", report_r_max, "Largest uniformity in the eta audit");
  report->add_option("--k-complete", kcomplete, "n r: least k with rn -/-> (r+1)_k^r")
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*build) {
      const ColouringHandle h = build_args.load();
      std::string text = h.describe();
      for (const auto& s : build_subsets)
        text += "colour {" + s + "} = " + std::to_string(evaluate_subset(h, s)) + "\n";
      emit(text, build_out);
      return kPass;
    }

    if (*verify) {
      budget.seed = seed;
      budget.threads = threads;
      local.seed = seed;
      local.threads = threads;
      local.window_bits = budget.window_bits;
      const ColouringHandle h = verify_args.load();
      VerificationReport rep;
      if (mode == "local") {
        if (!plant.empty()) throw InvalidArgument("--plant applies to exhaustive and sampled modes");
        rep = verify_local_properties(h, local);
      } else {
        std::optional<PlantedColouring> planted;
        const Colouring* target = &h;
        if (!plant.empty()) {
          auto [set, colour] = parse_plant(plant, h.vertex_width());
          planted.emplace(h, std::move(set), colour);
          target = &*planted;
        }
        rep = mode == "exhaustive" ? verify_exhaustive(*target, h.claim(), budget)
                                   : verify_sampled(*target, h.claim(), budget);
      }
      std::cout << rep.to_text();
      return exit_for(rep.verdict);
    }

    if (*bounds) {
      if (show_alpha) {
        std::cout << "alpha = " << alpha_digits(20) << " (log2(1073)/6)\nbeta = symbolic\n";
        return kPass;
      }
      if (!chain.empty()) {
        const auto [a, b] = chain_bounds(chain[0], chain[1], chain[2], static_cast<unsigned>(chain[3]));
        for (const auto* row : {&a, &b}) {
          std::cout << row->claim.to_string() << "  [" << row->source << "]";
          if (row->eta_flag)
            std::cout << "  eta_discrepancy: effective colours " << row->effective_colours;
          std::cout << '\n';
        }
        return kPass;
      }
      if (bracket_n != 0) {
        const Bracket b = k_n_r_bracket(bracket_n, bounds_r);
        std::cout << "lower " << b.lower << " + " << b.lower_symbolic << "\nupper " << b.upper
                  << " + " << b.upper_symbolic << '\n';
        return kPass;
      }
      const auto rows = comparison_table(bounds_r, k_min, k_max);
      std::cout << (format == "tsv" ? format_rows_tsv(rows) : format_rows_text(rows));
      return kPass;
    }

    if (*subset) {
      const Hypergraph h = load_hypergraph(hypergraph_path);
      std::optional<std::vector<std::uint32_t>> c1;
      if (!c1_path.empty()) c1 = load_vertex_colouring(c1_path, h.vertex_count);
      SubsetBuildOptions options;
      const SubsetBuildResult result = build_subset_colouring(h, subset_r, c1, options);
      const SubsetColouring& c = *result.colouring;
      std::ostringstream summary;
      summary << "vertex colours n = " << c.n() << (result.greedy_vertex_colouring ? " (greedy)" : "")
              << "\nr = " << c.r() << "\nc2: " << result.c2_source
              << "\nc2 claim: " << result.c2_claim.to_string()
              << "\nc2 verdict: " << to_string(result.c2_report.verdict) << "\nk = " << c.k()
              << "\ncolours = " << c.total_colours() << " (k + " << c.extras().size()
              << ", f(r) = " << f_of_r(c.r()) << ")\n";
      const auto rep = verify_hypergraph_colouring(
          h, subset_r, [&](std::span<const std::uint32_t> s) { return c.colour(s); });
      std::cout << summary.str() << rep.to_text();
      if (!subset_out.empty()) {
        std::ostringstream table;
        for (const auto& e : h.edges) {
          if (e.size() < subset_r) continue;
          for_each_subset(static_cast<std::uint32_t>(e.size()), subset_r,
                          [&](std::span<const std::uint32_t> idx) {
                            std::vector<std::uint32_t> vs;
                            for (auto i : idx) vs.push_back(e[i]);
                            for (auto v : vs) table << v << ' ';
                            table << c.colour(vs) << '\n';
                            return true;
                          });
        }
        emit(table.str(), subset_out);
      }
      return exit_for(rep.verdict);
    }

    if (*schur) {
      if (*schur_search) {
        const auto res = search_schur_partition(schur_k, schur_span, schur_budget);
        if (res.partition) {
          emit(format_schur_certificate(*res.partition), schur_out);
          if (!schur_out.empty()) std::cout << "found (" << res.nodes << " nodes)\n";
          return kPass;
        }
        std::cout << "no partition of [" << schur_span << "] into " << schur_k << " sum-free classes "
                  << (res.exhaustive ? "exists (exhaustive search)" : "found within budget")
                  << " after " << res.nodes << " nodes\n";
        return res.exhaustive ? kFail : kUnknown;
      }
      if (*schur_check) {
        const SchurEdgeColouring colouring(load_schur_certificate(schur_files[0]));
        const auto rep = verify_exhaustive(colouring, colouring.claim());
        std::cout << rep.to_text();
        return exit_for(rep.verdict);
      }
      const SchurPartition p =
          compose_partitions(load_schur_certificate(schur_files[0]), load_schur_certificate(schur_files[1]));
      emit(format_schur_certificate(p), schur_out);
      return kPass;
    }

    if (*report) {
      if (!kcomplete.empty()) {
        const auto res = k_complete_lower(kcomplete[0], kcomplete[1]);
        std::cout << "k(K_" << kcomplete[0] * kcomplete[1] << "^(" << kcomplete[1] << ")) = " << res.k
                  << (res.exact ? " (exact)" : " (upper bound)") << "\nnodes " << res.nodes << '\n';
        if (!res.note.empty()) std::cout << res.note << '\n';
        return kPass;
      }
      std::cout << eta_audit(report_r_max);
      return kPass;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidData& e) {
    std::cerr << "invalid data: " << e.what() << '\n';
    return kInvalid;
  } catch (const WidthCapExceeded& e) {
    std::cerr << "width cap: " << e.what() << '\n';
    return kUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnknown;
  }
  return kUsage;
}

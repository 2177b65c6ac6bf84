#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperramsey/bounds.hpp"
#include "hyperramsey/error.hpp"
#include "hyperramsey/schur.hpp"
#include "hyperramsey/split.hpp"
#include "hyperramsey/subset.hpp"
#include "hyperramsey/tower.hpp"
#include "hyperramsey/verify.hpp"

namespace py = pybind11;
using namespace hyperramsey;

namespace {

VertexSet as_set(const std::vector<std::uint64_t>& values) {
  std::uint64_t top = 0;
  for (auto v : values) top = std::max(top, v);
  const std::uint64_t width = std::max<std::uint64_t>(1, bits_for_ground(top + 1));
  return VertexSet::of(std::span<const std::uint64_t>(values), width);
}

std::vector<Vertex> as_labels(const Colouring& c, const std::vector<std::uint64_t>& values) {
  std::vector<Vertex> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(make_vertex(v, c.vertex_width()));
  return out;
}

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["statement"] = r.statement;
  d["mode"] = std::string(to_string(r.mode));
  d["verdict"] = std::string(to_string(r.verdict));
  d["passed"] = r.passed();
  d["subsets_examined"] = r.subsets_examined;
  d["samples_drawn"] = r.samples_drawn;
  d["seed"] = r.seed;
  d["counters"] = r.counters;
  d["notes"] = r.notes;
  d["text"] = r.to_text();
  if (r.witness) {
    py::dict w;
    std::vector<std::string> set;
    for (const auto& v : r.witness->set) set.push_back(v.to_string());
    w["set"] = set;
    w["colour"] = r.witness->colour;
    w["reason"] = r.witness->reason;
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

py::dict row_dict(const BoundRow& row) {
  py::dict d;
  d["k"] = row.k;
  d["r"] = row.r;
  d["s"] = row.s;
  d["kind"] = std::string(to_string(row.kind));
  d["height"] = row.height;
  d["slope"] = row.slope;
  d["offset"] = row.offset;
  d["symbolic"] = row.symbolic;
  d["numeric"] = row.numeric;
  d["argument"] = row.argument();
  d["expression"] = row.expression();
  d["source"] = row.source;
  d["within_validity"] = row.within_validity;
  return d;
}

py::dict chain_dict(const ChainRow& row) {
  py::dict d;
  d["claim"] = row.claim.to_string();
  d["uniformity"] = row.claim.uniformity;
  d["colours"] = row.claim.colour_count();
  d["target"] = row.claim.targets.front();
  d["effective_colours"] = row.effective_colours;
  d["steps"] = row.steps;
  d["eta_flag"] = row.eta_flag;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stepping-up colourings for hypergraph Ramsey lower bounds";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<InvalidData>(m, "InvalidData", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<WidthCapExceeded>(m, "WidthCapExceeded", base.ptr());

  m.def("is_caterpillar", [](const std::vector<std::uint64_t>& s) { return is_caterpillar(as_set(s)); });
  m.def("delta", [](const std::vector<std::uint64_t>& s) { return delta(as_set(s)); });
  m.def("type_of", [](const std::vector<std::uint64_t>& s) -> std::optional<std::pair<unsigned, unsigned>> {
    const TypeTag t = type_of(as_set(s));
    if (std::holds_alternative<Caterpillar>(t)) return std::nullopt;
    const auto st = std::get<SplitType>(t);
    return std::make_pair(st.p, st.q);
  });
  m.def("histogram", [](const std::vector<std::uint64_t>& v) {
    const IntegerPartition h = histogram(v);
    return std::vector<unsigned>(h.parts().begin(), h.parts().end());
  });

  m.def("eta", &eta);
  m.def("eta_effective", &eta_effective);
  m.def("f_of_r", &f_of_r);

  py::class_<ColouringHandle>(m, "Tower")
      .def_property_readonly("uniformity", &ColouringHandle::uniformity)
      .def_property_readonly("colour_count", &ColouringHandle::colour_count)
      .def_property_readonly("claim", [](const ColouringHandle& h) { return h.claim().to_string(); })
      .def_property_readonly("claim_printed_eta",
                             [](const ColouringHandle& h) { return h.info().claim_printed_eta.to_string(); })
      .def_property_readonly("vertex_width", &ColouringHandle::vertex_width)
      .def_property_readonly("evaluable", &ColouringHandle::evaluable)
      .def_property_readonly("depth", &ColouringHandle::depth)
      .def("describe", &ColouringHandle::describe)
      .def("previous", &ColouringHandle::previous)
      .def("colour", [](const ColouringHandle& h, const std::vector<std::uint64_t>& labels) {
        return h.colour(as_labels(h, labels));
      });

  m.def("load_tower", [](const std::string& path) { return build_tower(load_tower_spec(path)); });
  m.def(
      "parse_tower",
      [](const std::string& text, const std::string& base_dir) {
        std::istringstream in(text);
        return build_tower(parse_tower_spec(in, base_dir));
      },
      py::arg("text"), py::arg("base_dir") = ".");

  m.def(
      "verify",
      [](const ColouringHandle& h, const std::string& mode, std::uint64_t max_subsets, std::uint64_t seed,
         unsigned threads, std::uint64_t trials, std::uint64_t window_bits) {
        SearchBudget b;
        b.seed = seed;
        b.threads = threads;
        b.window_bits = window_bits;
        if (max_subsets) b.max_subsets = max_subsets;
        if (mode == "exhaustive") return report_dict(verify_exhaustive(h, h.claim(), b));
        if (mode == "sampled") {
          if (!max_subsets) b.max_subsets = 100'000;
          return report_dict(verify_sampled(h, h.claim(), b));
        }
        if (mode == "local") {
          LocalOptions o;
          o.seed = seed;
          o.threads = threads;
          o.trials = trials;
          o.window_bits = window_bits;
          return report_dict(verify_local_properties(h, o));
        }
        throw InvalidArgument("mode must be exhaustive, sampled or local");
      },
      py::arg("tower"), py::arg("mode") = "exhaustive", py::arg("max_subsets") = 0,
      py::arg("seed") = kDefaultSeed, py::arg("threads") = 0, py::arg("trials") = 100'000,
      py::arg("window_bits") = 0);

  m.def(
      "schur_search",
      [](unsigned k, std::uint32_t span, std::uint64_t budget) -> py::object {
        const auto r = search_schur_partition(k, span, budget);
        if (r.partition) return py::cast(r.partition->classes);
        return r.exhaustive ? py::cast(false) : py::none();
      },
      py::arg("k"), py::arg("span"), py::arg("budget") = 50'000'000,
      "Classes of a sum-free partition, False if none exists, None if the budget ran out.");
  m.def("schur_compose", [](const std::vector<std::vector<std::uint32_t>>& a,
                            const std::vector<std::vector<std::uint32_t>>& b) {
    auto span = [](const auto& cls) {
      std::uint32_t s = 0;
      for (const auto& c : cls) s += static_cast<std::uint32_t>(c.size());
      return s;
    };
    return compose_partitions(SchurPartition{span(a), a}, SchurPartition{span(b), b}).classes;
  });

  m.def("alpha", &alpha);
  m.def("alpha_digits", &alpha_digits);
  m.def("tower", [](unsigned r, std::uint64_t x) { return tower(r, x).to_string(); });
  m.def("comparison_table", [](unsigned r, unsigned k_min, unsigned k_max) {
    std::vector<py::dict> out;
    for (const auto& row : comparison_table(r, k_min, k_max)) out.push_back(row_dict(row));
    return out;
  });
  m.def("corollary_bound", [](unsigned k, unsigned r, unsigned offset) { return row_dict(corollary_bound(k, r, offset)); });
  m.def("chain_bounds", [](std::uint64_t K, std::uint64_t s, std::uint64_t n, unsigned t) {
    const auto [a, b] = chain_bounds(K, s, n, t);
    return std::make_pair(chain_dict(a), chain_dict(b));
  });
  m.def("k_n_r_bracket", [](std::uint64_t n, unsigned r) {
    const Bracket b = k_n_r_bracket(n, r);
    return std::make_pair(b.lower, b.upper);
  });

  py::class_<SubsetColouring, std::shared_ptr<SubsetColouring>>(m, "SubsetColouring")
      .def_property_readonly("k", &SubsetColouring::k)
      .def_property_readonly("r", &SubsetColouring::r)
      .def_property_readonly("total_colours", &SubsetColouring::total_colours)
      .def("colour", [](const SubsetColouring& c, const std::vector<std::uint32_t>& v) { return c.colour(v); })
      .def("raw_colour", [](const SubsetColouring& c, const std::vector<std::uint32_t>& v) { return c.raw_colour(v); });

  m.def(
      "subset_colouring",
      [](std::uint32_t vertex_count, const std::vector<std::vector<std::uint32_t>>& edges, unsigned r,
         std::optional<std::vector<std::uint32_t>> vertex_colours) {
        Hypergraph h{vertex_count, edges};
        h.normalise();
        const auto res = build_subset_colouring(h, r, std::move(vertex_colours));
        const auto& c = *res.colouring;
        const auto rep = verify_hypergraph_colouring(h, r, [&](std::span<const std::uint32_t> s) { return c.colour(s); });
        return std::make_pair(res.colouring, report_dict(rep));
      },
      py::arg("vertex_count"), py::arg("edges"), py::arg("r"), py::arg("vertex_colours") = py::none());

  m.def("k_complete_lower", [](unsigned n, unsigned r) {
    const auto res = k_complete_lower(n, r);
    return std::make_pair(res.k, res.exact);
  });
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aspectminer/combine.hpp"
#include "aspectminer/corpusgen.hpp"
#include "aspectminer/dynmine.hpp"
#include "aspectminer/error.hpp"
#include "aspectminer/fanin.hpp"
#include "aspectminer/fca.hpp"
#include "aspectminer/identmine.hpp"
#include "aspectminer/metrics.hpp"
#include "aspectminer/porter.hpp"

namespace py = pybind11;
using namespace aspectminer;

namespace {

using ConceptList = std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>;

ConceptList to_list(const fca::Context& ctx, const std::vector<fca::Concept>& cs) {
  ConceptList out;
  for (const auto& c : cs) out.emplace_back(extent_ids(ctx, c), intent_ids(ctx, c));
  return out;
}

ConceptList concepts_of(const std::vector<std::string>& elements, const std::vector<std::string>& properties,
                        const std::vector<std::pair<std::string, std::string>>& incidence) {
  fca::Context ctx(elements, properties);
  for (const auto& [e, p] : incidence) {
    auto ei = ctx.element_index(e);
    auto pi = ctx.property_index(p);
    if (!ei || !pi) throw Error(Errc::InvalidArgument, "incidence refers to unknown " + e + "/" + p);
    ctx.set(*ei, *pi);
  }
  return to_list(ctx, fca::concepts(ctx));
}

std::map<std::string, std::size_t> fanin_of(const std::string& factsText) {
  return compute_fanin(parse_facts(factsText)).perMethod;
}

py::dict generate_corpus(const std::string& specJson) {
  auto spec = parse_genspec(specJson);
  auto corpus = generate(spec);
  const auto header = generator_header(spec.seedValue);
  py::dict d;
  d["facts"] = header + serialize_facts(corpus.facts);
  d["traces"] = header + serialize_traces(corpus.traces);
  d["truth"] = header + serialize_truth(corpus.truth);
  return d;
}

std::vector<std::vector<std::string>> dynamic_seed_methods(const std::string& factsText, const std::string& tracesText) {
  auto facts = parse_facts(factsText);
  auto report = dynamic_seeds(facts, parse_traces(tracesText, &facts));
  std::vector<std::vector<std::string>> out;
  for (const auto& s : dynamic_seed_list(report)) out.emplace_back(s.methods.begin(), s.methods.end());
  return out;
}

py::tuple quality(const std::vector<std::string>& seed, const std::vector<std::string>& concern) {
  Seed s;
  s.id = "seed";
  s.methods = {seed.begin(), seed.end()};
  auto q = seed_quality(s, {concern.begin(), concern.end()});
  return py::make_tuple(q.recalled, q.percent());
}

}  // namespace

PYBIND11_MODULE(_aspectminer, m) {
  m.doc() = "Crosscutting-concern mining: fan-in, identifier and trace analysis over program facts.";

  static py::exception<Error> error(m, "AspectMinerError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("porter_stem", &porter_stem, py::arg("word"), "Porter (1980) stem of a lowercase word.");
  m.def("split_identifier", &split_identifier, py::arg("name"), "Lowercased words of a camel-case identifier.");
  m.def("concepts", &concepts_of, py::arg("elements"), py::arg("properties"), py::arg("incidence"),
        "All formal concepts as (extent, intent) pairs in canonical order.");
  m.def("fanin", &fanin_of, py::arg("facts_text"), "Fan-in per method of a facts file's text.");
  m.def("dynamic_seeds", &dynamic_seed_methods, py::arg("facts_text"), py::arg("traces_text"),
        "Method sets of the dynamic-analysis seeds.");
  m.def("seed_quality", &quality, py::arg("seed"), py::arg("concern"),
        "(recalled, rounded quality percent) of a seed against a concern.");
  m.def("generate", &generate_corpus, py::arg("spec_json"),
        "Synthetic corpus as a dict of facts, traces and truth texts.");
}

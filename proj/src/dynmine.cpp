#include "aspectminer/dynmine.hpp"

#include <sstream>
#include <unordered_map>

#include "aspectminer/error.hpp"
#include "aspectminer/textio.hpp"

namespace aspectminer {

TraceSet parse_traces(std::string_view text, const ProgramFacts* facts, TraceParseOptions options,
                      std::vector<std::string>* warnings) {
  TraceSet ts;
  textio::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0] != "TR" || f.size() != 3)
      throw Error(Errc::MalformedRecord, "expected TR <useCaseName> <methodId>", line);
    if (!textio::valid_identifier(f[1]) || !textio::valid_identifier(f[2]))
      throw Error(Errc::MalformedRecord, "bad identifier", line);
    std::string method(f[2]);
    if (facts && !facts->find_method(method)) {
      if (!options.lenient) throw Error(Errc::UnknownMethod, method, line);
      if (warnings)
        warnings->push_back("line " + std::to_string(line) + ": dropped unknown method " + method);
      ts.traces[std::string(f[1])];
      return;
    }
    ts.traces[std::string(f[1])].insert(std::move(method));
  });
  return ts;
}

TraceSet read_traces_file(const std::string& path, const ProgramFacts* facts,
                          TraceParseOptions options, std::vector<std::string>* warnings) {
  return parse_traces(textio::read_file(path), facts, options, warnings);
}

std::string serialize_traces(const TraceSet& traces) {
  std::ostringstream out;
  for (const auto& [uc, methods] : traces.traces)
    for (const auto& m : methods) out << "TR\t" << uc << '\t' << m << '\n';
  return out.str();
}

fca::Context build_trace_context(const TraceSet& traces) {
  if (traces.traces.empty()) throw Error(Errc::EmptyTraceSet, "no use cases");
  std::set<std::string> methods;
  std::vector<std::string> useCases;
  for (const auto& [uc, ms] : traces.traces) {
    useCases.push_back(uc);
    methods.insert(ms.begin(), ms.end());
  }
  fca::Context ctx(useCases, std::vector<std::string>(methods.begin(), methods.end()));
  std::size_t e = 0;
  for (const auto& [uc, ms] : traces.traces) {
    for (const auto& m : ms) ctx.set(e, *ctx.property_index(m));
    ++e;
  }
  return ctx;
}

std::vector<std::string> method_labels(const fca::ConceptLattice& lat, std::size_t c) {
  std::vector<std::string> out;
  for (auto p : lat.alpha(c)) out.push_back(lat.context().properties()[p]);
  return out;
}

std::vector<std::string> trace_labels(const fca::ConceptLattice& lat, std::size_t c) {
  std::vector<std::string> out;
  for (auto e : lat.beta(c)) out.push_back(lat.context().elements()[e]);
  return out;
}

ConceptClassification classify_concepts(const fca::ConceptLattice& lat) {
  ConceptClassification out;
  for (std::size_t c = 0; c < lat.size(); ++c) {
    out.generic.push_back(c);
    if (!lat.beta(c).empty()) out.useCaseSpecific.push_back(c);
  }
  return out;
}

namespace {

const std::string& pref(const ProgramFacts& facts, const std::string& methodId) {
  const MethodDecl* m = facts.find_method(methodId);
  if (!m) throw Error(Errc::UnknownMethod, methodId);
  return facts.enclosing_type(*m).name;
}

std::set<std::string> label_classes(const ProgramFacts& facts, const fca::ConceptLattice& lat,
                                    std::size_t c) {
  std::set<std::string> out;
  for (const auto& m : method_labels(lat, c)) out.insert(pref(facts, m));
  return out;
}

}  // namespace

bool is_scattering(const ProgramFacts& facts, const fca::ConceptLattice& lat, std::size_t c) {
  return label_classes(facts, lat, c).size() >= 2;
}

bool is_tangling(const ProgramFacts& facts, const fca::ConceptLattice& lat, std::size_t c,
                 const std::vector<std::size_t>& omega) {
  auto mine = label_classes(facts, lat, c);
  if (mine.empty()) return false;
  for (auto other : omega) {
    if (other == c) continue;
    for (const auto& m : method_labels(lat, other))
      if (mine.count(pref(facts, m))) return true;
  }
  return false;
}

namespace {

// Verdicts for every concept in `list` with the given omega; the class ->
// concepts index keeps tangling linear in the number of labels.
std::vector<DynConceptVerdict> verdicts(const ProgramFacts& facts, const fca::ConceptLattice& lat,
                                        const std::vector<std::size_t>& list,
                                        const std::vector<std::size_t>& omega) {
  std::vector<std::set<std::string>> classes(lat.size());
  for (std::size_t c = 0; c < lat.size(); ++c) classes[c] = label_classes(facts, lat, c);
  std::unordered_map<std::string, std::set<std::size_t>> hosts;
  for (auto c : omega)
    for (const auto& k : classes[c]) hosts[k].insert(c);

  std::vector<DynConceptVerdict> out;
  for (auto c : list) {
    bool scattering = classes[c].size() >= 2;
    bool tangling = false;
    for (const auto& k : classes[c]) {
      auto it = hosts.find(k);
      if (it == hosts.end()) continue;
      const auto& hs = it->second;
      if (hs.size() > 1 || (hs.size() == 1 && !hs.count(c))) {
        tangling = true;
        break;
      }
    }
    out.push_back({c, scattering && tangling});
  }
  return out;
}

}  // namespace

DynSeedReport dynamic_seeds(const ProgramFacts& facts, const TraceSet& traces) {
  for (const auto& [uc, ms] : traces.traces)
    for (const auto& m : ms)
      if (!facts.find_method(m)) throw Error(Errc::UnknownMethod, m);
  DynSeedReport report;
  report.lattice = fca::lattice(build_trace_context(traces));
  auto cls = classify_concepts(report.lattice);
  report.useCaseSpecific = verdicts(facts, report.lattice, cls.useCaseSpecific, cls.useCaseSpecific);
  report.generic = verdicts(facts, report.lattice, cls.generic, cls.generic);
  return report;
}

std::vector<Seed> dynamic_seed_list(const DynSeedReport& report, bool generic) {
  std::vector<Seed> out;
  for (const auto& v : generic ? report.generic : report.useCaseSpecific) {
    if (!v.seed) continue;
    Seed s;
    s.id = "dyn-" + std::to_string(v.index);
    s.technique = Technique::Dynamic;
    std::string label;
    for (auto e : fca::indices(report.lattice.at(v.index).extent))
      label += (label.empty() ? "" : "+") + report.lattice.context().elements()[e];
    s.label = label.empty() ? "-" : label;
    for (auto& m : method_labels(report.lattice, v.index)) s.methods.insert(std::move(m));
    out.push_back(std::move(s));
  }
  return out;
}

std::string dynamic_report(const DynSeedReport& report) {
  std::ostringstream out;
  auto rows = [&](const std::vector<DynConceptVerdict>& list, std::string_view kind) {
    for (const auto& v : list) {
      out << "DYN\t" << v.index << '\t' << kind << '\t' << (v.seed ? "seed" : "noseed") << '\t';
      auto labels = method_labels(report.lattice, v.index);
      if (labels.empty()) out << '-';
      for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ";" : "") << labels[i];
      out << '\n';
    }
  };
  rows(report.useCaseSpecific, "specific");
  rows(report.generic, "generic");
  return out.str();
}

}  // namespace aspectminer

#pragma once

// Dynamic analysis over execution traces. Use cases are the context's
// elements and executed methods its properties, so on the trace lattice the
// element labels of a concept are traces and its property labels are
// methods. The seed conditions range over the method labels.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspectminer/facts.hpp"
#include "aspectminer/fca.hpp"
#include "aspectminer/seed.hpp"

namespace aspectminer {

/// Use case -> executed methods. Order and multiplicity are not kept.
struct TraceSet {
  std::map<std::string, std::set<std::string>> traces;

  friend bool operator==(const TraceSet&, const TraceSet&) = default;
};

struct TraceParseOptions {
  /// Drop methods unknown to the facts instead of failing.
  bool lenient = false;
};

/// `TR <useCaseName> <methodId>` lines; repeated use cases are merged. With
/// facts given, unknown methods raise Error(UnknownMethod) unless lenient, in
/// which case they are dropped and reported through `warnings`.
TraceSet parse_traces(std::string_view text, const ProgramFacts* facts = nullptr,
                      TraceParseOptions options = {}, std::vector<std::string>* warnings = nullptr);
TraceSet read_traces_file(const std::string& path, const ProgramFacts* facts = nullptr,
                          TraceParseOptions options = {}, std::vector<std::string>* warnings = nullptr);
std::string serialize_traces(const TraceSet& traces);

/// Throws Error(EmptyTraceSet) when there is no use case.
fca::Context build_trace_context(const TraceSet& traces);

/// Methods / use cases sparse-labeling a concept of a trace lattice.
std::vector<std::string> method_labels(const fca::ConceptLattice& lat, std::size_t c);
std::vector<std::string> trace_labels(const fca::ConceptLattice& lat, std::size_t c);

struct ConceptClassification {
  std::vector<std::size_t> useCaseSpecific;  // labeled by at least one trace
  std::vector<std::size_t> generic;          // every concept
};

ConceptClassification classify_concepts(const fca::ConceptLattice& lat);

/// Two method labels of the concept live in differently named classes.
bool is_scattering(const ProgramFacts& facts, const fca::ConceptLattice& lat, std::size_t c);

/// Some class contributing a method label to the concept also contributes a
/// method label to another concept of `omega`.
bool is_tangling(const ProgramFacts& facts, const fca::ConceptLattice& lat, std::size_t c,
                 const std::vector<std::size_t>& omega);

struct DynConceptVerdict {
  std::size_t index = 0;
  bool seed = false;
};

struct DynSeedReport {
  fca::ConceptLattice lattice;
  std::vector<DynConceptVerdict> useCaseSpecific;  // omega = use-case-specific concepts
  std::vector<DynConceptVerdict> generic;          // omega = all concepts
};

DynSeedReport dynamic_seeds(const ProgramFacts& facts, const TraceSet& traces);

/// Seeds from the generic (or use-case-specific) verdict list; a seed's
/// methods are the concept's method labels.
std::vector<Seed> dynamic_seed_list(const DynSeedReport& report, bool generic = true);

/// `DYN <conceptIndex> <specific|generic> <seed|noseed> <methodIds;...>` rows,
/// use-case-specific list first.
std::string dynamic_report(const DynSeedReport& report);

}  // namespace aspectminer

#pragma once

// Synthetic corpora with planted crosscutting concerns. Every hierarchy draws
// class and method names from its own slice of a filler word list, filler
// fan-in stays below the threshold and each filler use case runs a single
// class, so anything the miners report traces back to a planted concern.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aspectminer/dynmine.hpp"
#include "aspectminer/facts.hpp"
#include "aspectminer/metrics.hpp"

namespace aspectminer {

struct PlantedConcern {
  std::string name;
  /// Words prefixed to member names. Empty: members take general vocabulary
  /// words when the spec has some, plain filler names otherwise.
  std::vector<std::string> stemVocabulary;
  std::size_t memberCount = 4;
  bool scatterAcrossHierarchies = true;
  bool highFanin = false;
  bool traceDiscriminable = false;

  friend bool operator==(const PlantedConcern&, const PlantedConcern&) = default;
};

struct GenSpec {
  std::uint64_t seedValue = 1;
  std::size_t hierarchies = 3;
  std::size_t classesPerHierarchy = 4;
  std::size_t methodsPerClass = 5;
  std::vector<PlantedConcern> plantedConcerns;

  std::size_t faninThreshold = 10;
  /// Distinct callers given to the hub member of a highFanin concern.
  std::size_t hubCallers = 12;
  /// Calls issued by each filler method.
  std::size_t callsPerMethod = 2;
  /// Fraction of members a dedicated use case executes (at least one).
  double traceCoverage = 1.0;
  /// Filler methods executed only by a concern's dedicated use case.
  std::size_t traceNoise = 0;
  /// Words shared by filler names across hierarchies (naming without convention).
  std::vector<std::string> generalVocabulary;
  /// Filler methods renamed per general word.
  std::size_t generalUses = 6;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// JSON form of GenSpec; absent fields keep their defaults.
GenSpec parse_genspec(std::string_view json);
GenSpec read_genspec_file(const std::string& path);

struct Corpus {
  ProgramFacts facts;
  TraceSet traces;
  ConcernTruth truth;
};

/// Deterministic in the spec. Throws Error(InfeasibleSpec) when the spec
/// cannot be honoured.
Corpus generate(const GenSpec& spec);

/// Filler word list; no two words conflate under the stem lexicon.
const std::vector<std::string>& filler_words();

std::string generator_header(std::uint64_t seedValue);

/// Writes <prefix>.facts, <prefix>.traces and <prefix>.truth, each starting
/// with the generator header. Returns the three paths.
std::vector<std::string> write_corpus(const Corpus& corpus, std::uint64_t seedValue,
                                      const std::string& prefix);

}  // namespace aspectminer

#pragma once

// The full mining pipeline over one workspace, shared by the CLI and the
// HTTP service.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aspectminer/combine.hpp"
#include "aspectminer/dynmine.hpp"
#include "aspectminer/facts.hpp"
#include "aspectminer/fanin.hpp"
#include "aspectminer/identmine.hpp"
#include "aspectminer/metrics.hpp"
#include "aspectminer/seed.hpp"

namespace aspectminer {

struct PipelineConfig {
  FaninFilter fanin;
  FaninInterpretation interpretation = FaninInterpretation::CalleeOnly;
  std::size_t minExtent = 4;
  std::size_t matchThreshold = 1;
  ExclusionConfig exclusions;
  StemOptions stemming;
};

/// Throws Error(InvalidArgument) for values outside their documented ranges.
void validate_config(const PipelineConfig& config);

/// Workspace file (JSON). Paths are resolved against the file's directory.
struct Workspace {
  std::string factsPath;
  std::optional<std::string> tracesPath;
  std::optional<std::string> truthPath;
  std::optional<std::string> triagePath;
  PipelineConfig config;
};

Workspace parse_workspace(std::string_view json, const std::string& baseDir = ".");
Workspace read_workspace_file(const std::string& path);

struct Analysis {
  ProgramFacts facts;
  std::optional<TraceSet> traces;
  std::optional<ConcernTruth> truth;
  PipelineConfig config;

  FaninResult fanin;
  std::vector<Seed> faninSeeds;

  IdentifierContext ident;
  std::vector<IdentifierConcept> identConcepts;
  std::vector<Seed> identSeeds;

  std::optional<DynSeedReport> dyn;
  std::vector<Seed> dynSeeds;

  /// fan-in, identifier, then dynamic seeds.
  std::vector<Seed> all_seeds() const;
};

Analysis analyze(ProgramFacts facts, std::optional<TraceSet> traces, std::optional<ConcernTruth> truth,
                 const PipelineConfig& config);

/// Loads the workspace files and runs every miner.
Analysis analyze_workspace(const Workspace& ws);

}  // namespace aspectminer

#include "aspectminer/pipeline.hpp"

#include <filesystem>

#include "json.hpp"

#include "aspectminer/error.hpp"
#include "aspectminer/textio.hpp"

namespace aspectminer {

void validate_config(const PipelineConfig& config) {
  if (config.fanin.threshold == 0) throw Error(Errc::InvalidArgument, "threshold must be >= 1");
  if (config.minExtent == 0) throw Error(Errc::InvalidArgument, "minExtent must be >= 1");
  if (config.matchThreshold == 0) throw Error(Errc::InvalidArgument, "matchThreshold must be >= 1");
}

Workspace parse_workspace(std::string_view text, const std::string& baseDir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("workspace: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::MalformedRecord, "workspace must be an object");

  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? p : (std::filesystem::path(baseDir) / path).lexically_normal().string();
  };
  Workspace ws;
  try {
    if (j.contains("facts")) ws.factsPath = resolve(j["facts"].get<std::string>());
    if (j.contains("traces")) ws.tracesPath = resolve(j["traces"].get<std::string>());
    if (j.contains("truth")) ws.truthPath = resolve(j["truth"].get<std::string>());
    if (j.contains("triage")) ws.triagePath = resolve(j["triage"].get<std::string>());
    auto& c = ws.config;
    c.fanin.threshold = j.value("threshold", c.fanin.threshold);
    c.fanin.excludeAccessorsAndUtilities = j.value("filters", c.fanin.excludeAccessorsAndUtilities);
    c.fanin.utilityNames = j.value("utilityNames", c.fanin.utilityNames);
    if (j.contains("interpretation")) {
      auto i = parse_interpretation(j["interpretation"].get<std::string>());
      if (!i) throw Error(Errc::InvalidArgument, "interpretation must be calleeOnly or calleePlusCallers");
      c.interpretation = *i;
    }
    c.minExtent = j.value("minExtent", c.minExtent);
    c.matchThreshold = j.value("matchThreshold", c.matchThreshold);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("workspace: ") + e.what());
  }
  validate_config(ws.config);
  return ws;
}

Workspace read_workspace_file(const std::string& path) {
  auto dir = std::filesystem::path(path).parent_path().string();
  return parse_workspace(textio::read_file(path), dir.empty() ? "." : dir);
}

std::vector<Seed> Analysis::all_seeds() const {
  std::vector<Seed> out = faninSeeds;
  out.insert(out.end(), identSeeds.begin(), identSeeds.end());
  out.insert(out.end(), dynSeeds.begin(), dynSeeds.end());
  return out;
}

Analysis analyze(ProgramFacts facts, std::optional<TraceSet> traces, std::optional<ConcernTruth> truth,
                 const PipelineConfig& config) {
  validate_config(config);
  Analysis a;
  a.facts = std::move(facts);
  a.traces = std::move(traces);
  a.truth = std::move(truth);
  a.config = config;

  a.fanin = compute_fanin(a.facts);
  a.faninSeeds = fanin_seeds(filter_candidates(a.fanin, a.facts, config.fanin), a.fanin, config.interpretation);

  a.ident = build_id_context(a.facts, config.exclusions, config.stemming);
  a.identConcepts = mine_identifier_concepts(a.ident.context, a.facts, config.minExtent);
  a.identSeeds = identifier_seeds(a.ident.context, a.facts, a.identConcepts);

  if (a.traces && !a.traces->traces.empty()) {
    a.dyn = dynamic_seeds(a.facts, *a.traces);
    a.dynSeeds = dynamic_seed_list(*a.dyn);
  }
  return a;
}

Analysis analyze_workspace(const Workspace& ws) {
  if (ws.factsPath.empty()) throw Error(Errc::InvalidArgument, "workspace has no facts file");
  auto facts = read_facts_file(ws.factsPath);
  std::optional<TraceSet> traces;
  std::optional<ConcernTruth> truth;
  if (ws.tracesPath) traces = read_traces_file(*ws.tracesPath, &facts);
  if (ws.truthPath) truth = read_truth_file(*ws.truthPath, &facts);
  return analyze(std::move(facts), std::move(traces), std::move(truth), ws.config);
}

}  // namespace aspectminer

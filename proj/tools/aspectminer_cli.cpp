// aspectminer: batch mining, scoring and corpus generation, plus the HTTP service.
//
// Exit status: 0 success, 1 input error, 2 internal invariant violation.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aspectminer/combine.hpp"
#include "aspectminer/corpusgen.hpp"
#include "aspectminer/error.hpp"
#include "aspectminer/pipeline.hpp"
#include "aspectminer/service.hpp"
#include "aspectminer/textio.hpp"

using namespace aspectminer;

namespace {

// Re-throws loader errors with the file name in front.
template <class Fn>
auto load(const std::string& path, Fn&& fn) {
  try {
    return fn(path);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail(), e.line());
  }
}

struct Common {
  std::string config;
  std::string facts;
  std::string traces;
  std::string truth;
  std::optional<std::size_t> threshold;
  bool noFilters = false;
  std::string utilityNames;
  std::string interpretation;
  std::optional<std::size_t> minExtent;
  std::optional<std::size_t> matchThreshold;
  bool noConflate = false;
  bool includeTests = false;
  bool includeAccessors = false;
  bool accessorNames = false;
};

void add_workspace(CLI::App* cmd, Common& c, bool traces = false, bool truth = false) {
  cmd->add_option("--config", c.config, "Workspace JSON; flags override its values");
  cmd->add_option("--facts", c.facts, "Program facts file");
  if (traces) cmd->add_option("--traces", c.traces, "Trace file");
  if (truth) cmd->add_option("--truth", c.truth, "Ground-truth concern file");
}

void add_fanin_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--threshold", c.threshold, "Minimum fan-in of a candidate (default 10)");
  cmd->add_flag("--no-filters", c.noFilters, "Keep accessors and utility methods");
  cmd->add_option("--utility-names", c.utilityNames, "Comma-separated utility method names");
  cmd->add_option("--interpretation", c.interpretation, "calleeOnly or calleePlusCallers");
}

void add_ident_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--min-extent", c.minExtent, "Minimum extent of a candidate concept (default 4)");
  cmd->add_flag("--no-conflate", c.noConflate, "Skip the stem conflation pass");
  cmd->add_flag("--include-tests", c.includeTests, "Keep test classes");
  cmd->add_flag("--include-accessors", c.includeAccessors, "Keep accessor methods");
  cmd->add_flag("--accessor-names", c.accessorNames, "Treat get*/set*/is* names as accessors");
}

Workspace workspace(const Common& c) {
  Workspace ws;
  if (!c.config.empty()) ws = load(c.config, [](const std::string& p) { return read_workspace_file(p); });
  if (!c.facts.empty()) ws.factsPath = c.facts;
  if (!c.traces.empty()) ws.tracesPath = c.traces;
  if (!c.truth.empty()) ws.truthPath = c.truth;
  auto& cfg = ws.config;
  if (c.threshold) cfg.fanin.threshold = *c.threshold;
  if (c.noFilters) cfg.fanin.excludeAccessorsAndUtilities = false;
  if (!c.utilityNames.empty()) cfg.fanin.utilityNames = textio::split_list(c.utilityNames);
  if (!c.interpretation.empty()) {
    auto i = parse_interpretation(c.interpretation);
    if (!i) throw Error(Errc::InvalidArgument, "--interpretation must be calleeOnly or calleePlusCallers");
    cfg.interpretation = *i;
  }
  if (c.minExtent) cfg.minExtent = *c.minExtent;
  if (c.matchThreshold) cfg.matchThreshold = *c.matchThreshold;
  if (c.noConflate) cfg.stemming.conflate = false;
  if (c.includeTests) cfg.exclusions.excludeTests = false;
  if (c.includeAccessors) cfg.exclusions.excludeAccessors = false;
  if (c.accessorNames) cfg.exclusions.accessorNamePattern = true;
  validate_config(cfg);
  if (ws.factsPath.empty()) throw Error(Errc::InvalidArgument, "--facts is required");
  return ws;
}

ProgramFacts facts_of(const Workspace& ws) {
  return load(ws.factsPath, [](const std::string& p) { return read_facts_file(p); });
}

std::vector<Seed> seeds_of(const std::string& path, const ProgramFacts* facts) {
  auto seeds = load(path, [](const std::string& p) { return read_seeds_file(p); });
  if (facts)
    for (const auto& s : seeds) load(path, [&](const std::string&) { validate_seed(s, *facts); return 0; });
  return seeds;
}

void write_seeds(const std::string& path, const std::vector<Seed>& seeds) {
  if (!path.empty()) textio::write_file(path, serialize_seeds(seeds));
}

int run(int argc, char** argv) {
  CLI::App app{"Crosscutting-concern mining over program facts"};
  app.require_subcommand(1);
  Common c;

  bool callers = false;
  std::string seedsOut;
  auto* fanin = app.add_subcommand("mine-fanin", "Fan-in analysis: FANIN rows for candidate methods");
  add_workspace(fanin, c);
  add_fanin_flags(fanin, c);
  fanin->add_flag("--callers", callers, "Follow each row with its CALLERS row");
  fanin->add_option("--seeds-out", seedsOut, "Write the candidate seeds to this file");

  bool stems = false;
  auto* ident = app.add_subcommand("mine-ident", "Identifier analysis: IDC rows for every concept");
  add_workspace(ident, c);
  add_ident_flags(ident, c);
  ident->add_flag("--stems", stems, "Also print STEM <token> <stem> rows");
  ident->add_option("--seeds-out", seedsOut, "Write the candidate seeds to this file");

  bool lenient = false, specific = false;
  auto* dyn = app.add_subcommand("mine-dyn", "Dynamic analysis: DYN rows for the trace lattice");
  add_workspace(dyn, c, true);
  dyn->add_flag("--lenient", lenient, "Drop trace methods missing from the facts");
  dyn->add_flag("--specific", specific, "Take seeds from the use-case-specific list");
  dyn->add_option("--seeds-out", seedsOut, "Write the candidate seeds to this file");

  std::string seedsA, seedsB;
  auto* comb = app.add_subcommand("combine", "Union and intersection of two seed sets");
  comb->add_option("--config", c.config, "Workspace JSON");
  comb->add_option("--facts", c.facts, "Validate seeds against these facts");
  comb->add_option("--a", seedsA, "First seed file")->required();
  comb->add_option("--b", seedsB, "Second seed file")->required();
  comb->add_option("--match-threshold", c.matchThreshold, "Shared methods needed for a match (default 1)");

  std::string seedsIn;
  auto* exp = app.add_subcommand(
      "expand", "Identifier-based expansion of fan-in and dynamic seeds; other seeds pass through");
  add_workspace(exp, c);
  add_ident_flags(exp, c);
  exp->add_option("--seeds", seedsIn, "Seed file to expand")->required();
  exp->add_option("--seeds-out", seedsOut, "Write the expanded seeds to this file");

  bool tsv = false;
  std::string tsvOut;
  auto* score = app.add_subcommand("score", "Recalled methods and seed quality per technique and concern");
  add_workspace(score, c, false, true);
  score->add_option("--seeds", seedsIn, "Seed file to score")->required();
  score->add_flag("--tsv", tsv, "Print tab-separated rows instead of the table");
  score->add_option("--tsv-out", tsvOut, "Also write the tab-separated rows to this file");

  std::string specPath, outPrefix;
  std::optional<std::uint64_t> genSeed;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic corpus with planted concerns");
  gen->add_option("--spec", specPath, "GenSpec JSON");
  gen->add_option("--seed", genSeed, "Override the spec's seedValue");
  gen->add_option("--out", outPrefix, "Output prefix for .facts/.traces/.truth")->required();

  std::optional<int> port;
  std::string host = "127.0.0.1", staticDir, triagePath;
  auto* serve = app.add_subcommand("serve", "HTTP service over a workspace");
  add_workspace(serve, c, true, true);
  add_fanin_flags(serve, c);
  add_ident_flags(serve, c);
  serve->add_option("--triage", triagePath, "Append-only triage log");
  serve->add_option("--port", port, "Port (else $ASPECTMINER_PORT, else 7430)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--static", staticDir, "Serve this directory at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*fanin) {
    auto ws = workspace(c);
    auto facts = facts_of(ws);
    auto result = compute_fanin(facts);
    auto candidates = filter_candidates(result, facts, ws.config.fanin);
    std::cout << fanin_report(result, &candidates, callers);
    write_seeds(seedsOut, fanin_seeds(candidates, result, ws.config.interpretation));
  } else if (*ident) {
    auto ws = workspace(c);
    auto facts = facts_of(ws);
    auto ictx = build_id_context(facts, ws.config.exclusions, ws.config.stemming);
    auto concepts = mine_identifier_concepts(ictx.context, facts, ws.config.minExtent);
    if (stems)
      for (const auto& [token, stem] : ictx.lexicon.token_to_stem()) std::cout << "STEM\t" << token << '\t' << stem << '\n';
    std::cout << identifier_report(ictx.context, concepts);
    write_seeds(seedsOut, identifier_seeds(ictx.context, facts, concepts));
  } else if (*dyn) {
    auto ws = workspace(c);
    if (!ws.tracesPath) throw Error(Errc::InvalidArgument, "--traces is required");
    auto facts = facts_of(ws);
    std::vector<std::string> warnings;
    auto traces = load(*ws.tracesPath, [&](const std::string& p) {
      return read_traces_file(p, &facts, TraceParseOptions{lenient}, &warnings);
    });
    for (const auto& w : warnings) std::cerr << "warning: " << *ws.tracesPath << ": " << w << '\n';
    auto report = dynamic_seeds(facts, traces);
    std::cout << dynamic_report(report);
    write_seeds(seedsOut, dynamic_seed_list(report, !specific));
  } else if (*comb) {
    std::optional<ProgramFacts> facts;
    std::size_t threshold = 1;
    if (!c.config.empty() || !c.facts.empty()) {
      auto ws = workspace(c);
      facts = facts_of(ws);
      threshold = ws.config.matchThreshold;
    } else if (c.matchThreshold) {
      threshold = *c.matchThreshold;
    }
    auto a = seeds_of(seedsA, facts ? &*facts : nullptr);
    auto b = seeds_of(seedsB, facts ? &*facts : nullptr);
    auto u = seed_union(a, b, threshold);
    std::cout << "UNION\t" << u.unionCount << '\n' << "INTERSECTION\t" << u.intersectionCount << '\n';
    for (const auto& m : u.matches)
      std::cout << "MATCH\t" << m.seedA << '\t' << m.seedB << '\t' << m.overlap << '\t'
                << (m.matched ? "matched" : "unmatched") << '\n';
  } else if (*exp) {
    auto ws = workspace(c);
    auto facts = facts_of(ws);
    auto seeds = seeds_of(seedsIn, &facts);
    auto ictx = build_id_context(facts, ws.config.exclusions, ws.config.stemming);
    auto concepts = mine_identifier_concepts(ictx.context, facts, ws.config.minExtent);
    std::vector<Seed> out;
    for (const auto& s : seeds) {
      if (s.technique == Technique::Identifier || s.technique == Technique::Combined) {
        out.push_back(s);
        continue;
      }
      auto e = expand_seed(facts, s, ictx, concepts);
      auto x = e.expanded();
      for (const auto& m : s.methods)
        if (!x.methods.count(m)) throw InvariantViolation("expansion of " + s.id + " lost " + m);
      std::cout << "EXPAND\t" << s.id << '\t' << x.id << '\t' << e.score << '\t'
                << (e.addedMethods.empty() ? "-" : textio::join({e.addedMethods.begin(), e.addedMethods.end()}, ","))
                << '\n';
      out.push_back(s);
      out.push_back(std::move(x));
    }
    write_seeds(seedsOut, out);
  } else if (*score) {
    auto ws = workspace(c);
    if (!ws.truthPath) throw Error(Errc::InvalidArgument, "--truth is required");
    auto facts = facts_of(ws);
    auto seeds = seeds_of(seedsIn, &facts);
    auto truth = load(*ws.truthPath, [&](const std::string& p) { return read_truth_file(p, &facts); });
    auto rows = score_report(seeds, truth);
    for (const auto& r : rows)
      if (r.recalled > r.seedSize || r.seedSize == 0) throw InvariantViolation("score row out of range");
    std::cout << (tsv ? report_tsv(rows) : report_table(rows));
    if (!tsvOut.empty()) textio::write_file(tsvOut, report_tsv(rows));
  } else if (*gen) {
    GenSpec spec;
    if (!specPath.empty()) spec = load(specPath, [](const std::string& p) { return read_genspec_file(p); });
    if (genSeed) spec.seedValue = *genSeed;
    auto corpus = generate(spec);
    for (const auto& p : write_corpus(corpus, spec.seedValue, outPrefix)) std::cout << p << '\n';
  } else if (*serve) {
    auto ws = workspace(c);
    if (!triagePath.empty()) ws.triagePath = triagePath;
    Service service(analyze_workspace(ws), ws.triagePath);
    const int p = resolve_port(port);
    if (!service.bind(host, p, staticDir.empty() ? std::nullopt : std::optional<std::string>(staticDir)))
      throw Error(Errc::InvalidArgument, "cannot bind " + host + ":" + std::to_string(p));
    std::cerr << "listening on http://" << host << ":" << service.listening_port() << '\n';
    service.run();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    const int status = exit_status(e);
    std::cerr << (status == 2 ? "internal error: " : "error: ") << e.what() << '\n';
    return status;
  }
}

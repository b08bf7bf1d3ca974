#pragma once

// Seeds are the common currency between the miners, the combiner and the
// metrics: a labelled set of method ids tagged with the technique that
// proposed it.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aspectminer {

class ProgramFacts;

enum class Technique { FanIn, Identifier, Dynamic, Combined };

enum class FaninInterpretation { CalleeOnly, CalleePlusCallers };

struct Seed {
  std::string id;
  Technique technique = Technique::FanIn;
  std::string label;
  std::set<std::string> methods;
  std::optional<FaninInterpretation> interpretation;  // fan-in seeds only
  std::optional<Technique> origin;                    // combined seeds only

  friend bool operator==(const Seed&, const Seed&) = default;
};

std::string_view to_string(Technique t);
std::string_view to_string(FaninInterpretation i);
std::optional<Technique> parse_technique(std::string_view s);
std::optional<FaninInterpretation> parse_interpretation(std::string_view s);

/// Seed file: `S <seedId> <technique> <label> <methodId,...>`, tab-separated.
/// The technique column of a combined seed may carry its origin as
/// `combined:fanin` or `combined:dynamic`.
std::vector<Seed> parse_seeds(std::string_view text);
std::vector<Seed> read_seeds_file(const std::string& path);
std::string serialize_seeds(const std::vector<Seed>& seeds);

/// Checks the Seed invariants against the facts: nonempty, every id is a method.
/// Throws Error(EmptySeed) or Error(UnknownMethod).
void validate_seed(const Seed& seed, const ProgramFacts& facts);

enum class Verdict { Accept, Reject, Unreviewed };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct VerdictRecord {
  std::string seedId;
  std::string methodId;
  Verdict verdict = Verdict::Unreviewed;
};

/// Triage file: `V <seedId> <methodId> <accept|reject|unreviewed>`, in log order.
std::vector<VerdictRecord> parse_verdicts(std::string_view text);
std::string serialize_verdict(const VerdictRecord& v);

}  // namespace aspectminer

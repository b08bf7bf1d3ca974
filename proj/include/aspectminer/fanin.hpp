#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aspectminer/facts.hpp"
#include "aspectminer/seed.hpp"

namespace aspectminer {

/// Distinct caller bodies per method.
struct FaninResult {
  std::map<std::string, std::size_t> perMethod;
  std::map<std::string, std::set<std::string>> callersOf;

  std::size_t value(const std::string& methodId) const;
};

/// Methods whose fan-in a call edge feeds. A virtual call reaches the callee
/// and everything above and below it in the override relation; a statically
/// bound call (super, constructor, static, private) reaches the callee only.
std::set<std::string> contribution_targets(const ProgramFacts& facts, const CallEdge& edge);

/// Recursive self-calls do not count toward a method's own fan-in.
FaninResult compute_fanin(const ProgramFacts& facts);

struct FaninFilter {
  std::size_t threshold = 10;
  std::vector<std::string> utilityNames = default_utility_names();
  /// When false only the threshold applies.
  bool excludeAccessorsAndUtilities = true;

  static std::vector<std::string> default_utility_names();
};

/// Keeps methods at or above the threshold that are neither accessors nor utilities.
std::set<std::string> filter_candidates(const FaninResult& result, const ProgramFacts& facts,
                                        const FaninFilter& filter = {});

/// One seed per candidate, ordered by fan-in descending then id.
std::vector<Seed> fanin_seeds(const std::set<std::string>& candidates, const FaninResult& result,
                              FaninInterpretation interpretation = FaninInterpretation::CalleeOnly);

/// `FANIN <methodId> <value>` rows sorted by value descending then id,
/// restricted to `only` when given. With `includeCallers` each row is followed
/// by `CALLERS <methodId> <callerId,...>`.
std::string fanin_report(const FaninResult& result, const std::set<std::string>* only = nullptr,
                         bool includeCallers = false);

}  // namespace aspectminer

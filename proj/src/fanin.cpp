#include "aspectminer/fanin.hpp"

#include <algorithm>
#include <sstream>

#include "aspectminer/error.hpp"

namespace aspectminer {

std::size_t FaninResult::value(const std::string& methodId) const {
  auto it = perMethod.find(methodId);
  return it == perMethod.end() ? 0 : it->second;
}

std::vector<std::string> FaninFilter::default_utility_names() {
  return {"toString", "hashCode", "equals", "clone", "add", "remove", "iterator", "size", "contains"};
}

std::set<std::string> contribution_targets(const ProgramFacts& facts, const CallEdge& edge) {
  auto callee = facts.method_index(edge.calleeId);
  if (!callee) throw Error(Errc::DanglingReference, edge.calleeId);
  std::set<std::string> out{edge.calleeId};
  if (edge.binding == Binding::Static) return out;
  const auto& methods = facts.methods();
  for (auto i : facts.override_ancestors(*callee)) out.insert(methods[i].id);
  for (auto i : facts.override_descendants(*callee)) out.insert(methods[i].id);
  return out;
}

FaninResult compute_fanin(const ProgramFacts& facts) {
  FaninResult r;
  for (const auto& m : facts.methods()) {
    r.perMethod.emplace(m.id, 0);
    r.callersOf.emplace(m.id, std::set<std::string>{});
  }
  for (const auto& edge : facts.calls())
    for (const auto& target : contribution_targets(facts, edge))
      if (target != edge.callerId) r.callersOf[target].insert(edge.callerId);
  for (auto& [id, callers] : r.callersOf) r.perMethod[id] = callers.size();
  return r;
}

std::set<std::string> filter_candidates(const FaninResult& result, const ProgramFacts& facts,
                                        const FaninFilter& filter) {
  if (filter.threshold == 0) throw Error(Errc::InvalidArgument, "threshold must be >= 1");
  std::set<std::string> out;
  for (const auto& [id, value] : result.perMethod) {
    if (value < filter.threshold) continue;
    const MethodDecl* m = facts.find_method(id);
    if (!m) throw Error(Errc::UnknownMethod, id);
    if (!filter.excludeAccessorsAndUtilities) {
      out.insert(id);
      continue;
    }
    if (is_accessor(*m) || m->flags.has(MethodFlag::Utility)) continue;
    if (std::find(filter.utilityNames.begin(), filter.utilityNames.end(), m->name) !=
        filter.utilityNames.end())
      continue;
    out.insert(id);
  }
  return out;
}

namespace {

std::vector<std::string> by_value_desc(const FaninResult& result, const std::set<std::string>* only) {
  std::vector<std::string> ids;
  for (const auto& [id, v] : result.perMethod)
    if (!only || only->count(id)) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(), [&](const auto& a, const auto& b) {
    return result.value(a) > result.value(b);
  });
  return ids;
}

}  // namespace

std::vector<Seed> fanin_seeds(const std::set<std::string>& candidates, const FaninResult& result,
                              FaninInterpretation interpretation) {
  std::vector<Seed> out;
  for (const auto& id : by_value_desc(result, &candidates)) {
    Seed s;
    s.id = "fanin-" + std::to_string(out.size() + 1);
    s.technique = Technique::FanIn;
    s.label = id;
    s.interpretation = interpretation;
    s.methods.insert(id);
    if (interpretation == FaninInterpretation::CalleePlusCallers) {
      auto it = result.callersOf.find(id);
      if (it != result.callersOf.end()) s.methods.insert(it->second.begin(), it->second.end());
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string fanin_report(const FaninResult& result, const std::set<std::string>* only,
                         bool includeCallers) {
  std::ostringstream out;
  for (const auto& id : by_value_desc(result, only)) {
    out << "FANIN\t" << id << '\t' << result.value(id) << '\n';
    if (includeCallers) {
      out << "CALLERS\t" << id << '\t';
      bool first = true;
      for (const auto& c : result.callersOf.at(id)) {
        out << (first ? "" : ",") << c;
        first = false;
      }
      if (first) out << '-';
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace aspectminer

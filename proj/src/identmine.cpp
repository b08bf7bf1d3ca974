#include "aspectminer/identmine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "aspectminer/error.hpp"
#include "aspectminer/porter.hpp"

namespace aspectminer {

std::vector<std::string> split_identifier(std::string_view name) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  auto upper = [](char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; };
  auto lower = [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; };

  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (!upper(c) && !lower(c)) {
      flush();
      continue;
    }
    if (upper(c) && !current.empty()) {
      const char prev = name[i - 1];
      const bool nextLower = i + 1 < name.size() && lower(name[i + 1]);
      if (lower(prev) || (upper(prev) && nextLower)) flush();
    }
    current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush();
  return tokens;
}

StemLexicon StemLexicon::build(const std::vector<std::string>& tokens, StemOptions options) {
  StemLexicon lex;
  lex.options_ = options;
  std::set<std::string> stems;
  for (const auto& t : tokens) {
    auto [it, inserted] = lex.tokenToStem_.emplace(t, std::string());
    if (inserted) {
      it->second = porter_stem(t);
      stems.insert(it->second);
    }
  }

  // Nearest (shortest) prefix stem within the gap; chains are followed to a
  // fixed point so the representative map is idempotent.
  std::map<std::string, std::string> parent;
  if (options.conflate) {
    for (const auto& s : stems) {
      const std::size_t lo = s.size() > options.maxSuffixGap ? s.size() - options.maxSuffixGap : 0;
      for (std::size_t len = std::max(lo, options.minRootLength); len < s.size(); ++len) {
        std::string prefix = s.substr(0, len);
        if (stems.count(prefix)) {
          parent.emplace(s, std::move(prefix));
          break;
        }
      }
    }
  }
  for (const auto& s : stems) {
    std::string root = s;
    for (auto it = parent.find(root); it != parent.end(); it = parent.find(root)) root = it->second;
    if (root != s) lex.log_.push_back({s, parent.at(s), root});
    lex.rootOf_.emplace(s, root);
    lex.representatives_.insert(root);
  }
  for (auto& [token, stem] : lex.tokenToStem_) stem = lex.rootOf_.at(stem);
  return lex;
}

std::string StemLexicon::stem(std::string_view token) const {
  std::string key(token);
  if (representatives_.count(key)) return key;
  if (auto it = tokenToStem_.find(key); it != tokenToStem_.end()) return it->second;
  std::string s = porter_stem(token);
  if (auto it = rootOf_.find(s); it != rootOf_.end()) return it->second;
  return s;
}

std::set<std::string> name_stems(std::string_view name, const StemLexicon& lexicon) {
  std::set<std::string> out;
  for (const auto& tok : split_identifier(name)) {
    if (tok.size() < 2) continue;
    auto s = lexicon.stem(tok);
    if (s.size() >= 2) out.insert(std::move(s));
  }
  return out;
}

namespace {

bool excluded_method(const ProgramFacts& facts, const MethodDecl& m, const ExclusionConfig& cfg) {
  if (cfg.excludeTests && is_test_type(facts.enclosing_type(m))) return true;
  if (cfg.excludeAccessors) {
    if (m.flags.has(MethodFlag::Accessor)) return true;
    if (cfg.accessorNamePattern && is_accessor(m)) return true;
  }
  return false;
}

}  // namespace

IdentifierContext build_id_context(const ProgramFacts& facts, const ExclusionConfig& exclusions,
                                   const StemOptions& stemming) {
  std::vector<std::string> elementIds;
  std::vector<std::string> elementNames;
  for (const auto& t : facts.types()) {
    if (exclusions.excludeTests && is_test_type(t)) continue;
    elementIds.push_back(t.id);
    elementNames.emplace_back(t.simple_name());
  }
  for (const auto& m : facts.methods()) {
    if (excluded_method(facts, m, exclusions)) continue;
    elementIds.push_back(m.id);
    elementNames.push_back(m.name);
  }

  std::vector<std::string> tokens;
  for (const auto& n : elementNames)
    for (auto& tok : split_identifier(n))
      if (tok.size() >= 2) tokens.push_back(std::move(tok));
  StemLexicon lexicon = StemLexicon::build(tokens, stemming);

  std::vector<std::set<std::string>> stemsOf;
  std::set<std::string> allStems;
  for (const auto& n : elementNames) {
    stemsOf.push_back(name_stems(n, lexicon));
    allStems.insert(stemsOf.back().begin(), stemsOf.back().end());
  }

  fca::Context ctx(elementIds, std::vector<std::string>(allStems.begin(), allStems.end()));
  for (std::size_t e = 0; e < elementIds.size(); ++e)
    for (const auto& s : stemsOf[e]) ctx.set(e, *ctx.property_index(s));
  return {std::move(ctx), std::move(lexicon)};
}

bool crosscuts_hierarchies(const ProgramFacts& facts, const std::vector<std::string>& entityIds) {
  std::set<std::string> roots;
  for (const auto& id : entityIds) {
    if (const auto* t = facts.find_type(id)) {
      roots.insert(hierarchy_root(facts, t->id));
    } else if (const auto* m = facts.find_method(id)) {
      roots.insert(hierarchy_root(facts, m->typeId));
    } else {
      throw Error(Errc::DanglingReference, id);
    }
    if (roots.size() >= 2) return true;
  }
  return false;
}

std::vector<std::string> extent_ids(const fca::Context& ctx, const fca::Concept& c) {
  std::vector<std::string> out;
  for (auto i : fca::indices(c.extent)) out.push_back(ctx.elements()[i]);
  return out;
}

std::vector<std::string> intent_ids(const fca::Context& ctx, const fca::Concept& c) {
  std::vector<std::string> out;
  for (auto i : fca::indices(c.intent)) out.push_back(ctx.properties()[i]);
  return out;
}

std::vector<IdentifierConcept> mine_identifier_concepts(const fca::Context& ctx,
                                                        const ProgramFacts& facts,
                                                        std::size_t minExtent) {
  if (minExtent == 0) throw Error(Errc::InvalidArgument, "minExtent must be positive");
  std::vector<IdentifierConcept> out;
  for (auto& c : fca::concepts(ctx)) {
    if (c.extent.none() || c.intent.none()) continue;
    IdentifierConcept ic{std::move(c), false};
    ic.candidate = ic.formal.extent.count() >= minExtent &&
                   crosscuts_hierarchies(facts, extent_ids(ctx, ic.formal));
    out.push_back(std::move(ic));
  }
  return out;
}

std::vector<Seed> identifier_seeds(const fca::Context& ctx, const ProgramFacts& facts,
                                   const std::vector<IdentifierConcept>& concepts) {
  std::vector<Seed> out;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    if (!concepts[i].candidate) continue;
    Seed s;
    s.technique = Technique::Identifier;
    s.id = "ident-" + std::to_string(i);
    for (const auto& id : extent_ids(ctx, concepts[i].formal))
      if (facts.find_method(id)) s.methods.insert(id);
    if (s.methods.empty()) continue;
    std::string label;
    for (const auto& stem : intent_ids(ctx, concepts[i].formal)) label += (label.empty() ? "" : "+") + stem;
    s.label = label;
    out.push_back(std::move(s));
  }
  return out;
}

std::string identifier_report(const fca::Context& ctx,
                              const std::vector<IdentifierConcept>& concepts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const auto& c = concepts[i];
    auto stems = intent_ids(ctx, c.formal);
    out << "IDC\t" << i << '\t';
    for (std::size_t k = 0; k < stems.size(); ++k) out << (k ? ";" : "") << stems[k];
    out << '\t' << c.formal.extent.count() << '\t' << (c.candidate ? "candidate" : "noise") << '\n';
  }
  return out.str();
}

}  // namespace aspectminer

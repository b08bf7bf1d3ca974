#pragma once

// Identifier analysis: names are split into words, words are stemmed, and
// FCA groups classes and methods that share stems. Groups that are large
// enough and span several class hierarchies become candidate seeds.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aspectminer/facts.hpp"
#include "aspectminer/fca.hpp"
#include "aspectminer/seed.hpp"

namespace aspectminer {

/// Lowercased words of an identifier. Splits at lower->upper transitions and
/// before the last capital of a capital run that is followed by lowercase
/// (parseXMLFile -> parse, xml, file). Every non-letter is a separator and is
/// dropped.
std::vector<std::string> split_identifier(std::string_view name);

struct StemOptions {
  bool conflate = true;
  std::size_t maxSuffixGap = 4;   // |longer| - |shorter| allowed for conflation
  std::size_t minRootLength = 3;  // shortest stem allowed to absorb others
};

struct Conflation {
  std::string stem;        // stem that was absorbed
  std::string parent;      // nearest prefix stem that absorbed it
  std::string unified;     // final representative
};

/// Corpus-local stemming: Porter stems plus the prefix conflation pass.
/// Representatives are fixed points, so stem(stem(t)) == stem(t).
class StemLexicon {
 public:
  StemLexicon() = default;
  static StemLexicon build(const std::vector<std::string>& tokens, StemOptions options = {});

  std::string stem(std::string_view token) const;

  const std::map<std::string, std::string>& token_to_stem() const { return tokenToStem_; }
  const std::vector<Conflation>& conflation_log() const { return log_; }
  const StemOptions& options() const { return options_; }

 private:
  StemOptions options_;
  std::map<std::string, std::string> tokenToStem_;
  std::unordered_map<std::string, std::string> rootOf_;  // porter stem -> representative
  std::unordered_set<std::string> representatives_;
  std::vector<Conflation> log_;
};

struct ExclusionConfig {
  bool excludeTests = true;
  bool excludeAccessors = true;
  /// Also treat get*/set*/is* names as accessors (the flag alone by default).
  bool accessorNamePattern = false;
};

/// Context of classes and methods x stems, with the lexicon that produced it.
struct IdentifierContext {
  fca::Context context;
  StemLexicon lexicon;
};

/// Stems (length >= 2) of one name under a lexicon.
std::set<std::string> name_stems(std::string_view name, const StemLexicon& lexicon);

IdentifierContext build_id_context(const ProgramFacts& facts, const ExclusionConfig& exclusions = {},
                                   const StemOptions& stemming = {});

struct IdentifierConcept {
  fca::Concept formal;
  bool candidate = false;
};

/// True iff the enclosing types of the given entities (types stand for
/// themselves) have at least two distinct hierarchy roots.
bool crosscuts_hierarchies(const ProgramFacts& facts, const std::vector<std::string>& entityIds);

/// Concepts with a nonempty extent and intent, in canonical order; candidate
/// iff |extent| >= minExtent and the extent crosscuts hierarchies.
std::vector<IdentifierConcept> mine_identifier_concepts(const fca::Context& ctx,
                                                        const ProgramFacts& facts,
                                                        std::size_t minExtent = 4);

/// Ids of a concept's extent / intent under ctx.
std::vector<std::string> extent_ids(const fca::Context& ctx, const fca::Concept& c);
std::vector<std::string> intent_ids(const fca::Context& ctx, const fca::Concept& c);

/// One identifier seed per candidate concept that contains at least one method.
std::vector<Seed> identifier_seeds(const fca::Context& ctx, const ProgramFacts& facts,
                                   const std::vector<IdentifierConcept>& concepts);

/// `IDC <conceptIndex> <stems;...> <extentSize> <candidate|noise>` rows.
std::string identifier_report(const fca::Context& ctx, const std::vector<IdentifierConcept>& concepts);

}  // namespace aspectminer

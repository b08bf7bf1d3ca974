#pragma once

// Seed-set algebra across techniques and identifier-based seed expansion:
// the stems of a seed's methods and classes pick the nearest candidate
// identifier concept(s), whose methods are added to the seed before the
// analyst reviews it.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aspectminer/facts.hpp"
#include "aspectminer/identmine.hpp"
#include "aspectminer/seed.hpp"

namespace aspectminer {

struct SeedMatch {
  std::string seedA;
  std::string seedB;
  std::size_t overlap = 0;
  bool matched = false;
};

struct SeedUnion {
  std::size_t unionCount = 0;
  std::size_t intersectionCount = 0;
  /// Every pair sharing at least one method, in greedy visiting order.
  std::vector<SeedMatch> matches;
};

/// Two seeds match when they share >= matchThreshold methods. Pairs are
/// matched greedily by descending overlap, each seed at most once; ties are
/// broken on the unordered id pair so the counts do not depend on argument order.
SeedUnion seed_union(const std::vector<Seed>& a, const std::vector<Seed>& b,
                     std::size_t matchThreshold = 1);

/// Stems of every seed method's name and of its enclosing class's simple name.
std::set<std::string> seed_identifiers(const ProgramFacts& facts, const Seed& seed,
                                       const StemLexicon& lexicon);

struct NearestConcepts {
  std::vector<std::size_t> selected;  // indices into the concept list
  std::size_t score = 0;
};

/// Among candidate concepts, those whose full intent shares the most stems.
/// Nothing is selected when the best score is 0.
NearestConcepts nearest_concepts(const std::set<std::string>& stems, const fca::Context& ctx,
                                 const std::vector<IdentifierConcept>& concepts);

struct ExpandedSeed {
  Seed origin;
  std::set<std::string> addedMethods;
  std::vector<std::size_t> nearestConcepts;
  std::size_t score = 0;

  /// Combined seed with methods origin ∪ added.
  Seed expanded() const;
};

/// Adds the method elements of the nearest concepts' extents; class elements
/// are ignored.
ExpandedSeed expand_seed(const ProgramFacts& facts, const Seed& seed, const IdentifierContext& ident,
                         const std::vector<IdentifierConcept>& concepts);

struct TriageVerdict {
  std::string seedId;
  std::map<std::string, Verdict> memberVerdicts;
  std::string note;
};

/// Accepted and unreviewed members survive, rejected ones are dropped. A
/// verdict on a non-member raises Error(UnknownMember). A seed whose members
/// are all rejected comes back with an empty method set.
Seed apply_triage(const Seed& seed, const TriageVerdict& verdict);
Seed apply_triage(const ExpandedSeed& expanded, const TriageVerdict& verdict);

}  // namespace aspectminer

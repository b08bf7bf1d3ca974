#include "aspectminer/combine.hpp"

#include <algorithm>
#include <tuple>

#include "aspectminer/error.hpp"

namespace aspectminer {

namespace {

std::size_t overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

std::string joined(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) {
    out += x;
    out += ',';
  }
  return out;
}

}  // namespace

SeedUnion seed_union(const std::vector<Seed>& a, const std::vector<Seed>& b,
                     std::size_t matchThreshold) {
  if (matchThreshold == 0) throw Error(Errc::InvalidArgument, "matchThreshold must be >= 1");

  struct Pair {
    std::size_t ia, ib, overlap;
    std::string lo, hi, loSet, hiSet;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto n = overlap(a[i].methods, b[j].methods);
      if (n == 0) continue;
      auto sa = joined(a[i].methods);
      auto sb = joined(b[j].methods);
      bool aFirst = std::tie(a[i].id, sa) <= std::tie(b[j].id, sb);
      pairs.push_back({i, j, n, aFirst ? a[i].id : b[j].id, aFirst ? b[j].id : a[i].id,
                       aFirst ? sa : sb, aFirst ? sb : sa});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.overlap != y.overlap) return x.overlap > y.overlap;
    return std::tie(x.lo, x.hi, x.loSet, x.hiSet) < std::tie(y.lo, y.hi, y.loSet, y.hiSet);
  });

  SeedUnion out;
  std::vector<char> usedA(a.size(), 0), usedB(b.size(), 0);
  for (const auto& p : pairs) {
    SeedMatch m{a[p.ia].id, b[p.ib].id, p.overlap, false};
    if (p.overlap >= matchThreshold && !usedA[p.ia] && !usedB[p.ib]) {
      usedA[p.ia] = usedB[p.ib] = 1;
      m.matched = true;
      ++out.intersectionCount;
    }
    out.matches.push_back(std::move(m));
  }
  out.unionCount = a.size() + b.size() - out.intersectionCount;
  return out;
}

std::set<std::string> seed_identifiers(const ProgramFacts& facts, const Seed& seed,
                                       const StemLexicon& lexicon) {
  std::set<std::string> out;
  for (const auto& id : seed.methods) {
    const MethodDecl* m = facts.find_method(id);
    if (!m) throw Error(Errc::UnknownMethod, id);
    auto a = name_stems(m->name, lexicon);
    auto b = name_stems(facts.enclosing_type(*m).simple_name(), lexicon);
    out.insert(a.begin(), a.end());
    out.insert(b.begin(), b.end());
  }
  return out;
}

NearestConcepts nearest_concepts(const std::set<std::string>& stems, const fca::Context& ctx,
                                 const std::vector<IdentifierConcept>& concepts) {
  fca::Bits wanted = ctx.no_properties();
  for (const auto& s : stems)
    if (auto p = ctx.property_index(s)) wanted.set(*p);

  NearestConcepts out;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    if (!concepts[i].candidate) continue;
    const std::size_t score = (concepts[i].formal.intent & wanted).count();
    if (score == 0 || score < out.score) continue;
    if (score > out.score) {
      out.score = score;
      out.selected.clear();
    }
    out.selected.push_back(i);
  }
  return out;
}

Seed ExpandedSeed::expanded() const {
  Seed s = origin;
  s.id = origin.id + "+ident";
  s.technique = Technique::Combined;
  s.origin = origin.technique == Technique::Combined ? origin.origin : origin.technique;
  s.interpretation.reset();
  s.methods.insert(addedMethods.begin(), addedMethods.end());
  return s;
}

ExpandedSeed expand_seed(const ProgramFacts& facts, const Seed& seed, const IdentifierContext& ident,
                         const std::vector<IdentifierConcept>& concepts) {
  ExpandedSeed out;
  out.origin = seed;
  auto nearest = nearest_concepts(seed_identifiers(facts, seed, ident.lexicon), ident.context, concepts);
  out.nearestConcepts = nearest.selected;
  out.score = nearest.score;
  for (auto i : nearest.selected) {
    for (auto e : fca::indices(concepts[i].formal.extent)) {
      const auto& id = ident.context.elements()[e];
      if (facts.find_method(id) && !seed.methods.count(id)) out.addedMethods.insert(id);
    }
  }
  return out;
}

Seed apply_triage(const Seed& seed, const TriageVerdict& verdict) {
  if (verdict.seedId != seed.id)
    throw Error(Errc::InvalidArgument, "verdict for " + verdict.seedId + " applied to " + seed.id);
  for (const auto& [method, v] : verdict.memberVerdicts)
    if (!seed.methods.count(method)) throw Error(Errc::UnknownMember, seed.id + ": " + method);
  Seed out = seed;
  for (const auto& [method, v] : verdict.memberVerdicts)
    if (v == Verdict::Reject) out.methods.erase(method);
  return out;
}

Seed apply_triage(const ExpandedSeed& expanded, const TriageVerdict& verdict) {
  return apply_triage(expanded.expanded(), verdict);
}

}  // namespace aspectminer

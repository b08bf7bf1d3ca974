#include "aspectminer/corpusgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "json.hpp"

#include "aspectminer/error.hpp"
#include "aspectminer/porter.hpp"
#include "aspectminer/textio.hpp"

namespace aspectminer {

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = [] {
    const char* text =
        "amber anchor anvil apricot arbor arrow aspen attic autumn avenue badger bamboo banjo "
        "banner barley basket beacon beaver bellow birch biscuit blanket blossom bonnet bottle "
        "boulder bramble bridle brook bucket buffalo bugle bundle burrow butter cabin cactus "
        "camel candle canoe canyon carpet carrot castle cedar cellar chalk cherry chimney cinder "
        "citrus clover cobalt coconut comet copper coral cotton cradle crater cricket crystal "
        "cypress dagger daisy delta desert dolphin donkey dragon drizzle dune eagle easel ember "
        "emerald falcon feather fennel fern ferret fiddle fjord flannel flint forest fossil "
        "fountain galaxy garlic garnet geyser ginger glacier goblet gopher granite gravel grotto "
        "guitar gull hammock harbor harp hazel heron hickory hollow honey hornet husky iceberg "
        "igloo indigo iris ivory jackal jade jasmine jelly jungle juniper kayak kettle kiwi koala "
        "ladder lagoon lantern larch lava lemon lentil lilac linen lizard llama lobster locket "
        "lotus lumber lynx magnet mallet mango maple marble marsh meadow melon mesa mimosa mint "
        "mitten molasses monsoon moose mosaic moss mustard napkin nectar nickel nutmeg oasis "
        "oatmeal ocelot olive onyx orchid otter oyster paddle panther papaya parrot pebble "
        "pelican pepper pewter pigeon pillow pine pistachio plum pollen pony poppy prairie prism "
        "puffin pumpkin quail quarry quartz quill rabbit radish raven reef ribbon river robin "
        "rocket rubble saddle saffron salmon sandal sapphire satchel scarlet seashell sequoia "
        "shovel sierra silver skunk sleigh slipper sorrel sparrow spruce squash squirrel starling "
        "stone sulfur summit swallow sycamore tadpole tamarind tangerine teapot thimble thistle "
        "thunder timber tinsel toffee tomato topaz tortoise trellis trumpet tulip tundra turnip "
        "turtle tuxedo umbrella valley vanilla velvet violet volcano vulture wagon walnut walrus "
        "wasp weasel whisker willow wombat yarrow yodel zebra zephyr zinnia";
    std::vector<std::string> out;
    for (auto w : textio::split(text, ' '))
      if (!w.empty()) out.emplace_back(w);
    return out;
  }();
  return words;
}

std::string generator_header(std::uint64_t seedValue) {
  return "# generator: mt19937_64 seed=" + std::to_string(seedValue) + "\n";
}

GenSpec parse_genspec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("gen spec: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::MalformedRecord, "gen spec must be an object");
  GenSpec s;
  try {
    s.seedValue = j.value("seedValue", s.seedValue);
    s.hierarchies = j.value("hierarchies", s.hierarchies);
    s.classesPerHierarchy = j.value("classesPerHierarchy", s.classesPerHierarchy);
    s.methodsPerClass = j.value("methodsPerClass", s.methodsPerClass);
    s.faninThreshold = j.value("faninThreshold", s.faninThreshold);
    s.hubCallers = j.value("hubCallers", s.hubCallers);
    s.callsPerMethod = j.value("callsPerMethod", s.callsPerMethod);
    s.traceCoverage = j.value("traceCoverage", s.traceCoverage);
    s.traceNoise = j.value("traceNoise", s.traceNoise);
    s.generalVocabulary = j.value("generalVocabulary", s.generalVocabulary);
    s.generalUses = j.value("generalUses", s.generalUses);
    for (const auto& c : j.value("plantedConcerns", nlohmann::json::array())) {
      PlantedConcern pc;
      pc.name = c.at("name").get<std::string>();
      pc.stemVocabulary = c.value("stemVocabulary", pc.stemVocabulary);
      pc.memberCount = c.value("memberCount", pc.memberCount);
      pc.scatterAcrossHierarchies = c.value("scatterAcrossHierarchies", pc.scatterAcrossHierarchies);
      pc.highFanin = c.value("highFanin", pc.highFanin);
      pc.traceDiscriminable = c.value("traceDiscriminable", pc.traceDiscriminable);
      s.plantedConcerns.push_back(std::move(pc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedRecord, std::string("gen spec: ") + e.what());
  }
  return s;
}

GenSpec read_genspec_file(const std::string& path) { return parse_genspec(textio::read_file(path)); }

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, n) by rejection, independent of the standard library's distributions.
  std::size_t below(std::size_t n) {
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return static_cast<std::size_t>(x % range);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

[[noreturn]] void infeasible(const std::string& why) { throw Error(Errc::InfeasibleSpec, why); }

std::string cap(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

bool conflates(const std::string& a, const std::string& b) {
  const auto& s = a.size() <= b.size() ? a : b;
  const auto& l = a.size() <= b.size() ? b : a;
  if (s == l) return true;
  return s.size() >= 3 && l.compare(0, s.size(), s) == 0 && l.size() - s.size() <= 4;
}

void check_vocabulary(const std::string& word) {
  if (word.size() < 2 || !std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; }))
    infeasible("vocabulary word '" + word + "' must be at least two lowercase letters");
  const auto s = porter_stem(word);
  for (const auto& f : filler_words())
    if (conflates(s, porter_stem(f))) infeasible("vocabulary word '" + word + "' collides with filler '" + f + "'");
}

struct Slot {
  std::size_t cls = 0;
  std::size_t index = 0;
  std::string name;
  int concern = -1;  // planted concern index, -1 for filler
  bool general = false;
};

struct Builder {
  const GenSpec& spec;
  Rng rng;
  std::vector<std::vector<std::string>> partition;  // hierarchy -> words
  std::vector<std::set<std::string>> used;          // hierarchy -> taken method/class names
  std::vector<TypeDecl> types;
  std::vector<std::size_t> hierarchyOf;             // class -> hierarchy
  std::vector<std::vector<Slot>> slots;             // class -> method slots

  explicit Builder(const GenSpec& s) : spec(s), rng(s.seedValue) {}

  const std::string& word(std::size_t h) { return partition[h][rng.below(partition[h].size())]; }

  // Random camel-case compound from the hierarchy's words, unused in that hierarchy.
  std::string fresh(std::size_t h, const std::string& prefix = "") {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::string first = prefix.empty() ? word(h) : prefix;
      std::string name = first + cap(word(h));
      if (used[h].insert(name).second) return name;
    }
    for (const auto& a : partition[h]) {
      for (const auto& b : partition[h]) {
        std::string name = prefix.empty() ? a + cap(b) : prefix + cap(a) + cap(b);
        if (used[h].insert(name).second) return name;
      }
    }
    infeasible("hierarchy " + std::to_string(h) + " ran out of names");
  }
};

}  // namespace

Corpus generate(const GenSpec& spec) {
  const std::size_t H = spec.hierarchies, K = spec.classesPerHierarchy, M = spec.methodsPerClass;
  if (H == 0 || K == 0 || M == 0) infeasible("hierarchies, classesPerHierarchy and methodsPerClass must be positive");
  if (!(spec.traceCoverage > 0.0 && spec.traceCoverage <= 1.0)) infeasible("traceCoverage must be in (0, 1]");

  const auto& words = filler_words();
  const std::size_t P = words.size() / H;
  if (P < 4 || P * P < 2 * (K * M + K)) infeasible("too many hierarchies or methods for the filler word list");

  std::set<std::string> names;
  std::size_t totalMembers = 0;
  for (const auto& c : spec.plantedConcerns) {
    if (!textio::valid_identifier(c.name) || !names.insert(c.name).second)
      infeasible("concern name '" + c.name + "' is empty or repeated");
    if (c.memberCount == 0) infeasible(c.name + ": memberCount must be positive");
    if (c.scatterAcrossHierarchies && (H < 2 || c.memberCount < 2))
      infeasible(c.name + ": scattering needs two hierarchies and two members");
    if (c.highFanin && spec.hubCallers < spec.faninThreshold)
      infeasible(c.name + ": hubCallers below the fan-in threshold");
    for (const auto& w : c.stemVocabulary) check_vocabulary(w);
    totalMembers += c.memberCount;
  }
  for (const auto& w : spec.generalVocabulary) check_vocabulary(w);
  if (!spec.generalVocabulary.empty() && (H < 2 || spec.generalUses < 2))
    infeasible("general vocabulary needs two hierarchies and generalUses >= 2");
  if (totalMembers > H * K * (M - 1)) infeasible("memberCount exceeds the available method slots");

  Builder b(spec);
  std::vector<std::string> shuffled = words;
  b.rng.shuffle(shuffled);
  b.partition.resize(H);
  b.used.resize(H);
  for (std::size_t h = 0; h < H; ++h)
    b.partition[h].assign(shuffled.begin() + static_cast<std::ptrdiff_t>(h * P),
                          shuffled.begin() + static_cast<std::ptrdiff_t>((h + 1) * P));

  // Types: one root per hierarchy, the other classes extend it.
  for (std::size_t h = 0; h < H; ++h) {
    for (std::size_t k = 0; k < K; ++k) {
      TypeDecl t;
      t.id = "g" + std::to_string(h) + "_" + std::to_string(k);
      t.name = "gen.h" + std::to_string(h) + "." + cap(b.fresh(h));
      if (k > 0) t.superId = "g" + std::to_string(h) + "_0";
      b.types.push_back(std::move(t));
      b.hierarchyOf.push_back(h);
      b.slots.emplace_back(M);
      for (std::size_t i = 0; i < M; ++i) b.slots.back()[i] = {b.types.size() - 1, i, "", -1, false};
    }
  }

  // Slot 0 of every class is the hierarchy's override family.
  for (std::size_t h = 0; h < H; ++h) {
    auto name = b.fresh(h);
    for (std::size_t k = 0; k < K; ++k) b.slots[h * K + k][0].name = name;
  }

  // Planted members occupy slots 1.. of classes picked round-robin.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> members(spec.plantedConcerns.size());
  auto freeSlot = [&](std::size_t cls) -> std::optional<std::size_t> {
    for (std::size_t i = 1; i < M; ++i)
      if (b.slots[cls][i].concern < 0 && b.slots[cls][i].name.empty()) return i;
    return std::nullopt;
  };
  for (std::size_t ci = 0; ci < spec.plantedConcerns.size(); ++ci) {
    const auto& c = spec.plantedConcerns[ci];
    std::vector<std::size_t> hs(H);
    for (std::size_t h = 0; h < H; ++h) hs[h] = h;
    b.rng.shuffle(hs);
    if (!c.scatterAcrossHierarchies) hs.resize(1);
    std::vector<std::size_t> classOrder(K);
    for (std::size_t k = 0; k < K; ++k) classOrder[k] = k;
    b.rng.shuffle(classOrder);
    for (std::size_t i = 0; i < c.memberCount; ++i) {
      std::optional<std::pair<std::size_t, std::size_t>> pick;
      for (std::size_t probe = 0; probe < hs.size() * K && !pick; ++probe) {
        const std::size_t h = hs[(i + probe) % hs.size()];
        const std::size_t cls = h * K + classOrder[((i + probe) / hs.size()) % K];
        if (auto s = freeSlot(cls)) pick = std::make_pair(cls, *s);
      }
      if (!pick) infeasible(c.name + ": not enough free method slots");
      const auto [cls, s] = *pick;
      const std::size_t h = b.hierarchyOf[cls];
      std::string prefix;
      if (!c.stemVocabulary.empty()) prefix = c.stemVocabulary[i % c.stemVocabulary.size()];
      else if (!spec.generalVocabulary.empty())
        prefix = spec.generalVocabulary[i % spec.generalVocabulary.size()];
      b.slots[cls][s].name = b.fresh(h, prefix);
      b.slots[cls][s].concern = static_cast<int>(ci);
      members[ci].emplace_back(cls, s);
    }
  }

  // Remaining slots are filler; some take general vocabulary words.
  std::vector<std::pair<std::size_t, std::size_t>> filler;
  for (std::size_t cls = 0; cls < b.slots.size(); ++cls) {
    for (std::size_t i = 0; i < M; ++i) {
      auto& slot = b.slots[cls][i];
      if (slot.concern >= 0) continue;
      if (slot.name.empty()) slot.name = b.fresh(b.hierarchyOf[cls]);
      filler.emplace_back(cls, i);
    }
  }
  if (!spec.generalVocabulary.empty()) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> perH(H);
    for (const auto& f : filler)
      if (f.second > 0) perH[b.hierarchyOf[f.first]].push_back(f);
    for (auto& v : perH) b.rng.shuffle(v);
    std::vector<std::size_t> next(H, 0);
    for (std::size_t g = 0; g < spec.generalVocabulary.size(); ++g) {
      for (std::size_t u = 0; u < spec.generalUses; ++u) {
        const std::size_t start = (g + u) % H;
        bool placed = false;
        for (std::size_t probe = 0; probe < H && !placed; ++probe) {
          const std::size_t h = (start + probe) % H;
          if (next[h] >= perH[h].size()) continue;
          auto [cls, i] = perH[h][next[h]++];
          auto& slot = b.slots[cls][i];
          b.used[h].erase(slot.name);
          slot.name = b.fresh(h, spec.generalVocabulary[g]);
          slot.general = true;
          placed = true;
        }
        if (!placed) infeasible("not enough filler methods for the general vocabulary");
      }
    }
  }

  auto methodId = [&](std::size_t cls, std::size_t i) { return b.types[cls].id + "." + b.slots[cls][i].name; };

  std::vector<MethodDecl> methods;
  for (std::size_t cls = 0; cls < b.slots.size(); ++cls)
    for (std::size_t i = 0; i < M; ++i)
      methods.push_back({methodId(cls, i), b.types[cls].id, b.slots[cls][i].name, {}, {}});

  // Calls. Filler callees are grouped by override family and each family
  // keeps fewer distinct callers than the threshold.
  const std::size_t callerCap = std::min<std::size_t>(4, spec.faninThreshold > 0 ? spec.faninThreshold - 1 : 0);
  auto family = [&](std::size_t cls, std::size_t i) {
    return i == 0 ? "f" + std::to_string(b.hierarchyOf[cls]) : methodId(cls, i);
  };
  std::map<std::string, std::set<std::string>> familyCallers;
  std::vector<CallEdge> calls;
  std::set<std::pair<std::string, std::string>> seen;
  auto call = [&](const std::string& from, const std::string& to) {
    if (from != to && seen.emplace(from, to).second) calls.push_back({from, to, Binding::Virtual});
  };

  std::vector<std::string> callers;
  for (const auto& [cls, i] : filler) callers.push_back(methodId(cls, i));
  for (const auto& ms : members)
    for (const auto& [cls, i] : ms) callers.push_back(methodId(cls, i));
  for (const auto& from : callers) {
    for (std::size_t n = 0; n < spec.callsPerMethod && callerCap > 0 && !filler.empty(); ++n) {
      for (int attempt = 0; attempt < 16; ++attempt) {
        const auto [cls, i] = filler[b.rng.below(filler.size())];
        const auto to = methodId(cls, i);
        auto& fc = familyCallers[family(cls, i)];
        if (to == from || fc.count(from) || fc.size() >= callerCap) continue;
        fc.insert(from);
        call(from, to);
        break;
      }
    }
  }

  for (std::size_t ci = 0; ci < spec.plantedConcerns.size(); ++ci) {
    if (!spec.plantedConcerns[ci].highFanin) continue;
    const auto hub = methodId(members[ci][0].first, members[ci][0].second);
    std::set<std::string> hubCallers;
    for (std::size_t m = 1; m < members[ci].size(); ++m) {
      auto from = methodId(members[ci][m].first, members[ci][m].second);
      call(from, hub);
      hubCallers.insert(from);
    }
    std::vector<std::string> pool;
    for (const auto& [cls, i] : filler) pool.push_back(methodId(cls, i));
    b.rng.shuffle(pool);
    for (const auto& from : pool) {
      if (hubCallers.size() >= spec.hubCallers) break;
      call(from, hub);
      hubCallers.insert(from);
    }
    if (hubCallers.size() < spec.hubCallers)
      infeasible(spec.plantedConcerns[ci].name + ": not enough methods to call the hub");
  }

  // Traces: one use case per class over its filler methods, plus a dedicated
  // use case per trace-discriminable concern.
  TraceSet traces;
  std::set<std::string> reserved;
  std::vector<std::string> fillerIds;
  for (const auto& [cls, i] : filler) fillerIds.push_back(methodId(cls, i));
  for (std::size_t ci = 0; ci < spec.plantedConcerns.size(); ++ci) {
    const auto& c = spec.plantedConcerns[ci];
    if (!c.traceDiscriminable) continue;
    auto& uc = traces.traces["uc-" + c.name];
    auto ms = members[ci];
    b.rng.shuffle(ms);
    auto run = static_cast<std::size_t>(std::llround(spec.traceCoverage * static_cast<double>(ms.size())));
    run = std::clamp<std::size_t>(run, 1, ms.size());
    for (std::size_t m = 0; m < run; ++m) uc.insert(methodId(ms[m].first, ms[m].second));
    std::vector<std::string> pool;
    for (const auto& id : fillerIds)
      if (!reserved.count(id)) pool.push_back(id);
    b.rng.shuffle(pool);
    if (pool.size() < spec.traceNoise) infeasible(c.name + ": not enough filler methods for trace noise");
    for (std::size_t n = 0; n < spec.traceNoise; ++n) {
      reserved.insert(pool[n]);
      uc.insert(pool[n]);
    }
  }
  for (std::size_t cls = 0; cls < b.slots.size(); ++cls) {
    std::set<std::string> run;
    for (std::size_t i = 0; i < M; ++i) {
      const auto& slot = b.slots[cls][i];
      const auto id = methodId(cls, i);
      if (slot.concern >= 0 && spec.plantedConcerns[static_cast<std::size_t>(slot.concern)].traceDiscriminable) continue;
      if (reserved.count(id)) continue;
      run.insert(id);
    }
    if (!run.empty()) traces.traces["uc-" + b.types[cls].id] = std::move(run);
  }

  ConcernTruth truth;
  for (std::size_t ci = 0; ci < spec.plantedConcerns.size(); ++ci)
    for (const auto& [cls, i] : members[ci]) truth.concerns[spec.plantedConcerns[ci].name].insert(methodId(cls, i));

  Corpus out;
  out.facts = ProgramFacts::build(std::move(b.types), std::move(methods), std::move(calls));
  out.traces = std::move(traces);
  out.truth = std::move(truth);
  return out;
}

std::vector<std::string> write_corpus(const Corpus& corpus, std::uint64_t seedValue, const std::string& prefix) {
  const auto header = generator_header(seedValue);
  std::vector<std::string> paths{prefix + ".facts", prefix + ".traces", prefix + ".truth"};
  textio::write_file(paths[0], header + serialize_facts(corpus.facts));
  textio::write_file(paths[1], header + serialize_traces(corpus.traces));
  textio::write_file(paths[2], header + serialize_truth(corpus.truth));
  return paths;
}

}  // namespace aspectminer

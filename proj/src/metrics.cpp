#include "aspectminer/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "aspectminer/error.hpp"
#include "aspectminer/textio.hpp"

namespace aspectminer {

ConcernTruth parse_truth(std::string_view text, const ProgramFacts* facts) {
  ConcernTruth truth;
  textio::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0] != "CN" || f.size() != 3)
      throw Error(Errc::MalformedRecord, "expected CN <concernName> <methodId>", line);
    if (!textio::valid_identifier(f[1]) || !textio::valid_identifier(f[2]))
      throw Error(Errc::MalformedRecord, "bad identifier", line);
    if (facts && !facts->find_method(f[2])) throw Error(Errc::UnknownMethod, std::string(f[2]), line);
    truth.concerns[std::string(f[1])].insert(std::string(f[2]));
  });
  return truth;
}

ConcernTruth read_truth_file(const std::string& path, const ProgramFacts* facts) {
  return parse_truth(textio::read_file(path), facts);
}

std::string serialize_truth(const ConcernTruth& truth) {
  std::ostringstream out;
  for (const auto& [name, methods] : truth.concerns)
    for (const auto& m : methods) out << "CN\t" << name << '\t' << m << '\n';
  return out.str();
}

unsigned Quality::percent() const {
  return static_cast<unsigned>((200 * recalled + size) / (2 * size));
}

double Quality::exact() const { return 100.0 * static_cast<double>(recalled) / static_cast<double>(size); }

namespace {

std::size_t common(const std::set<std::string>& a, const std::set<std::string>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t n = 0;
  for (const auto& x : small) n += large.count(x);
  return n;
}

}  // namespace

std::size_t recalled_methods(const Seed& seed, const std::set<std::string>& concern) {
  return common(seed.methods, concern);
}

Quality seed_quality(const Seed& seed, const std::set<std::string>& concern) {
  if (seed.methods.empty()) throw Error(Errc::EmptySeed, seed.id);
  return {recalled_methods(seed, concern), seed.methods.size()};
}

std::string assign_concern(const Seed& seed, const ConcernTruth& truth) {
  std::string best;
  std::size_t bestOverlap = 0;
  for (const auto& [name, methods] : truth.concerns) {
    auto n = common(seed.methods, methods);
    if (best.empty() || n > bestOverlap) {
      best = name;
      bestOverlap = n;
    }
  }
  return best;
}

std::vector<SeedScore> score_seeds(const std::vector<Seed>& seeds, const ConcernTruth& truth) {
  std::vector<SeedScore> out;
  if (truth.concerns.empty()) return out;
  for (const auto& s : seeds) {
    auto name = assign_concern(s, truth);
    out.push_back({s.id, name, recalled_methods(s, truth.concerns.at(name)), s.methods.size()});
  }
  return out;
}

std::string technique_row(const Seed& seed) {
  switch (seed.technique) {
    case Technique::FanIn: return "fanin";
    case Technique::Dynamic: return "dynamic";
    case Technique::Identifier: return "ident";
    case Technique::Combined:
      if (seed.origin == Technique::Dynamic) return "dyn+ident";
      if (seed.origin == Technique::FanIn) return "fanin+ident";
      return "ident";
  }
  return "ident";
}

std::vector<ReportRow> score_report(const std::vector<Seed>& seeds, const ConcernTruth& truth) {
  std::vector<ReportRow> out;
  if (truth.concerns.empty()) return out;

  // (concern, technique) -> union of seed methods
  std::map<std::pair<std::string, std::string>, std::set<std::string>> groups;
  for (const auto& s : seeds) {
    if (s.methods.empty()) continue;
    auto& g = groups[{assign_concern(s, truth), technique_row(s)}];
    g.insert(s.methods.begin(), s.methods.end());
  }

  auto derive = [&](const std::string& name, const std::string& left, const std::string& right) {
    std::set<std::string> concerns;
    for (const auto& [key, methods] : groups)
      if (key.second == left || key.second == right) concerns.insert(key.first);
    for (const auto& c : concerns) {
      std::set<std::string> u;
      for (const auto& part : {left, right}) {
        auto it = groups.find({c, part});
        if (it != groups.end()) u.insert(it->second.begin(), it->second.end());
      }
      groups[{c, name}] = std::move(u);
    }
  };
  derive("dyn|fanin", "dynamic", "fanin");
  derive("(dyn|fanin)+ident", "dyn+ident", "fanin+ident");

  for (const auto& [key, methods] : groups)
    out.push_back({key.first, key.second, common(methods, truth.concerns.at(key.first)), methods.size()});
  return out;
}

std::string report_tsv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows)
    out << r.concern << '\t' << r.technique << '\t' << r.recalled << '\t' << r.quality() << '\t'
        << r.seedSize << '\n';
  return out.str();
}

std::string report_table(const std::vector<ReportRow>& rows) {
  std::size_t wc = 7, wt = 9;
  for (const auto& r : rows) {
    wc = std::max(wc, r.concern.size());
    wt = std::max(wt, r.technique.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(wc)) << "concern" << "  " << std::setw(static_cast<int>(wt))
      << "technique" << "  " << std::right << std::setw(8) << "recalled" << "  " << std::setw(7)
      << "quality" << "  " << std::setw(5) << "size" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(wc)) << r.concern << "  "
        << std::setw(static_cast<int>(wt)) << r.technique << "  " << std::right << std::setw(8)
        << r.recalled << "  " << std::setw(6) << r.quality() << "%" << "  " << std::setw(5)
        << r.seedSize << '\n';
  }
  return out.str();
}

}  // namespace aspectminer

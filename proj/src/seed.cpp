#include "aspectminer/seed.hpp"

#include <sstream>

#include "aspectminer/error.hpp"
#include "aspectminer/facts.hpp"
#include "aspectminer/textio.hpp"

namespace aspectminer {

std::string_view to_string(Technique t) {
  switch (t) {
    case Technique::FanIn: return "fanin";
    case Technique::Identifier: return "identifier";
    case Technique::Dynamic: return "dynamic";
    case Technique::Combined: return "combined";
  }
  return "?";
}

std::string_view to_string(FaninInterpretation i) {
  return i == FaninInterpretation::CalleeOnly ? "calleeOnly" : "calleePlusCallers";
}

std::optional<Technique> parse_technique(std::string_view s) {
  if (s == "fanin") return Technique::FanIn;
  if (s == "identifier") return Technique::Identifier;
  if (s == "dynamic") return Technique::Dynamic;
  if (s == "combined") return Technique::Combined;
  return std::nullopt;
}

std::optional<FaninInterpretation> parse_interpretation(std::string_view s) {
  if (s == "calleeOnly") return FaninInterpretation::CalleeOnly;
  if (s == "calleePlusCallers") return FaninInterpretation::CalleePlusCallers;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Unreviewed: return "unreviewed";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  if (s == "accept") return Verdict::Accept;
  if (s == "reject") return Verdict::Reject;
  if (s == "unreviewed") return Verdict::Unreviewed;
  return std::nullopt;
}

std::vector<Seed> parse_seeds(std::string_view text) {
  std::vector<Seed> seeds;
  std::set<std::string> ids;
  textio::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0] != "S") throw Error(Errc::MalformedRecord, "expected S record", line);
    if (f.size() != 5) throw Error(Errc::MalformedRecord, "S record needs 5 fields", line);
    Seed s;
    if (!textio::valid_identifier(f[1])) throw Error(Errc::MalformedRecord, "bad seed id", line);
    s.id = std::string(f[1]);
    std::string_view tech = f[2];
    std::string_view origin;
    if (auto colon = tech.find(':'); colon != std::string_view::npos) {
      origin = tech.substr(colon + 1);
      tech = tech.substr(0, colon);
    }
    auto t = parse_technique(tech);
    if (!t) throw Error(Errc::MalformedRecord, "unknown technique '" + std::string(f[2]) + "'", line);
    s.technique = *t;
    if (!origin.empty()) {
      auto o = parse_technique(origin);
      if (*t != Technique::Combined || !o || *o == Technique::Combined)
        throw Error(Errc::MalformedRecord, "bad technique origin '" + std::string(f[2]) + "'", line);
      s.origin = o;
    }
    s.label = std::string(f[3]);
    for (auto& m : textio::split_list(f[4])) {
      if (!textio::valid_identifier(m)) throw Error(Errc::MalformedRecord, "bad method id", line);
      s.methods.insert(m);
    }
    if (s.methods.empty()) throw Error(Errc::EmptySeed, s.id, line);
    if (!ids.insert(s.id).second) throw Error(Errc::DuplicateId, s.id, line);
    if (s.technique == Technique::FanIn)
      s.interpretation = s.methods.size() == 1 ? FaninInterpretation::CalleeOnly
                                               : FaninInterpretation::CalleePlusCallers;
    seeds.push_back(std::move(s));
  });
  return seeds;
}

std::vector<Seed> read_seeds_file(const std::string& path) {
  return parse_seeds(textio::read_file(path));
}

std::string serialize_seeds(const std::vector<Seed>& seeds) {
  std::ostringstream out;
  for (const auto& s : seeds) {
    out << "S\t" << s.id << '\t' << to_string(s.technique);
    if (s.origin) out << ':' << to_string(*s.origin);
    out << '\t' << (s.label.empty() ? "-" : s.label) << '\t';
    bool first = true;
    for (const auto& m : s.methods) {
      if (!first) out << ',';
      out << m;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

void validate_seed(const Seed& seed, const ProgramFacts& facts) {
  if (seed.methods.empty()) throw Error(Errc::EmptySeed, seed.id);
  for (const auto& m : seed.methods)
    if (!facts.find_method(m)) throw Error(Errc::UnknownMethod, seed.id + ": " + m);
}

std::vector<VerdictRecord> parse_verdicts(std::string_view text) {
  std::vector<VerdictRecord> out;
  textio::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0] != "V" || f.size() != 4)
      throw Error(Errc::MalformedRecord, "expected V <seedId> <methodId> <verdict>", line);
    auto v = parse_verdict(f[3]);
    if (!v) throw Error(Errc::MalformedRecord, "unknown verdict '" + std::string(f[3]) + "'", line);
    if (!textio::valid_identifier(f[1]) || !textio::valid_identifier(f[2]))
      throw Error(Errc::MalformedRecord, "bad identifier", line);
    out.push_back({std::string(f[1]), std::string(f[2]), *v});
  });
  return out;
}

std::string serialize_verdict(const VerdictRecord& v) {
  std::string out = "V\t" + v.seedId + '\t' + v.methodId + '\t';
  out += to_string(v.verdict);
  out += '\n';
  return out;
}

}  // namespace aspectminer

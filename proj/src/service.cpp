#include "aspectminer/service.hpp"

#include <cstdlib>
#include <fstream>

#include "httplib.h"
#include "json.hpp"

#include "aspectminer/error.hpp"
#include "aspectminer/textio.hpp"

namespace aspectminer {

using nlohmann::json;

int resolve_port(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ASPECTMINER_PORT")) {
    try {
      std::size_t used = 0;
      int port = std::stoi(env, &used);
      if (used == std::string_view(env).size() && port >= 0 && port <= 65535) return port;
    } catch (const std::exception&) {
    }
    throw Error(Errc::InvalidArgument, std::string("ASPECTMINER_PORT is not a port: ") + env);
  }
  return 7430;
}

namespace {

ApiResponse ok(const json& j) { return {200, j.dump()}; }

ApiResponse fail(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

json ids(const std::vector<std::string>& all, const fca::Bits& bits) {
  json out = json::array();
  for (auto i : fca::indices(bits)) out.push_back(all[i]);
  return out;
}

json labels(const std::vector<std::string>& all, const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(all[i]);
  return out;
}

// Verdicts on an expansion that no longer contains their method are dropped.
void install_expansion(TriageState& st, const std::string& id, ExpandedSeed e) {
  const auto key = id + "+ident";
  if (auto it = st.verdicts.find(key); it != st.verdicts.end()) {
    const auto members = e.expanded().methods;
    std::erase_if(it->second, [&](const auto& kv) { return !members.count(kv.first); });
  }
  st.expansions[key] = std::move(e);
}

json lattice_json(const fca::ConceptLattice& lat) {
  const auto& ctx = lat.context();
  json nodes = json::array();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    nodes.push_back({{"index", i},
                     {"extentSize", lat.at(i).extent.count()},
                     {"intentSize", lat.at(i).intent.count()},
                     {"alpha", labels(ctx.properties(), lat.alpha(i))},
                     {"beta", labels(ctx.elements(), lat.beta(i))}});
  }
  json edges = json::array();
  for (const auto& [lo, hi] : lat.covers()) edges.push_back({lo, hi});
  return {{"nodes", nodes}, {"edges", edges}, {"top", lat.top()}, {"bottom", lat.bottom()}};
}

}  // namespace

Service::Service(Analysis analysis, std::optional<std::string> triagePath)
    : analysis_(std::move(analysis)),
      identLattice_(fca::lattice(analysis_.ident.context)),
      triagePath_(std::move(triagePath)),
      state_(std::make_shared<TriageState>()) {
  for (const auto& s : analysis_.all_seeds()) baseSeeds_.emplace(s.id, s);
  if (triagePath_ && std::ifstream(*triagePath_).good()) replay(textio::read_file(*triagePath_));
}

Service::~Service() { stop(); }

std::shared_ptr<const TriageState> Service::state() const {
  std::lock_guard lock(stateMutex_);
  return state_;
}

std::optional<Seed> Service::find_seed(const TriageState& st, const std::string& id) const {
  if (auto it = baseSeeds_.find(id); it != baseSeeds_.end()) return it->second;
  if (auto it = st.expansions.find(id); it != st.expansions.end()) return it->second.expanded();
  return std::nullopt;
}

Seed Service::effective(const TriageState& st, const Seed& seed) const {
  TriageVerdict v{seed.id, {}, {}};
  if (auto it = st.verdicts.find(seed.id); it != st.verdicts.end()) v.memberVerdicts = it->second;
  return apply_triage(seed, v);
}

std::vector<Seed> Service::effective_seeds(const TriageState& st) const {
  std::vector<Seed> out;
  for (const auto& s : analysis_.all_seeds()) out.push_back(effective(st, s));
  for (const auto& [id, e] : st.expansions) out.push_back(effective(st, e.expanded()));
  return out;
}

void Service::append_log(const std::string& line) {
  if (!triagePath_) return;
  std::ofstream out(*triagePath_, std::ios::app | std::ios::binary);
  out << line << '\n';
  out.flush();
  if (!out) throw Error(Errc::InvalidArgument, "cannot append to " + *triagePath_);
}

void Service::replay(const std::string& text) {
  auto st = std::make_shared<TriageState>();
  textio::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    if (f[0] == "X" && f.size() == 2) {
      std::string id(f[1]);
      auto it = baseSeeds_.find(id);
      if (it == baseSeeds_.end()) throw Error(Errc::MalformedRecord, "expansion of unknown seed " + id, line);
      install_expansion(*st, id,
                        expand_seed(analysis_.facts, effective(*st, it->second), analysis_.ident,
                                    analysis_.identConcepts));
      return;
    }
    if (f[0] == "V" && f.size() == 4) {
      auto v = parse_verdict(f[3]);
      if (!v) throw Error(Errc::MalformedRecord, "bad verdict", line);
      auto seed = find_seed(*st, std::string(f[1]));
      if (!seed || !seed->methods.count(std::string(f[2])))
        throw Error(Errc::MalformedRecord, "verdict on unknown seed or member", line);
      st->verdicts[std::string(f[1])][std::string(f[2])] = *v;
      return;
    }
    throw Error(Errc::MalformedRecord, "expected V or X record", line);
  });
  std::lock_guard lock(stateMutex_);
  state_ = std::move(st);
}

ApiResponse Service::summary() const {
  auto st = state();
  std::size_t verdicts = 0;
  for (const auto& [s, m] : st->verdicts) verdicts += m.size();
  const auto& f = analysis_.facts;
  std::size_t candidates = 0;
  for (const auto& c : analysis_.identConcepts) candidates += c.candidate;
  json j{{"types", f.types().size()},
         {"methods", f.methods().size()},
         {"calls", f.calls().size()},
         {"overrides", f.overrides().size()},
         {"useCases", analysis_.traces ? analysis_.traces->traces.size() : 0},
         {"concerns", analysis_.truth ? json(analysis_.truth->concerns.size()) : json(nullptr)},
         {"seeds",
          {{"fanin", analysis_.faninSeeds.size()},
           {"identifier", analysis_.identSeeds.size()},
           {"dynamic", analysis_.dynSeeds.size()},
           {"combined", st->expansions.size()}}},
         {"identConcepts", analysis_.identConcepts.size()},
         {"identCandidates", candidates},
         {"dynConcepts", analysis_.dyn ? analysis_.dyn->lattice.size() : 0},
         {"verdicts", verdicts}};
  return ok(j);
}

ApiResponse Service::seeds(const std::optional<std::string>& technique) const {
  std::optional<Technique> filter;
  if (technique && !technique->empty()) {
    filter = parse_technique(*technique);
    if (!filter) return fail(400, "unknown technique " + *technique);
  }
  auto st = state();
  std::map<std::string, SeedScore> scores;
  if (analysis_.truth) {
    std::vector<Seed> nonempty;
    for (auto& s : effective_seeds(*st))
      if (!s.methods.empty()) nonempty.push_back(std::move(s));
    for (auto& sc : score_seeds(nonempty, *analysis_.truth)) scores.emplace(sc.seedId, sc);
  }

  std::vector<Seed> all = analysis_.all_seeds();
  for (const auto& [id, e] : st->expansions) all.push_back(e.expanded());
  json list = json::array();
  for (const auto& s : all) {
    if (filter && s.technique != *filter) continue;
    const auto verdicts = st->verdicts.find(s.id);
    json members = json::array();
    std::size_t kept = 0;
    for (const auto& m : s.methods) {
      Verdict v = Verdict::Unreviewed;
      if (verdicts != st->verdicts.end())
        if (auto it = verdicts->second.find(m); it != verdicts->second.end()) v = it->second;
      kept += v != Verdict::Reject;
      members.push_back({{"id", m}, {"verdict", to_string(v)}});
    }
    json j{{"id", s.id},
           {"technique", to_string(s.technique)},
           {"label", s.label},
           {"methods", members},
           {"effectiveSize", kept}};
    if (s.origin) j["origin"] = to_string(*s.origin);
    if (s.interpretation) j["interpretation"] = to_string(*s.interpretation);
    if (auto it = scores.find(s.id); it != scores.end())
      j["score"] = {{"concern", it->second.concernName},
                    {"recalled", it->second.recalled},
                    {"quality", it->second.quality()}};
    list.push_back(std::move(j));
  }
  return ok(json{{"seeds", list}});
}

ApiResponse Service::concepts(const std::optional<std::string>& source) const {
  if (source == "ident") {
    const auto& ctx = analysis_.ident.context;
    json list = json::array();
    for (std::size_t i = 0; i < analysis_.identConcepts.size(); ++i) {
      const auto& c = analysis_.identConcepts[i];
      list.push_back({{"index", i},
                      {"extent", ids(ctx.elements(), c.formal.extent)},
                      {"intent", ids(ctx.properties(), c.formal.intent)},
                      {"candidate", c.candidate}});
    }
    return ok(json{{"source", "ident"}, {"concepts", list}});
  }
  if (source == "dyn") {
    if (!analysis_.dyn) return fail(404, "workspace has no traces");
    const auto& r = *analysis_.dyn;
    const auto& ctx = r.lattice.context();
    std::map<std::size_t, bool> specific, generic;
    for (const auto& v : r.useCaseSpecific) specific[v.index] = v.seed;
    for (const auto& v : r.generic) generic[v.index] = v.seed;
    json list = json::array();
    for (std::size_t i = 0; i < r.lattice.size(); ++i) {
      json j{{"index", i},
             {"extent", ids(ctx.elements(), r.lattice.at(i).extent)},
             {"intent", ids(ctx.properties(), r.lattice.at(i).intent)},
             {"useCaseSpecific", specific.count(i) > 0},
             {"seed", generic[i]}};
      list.push_back(std::move(j));
    }
    return ok(json{{"source", "dyn"}, {"concepts", list}});
  }
  return fail(400, "source must be ident or dyn");
}

ApiResponse Service::lattice(const std::optional<std::string>& source) const {
  if (source == "ident") return ok(lattice_json(identLattice_));
  if (source == "dyn") {
    if (!analysis_.dyn) return fail(404, "workspace has no traces");
    return ok(lattice_json(analysis_.dyn->lattice));
  }
  return fail(400, "source must be ident or dyn");
}

ApiResponse Service::report() const {
  auto st = state();
  json rows = json::array();
  if (analysis_.truth) {
    std::vector<Seed> nonempty;
    for (auto& s : effective_seeds(*st))
      if (!s.methods.empty()) nonempty.push_back(std::move(s));
    for (const auto& r : score_report(nonempty, *analysis_.truth))
      rows.push_back({{"concern", r.concern},
                      {"technique", r.technique},
                      {"recalled", r.recalled},
                      {"quality", r.quality()},
                      {"seedSize", r.seedSize}});
  }
  return ok(json{{"truth", analysis_.truth.has_value()}, {"rows", rows}});
}

ApiResponse Service::triage(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("seedId") || !j["seedId"].is_string() ||
      !j.contains("verdicts") || !j["verdicts"].is_object())
    return fail(400, "expected {\"seedId\": string, \"verdicts\": {methodId: verdict}}");
  TriageVerdict tv;
  tv.seedId = j["seedId"].get<std::string>();
  if (j.contains("note") && j["note"].is_string()) tv.note = j["note"].get<std::string>();
  for (const auto& [method, v] : j["verdicts"].items()) {
    if (!v.is_string()) return fail(400, "verdict for " + method + " must be a string");
    auto parsed = parse_verdict(v.get<std::string>());
    if (!parsed) return fail(400, "unknown verdict " + v.get<std::string>());
    if (!textio::valid_identifier(method)) return fail(400, "bad method id");
    tv.memberVerdicts[method] = *parsed;
  }

  std::lock_guard writer(writerMutex_);
  auto current = state();
  auto seed = find_seed(*current, tv.seedId);
  if (!seed) return fail(404, "unknown seed " + tv.seedId);
  try {
    apply_triage(*seed, tv);
  } catch (const Error& e) {
    if (e.code() == Errc::UnknownMember) return fail(409, e.what());
    throw;
  }
  std::string lines;
  for (const auto& [method, v] : tv.memberVerdicts)
    lines += serialize_verdict({tv.seedId, method, v});
  if (!lines.empty() && lines.back() == '\n') lines.pop_back();
  if (!lines.empty()) append_log(lines);

  auto next = std::make_shared<TriageState>(*current);
  for (const auto& [method, v] : tv.memberVerdicts) next->verdicts[tv.seedId][method] = v;
  {
    std::lock_guard lock(stateMutex_);
    state_ = next;
  }
  const auto eff = effective(*next, *seed);
  return ok(json{{"seedId", tv.seedId}, {"effectiveMethods", eff.methods}});
}

ApiResponse Service::expand(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("seedId") || !j["seedId"].is_string())
    return fail(400, "expected {\"seedId\": string}");
  const auto id = j["seedId"].get<std::string>();

  std::lock_guard writer(writerMutex_);
  auto current = state();
  auto it = baseSeeds_.find(id);
  if (it == baseSeeds_.end()) {
    if (current->expansions.count(id)) return fail(400, id + " is already an expansion");
    return fail(404, "unknown seed " + id);
  }
  auto e = expand_seed(analysis_.facts, effective(*current, it->second), analysis_.ident,
                       analysis_.identConcepts);
  append_log("X\t" + id);
  auto next = std::make_shared<TriageState>(*current);
  install_expansion(*next, id, e);
  {
    std::lock_guard lock(stateMutex_);
    state_ = next;
  }

  const auto& ctx = analysis_.ident.context;
  json nearest = json::array();
  for (auto i : e.nearestConcepts)
    nearest.push_back({{"index", i}, {"intent", ids(ctx.properties(), analysis_.identConcepts[i].formal.intent)}});
  return ok(json{{"seedId", id + "+ident"},
                 {"origin", id},
                 {"originMethods", e.origin.methods},
                 {"addedMethods", e.addedMethods},
                 {"nearestConcepts", nearest},
                 {"score", e.score}});
}

void Service::routes() {
  auto& s = *server_;
  auto send = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto param = [](const httplib::Request& req, const char* name) -> std::optional<std::string> {
    if (!req.has_param(name)) return std::nullopt;
    return req.get_param_value(name);
  };
  s.Get("/api/summary", [=, this](const httplib::Request&, httplib::Response& res) { send(res, summary()); });
  s.Get("/api/seeds", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, seeds(param(req, "technique")));
  });
  s.Get("/api/concepts", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, concepts(param(req, "source")));
  });
  s.Get("/api/lattice", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, lattice(param(req, "source")));
  });
  s.Get("/api/report", [=, this](const httplib::Request&, httplib::Response& res) { send(res, report()); });
  s.Post("/api/triage", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, triage(req.body));
  });
  s.Post("/api/expand", [=, this](const httplib::Request& req, httplib::Response& res) {
    send(res, expand(req.body));
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(json{{"error", what}}.dump(), "application/json");
  });
}

bool Service::bind(const std::string& host, int port, const std::optional<std::string>& staticDir) {
  server_ = std::make_unique<httplib::Server>();
  routes();
  if (staticDir && !server_->set_mount_point("/", *staticDir))
    throw Error(Errc::InvalidArgument, "static directory not found: " + *staticDir);
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    return port_ > 0;
  }
  port_ = port;
  return server_->bind_to_port(host, port);
}

void Service::run() {
  if (server_) server_->listen_after_bind();
}

void Service::stop() {
  if (server_) server_->stop();
}

bool Service::is_running() const { return server_ && server_->is_running(); }

}  // namespace aspectminer

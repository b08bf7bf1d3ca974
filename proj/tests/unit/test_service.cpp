#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"

#include "aspectminer/corpusgen.hpp"
#include "aspectminer/error.hpp"
#include "aspectminer/service.hpp"

using namespace aspectminer;
using nlohmann::json;

namespace {

Analysis undo_analysis() {
  GenSpec spec;
  spec.seedValue = 7;
  spec.traceCoverage = 0.5;
  spec.plantedConcerns = {{"undo", {"undo"}, 6, true, true, true}};
  auto c = generate(spec);
  return analyze(c.facts, c.traces, c.truth, PipelineConfig{});
}

Analysis dispatch_analysis() {
  PipelineConfig cfg;
  cfg.fanin.threshold = 1;
  cfg.fanin.excludeAccessorsAndUtilities = false;
  return analyze(read_facts_file(ASPECTMINER_TEST_DATA "/dispatch.facts"), std::nullopt, std::nullopt, cfg);
}

json body(const ApiResponse& r) { return json::parse(r.body); }

json find_seed(const json& seeds, const std::string& id) {
  for (const auto& s : seeds["seeds"])
    if (s["id"] == id) return s;
  return nullptr;
}

std::string verdict_of(const json& seed, const std::string& method) {
  for (const auto& m : seed["methods"])
    if (m["id"] == method) return m["verdict"];
  return "";
}

std::string temp_log(const char* name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST_CASE("port precedence") {
  ::unsetenv("ASPECTMINER_PORT");
  CHECK(resolve_port(std::nullopt) == 7430);
  ::setenv("ASPECTMINER_PORT", "9001", 1);
  CHECK(resolve_port(std::nullopt) == 9001);
  CHECK(resolve_port(8123) == 8123);
  ::setenv("ASPECTMINER_PORT", "nine", 1);
  CHECK_THROWS_AS(resolve_port(std::nullopt), Error);
  ::unsetenv("ASPECTMINER_PORT");
}

TEST_CASE("read endpoints") {
  auto analysis = undo_analysis();
  const auto methods = analysis.facts.methods().size();
  Service svc(std::move(analysis), std::nullopt);

  auto summary = body(svc.summary());
  CHECK(summary["methods"] == methods);
  CHECK(summary["concerns"] == 1);
  CHECK(summary["seeds"]["fanin"] == 1);
  CHECK(summary["seeds"]["combined"] == 0);

  CHECK(svc.seeds(std::string("bogus")).status == 400);
  auto fanin = body(svc.seeds(std::string("fanin")));
  REQUIRE(fanin["seeds"].size() == 1);
  CHECK(fanin["seeds"][0]["score"]["quality"] == 100);
  CHECK(fanin["seeds"][0]["interpretation"] == "calleeOnly");
  CHECK(body(svc.seeds(std::nullopt))["seeds"].size() >= 3);

  CHECK(svc.concepts(std::string("ident")).status == 200);
  CHECK(svc.concepts(std::string("dyn")).status == 200);
  CHECK(svc.concepts(std::nullopt).status == 400);
  auto lat = body(svc.lattice(std::string("dyn")));
  CHECK(lat["nodes"].size() == summary["dynConcepts"]);
  CHECK(lat["top"] == lat["nodes"].size() - 1);
  CHECK(svc.lattice(std::string("nope")).status == 400);

  auto report = body(svc.report());
  CHECK(report["truth"] == true);
  CHECK_FALSE(report["rows"].empty());
}

TEST_CASE("missing traces and truth") {
  Service svc(dispatch_analysis(), std::nullopt);
  CHECK(svc.concepts(std::string("dyn")).status == 404);
  CHECK(svc.lattice(std::string("dyn")).status == 404);
  CHECK(body(svc.summary())["concerns"].is_null());
  CHECK(body(svc.report())["rows"].empty());
}

TEST_CASE("triage errors and read-your-writes") {
  Service svc(dispatch_analysis(), std::nullopt);
  auto seeds = body(svc.seeds(std::string("fanin")));
  const std::string id = seeds["seeds"][0]["id"];
  const std::string member = seeds["seeds"][0]["methods"][0]["id"];

  CHECK(svc.triage("not json").status == 400);
  CHECK(svc.triage(R"({"seedId": 3})").status == 400);
  CHECK(svc.triage(json{{"seedId", id}, {"verdicts", {{member, "maybe"}}}}.dump()).status == 400);
  CHECK(svc.triage(json{{"seedId", "ghost"}, {"verdicts", json::object()}}.dump()).status == 404);
  CHECK(svc.triage(json{{"seedId", id}, {"verdicts", {{"D.f1", "reject"}}}}.dump()).status == 409);

  auto r = svc.triage(json{{"seedId", id}, {"verdicts", {{member, "reject"}}}, {"note", "noise"}}.dump());
  CHECK(r.status == 200);
  CHECK(body(r)["effectiveMethods"].empty());
  auto after = find_seed(body(svc.seeds(std::nullopt)), id);
  CHECK(verdict_of(after, member) == "reject");
  CHECK(after["effectiveSize"] == 0);
  CHECK(body(svc.summary())["verdicts"] == 1);
}

TEST_CASE("expansion endpoint") {
  Service svc(dispatch_analysis(), std::nullopt);
  const std::string id = body(svc.seeds(std::string("fanin")))["seeds"][0]["id"];
  auto r = svc.expand(json{{"seedId", id}}.dump());
  REQUIRE(r.status == 200);
  auto e = body(r);
  CHECK(e["score"] == 0);
  CHECK(e["addedMethods"].empty());
  CHECK(e["seedId"] == id + "+ident");
  CHECK(svc.expand(json{{"seedId", id + "+ident"}}.dump()).status == 400);
  CHECK(svc.expand(json{{"seedId", "ghost"}}.dump()).status == 404);
  CHECK(svc.expand("[]").status == 400);
  CHECK(find_seed(body(svc.seeds(std::string("combined"))), id + "+ident")["origin"] == "fanin");

  Service undo(undo_analysis(), std::nullopt);
  const std::string dyn = body(undo.seeds(std::string("dynamic")))["seeds"][0]["id"];
  auto grown = body(undo.expand(json{{"seedId", dyn}}.dump()));
  CHECK(grown["score"].get<int>() > 0);
  CHECK_FALSE(grown["addedMethods"].empty());
}

TEST_CASE("re-expanding after triage keeps the state consistent") {
  Service svc(undo_analysis(), std::nullopt);
  auto dyn = body(svc.seeds(std::string("dynamic")))["seeds"][0];
  const std::string id = dyn["id"];
  auto first = body(svc.expand(json{{"seedId", id}}.dump()));
  json verdicts = json::object();
  for (const auto& m : first["originMethods"]) verdicts[m.get<std::string>()] = "accept";
  REQUIRE(svc.triage(json{{"seedId", id + "+ident"}, {"verdicts", verdicts}}.dump()).status == 200);
  json rejectAll = json::object();
  for (const auto& m : first["originMethods"]) rejectAll[m.get<std::string>()] = "reject";
  REQUIRE(svc.triage(json{{"seedId", id}, {"verdicts", rejectAll}}.dump()).status == 200);
  CHECK(svc.expand(json{{"seedId", id}}.dump()).status == 200);
  CHECK(svc.seeds(std::nullopt).status == 200);
  CHECK(svc.report().status == 200);
}

TEST_CASE("the triage log is replayed") {
  const auto log = temp_log("aspectminer_service_replay.log");
  std::string before;
  {
    Service svc(undo_analysis(), log);
    auto dyn = body(svc.seeds(std::string("dynamic")))["seeds"][0];
    const std::string id = dyn["id"];
    const std::string member = dyn["methods"][0]["id"];
    REQUIRE(svc.triage(json{{"seedId", id}, {"verdicts", {{member, "reject"}}}}.dump()).status == 200);
    REQUIRE(svc.expand(json{{"seedId", id}}.dump()).status == 200);
    auto added = body(svc.seeds(std::string("combined")))["seeds"][0]["methods"][0]["id"];
    REQUIRE(svc.triage(json{{"seedId", id + "+ident"}, {"verdicts", {{added, "accept"}}}}.dump()).status == 200);
    before = svc.seeds(std::nullopt).body;
  }
  Service again(undo_analysis(), log);
  CHECK(again.seeds(std::nullopt).body == before);
  CHECK(body(again.summary())["seeds"]["combined"] == 1);
  std::filesystem::remove(log);
}

TEST_CASE("concurrent readers never see a partial verdict") {
  Service svc(undo_analysis(), std::nullopt);
  auto seed = body(svc.seeds(std::string("dynamic")))["seeds"][0];
  const std::string id = seed["id"];
  std::vector<std::string> members;
  for (const auto& m : seed["methods"]) members.push_back(m["id"]);
  REQUIRE(members.size() >= 2);

  std::atomic<bool> done{false};
  std::atomic<int> torn{0}, reads{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t)
    readers.emplace_back([&] {
      while (!done) {
        auto s = find_seed(body(svc.seeds(std::string("dynamic"))), id);
        std::set<std::string> seen;
        for (const auto& m : members) seen.insert(verdict_of(s, m));
        if (seen.size() != 1) ++torn;
        ++reads;
      }
    });
  for (int round = 0; round < 200; ++round) {
    json verdicts = json::object();
    const char* v = round % 2 ? "accept" : "reject";
    for (const auto& m : members) verdicts[m] = v;
    REQUIRE(svc.triage(json{{"seedId", id}, {"verdicts", verdicts}}.dump()).status == 200);
  }
  while (reads < 200) std::this_thread::yield();
  done = true;
  for (auto& t : readers) t.join();
  CHECK(torn == 0);
}

TEST_CASE("http round trip on an ephemeral port") {
  Service svc(dispatch_analysis(), std::nullopt);
  REQUIRE(svc.bind("127.0.0.1", 0));
  const int port = svc.listening_port();
  REQUIRE(port > 0);
  std::thread server([&] { svc.run(); });
  while (!svc.is_running()) std::this_thread::yield();

  httplib::Client client("127.0.0.1", port);
  auto summary = client.Get("/api/summary");
  REQUIRE(summary);
  CHECK(summary->status == 200);
  CHECK(json::parse(summary->body)["methods"] == 7);
  auto bad = client.Get("/api/seeds?technique=bogus");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  const std::string id = json::parse(client.Get("/api/seeds?technique=fanin")->body)["seeds"][0]["id"];
  auto post = client.Post("/api/triage", json{{"seedId", id}, {"verdicts", {{"Z.z", "reject"}}}}.dump(),
                          "application/json");
  REQUIRE(post);
  CHECK(post->status == 409);
  auto ex = client.Post("/api/expand", json{{"seedId", id}}.dump(), "application/json");
  REQUIRE(ex);
  CHECK(ex->status == 200);
  CHECK(client.Get("/api/lattice?source=ident")->status == 200);
  CHECK(client.Get("/api/report")->status == 200);

  svc.stop();
  server.join();
}

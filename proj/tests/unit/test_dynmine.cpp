#include <algorithm>

#include "doctest.h"

#include "aspectminer/dynmine.hpp"
#include "aspectminer/error.hpp"
#include "dyn_oracle.hpp"
#include "random_inputs.hpp"

using namespace aspectminer;

namespace {

using Ids = std::vector<std::string>;

ProgramFacts logging_facts() {
  return parse_facts(
      "T\tX\tapp.X\tclass\t-\t-\t-\n"
      "T\tY\tapp.Y\tclass\t-\t-\t-\n"
      "M\tX.log\tX\tlog\t-\t-\n"
      "M\tY.log\tY\tlog\t-\t-\n"
      "M\tX.a\tX\ta\t-\t-\n"
      "M\tY.b\tY\tb\t-\t-\n");
}

const char* kLoggingTraces =
    "TR\tuc1\tX.log\nTR\tuc1\tY.log\nTR\tuc1\tX.a\n"
    "TR\tuc2\tX.log\nTR\tuc2\tY.log\nTR\tuc2\tY.b\n"
    "TR\tuc3\tY.log\nTR\tuc3\tX.log\n";

std::vector<std::size_t> seed_indices(const std::vector<DynConceptVerdict>& vs) {
  std::vector<std::size_t> out;
  for (const auto& v : vs)
    if (v.seed) out.push_back(v.index);
  return out;
}

}  // namespace

TEST_CASE("trace context shape") {
  auto ts = parse_traces("TR\tdraw\tA.m\nTR\tdraw\tB.m\nTR\tdraw\tA.m\n");
  auto ctx = build_trace_context(ts);
  CHECK(ctx.elements() == Ids{"draw"});
  CHECK(ctx.properties() == Ids{"A.m", "B.m"});
  auto lat = fca::lattice(ctx);
  CHECK(lat.at(lat.top()).intent.count() == 2);
  CHECK_THROWS_AS(build_trace_context(TraceSet{}), Error);
  try {
    build_trace_context(TraceSet{});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyTraceSet);
  }
}

TEST_CASE("two disjoint traces give incomparable labeled concepts") {
  auto ts = parse_traces("TR\tu\tA.m\nTR\tv\tB.m\n");
  auto lat = fca::lattice(build_trace_context(ts));
  std::vector<std::size_t> labeled;
  for (std::size_t c = 0; c < lat.size(); ++c)
    if (!trace_labels(lat, c).empty()) labeled.push_back(c);
  REQUIRE(labeled.size() == 2);
  CHECK_FALSE(lat.leq(labeled[0], labeled[1]));
  CHECK_FALSE(lat.leq(labeled[1], labeled[0]));
}

TEST_CASE("planted logging concept is a seed") {
  auto facts = logging_facts();
  auto report = dynamic_seeds(facts, parse_traces(kLoggingTraces, &facts));
  auto seeds = dynamic_seed_list(report);
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0].methods == std::set<std::string>{"X.log", "Y.log"});
  CHECK(seeds[0].technique == Technique::Dynamic);
  CHECK(dynamic_seed_list(report, false).size() == 1);
  CHECK(dynamic_report(report).find("specific\tseed\tX.log;Y.log") != std::string::npos);
}

TEST_CASE("scattering and tangling examples") {
  auto facts = logging_facts();
  auto lat = fca::lattice(build_trace_context(parse_traces(kLoggingTraces, &facts)));
  std::vector<std::size_t> all(lat.size());
  for (std::size_t c = 0; c < lat.size(); ++c) all[c] = c;
  for (std::size_t c = 0; c < lat.size(); ++c) {
    auto labels = method_labels(lat, c);
    if (labels.empty()) CHECK_FALSE(is_scattering(facts, lat, c));
    if (labels == Ids{"X.log", "Y.log"}) CHECK(is_scattering(facts, lat, c));
    if (labels == Ids{"X.a"}) {
      CHECK_FALSE(is_scattering(facts, lat, c));
      CHECK(is_tangling(facts, lat, c, all));
    }
  }
}

TEST_CASE("single-class program has no seeds") {
  auto facts = parse_facts("T\tK\tK\tclass\t-\t-\t-\nM\tK.a\tK\ta\t-\t-\nM\tK.b\tK\tb\t-\t-\n");
  auto report = dynamic_seeds(facts, parse_traces("TR\tu\tK.a\nTR\tv\tK.b\nTR\tw\tK.a\nTR\tw\tK.b\n"));
  CHECK(dynamic_seed_list(report).empty());
  CHECK(dynamic_seed_list(report, false).empty());
}

TEST_CASE("classification, conditions and subset law against the oracle") {
  testgen::Rng rng(6);
  for (int trial = 0; trial < 80; ++trial) {
    auto facts = testgen::random_program(rng, 6, 20, 0).build();
    auto ts = testgen::random_traces(rng, facts, 6);
    bool empty = std::all_of(ts.traces.begin(), ts.traces.end(), [](const auto& kv) { return kv.second.empty(); });
    if (empty) continue;
    auto report = dynamic_seeds(facts, ts);
    const auto& lat = report.lattice;

    auto specific = oracle::use_case_specific(lat);
    CHECK(classify_concepts(lat).useCaseSpecific == specific);
    CHECK(classify_concepts(lat).generic.size() == lat.size());
    std::vector<std::size_t> all(lat.size());
    for (std::size_t c = 0; c < lat.size(); ++c) all[c] = c;

    for (std::size_t c = 0; c < lat.size(); ++c) {
      auto labels = method_labels(lat, c);
      auto want = oracle::method_labels(lat, c);
      CHECK(std::set<std::string>(labels.begin(), labels.end()) == std::set<std::string>(want.begin(), want.end()));
      CHECK(is_scattering(facts, lat, c) == oracle::scattering(facts, lat, c));
      CHECK(is_tangling(facts, lat, c, all) == oracle::tangling(facts, lat, c, all));
      CHECK(is_tangling(facts, lat, c, specific) == oracle::tangling(facts, lat, c, specific));
    }

    REQUIRE(report.generic.size() == lat.size());
    for (const auto& v : report.generic)
      CHECK(v.seed == (oracle::scattering(facts, lat, v.index) && oracle::tangling(facts, lat, v.index, all)));
    for (const auto& v : report.useCaseSpecific)
      CHECK(v.seed == (oracle::scattering(facts, lat, v.index) && oracle::tangling(facts, lat, v.index, specific)));

    auto s = seed_indices(report.useCaseSpecific);
    auto g = seed_indices(report.generic);
    CHECK(std::includes(g.begin(), g.end(), s.begin(), s.end()));
  }
}

TEST_CASE("trace order and duplicates do not matter") {
  testgen::Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto facts = testgen::random_program(rng, 6, 20, 0).build();
    auto ts = testgen::random_traces(rng, facts, 5);
    if (std::all_of(ts.traces.begin(), ts.traces.end(), [](const auto& kv) { return kv.second.empty(); })) continue;
    std::vector<std::pair<std::string, std::string>> lines;
    for (const auto& [uc, ms] : ts.traces)
      for (const auto& m : ms) {
        lines.emplace_back(uc, m);
        if (testgen::coin(rng, 0.3)) lines.emplace_back(uc, m);
      }
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string text;
    for (const auto& [uc, m] : lines) text += "TR\t" + uc + "\t" + m + "\n";
    auto shuffled = parse_traces(text, &facts);
    for (auto& [uc, ms] : ts.traces)
      if (ms.empty()) shuffled.traces.erase(uc);
    auto canonical = ts;
    std::erase_if(canonical.traces, [](const auto& kv) { return kv.second.empty(); });
    CHECK(shuffled == canonical);
    CHECK(dynamic_report(dynamic_seeds(facts, shuffled)) == dynamic_report(dynamic_seeds(facts, canonical)));
    CHECK(serialize_traces(parse_traces(serialize_traces(canonical))) == serialize_traces(canonical));
  }
}

TEST_CASE("unknown methods are errors unless lenient") {
  auto facts = logging_facts();
  const char* text = "TR\tu\tX.log\nTR\tu\tGhost.m\n";
  try {
    parse_traces(text, &facts);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownMethod);
  }
  std::vector<std::string> warnings;
  auto ts = parse_traces(text, &facts, TraceParseOptions{true}, &warnings);
  CHECK(ts.traces.at("u") == std::set<std::string>{"X.log"});
  CHECK(warnings.size() == 1);
}

TEST_CASE("reports are deterministic") {
  auto facts = logging_facts();
  auto a = dynamic_report(dynamic_seeds(facts, parse_traces(kLoggingTraces, &facts)));
  auto b = dynamic_report(dynamic_seeds(facts, parse_traces(kLoggingTraces, &facts)));
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

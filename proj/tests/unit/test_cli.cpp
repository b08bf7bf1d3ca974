#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "aspectminer/error.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workdir {
 public:
  Workdir() : dir_(fs::temp_directory_path() / "aspectminer_cli_test") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Run cli(const std::string& args) const {
    const auto out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd = std::string(ASPECTMINER_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

 private:
  fs::path dir_;
};

const std::string kDispatch = ASPECTMINER_TEST_DATA "/dispatch.facts";

}  // namespace

TEST_CASE("fan-in rows from the command line") {
  Workdir w;
  auto r = w.cli("mine-fanin --facts " + kDispatch + " --threshold 1 --no-filters --callers");
  REQUIRE(r.status == 0);
  CHECK(r.out ==
        "FANIN\tB.m\t4\nCALLERS\tB.m\tC2.m,D.f1,D.f2,D.f3\n"
        "FANIN\tA.m\t3\nCALLERS\tA.m\tD.f1,D.f2,D.f3\n"
        "FANIN\tC1.m\t3\nCALLERS\tC1.m\tD.f1,D.f2,D.f3\n"
        "FANIN\tC2.m\t2\nCALLERS\tC2.m\tD.f1,D.f2\n");
  auto plain = w.cli("mine-fanin --facts " + kDispatch + " --threshold 1 --no-filters");
  CHECK(plain.out == "FANIN\tB.m\t4\nFANIN\tA.m\t3\nFANIN\tC1.m\t3\nFANIN\tC2.m\t2\n");
}

TEST_CASE("empty program") {
  Workdir w;
  auto r = w.cli("mine-ident --facts " ASPECTMINER_TEST_DATA "/empty.facts");
  CHECK(r.status == 0);
  CHECK(r.out.empty());
}

TEST_CASE("input errors exit 1") {
  Workdir w;
  CHECK(w.cli("mine-fanin --facts " + w.path("missing.facts")).status == 1);
  w.write("bad.facts", "T\tA\tA\tclass\t-\t-\t-\nM\tA.m\tB\tm\t-\t-\n");
  auto bad = w.cli("mine-fanin --facts " + w.path("bad.facts"));
  CHECK(bad.status == 1);
  CHECK(bad.err.find("bad.facts") != std::string::npos);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(w.cli("mine-fanin --bogus-flag").status == 1);
  CHECK(w.cli("no-such-command").status == 1);
  CHECK(w.cli("mine-dyn --facts " + kDispatch).status == 1);
  CHECK(w.cli("mine-fanin --facts " + kDispatch + " --interpretation sideways").status == 1);
  CHECK(w.cli("--help").status == 0);
}

TEST_CASE("exception to exit status mapping") {
  using namespace aspectminer;
  CHECK(exit_status(Error(Errc::MalformedRecord, "x")) == 1);
  CHECK(exit_status(std::runtime_error("io")) == 1);
  CHECK(exit_status(InvariantViolation("broken")) == 2);
  CHECK(exit_status(std::out_of_range("bug")) == 2);
}

TEST_CASE("every subcommand is deterministic") {
  Workdir w;
  w.write("spec.json", R"({"seedValue": 7, "hierarchies": 4, "classesPerHierarchy": 4, "methodsPerClass": 6,
    "traceCoverage": 0.7, "traceNoise": 2,
    "plantedConcerns": [{"name": "undo", "stemVocabulary": ["undo"], "memberCount": 8,
                         "highFanin": true, "traceDiscriminable": true}]})");

  auto twice = [&](const std::string& args, const std::vector<std::string>& files = {}) {
    auto a = w.cli(args);
    std::vector<std::string> first;
    for (const auto& f : files) first.push_back(slurp(w.path(f)));
    auto b = w.cli(args);
    INFO(args);
    INFO(a.err);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    for (std::size_t i = 0; i < files.size(); ++i) CHECK(first[i] == slurp(w.path(files[i])));
    return a;
  };

  auto gen = twice("gen --spec " + w.path("spec.json") + " --out " + w.path("g"), {"g.facts", "g.traces", "g.truth"});
  CHECK(slurp(w.path("g.facts")).rfind("# generator: mt19937_64 seed=7\n", 0) == 0);
  const std::string facts = " --facts " + w.path("g.facts");

  auto fan = twice("mine-fanin" + facts + " --seeds-out " + w.path("fan.seeds"), {"fan.seeds"});
  CHECK_FALSE(fan.out.empty());
  auto ident = twice("mine-ident" + facts + " --stems --seeds-out " + w.path("ident.seeds"), {"ident.seeds"});
  CHECK(ident.out.find("candidate") != std::string::npos);
  auto dyn = twice("mine-dyn" + facts + " --traces " + w.path("g.traces") + " --seeds-out " + w.path("dyn.seeds"),
                   {"dyn.seeds"});
  CHECK(dyn.out.find("\tseed\t") != std::string::npos);

  auto comb = twice("combine --a " + w.path("dyn.seeds") + " --b " + w.path("fan.seeds"));
  CHECK(comb.out.rfind("UNION\t", 0) == 0);

  auto exp = twice("expand" + facts + " --seeds " + w.path("dyn.seeds") + " --seeds-out " + w.path("dynx.seeds"),
                   {"dynx.seeds"});
  CHECK(exp.out.rfind("EXPAND\t", 0) == 0);
  twice("expand" + facts + " --seeds " + w.path("fan.seeds") + " --seeds-out " + w.path("fanx.seeds"), {"fanx.seeds"});

  w.write("all.seeds", slurp(w.path("dynx.seeds")) + slurp(w.path("fanx.seeds")));
  auto score = twice("score" + facts + " --truth " + w.path("g.truth") + " --seeds " + w.path("all.seeds") +
                         " --tsv-out " + w.path("score.tsv"),
                     {"score.tsv"});
  CHECK(score.out.rfind("concern", 0) == 0);
  CHECK(score.out.find("dyn+ident") != std::string::npos);
  CHECK(score.out.find("fanin+ident") != std::string::npos);
  CHECK(slurp(w.path("score.tsv")).find("undo\tfanin\t1\t100\t1\n") != std::string::npos);
}

TEST_CASE("workspace config with flags taking precedence") {
  Workdir w;
  w.write("ws.json", "{\"facts\": \"" + kDispatch + "\", \"threshold\": 4, \"filters\": false}");
  auto fromFile = w.cli("mine-fanin --config " + w.path("ws.json"));
  CHECK(fromFile.status == 0);
  CHECK(fromFile.out == "FANIN\tB.m\t4\n");
  auto overridden = w.cli("mine-fanin --config " + w.path("ws.json") + " --threshold 3");
  CHECK(overridden.out == "FANIN\tB.m\t4\nFANIN\tA.m\t3\nFANIN\tC1.m\t3\n");
  w.write("broken.json", "{\"facts\": \"" + kDispatch + "\", \"minExtent\": 0}");
  CHECK(w.cli("mine-ident --config " + w.path("broken.json")).status == 1);
}

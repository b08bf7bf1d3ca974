#pragma once

// HTTP front of a workspace. Mining results are computed once at startup;
// triage verdicts and expansions live in a small state that a single writer
// replaces wholesale, so readers always see a complete snapshot.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "aspectminer/combine.hpp"
#include "aspectminer/fca.hpp"
#include "aspectminer/pipeline.hpp"

namespace httplib {
class Server;
}

namespace aspectminer {

/// `--port`, then $ASPECTMINER_PORT, then 7430.
int resolve_port(std::optional<int> flag);

struct TriageState {
  std::map<std::string, ExpandedSeed> expansions;                   // by expanded seed id
  std::map<std::string, std::map<std::string, Verdict>> verdicts;  // seed -> method -> verdict
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

class Service {
 public:
  /// Replays the triage log when the workspace names one.
  Service(Analysis analysis, std::optional<std::string> triagePath);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ApiResponse summary() const;
  ApiResponse seeds(const std::optional<std::string>& technique) const;
  ApiResponse concepts(const std::optional<std::string>& source) const;
  ApiResponse lattice(const std::optional<std::string>& source) const;
  ApiResponse report() const;
  ApiResponse triage(const std::string& body);
  ApiResponse expand(const std::string& body);

  /// With port 0 an ephemeral port is chosen; listening_port() reports it.
  bool bind(const std::string& host, int port, const std::optional<std::string>& staticDir = {});
  /// Serves until stop().
  void run();
  void stop();
  int listening_port() const { return port_; }
  bool is_running() const;

 private:
  std::shared_ptr<const TriageState> state() const;
  std::optional<Seed> find_seed(const TriageState& st, const std::string& id) const;
  std::vector<Seed> effective_seeds(const TriageState& st) const;
  Seed effective(const TriageState& st, const Seed& seed) const;
  void append_log(const std::string& line);
  void replay(const std::string& text);
  void routes();

  const Analysis analysis_;
  const fca::ConceptLattice identLattice_;
  std::map<std::string, Seed> baseSeeds_;
  std::optional<std::string> triagePath_;

  mutable std::mutex stateMutex_;  // guards the pointer swap
  std::mutex writerMutex_;         // serializes writers
  std::shared_ptr<const TriageState> state_;

  std::unique_ptr<httplib::Server> server_;
  int port_ = 0;
};

}  // namespace aspectminer

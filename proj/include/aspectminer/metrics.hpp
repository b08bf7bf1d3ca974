#pragma once

// Recalled methods and seed quality against a ground-truth concern labeling,
// and the per-technique score table built from them.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aspectminer/facts.hpp"
#include "aspectminer/seed.hpp"

namespace aspectminer {

/// Concern name -> member methods. A method may belong to several concerns.
struct ConcernTruth {
  std::map<std::string, std::set<std::string>> concerns;

  friend bool operator==(const ConcernTruth&, const ConcernTruth&) = default;
};

/// `CN <concernName> <methodId>` lines. With facts given, unknown methods
/// raise Error(UnknownMethod).
ConcernTruth parse_truth(std::string_view text, const ProgramFacts* facts = nullptr);
ConcernTruth read_truth_file(const std::string& path, const ProgramFacts* facts = nullptr);
std::string serialize_truth(const ConcernTruth& truth);

/// Exact ratio recalled / size, reported as a percentage.
struct Quality {
  std::size_t recalled = 0;
  std::size_t size = 1;

  /// 100 * recalled / size rounded half-up.
  unsigned percent() const;
  double exact() const;
};

std::size_t recalled_methods(const Seed& seed, const std::set<std::string>& concern);

/// Throws Error(EmptySeed) for a seed without methods.
Quality seed_quality(const Seed& seed, const std::set<std::string>& concern);

/// Concern sharing the most methods with the seed; ties go to the first name.
/// Empty when the truth has no concern.
std::string assign_concern(const Seed& seed, const ConcernTruth& truth);

struct SeedScore {
  std::string seedId;
  std::string concernName;
  std::size_t recalled = 0;
  std::size_t seedSize = 0;

  unsigned quality() const { return Quality{recalled, seedSize}.percent(); }
};

/// One score per seed against its assigned concern; empty for empty truth.
std::vector<SeedScore> score_seeds(const std::vector<Seed>& seeds, const ConcernTruth& truth);

/// Row name for a seed's technique: dynamic, fanin, ident, dyn+ident,
/// fanin+ident (combined seeds without an origin count as ident).
std::string technique_row(const Seed& seed);

struct ReportRow {
  std::string concern;
  std::string technique;
  std::size_t recalled = 0;
  std::size_t seedSize = 0;

  unsigned quality() const { return Quality{recalled, seedSize}.percent(); }
};

/// Seeds are assigned to concerns, then every (technique, concern) row is
/// scored on the union of its seeds' methods. Derived rows `dyn|fanin` and
/// `(dyn|fanin)+ident` union the rows they name whenever one
/// of the parts exists.
/// Sorted by concern, then technique name.
std::vector<ReportRow> score_report(const std::vector<Seed>& seeds, const ConcernTruth& truth);

/// `concern technique recalled quality seedSize` rows, tab-separated.
std::string report_tsv(const std::vector<ReportRow>& rows);
/// Same rows as an aligned table with a header.
std::string report_table(const std::vector<ReportRow>& rows);

}  // namespace aspectminer

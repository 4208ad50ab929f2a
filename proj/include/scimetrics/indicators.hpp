#pragma once

#include "scimetrics/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scimetrics {

using YearlySeries = std::map<int, std::int64_t>;

// Per-year count of set members. Every year of `range` is present (zero
// when empty); members outside the range still get their own entry.
YearlySeries yearly_counts(const PubIdSet& set, const Corpus& corpus, YearRange range);

struct Growth {
  double growth_pct = 0;  // 100 * (end - start) / start
  double cagr_pct = 0;    // 100 * ((end / start)^(1 / years) - 1)
};

class UndefinedGrowthError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Throws UndefinedGrowthError when the start count is zero and
// std::invalid_argument when end_year <= start_year. Missing years count 0.
Growth growth_and_cagr(const YearlySeries& series, int start_year, int end_year);
Growth growth_and_cagr(std::int64_t start_count, std::int64_t end_count, int intervals);

// Four totals of the relative specialization ratio, all whole-publication
// counts over the same period.
struct ActivityIndexInput {
  std::int64_t actor_topic_count = 0;  // actor's output on the topic
  std::int64_t topic_total = 0;        // all output on the topic
  std::int64_t actor_all_count = 0;    // actor's output in the whole database
  std::int64_t all_total = 0;          // whole-database output
};

// (actor_topic / topic_total) / (actor_all / all_total); parity is exactly 1.
// Throws std::invalid_argument on non-positive denominators or when the
// input violates the subset ordering between the four counts.
double activity_index(const ActivityIndexInput& in);

enum class ActorKind { institution, country, continent };

std::string_view to_string(ActorKind k);
std::optional<ActorKind> parse_actor_kind(std::string_view s);

// Whole-database output per actor plus the whole-database total.
//
// File layout:
//   all_total,<integer>
//   actor_kind,actor_id,all_count
//   institution,ORG-1,12345
//   ...
struct ExternalTotals {
  std::int64_t all_total = 0;
  std::map<std::pair<ActorKind, std::string>, std::int64_t> counts;

  std::optional<std::int64_t> lookup(ActorKind kind, const std::string& id) const;
};

ExternalTotals parse_external_totals(std::istream& in);
ExternalTotals load_external_totals(const std::filesystem::path& path);

struct ActorRow {
  std::string actor_id;
  std::string actor_name;
  ActorKind actor_kind = ActorKind::institution;
  YearRange period;
  std::int64_t topic_count = 0;
  std::int64_t period_total = 0;  // publications of the set inside the period
  std::optional<double> activity_index;  // ratio; nullopt when unavailable

  double topic_share_pct() const {
    return period_total ? 100.0 * static_cast<double>(topic_count) / static_cast<double>(period_total) : 0.0;
  }
};

struct ActorTable {
  std::vector<ActorRow> ranked;  // rows with topic_count >= min_count
  std::vector<ActorRow> raw;     // every row
};

// Full counting: a publication counts once for each distinct actor among
// its affiliations. Rows sorted by topic_count descending, then actor_id.
ActorTable actor_table(const PubIdSet& set, const Corpus& corpus, ActorKind kind, YearRange period,
                       const ExternalTotals* totals, std::int64_t min_count = 0);

// Consecutive blocks of `block_len` years starting at range.lo; the last
// block is clipped to range.hi. Members outside the range are dropped.
std::vector<std::pair<YearRange, PubIdSet>> period_blocks(const PubIdSet& set, const Corpus& corpus,
                                                          YearRange range, int block_len = 6);

}  // namespace scimetrics

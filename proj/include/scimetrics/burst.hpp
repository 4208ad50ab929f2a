#pragma once

#include "scimetrics/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Two-state batched burst automaton over yearly publication counts.
//
// For a term with r_t matching publications out of d_t in year t (t = 0..T-1):
//   base rate   p0 = sum(r) / sum(d)
//   burst rate  p1 = min(s * p0, 1)
//   emission    cost_q(t) = -ln[ C(d_t, r_t) p_q^r_t (1 - p_q)^(d_t - r_t) ]
//   transition  gamma * ln(T) for each low -> high move; high -> low is free
// The automaton starts in the low state. Years with d_t = 0 cost nothing in
// either state. The minimum-cost state sequence is found by dynamic
// programming with ties resolved toward the low state; each maximal
// high-state run is a burst whose strength is sum(cost_low - cost_high).
namespace scimetrics {

struct TermYearStream {
  std::string term;
  int first_year = 0;
  std::vector<std::int64_t> relevant;  // r_t
  std::vector<std::int64_t> totals;    // d_t

  std::size_t size() const { return totals.size(); }
  int year(std::size_t t) const { return first_year + static_cast<int>(t); }
};

TermYearStream term_year_stream(const PubIdSet& set, const Corpus& corpus, const std::string& term,
                                YearRange years);

// Same as calling term_year_stream per term, in one pass over the set.
std::vector<TermYearStream> term_year_streams(const PubIdSet& set, const Corpus& corpus,
                                              const std::vector<std::string>& terms,
                                              YearRange years);

struct BurstParams {
  double s = 2.0;
  double gamma = 1.0;
};

struct StateCosts {
  std::vector<double> low;
  std::vector<double> high;
  double transition = 0;  // low -> high
  double p0 = 0;
  double p1 = 0;
};

// Throws std::invalid_argument unless s > 1 and gamma >= 0. Requires
// 0 < p0 < 1; callers go through detect_bursts for the degenerate cases.
StateCosts state_costs(const TermYearStream& stream, const BurstParams& params);

struct StatePath {
  std::vector<std::uint8_t> high;  // 1 where the automaton is in the burst state
  double cost = 0;
};

StatePath optimal_states(const StateCosts& costs);

struct BurstInterval {
  std::string term;
  int begin = 0;
  int end = 0;  // inclusive
  double strength = 0;
};

struct BurstDetection {
  std::vector<BurstInterval> intervals;
  std::string diagnostic;  // set when the stream admits no burst state
};

BurstDetection detect_bursts(const TermYearStream& stream, const BurstParams& params = {});

// Bursts of every term, ranked by strength descending, then begin year, then
// term; at most k rows.
std::vector<BurstInterval> top_bursts(const PubIdSet& set, const Corpus& corpus,
                                      const std::vector<std::string>& terms, YearRange years,
                                      std::size_t k, const BurstParams& params = {},
                                      unsigned threads = 1);

}  // namespace scimetrics

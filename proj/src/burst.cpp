#include "scimetrics/burst.hpp"

#include "scimetrics/cooccur.hpp"
#include "scimetrics/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace scimetrics {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double emission_cost(std::int64_t r, std::int64_t d, double p) {
  if (d == 0) return 0.0;
  const double rd = static_cast<double>(r);
  const double dd = static_cast<double>(d);
  const double log_choose = std::lgamma(dd + 1) - std::lgamma(rd + 1) - std::lgamma(dd - rd + 1);
  double log_lik = log_choose;
  if (r > 0) log_lik += rd * std::log(p);
  if (d > r) {
    if (p >= 1.0) return kInf;
    log_lik += (dd - rd) * std::log1p(-p);
  }
  return -log_lik;
}

void validate(const BurstParams& params) {
  if (!(params.s > 1.0)) throw std::invalid_argument("burst: s must be > 1");
  if (!(params.gamma >= 0.0)) throw std::invalid_argument("burst: gamma must be >= 0");
}

}  // namespace

std::vector<TermYearStream> term_year_streams(const PubIdSet& set, const Corpus& corpus,
                                              const std::vector<std::string>& terms,
                                              YearRange years) {
  const auto T = static_cast<std::size_t>(years.length());
  std::vector<TermYearStream> out(terms.size());
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out[i].term = terms[i];
    out[i].first_year = years.lo;
    out[i].relevant.assign(T, 0);
    index.emplace(terms[i], i);
  }
  std::vector<std::int64_t> totals(T, 0);
  for (const auto& id : set) {
    const auto* rec = corpus.find(id);
    if (!rec || !years.contains(rec->year)) continue;
    const auto t = static_cast<std::size_t>(rec->year - years.lo);
    ++totals[t];
    for (const auto& term : extract_terms(*rec)) {
      auto it = index.find(term);
      if (it != index.end()) ++out[it->second].relevant[t];
    }
  }
  for (auto& s : out) s.totals = totals;
  return out;
}

TermYearStream term_year_stream(const PubIdSet& set, const Corpus& corpus, const std::string& term,
                                YearRange years) {
  return std::move(term_year_streams(set, corpus, {term}, years).front());
}

StateCosts state_costs(const TermYearStream& stream, const BurstParams& params) {
  validate(params);
  const auto r_sum = std::accumulate(stream.relevant.begin(), stream.relevant.end(), std::int64_t{0});
  const auto d_sum = std::accumulate(stream.totals.begin(), stream.totals.end(), std::int64_t{0});
  if (d_sum <= 0 || r_sum <= 0 || r_sum >= d_sum) {
    throw std::invalid_argument("burst: base rate must lie strictly between 0 and 1");
  }
  StateCosts c;
  c.p0 = static_cast<double>(r_sum) / static_cast<double>(d_sum);
  c.p1 = std::min(params.s * c.p0, 1.0);
  c.transition = params.gamma * std::log(static_cast<double>(stream.size()));
  c.low.resize(stream.size());
  c.high.resize(stream.size());
  for (std::size_t t = 0; t < stream.size(); ++t) {
    c.low[t] = emission_cost(stream.relevant[t], stream.totals[t], c.p0);
    c.high[t] = emission_cost(stream.relevant[t], stream.totals[t], c.p1);
  }
  return c;
}

StatePath optimal_states(const StateCosts& costs) {
  const std::size_t T = costs.low.size();
  StatePath path;
  path.high.assign(T, 0);
  if (T == 0) return path;

  // back[t][q]: state at t-1 on the best path into state q at t
  std::vector<std::array<std::uint8_t, 2>> back(T);
  double low = costs.low[0];
  double high = costs.transition + costs.high[0];
  back[0] = {0, 0};
  for (std::size_t t = 1; t < T; ++t) {
    const double to_low_from_low = low;
    const double to_low_from_high = high;
    const double to_high_from_low = low + costs.transition;
    const double to_high_from_high = high;
    std::uint8_t bl = to_low_from_high < to_low_from_low ? 1 : 0;
    std::uint8_t bh = to_high_from_high < to_high_from_low ? 1 : 0;
    const double nl = (bl ? to_low_from_high : to_low_from_low) + costs.low[t];
    const double nh = (bh ? to_high_from_high : to_high_from_low) + costs.high[t];
    back[t] = {bl, bh};
    low = nl;
    high = nh;
  }
  std::uint8_t q = high < low ? 1 : 0;
  path.cost = q ? high : low;
  for (std::size_t t = T; t-- > 0;) {
    path.high[t] = q;
    q = back[t][q];
  }
  return path;
}

BurstDetection detect_bursts(const TermYearStream& stream, const BurstParams& params) {
  validate(params);
  BurstDetection out;
  const auto r_sum = std::accumulate(stream.relevant.begin(), stream.relevant.end(), std::int64_t{0});
  const auto d_sum = std::accumulate(stream.totals.begin(), stream.totals.end(), std::int64_t{0});
  if (d_sum <= 0) {
    out.diagnostic = "no publications in the analysis range";
    return out;
  }
  if (r_sum == 0) {
    out.diagnostic = "term never occurs (base rate 0)";
    return out;
  }
  if (r_sum >= d_sum) {
    out.diagnostic = "base rate is 1; burst rate clamps to the base rate";
    return out;
  }

  const auto costs = state_costs(stream, params);
  const auto path = optimal_states(costs);
  for (std::size_t t = 0; t < path.high.size();) {
    if (!path.high[t]) {
      ++t;
      continue;
    }
    BurstInterval b;
    b.term = stream.term;
    b.begin = stream.year(t);
    double strength = 0;
    for (; t < path.high.size() && path.high[t]; ++t) strength += costs.low[t] - costs.high[t];
    b.end = stream.year(t - 1);
    b.strength = strength;
    out.intervals.push_back(std::move(b));
  }
  return out;
}

std::vector<BurstInterval> top_bursts(const PubIdSet& set, const Corpus& corpus,
                                      const std::vector<std::string>& terms, YearRange years,
                                      std::size_t k, const BurstParams& params, unsigned threads) {
  if (k < 1) throw std::invalid_argument("top_bursts: k must be >= 1");
  validate(params);
  const auto streams = term_year_streams(set, corpus, terms, years);
  std::vector<std::vector<BurstInterval>> found(streams.size());
  parallel_for(streams.size(), threads,
               [&](std::size_t i) { found[i] = detect_bursts(streams[i], params).intervals; });

  std::vector<BurstInterval> all;
  for (auto& f : found) {
    for (auto& b : f) all.push_back(std::move(b));
  }
  std::sort(all.begin(), all.end(), [](const BurstInterval& a, const BurstInterval& b) {
    if (a.strength != b.strength) return a.strength > b.strength;
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.term < b.term;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace scimetrics

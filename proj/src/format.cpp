#include "scimetrics/format.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scimetrics::fmtnum {

std::string percent_2dp(std::int64_t num, std::int64_t den) {
  if (den == 0) return "0.00";
  if (den < 0 || num < 0) throw std::invalid_argument("percent_2dp: negative operand");
  // hundredths of a percent, half-up: floor((2 * num * 10000 + den) / (2 * den))
  const __int128 scaled = (static_cast<__int128>(num) * 20000 + den) / (static_cast<__int128>(den) * 2);
  const auto whole = static_cast<long long>(scaled / 100);
  const auto frac = static_cast<int>(scaled % 100);
  return fmt::format("{}.{:02d}", whole, frac);
}

std::vector<std::string> shares_2dp(std::span<const std::int64_t> counts) {
  __int128 total = 0;
  for (auto c : counts) {
    if (c < 0) throw std::invalid_argument("shares_2dp: negative count");
    total += c;
  }
  std::vector<std::string> out;
  if (total == 0) {
    out.assign(counts.size(), "0.00");
    return out;
  }
  std::vector<std::int64_t> units(counts.size());
  std::vector<__int128> remainder(counts.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const __int128 scaled = static_cast<__int128>(counts[i]) * 10000;
    units[i] = static_cast<std::int64_t>(scaled / total);
    remainder[i] = scaled % total;
    assigned += units[i];
  }
  std::vector<std::size_t> order(counts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < 10000; ++k, ++assigned) ++units[order[k]];
  for (auto u : units) out.push_back(fmt::format("{}.{:02d}", u / 100, u % 100));
  return out;
}

std::string fixed(double v, int decimals) {
  std::string s = fmt::format("{:.{}f}", v, decimals);
  // "-0.00" and friends print as zero
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string percent_2dp(double pct) { return fixed(pct, 2); }

std::string ratio_4dp(double v) { return fixed(v, 4); }

}  // namespace scimetrics::fmtnum

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Fixed-precision number formatting used by every report writer. Ratios get
// four decimals, percentages two.
namespace scimetrics::fmtnum {

// 100 * num / den rounded half-up to two decimals using integer arithmetic,
// so the printed value is independent of floating-point rounding.
// Returns "0.00" when den == 0.
std::string percent_2dp(std::int64_t num, std::int64_t den);

// Shares of the total of `counts`, two decimals, apportioned by largest
// remainder so a nonzero total always prints as exactly 100.00. Ties go to
// the earlier entry. Each share is within 0.01 of its exact value.
std::vector<std::string> shares_2dp(std::span<const std::int64_t> counts);

std::string percent_2dp(double pct);
std::string ratio_4dp(double v);
std::string fixed(double v, int decimals);

}  // namespace scimetrics::fmtnum

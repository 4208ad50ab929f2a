#pragma once

#include "scimetrics/corpus.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scimetrics::synth {

// Deterministic synthetic corpus. Seeded records carry the query phrase in
// their title, sit inside [range_lo, range_hi] and have an HEI first
// affiliation; no other record mentions the phrase.
struct Options {
  std::size_t records = 200;
  std::size_t seeded = 30;
  int year_lo = 1995;
  int year_hi = 2019;
  int range_lo = 2000;
  int range_hi = 2017;
  std::size_t orgs = 40;
  std::uint64_t seed = 1;
};

struct Output {
  std::vector<PublicationRecord> records;  // sorted by (year, pub_id)
  std::vector<std::string> seeded_ids;     // sorted
  std::string external_totals_csv;
};

inline constexpr const char* kQuery =
    R"(TS="millennium development goal*" OR TS="mdg*")";

Output generate(const Options& opts);

}  // namespace scimetrics::synth

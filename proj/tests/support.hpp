#pragma once

#include "scimetrics/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

using namespace scimetrics;

inline Affiliation aff(std::string org_id, OrgType type, std::string country) {
  Affiliation a;
  a.org_id = org_id;
  a.org_name = "Org " + org_id;
  a.org_type = type;
  a.country = country;
  a.continent = *continent_of(a.country);
  return a;
}

inline PublicationRecord rec(std::string id, int year, std::vector<std::string> keywords = {},
                             std::vector<std::string> refs = {}, std::vector<Affiliation> affs = {}) {
  PublicationRecord r;
  r.pub_id = std::move(id);
  r.year = year;
  r.author_keywords = std::move(keywords);
  r.references = std::move(refs);
  r.affiliations = std::move(affs);
  return r;
}

inline Corpus corpus_of(const std::vector<PublicationRecord>& records) {
  Corpus c;
  for (const auto& r : records) c.add(r);
  return c;
}

inline PubIdSet all_ids(const Corpus& c) {
  PubIdSet s;
  for (const auto& r : c.records()) s.insert(r.pub_id);
  return s;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("scimetrics_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// Draw from [lo, hi].
inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace testing

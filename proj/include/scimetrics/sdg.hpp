#pragma once

#include "scimetrics/corpus.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scimetrics {

inline constexpr int kSdgCount = 17;

// Subset of SDG ids 1..17.
class SdgSet {
 public:
  SdgSet() = default;
  SdgSet(std::initializer_list<int> ids) {
    for (int id : ids) insert(id);
  }

  // Throws std::out_of_range outside 1..17.
  void insert(int id);
  bool contains(int id) const { return id >= 1 && id <= kSdgCount && (bits_ >> (id - 1)) & 1u; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  std::vector<int> ids() const;
  std::uint32_t bits() const { return bits_; }

  SdgSet& operator|=(const SdgSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  bool operator==(const SdgSet&) const = default;

  // "3;11"; empty string for the empty set.
  std::string to_string() const;
  static SdgSet parse(std::string_view s);

 private:
  std::uint32_t bits_ = 0;
};

class GlossaryError : public std::runtime_error {
 public:
  GlossaryError(const std::string& what, std::size_t row)
      : std::runtime_error(what + " (row " + std::to_string(row) + ")"), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// Normalized term -> SDG ids. CSV input: header "term,sdg_id", one mapping
// per row; repeated (term, sdg) rows collapse.
class SdgGlossary {
 public:
  void add(std::string_view term, int sdg);

  SdgSet lookup(std::string_view normalized_term) const;
  std::size_t term_count() const { return entries_.size(); }
  const std::map<std::string, SdgSet, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, SdgSet, std::less<>> entries_;
};

// Throws GlossaryError on bad rows or when no mapping row is present, and
// InputError if the file cannot be read.
SdgGlossary parse_glossary(std::istream& in);
SdgGlossary load_glossary(const std::filesystem::path& path);

struct SdgAssignment {
  std::string pub_id;
  SdgSet sdgs;
};

// Exact whole-term glossary matches over the record's normalized keywords.
// With scan_text, glossary terms found as contiguous phrases in the title or
// abstract also count.
SdgAssignment classify(const PublicationRecord& record, const SdgGlossary& glossary,
                       bool scan_text = false);

// One assignment per set member, in pub_id order.
std::vector<SdgAssignment> classify_all(const PubIdSet& set, const Corpus& corpus,
                                        const SdgGlossary& glossary, bool scan_text = false,
                                        unsigned threads = 1);

enum class Denominator { all, classified };
std::string_view to_string(Denominator d);

struct PrevalenceReport {
  std::array<std::int64_t, kSdgCount> counts{};
  std::int64_t total = 0;       // publications considered
  std::int64_t classified = 0;  // publications with >= 1 SDG
  Denominator denominator = Denominator::classified;

  std::int64_t denominator_value() const {
    return denominator == Denominator::all ? total : classified;
  }
  std::string pct(int sdg) const;  // 2 decimals, half-up
  std::string classified_fraction_pct() const;
};

PrevalenceReport prevalence(const std::vector<SdgAssignment>& assignments, Denominator denominator);

// SDG x first-author continent publication counts.
struct ContinentTables {
  std::array<std::array<std::int64_t, kContinentCount>, kSdgCount> counts{};
  std::int64_t excluded_no_affiliation = 0;

  // Shares are apportioned by largest remainder, so every nonempty row
  // (column) prints as exactly 100.00 in total.
  // Each row scaled to 100 (contribution of each continent to an SDG).
  std::string row_pct(int sdg, Continent c) const;
  // Each column scaled to 100 (SDG profile of a continent).
  std::string column_pct(int sdg, Continent c) const;
};

ContinentTables continent_tables(const std::vector<SdgAssignment>& assignments,
                                 const Corpus& corpus);

struct InstitutionsPerSdg {
  std::array<std::int64_t, kSdgCount> counts{};
  std::int64_t total_institutions = 0;

  std::string pct(int sdg) const;
};

// Distinct org_ids of the accepted types per SDG, over all institutions of
// those types appearing on any assigned publication.
InstitutionsPerSdg institutions_per_sdg(const std::vector<SdgAssignment>& assignments,
                                        const Corpus& corpus,
                                        const OrgTypeFilter& org_types =
                                            OrgTypeFilter::of({OrgType::HEI, OrgType::RC}));

}  // namespace scimetrics

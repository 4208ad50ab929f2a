#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scimetrics {

enum class OrgType { HEI, RC, GOV, HOSPITAL, NGO, COMPANY, OTHER };
enum class Continent { Africa, America, Asia, Europe, Oceania };

inline constexpr std::size_t kContinentCount = 5;

std::string_view to_string(OrgType t);
std::string_view to_string(Continent c);
// Case-insensitive.
std::optional<OrgType> parse_org_type(std::string_view s);
std::optional<Continent> parse_continent(std::string_view s);

// Continent for an ISO 3166-1 alpha-2 code (upper case) from the bundled
// table; nullopt for unknown codes.
std::optional<Continent> continent_of(std::string_view country);
std::size_t country_table_size();

struct Affiliation {
  std::string org_id;
  std::string org_name;
  OrgType org_type = OrgType::OTHER;
  std::string country;
  Continent continent = Continent::Europe;  // derived from country at load time

  bool operator==(const Affiliation&) const = default;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  std::string title;
  std::string abstract;
  std::vector<std::string> author_keywords;
  std::vector<std::string> index_keywords;
  std::vector<std::string> references;
  // affiliations[0] belongs to the first author
  std::vector<Affiliation> affiliations;

  bool operator==(const PublicationRecord&) const = default;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

using PubIdSet = std::set<std::string, std::less<>>;

// Inclusive calendar-year range.
struct YearRange {
  int lo = 0;
  int hi = 0;

  // Throws std::invalid_argument when lo > hi.
  static YearRange make(int lo, int hi);

  bool contains(int year) const { return year >= lo && year <= hi; }
  int length() const { return hi - lo + 1; }
  std::string label() const;  // "2000-2005"

  auto operator<=>(const YearRange&) const = default;
};

// Affiliation-type predicate: either "any" or a set of accepted types.
class OrgTypeFilter {
 public:
  static OrgTypeFilter any() { return OrgTypeFilter{}; }
  static OrgTypeFilter of(std::set<OrgType> types);

  bool is_any() const { return !types_.has_value(); }
  const std::set<OrgType>& types() const { return *types_; }
  bool matches(const PublicationRecord& rec) const;

  // Includes every type accepted by `this`.
  bool widens(const OrgTypeFilter& other) const;

 private:
  std::optional<std::set<OrgType>> types_;
};

// Indexed, immutable-after-load collection of publication records.
class Corpus {
 public:
  // Returns false (and leaves the corpus unchanged) if pub_id is taken.
  bool add(PublicationRecord rec);

  const PublicationRecord* find(std::string_view pub_id) const;
  bool contains(std::string_view pub_id) const { return find(pub_id) != nullptr; }

  std::span<const PublicationRecord> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Position of a record in load order.
  std::optional<std::size_t> index_of(std::string_view pub_id) const;

  bool operator==(const Corpus& other) const { return records_ == other.records_; }

 private:
  std::vector<PublicationRecord> records_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

enum class CorpusFormat { jsonl, csv };

CorpusFormat corpus_format_from_path(const std::filesystem::path& path);
std::optional<CorpusFormat> parse_corpus_format(std::string_view s);

struct SkippedRecord {
  std::size_t line = 0;
  std::string pub_id;  // may be empty when the id itself was unreadable
  std::string reason;
};

struct LoadReport {
  std::vector<SkippedRecord> skipped;
  std::size_t duplicates = 0;
};

struct LoadedCorpus {
  Corpus corpus;
  LoadReport report;
};

// Throws InputError if the file cannot be opened. Malformed and duplicate
// records are skipped and listed in the report.
LoadedCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
LoadedCorpus parse_corpus(std::istream& in, CorpusFormat format);

// Canonical JSONL serialization (one record per line, fixed key order).
void write_jsonl(std::ostream& out, const Corpus& corpus);
void write_csv(std::ostream& out, const Corpus& corpus);

// Ids whose year is within `years` and that pass the affiliation filter.
PubIdSet filter(const Corpus& corpus, YearRange years, const OrgTypeFilter& org_types);

// Author and index keywords, each normalized, deduplicated, sorted.
std::set<std::string> normalized_keywords(const PublicationRecord& rec);

}  // namespace scimetrics

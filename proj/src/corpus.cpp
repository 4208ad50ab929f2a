#include "scimetrics/corpus.hpp"

#include "scimetrics/csv.hpp"
#include "scimetrics/errors.hpp"
#include "scimetrics/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace scimetrics {
namespace {

using nlohmann::json;

struct RecordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

Affiliation make_affiliation(std::string org_id, std::string org_name, std::string_view org_type,
                             std::string_view country) {
  if (org_id.empty()) throw RecordError("affiliation without org_id");
  auto type = parse_org_type(org_type);
  if (!type) throw RecordError("unknown org_type '" + std::string(org_type) + "'");
  std::string code = upper(country);
  auto cont = continent_of(code);
  if (!cont) throw RecordError("unknown country code '" + std::string(country) + "'");
  return Affiliation{std::move(org_id), std::move(org_name), *type, std::move(code), *cont};
}

void check_year(long long year) {
  if (year < kMinYear || year > kMaxYear) {
    throw RecordError("year " + std::to_string(year) + " outside [1900, 2100]");
  }
}

// ---- JSONL ----

std::string json_string(const json& obj, const char* key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) throw RecordError(std::string("missing ") + key);
    return {};
  }
  if (!it->is_string()) throw RecordError(std::string(key) + " is not a string");
  return it->get<std::string>();
}

std::vector<std::string> json_string_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw RecordError(std::string(key) + " is not a list");
  for (const auto& v : *it) {
    if (!v.is_string()) throw RecordError(std::string(key) + " contains a non-string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

PublicationRecord record_from_json(const json& obj) {
  if (!obj.is_object()) throw RecordError("record is not a JSON object");
  PublicationRecord rec;
  rec.pub_id = json_string(obj, "pub_id", true);
  if (rec.pub_id.empty()) throw RecordError("empty pub_id");

  auto year = obj.find("year");
  if (year == obj.end() || year->is_null()) throw RecordError("missing year");
  if (!year->is_number_integer()) throw RecordError("year is not an integer");
  check_year(year->get<long long>());
  rec.year = year->get<int>();

  rec.title = json_string(obj, "title", false);
  rec.abstract = json_string(obj, "abstract", false);
  rec.author_keywords = json_string_list(obj, "author_keywords");
  rec.index_keywords = json_string_list(obj, "index_keywords");
  rec.references = json_string_list(obj, "references");

  auto affs = obj.find("affiliations");
  if (affs != obj.end() && !affs->is_null()) {
    if (!affs->is_array()) throw RecordError("affiliations is not a list");
    for (const auto& a : *affs) {
      if (!a.is_object()) throw RecordError("affiliation is not an object");
      rec.affiliations.push_back(make_affiliation(json_string(a, "org_id", true),
                                                  json_string(a, "org_name", false),
                                                  json_string(a, "org_type", true),
                                                  json_string(a, "country", true)));
    }
  }
  return rec;
}

// ---- CSV ----

constexpr char kListDelim = '|';
constexpr char kAffiliationFieldDelim = ';';

const std::vector<std::string> kCsvColumns = {"pub_id",         "year",       "title",
                                              "abstract",       "author_keywords",
                                              "index_keywords", "references", "affiliations"};

PublicationRecord record_from_csv(const std::vector<std::string>& row,
                                  const std::map<std::string, std::size_t>& cols) {
  auto cell = [&](const std::string& name) -> std::string_view {
    auto it = cols.find(name);
    if (it == cols.end() || it->second >= row.size()) return {};
    return row[it->second];
  };
  if (row.size() != cols.size()) {
    throw RecordError("expected " + std::to_string(cols.size()) + " fields, found " +
                      std::to_string(row.size()));
  }
  PublicationRecord rec;
  rec.pub_id = std::string(cell("pub_id"));
  if (rec.pub_id.empty()) throw RecordError("missing pub_id");

  const auto year_text = cell("year");
  if (year_text.empty()) throw RecordError("missing year");
  long long year = 0;
  auto [ptr, ec] = std::from_chars(year_text.data(), year_text.data() + year_text.size(), year);
  if (ec != std::errc{} || ptr != year_text.data() + year_text.size()) {
    throw RecordError("year is not an integer");
  }
  check_year(year);
  rec.year = static_cast<int>(year);

  rec.title = std::string(cell("title"));
  rec.abstract = std::string(cell("abstract"));
  rec.author_keywords = csv::split(cell("author_keywords"), kListDelim);
  rec.index_keywords = csv::split(cell("index_keywords"), kListDelim);
  rec.references = csv::split(cell("references"), kListDelim);
  for (const auto& item : csv::split(cell("affiliations"), kListDelim)) {
    auto parts = csv::split(item, kAffiliationFieldDelim);
    if (parts.size() != 4) {
      throw RecordError("affiliation '" + item + "' needs org_id;org_name;org_type;country");
    }
    rec.affiliations.push_back(make_affiliation(parts[0], parts[1], parts[2], parts[3]));
  }
  return rec;
}

std::string join_list(const std::vector<std::string>& items, char delim) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].find(delim) != std::string::npos) {
      throw std::invalid_argument("list item '" + items[i] + "' contains the CSV list delimiter");
    }
    if (i) out.push_back(delim);
    out += items[i];
  }
  return out;
}

void add_record(LoadedCorpus& out, PublicationRecord rec, std::size_t line) {
  std::string id = rec.pub_id;
  if (!out.corpus.add(std::move(rec))) {
    ++out.report.duplicates;
    out.report.skipped.push_back({line, id, "duplicate pub_id"});
  }
}

LoadedCorpus parse_jsonl(std::istream& in) {
  LoadedCorpus out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      out.report.skipped.push_back({line_no, "", std::string("invalid JSON: ") + e.what()});
      continue;
    }
    try {
      add_record(out, record_from_json(obj), line_no);
    } catch (const RecordError& e) {
      std::string id;
      if (obj.is_object() && obj.contains("pub_id") && obj["pub_id"].is_string()) {
        id = obj["pub_id"].get<std::string>();
      }
      out.report.skipped.push_back({line_no, id, e.what()});
    }
  }
  return out;
}

LoadedCorpus parse_csv(std::istream& in) {
  LoadedCorpus out;
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) return out;
  std::map<std::string, std::size_t> cols;
  for (std::size_t i = 0; i < row.size(); ++i) cols[row[i]] = i;
  for (const char* required : {"pub_id", "year"}) {
    if (!cols.count(required)) {
      throw InputError(std::string("corpus CSV header lacks column '") + required + "'");
    }
  }
  for (;;) {
    bool more = false;
    try {
      more = reader.next(row);
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
    if (!more) break;
    if (row.size() == 1 && row[0].empty()) continue;
    try {
      add_record(out, record_from_csv(row, cols), reader.line());
    } catch (const RecordError& e) {
      auto it = cols.find("pub_id");
      std::string id = it != cols.end() && it->second < row.size() ? row[it->second] : "";
      out.report.skipped.push_back({reader.line(), id, e.what()});
    }
  }
  return out;
}

}  // namespace

YearRange YearRange::make(int lo, int hi) {
  if (lo > hi) {
    throw std::invalid_argument("year range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "] has lo > hi");
  }
  return YearRange{lo, hi};
}

std::string YearRange::label() const { return std::to_string(lo) + "-" + std::to_string(hi); }

OrgTypeFilter OrgTypeFilter::of(std::set<OrgType> types) {
  OrgTypeFilter f;
  f.types_ = std::move(types);
  return f;
}

bool OrgTypeFilter::matches(const PublicationRecord& rec) const {
  if (!types_) return true;
  return std::any_of(rec.affiliations.begin(), rec.affiliations.end(),
                     [&](const Affiliation& a) { return types_->count(a.org_type) > 0; });
}

bool OrgTypeFilter::widens(const OrgTypeFilter& other) const {
  if (!types_) return true;
  if (!other.types_) return false;
  return std::includes(types_->begin(), types_->end(), other.types_->begin(),
                       other.types_->end());
}

bool Corpus::add(PublicationRecord rec) {
  if (index_.count(rec.pub_id)) return false;
  index_.emplace(rec.pub_id, records_.size());
  records_.push_back(std::move(rec));
  return true;
}

const PublicationRecord* Corpus::find(std::string_view pub_id) const {
  auto it = index_.find(pub_id);
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::optional<std::size_t> Corpus::index_of(std::string_view pub_id) const {
  auto it = index_.find(pub_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CorpusFormat corpus_format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? CorpusFormat::csv : CorpusFormat::jsonl;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::jsonl;
  if (s == "csv") return CorpusFormat::csv;
  return std::nullopt;
}

LoadedCorpus parse_corpus(std::istream& in, CorpusFormat format) {
  return format == CorpusFormat::csv ? parse_csv(in) : parse_jsonl(in);
}

LoadedCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read corpus file " + path.string());
  return parse_corpus(in, format);
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& rec : corpus.records()) {
    nlohmann::ordered_json obj;
    obj["pub_id"] = rec.pub_id;
    obj["year"] = rec.year;
    obj["title"] = rec.title;
    obj["abstract"] = rec.abstract;
    obj["author_keywords"] = rec.author_keywords;
    obj["index_keywords"] = rec.index_keywords;
    obj["references"] = rec.references;
    auto& affs = obj["affiliations"] = nlohmann::ordered_json::array();
    for (const auto& a : rec.affiliations) {
      affs.push_back({{"org_id", a.org_id},
                      {"org_name", a.org_name},
                      {"org_type", std::string(to_string(a.org_type))},
                      {"country", a.country}});
    }
    out << obj.dump() << '\n';
  }
}

void write_csv(std::ostream& out, const Corpus& corpus) {
  csv::write_row(out, kCsvColumns);
  for (const auto& rec : corpus.records()) {
    std::vector<std::string> affs;
    for (const auto& a : rec.affiliations) {
      affs.push_back(join_list({a.org_id, a.org_name, std::string(to_string(a.org_type)),
                                a.country},
                               kAffiliationFieldDelim));
    }
    csv::write_row(out, {rec.pub_id, std::to_string(rec.year), rec.title, rec.abstract,
                         join_list(rec.author_keywords, kListDelim),
                         join_list(rec.index_keywords, kListDelim),
                         join_list(rec.references, kListDelim), join_list(affs, kListDelim)});
  }
}

PubIdSet filter(const Corpus& corpus, YearRange years, const OrgTypeFilter& org_types) {
  if (years.lo > years.hi) throw std::invalid_argument("filter: year range has lo > hi");
  PubIdSet out;
  for (const auto& rec : corpus.records()) {
    if (years.contains(rec.year) && org_types.matches(rec)) out.insert(rec.pub_id);
  }
  return out;
}

std::set<std::string> normalized_keywords(const PublicationRecord& rec) {
  std::set<std::string> out;
  for (const auto* list : {&rec.author_keywords, &rec.index_keywords}) {
    for (const auto& kw : *list) {
      auto norm = text::normalize(kw);
      if (!norm.empty()) out.insert(std::move(norm));
    }
  }
  return out;
}

}  // namespace scimetrics

#include "scimetrics/sdg.hpp"

#include "scimetrics/cooccur.hpp"
#include "scimetrics/csv.hpp"
#include "scimetrics/errors.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/parallel.hpp"
#include "scimetrics/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

namespace scimetrics {

void SdgSet::insert(int id) {
  if (id < 1 || id > kSdgCount) throw std::out_of_range("SDG id " + std::to_string(id) + " outside 1..17");
  bits_ |= 1u << (id - 1);
}

std::vector<int> SdgSet::ids() const {
  std::vector<int> out;
  for (int id = 1; id <= kSdgCount; ++id) {
    if (contains(id)) out.push_back(id);
  }
  return out;
}

std::string SdgSet::to_string() const {
  std::string out;
  for (int id : ids()) {
    if (!out.empty()) out.push_back(';');
    out += std::to_string(id);
  }
  return out;
}

SdgSet SdgSet::parse(std::string_view s) {
  SdgSet out;
  for (const auto& part : csv::split(s, ';')) {
    int id = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), id);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw std::invalid_argument("bad SDG id '" + part + "'");
    }
    out.insert(id);
  }
  return out;
}

void SdgGlossary::add(std::string_view term, int sdg) {
  auto norm = text::normalize(term);
  if (norm.empty()) throw std::invalid_argument("glossary term has no word characters");
  entries_[norm].insert(sdg);
}

SdgSet SdgGlossary::lookup(std::string_view normalized_term) const {
  auto it = entries_.find(normalized_term);
  return it == entries_.end() ? SdgSet{} : it->second;
}

SdgGlossary parse_glossary(std::istream& in) {
  SdgGlossary g;
  csv::Reader reader(in);
  std::vector<std::string> row;
  try {
    if (!reader.next(row)) throw GlossaryError("glossary is empty", 1);
    if (row.size() != 2 || row[0] != "term" || row[1] != "sdg_id") {
      throw GlossaryError("glossary header must be 'term,sdg_id'", reader.line());
    }
    std::size_t mappings = 0;
    while (reader.next(row)) {
      if (row.size() == 1 && row[0].empty()) continue;
      if (row.size() != 2) throw GlossaryError("expected 2 fields", reader.line());
      int id = 0;
      auto [ptr, ec] = std::from_chars(row[1].data(), row[1].data() + row[1].size(), id);
      if (ec != std::errc{} || ptr != row[1].data() + row[1].size() || id < 1 || id > kSdgCount) {
        throw GlossaryError("invalid SDG id '" + row[1] + "'", reader.line());
      }
      try {
        g.add(row[0], id);
      } catch (const std::invalid_argument& e) {
        throw GlossaryError(e.what(), reader.line());
      }
      ++mappings;
    }
    if (mappings == 0) throw GlossaryError("glossary has no mapping rows", reader.line());
  } catch (const GlossaryError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw GlossaryError(e.what(), reader.line());
  }
  return g;
}

SdgGlossary load_glossary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read glossary file " + path.string());
  return parse_glossary(in);
}

namespace {

void scan_phrases(const std::vector<std::string>& words, const SdgGlossary& glossary,
                  std::size_t max_len, SdgSet& out) {
  std::string candidate;
  for (std::size_t i = 0; i < words.size(); ++i) {
    candidate.clear();
    for (std::size_t len = 1; len <= max_len && i + len <= words.size(); ++len) {
      if (len > 1) candidate.push_back(' ');
      candidate += words[i + len - 1];
      out |= glossary.lookup(candidate);
    }
  }
}

}  // namespace

SdgAssignment classify(const PublicationRecord& record, const SdgGlossary& glossary,
                       bool scan_text) {
  SdgAssignment a{record.pub_id, {}};
  for (const auto& term : extract_terms(record)) a.sdgs |= glossary.lookup(term);
  if (scan_text) {
    std::size_t max_len = 0;
    for (const auto& [term, ids] : glossary.entries()) {
      max_len = std::max<std::size_t>(max_len, 1 + std::count(term.begin(), term.end(), ' '));
    }
    scan_phrases(text::tokenize(record.title), glossary, max_len, a.sdgs);
    scan_phrases(text::tokenize(record.abstract), glossary, max_len, a.sdgs);
  }
  return a;
}

std::vector<SdgAssignment> classify_all(const PubIdSet& set, const Corpus& corpus,
                                        const SdgGlossary& glossary, bool scan_text,
                                        unsigned threads) {
  std::vector<const PublicationRecord*> recs;
  recs.reserve(set.size());
  for (const auto& id : set) {
    if (const auto* r = corpus.find(id)) recs.push_back(r);
  }
  std::vector<SdgAssignment> out(recs.size());
  parallel_for(recs.size(), threads,
               [&](std::size_t i) { out[i] = classify(*recs[i], glossary, scan_text); });
  return out;
}

std::string_view to_string(Denominator d) {
  return d == Denominator::all ? "all" : "classified";
}

std::string PrevalenceReport::pct(int sdg) const {
  return fmtnum::percent_2dp(counts.at(static_cast<std::size_t>(sdg - 1)), denominator_value());
}

std::string PrevalenceReport::classified_fraction_pct() const {
  return fmtnum::percent_2dp(classified, total);
}

PrevalenceReport prevalence(const std::vector<SdgAssignment>& assignments, Denominator denominator) {
  PrevalenceReport r;
  r.denominator = denominator;
  r.total = static_cast<std::int64_t>(assignments.size());
  for (const auto& a : assignments) {
    if (a.sdgs.empty()) continue;
    ++r.classified;
    for (int id : a.sdgs.ids()) ++r.counts[static_cast<std::size_t>(id - 1)];
  }
  return r;
}

std::string ContinentTables::row_pct(int sdg, Continent c) const {
  const auto& row = counts.at(static_cast<std::size_t>(sdg - 1));
  return fmtnum::shares_2dp(row)[static_cast<std::size_t>(c)];
}

std::string ContinentTables::column_pct(int sdg, Continent c) const {
  std::array<std::int64_t, kSdgCount> column{};
  for (std::size_t s = 0; s < kSdgCount; ++s) column[s] = counts[s][static_cast<std::size_t>(c)];
  return fmtnum::shares_2dp(column).at(static_cast<std::size_t>(sdg - 1));
}

ContinentTables continent_tables(const std::vector<SdgAssignment>& assignments,
                                 const Corpus& corpus) {
  ContinentTables t;
  for (const auto& a : assignments) {
    if (a.sdgs.empty()) continue;
    const auto* rec = corpus.find(a.pub_id);
    if (!rec || rec->affiliations.empty()) {
      ++t.excluded_no_affiliation;
      continue;
    }
    const auto c = static_cast<std::size_t>(rec->affiliations.front().continent);
    for (int id : a.sdgs.ids()) ++t.counts[static_cast<std::size_t>(id - 1)][c];
  }
  return t;
}

std::string InstitutionsPerSdg::pct(int sdg) const {
  return fmtnum::percent_2dp(counts.at(static_cast<std::size_t>(sdg - 1)), total_institutions);
}

InstitutionsPerSdg institutions_per_sdg(const std::vector<SdgAssignment>& assignments,
                                        const Corpus& corpus, const OrgTypeFilter& org_types) {
  std::set<std::string> all;
  std::array<std::set<std::string>, kSdgCount> per_sdg;
  for (const auto& a : assignments) {
    const auto* rec = corpus.find(a.pub_id);
    if (!rec) continue;
    for (const auto& aff : rec->affiliations) {
      if (!org_types.is_any() && !org_types.types().count(aff.org_type)) continue;
      all.insert(aff.org_id);
      for (int id : a.sdgs.ids()) per_sdg[static_cast<std::size_t>(id - 1)].insert(aff.org_id);
    }
  }
  InstitutionsPerSdg out;
  out.total_institutions = static_cast<std::int64_t>(all.size());
  for (std::size_t s = 0; s < per_sdg.size(); ++s) {
    out.counts[s] = static_cast<std::int64_t>(per_sdg[s].size());
  }
  return out;
}

}  // namespace scimetrics

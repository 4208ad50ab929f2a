#include "scimetrics/indicators.hpp"

#include "scimetrics/csv.hpp"
#include "scimetrics/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace scimetrics {
namespace {

std::int64_t parse_count(std::string_view s, const std::string& where) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
    throw InputError(where + ": '" + std::string(s) + "' is not a nonnegative integer");
  }
  return v;
}

std::vector<std::string> actor_ids(const PublicationRecord& rec, ActorKind kind) {
  std::vector<std::string> ids;
  for (const auto& a : rec.affiliations) {
    switch (kind) {
      case ActorKind::institution: ids.push_back(a.org_id); break;
      case ActorKind::country: ids.push_back(a.country); break;
      case ActorKind::continent: ids.emplace_back(to_string(a.continent)); break;
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

YearlySeries yearly_counts(const PubIdSet& set, const Corpus& corpus, YearRange range) {
  YearlySeries out;
  for (int y = range.lo; y <= range.hi; ++y) out[y] = 0;
  for (const auto& id : set) {
    if (const auto* rec = corpus.find(id)) ++out[rec->year];
  }
  return out;
}

Growth growth_and_cagr(std::int64_t start_count, std::int64_t end_count, int intervals) {
  if (intervals <= 0) throw std::invalid_argument("growth needs end_year > start_year");
  if (start_count <= 0) throw UndefinedGrowthError("growth undefined: start count is zero");
  if (end_count < 0) throw std::invalid_argument("negative count");
  const double start = static_cast<double>(start_count);
  const double end = static_cast<double>(end_count);
  Growth g;
  g.growth_pct = 100.0 * (end - start) / start;
  g.cagr_pct = 100.0 * (std::pow(end / start, 1.0 / intervals) - 1.0);
  return g;
}

Growth growth_and_cagr(const YearlySeries& series, int start_year, int end_year) {
  auto count = [&](int y) {
    auto it = series.find(y);
    return it == series.end() ? std::int64_t{0} : it->second;
  };
  if (end_year <= start_year) throw std::invalid_argument("growth needs end_year > start_year");
  return growth_and_cagr(count(start_year), count(end_year), end_year - start_year);
}

double activity_index(const ActivityIndexInput& in) {
  if (in.topic_total <= 0 || in.actor_all_count <= 0 || in.all_total <= 0) {
    throw std::invalid_argument("activity index: denominators must be positive");
  }
  if (in.actor_topic_count < 0 || in.actor_topic_count > in.actor_all_count ||
      in.actor_topic_count > in.topic_total || in.actor_all_count > in.all_total) {
    throw std::invalid_argument("activity index: counts violate subset ordering");
  }
  // Cross-multiplied in exact integers so equal shares give exactly 1.
  const __int128 num = static_cast<__int128>(in.actor_topic_count) * in.all_total;
  const __int128 den = static_cast<__int128>(in.topic_total) * in.actor_all_count;
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

std::string_view to_string(ActorKind k) {
  switch (k) {
    case ActorKind::institution: return "institution";
    case ActorKind::country: return "country";
    case ActorKind::continent: return "continent";
  }
  return "institution";
}

std::optional<ActorKind> parse_actor_kind(std::string_view s) {
  for (auto k : {ActorKind::institution, ActorKind::country, ActorKind::continent}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<std::int64_t> ExternalTotals::lookup(ActorKind kind, const std::string& id) const {
  auto it = counts.find({kind, id});
  if (it == counts.end()) return std::nullopt;
  return it->second;
}

ExternalTotals parse_external_totals(std::istream& in) {
  ExternalTotals t;
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row) || row.size() != 2 || row[0] != "all_total") {
    throw InputError("external totals: first row must be 'all_total,<count>'");
  }
  t.all_total = parse_count(row[1], "external totals line 1");
  if (t.all_total <= 0) throw InputError("external totals: all_total must be positive");
  if (!reader.next(row) || row != std::vector<std::string>{"actor_kind", "actor_id", "all_count"}) {
    throw InputError("external totals: second row must be 'actor_kind,actor_id,all_count'");
  }
  while (reader.next(row)) {
    const std::string where = "external totals line " + std::to_string(reader.line());
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 3) throw InputError(where + ": expected 3 fields");
    auto kind = parse_actor_kind(row[0]);
    if (!kind) throw InputError(where + ": unknown actor_kind '" + row[0] + "'");
    t.counts[{*kind, row[1]}] = parse_count(row[2], where);
  }
  return t;
}

ExternalTotals load_external_totals(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read external totals file " + path.string());
  return parse_external_totals(in);
}

ActorTable actor_table(const PubIdSet& set, const Corpus& corpus, ActorKind kind, YearRange period,
                       const ExternalTotals* totals, std::int64_t min_count) {
  std::map<std::string, std::int64_t> counts;
  std::map<std::string, std::string> names;
  std::int64_t period_total = 0;
  for (const auto& id : set) {
    const auto* rec = corpus.find(id);
    if (!rec || !period.contains(rec->year)) continue;
    ++period_total;
    for (auto& actor : actor_ids(*rec, kind)) ++counts[actor];
    if (kind == ActorKind::institution) {
      for (const auto& a : rec->affiliations) names.emplace(a.org_id, a.org_name);
    }
  }

  ActorTable table;
  for (const auto& [actor, n] : counts) {
    ActorRow row;
    row.actor_id = actor;
    row.actor_name = kind == ActorKind::institution ? names[actor] : actor;
    row.actor_kind = kind;
    row.period = period;
    row.topic_count = n;
    row.period_total = period_total;
    if (totals) {
      if (auto all = totals->lookup(kind, actor)) {
        try {
          row.activity_index = activity_index({n, period_total, *all, totals->all_total});
        } catch (const std::invalid_argument&) {
          row.activity_index.reset();
        }
      }
    }
    table.raw.push_back(std::move(row));
  }
  std::sort(table.raw.begin(), table.raw.end(), [](const ActorRow& a, const ActorRow& b) {
    if (a.topic_count != b.topic_count) return a.topic_count > b.topic_count;
    return a.actor_id < b.actor_id;
  });
  for (const auto& row : table.raw) {
    if (row.topic_count >= min_count) table.ranked.push_back(row);
  }
  return table;
}

std::vector<std::pair<YearRange, PubIdSet>> period_blocks(const PubIdSet& set, const Corpus& corpus,
                                                          YearRange range, int block_len) {
  if (block_len < 1) throw std::invalid_argument("block_len must be >= 1");
  std::vector<std::pair<YearRange, PubIdSet>> blocks;
  for (int lo = range.lo; lo <= range.hi; lo += block_len) {
    blocks.emplace_back(YearRange{lo, std::min(range.hi, lo + block_len - 1)}, PubIdSet{});
  }
  for (const auto& id : set) {
    const auto* rec = corpus.find(id);
    if (!rec || !range.contains(rec->year)) continue;
    blocks[static_cast<std::size_t>((rec->year - range.lo) / block_len)].second.insert(id);
  }
  return blocks;
}

}  // namespace scimetrics

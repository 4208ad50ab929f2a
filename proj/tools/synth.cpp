#include "synth.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace scimetrics::synth {
namespace {

struct Org {
  std::string id;
  std::string name;
  OrgType type;
  std::string country;
};

const std::array<std::array<const char*, 6>, 7> kTopics = {{
    {"maternal health", "child mortality", "immunization", "malaria", "nutrition", "stunting"},
    {"poverty", "income", "microfinance", "inequality", "social protection", "cash transfers"},
    {"education", "primary school", "literacy", "gender", "enrolment", "teachers"},
    {"water", "sanitation", "hygiene", "urban slums", "drinking water", "diarrhoea"},
    {"climate change", "biodiversity", "forests", "energy", "agriculture", "food security"},
    {"hiv", "tuberculosis", "aids", "antiretroviral therapy", "prevention", "epidemiology"},
    {"development aid", "governance", "globalization", "public policy", "partnerships", "monitoring"},
}};

// Terms with a pronounced rise in a few years; picked up by burst detection.
struct Trend {
  const char* term;
  int from;
  int to;
};
const std::array<Trend, 4> kTrends = {{
    {"ebola", 2014, 2016},
    {"sustainability", 2012, 2017},
    {"universal health coverage", 2010, 2013},
    {"village health workers", 2005, 2008},
}};

const std::array<const char*, 16> kCountries = {"US", "GB", "DE", "FR", "ES", "IT", "CN", "IN",
                                                "JP", "BR", "MX", "ZA", "NG", "KE", "AU", "NZ"};

const std::array<const char*, 10> kFiller = {"analysis", "evidence", "study", "outcomes", "trends",
                                             "review", "survey", "impact", "assessment", "progress"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 gen_;
};

std::vector<Org> make_orgs(std::size_t n, Rng& rng) {
  static const std::array<OrgType, 10> types = {OrgType::HEI, OrgType::HEI,      OrgType::HEI,
                                                OrgType::HEI, OrgType::RC,       OrgType::RC,
                                                OrgType::GOV, OrgType::HOSPITAL, OrgType::NGO,
                                                OrgType::COMPANY};
  std::vector<Org> orgs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto type = types[i % types.size()];
    const char* kind = type == OrgType::HEI ? "University" : type == OrgType::RC ? "Research Institute"
                       : type == OrgType::GOV ? "Ministry" : type == OrgType::HOSPITAL ? "Hospital"
                       : type == OrgType::NGO ? "Foundation" : "Consulting";
    orgs.push_back({fmt::format("ORG{:04}", i + 1), fmt::format("{} {}", kind, i + 1), type,
                    kCountries[rng.below(kCountries.size())]});
  }
  return orgs;
}

int draw_year(const Options& o, Rng& rng) {
  // Linearly increasing density over the span.
  const int span = o.year_hi - o.year_lo + 1;
  const auto total = static_cast<std::size_t>(span) * static_cast<std::size_t>(span + 1) / 2;
  auto r = rng.below(total);
  for (int k = 0; k < span; ++k) {
    const auto w = static_cast<std::size_t>(k + 1);
    if (r < w) return o.year_lo + k;
    r -= w;
  }
  return o.year_hi;
}

}  // namespace

Output generate(const Options& o) {
  Rng rng(o.seed);
  const auto orgs = make_orgs(std::max<std::size_t>(o.orgs, 10), rng);
  std::vector<const Org*> heis;
  for (const auto& org : orgs) {
    if (org.type == OrgType::HEI) heis.push_back(&org);
  }

  const std::size_t seeded = std::min(o.seeded, o.records);
  std::vector<int> years(o.records);
  for (auto& y : years) y = draw_year(o, rng);
  for (std::size_t i = 0; i < seeded; ++i) {
    years[i] = o.range_lo + static_cast<int>(rng.below(static_cast<std::size_t>(o.range_hi - o.range_lo + 1)));
  }
  // Which positions are seeded, spread over the corpus.
  std::vector<bool> is_seeded(o.records, false);
  for (std::size_t i = 0; i < seeded; ++i) is_seeded[i] = true;
  for (std::size_t i = o.records; i > 1; --i) {
    const auto j = rng.below(i);
    std::swap(years[i - 1], years[j]);
    const bool tmp = is_seeded[i - 1];
    is_seeded[i - 1] = is_seeded[j];
    is_seeded[j] = tmp;
  }
  std::vector<std::size_t> order(o.records);
  for (std::size_t i = 0; i < o.records; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return years[a] < years[b]; });

  Output out;
  out.records.reserve(o.records);
  std::vector<std::size_t> seeded_pos;
  for (std::size_t pos = 0; pos < o.records; ++pos) {
    const auto src = order[pos];
    PublicationRecord r;
    r.pub_id = fmt::format("P{:06}", pos + 1);
    r.year = years[src];
    const auto topic = rng.below(kTopics.size());
    const auto& words = kTopics[topic];

    std::set<std::string> kw;
    const auto n_kw = 2 + rng.below(3);
    while (kw.size() < n_kw) kw.insert(words[rng.below(words.size())]);
    if (rng.chance(0.3)) {
      const auto& other = kTopics[rng.below(kTopics.size())];
      kw.insert(other[rng.below(other.size())]);
    }
    for (const auto& t : kTrends) {
      if (r.year >= t.from && r.year <= t.to ? rng.chance(0.45) : rng.chance(0.02)) kw.insert(t.term);
    }
    std::vector<std::string> kws(kw.begin(), kw.end());
    for (std::size_t k = 0; k < kws.size(); ++k) {
      (k % 2 == 0 ? r.author_keywords : r.index_keywords).push_back(kws[k]);
    }

    const std::string focus = kws[rng.below(kws.size())];
    const char* filler = kFiller[rng.below(kFiller.size())];
    if (is_seeded[src]) {
      r.title = rng.chance(0.5)
                    ? fmt::format("The Millennium Development Goals and {}: an {}", focus, filler)
                    : fmt::format("Progress towards the millennium development goal on {}", focus);
      r.abstract = fmt::format("We examine {} in the context of the MDG agenda ({}).", focus, filler);
      if (rng.chance(0.3)) r.author_keywords.push_back("MDGs");
    } else {
      r.title = fmt::format("{} of {} in low- and middle-income countries", filler, focus);
      r.abstract = fmt::format("This {} reports {} and {} data for {}.", filler, focus,
                               kws.front(), r.year);
    }

    // References to earlier records, with extra weight on seeded ones.
    if (pos > 0) {
      const auto n_refs = rng.below(5);
      std::set<std::size_t> refs;
      for (std::size_t k = 0; k < n_refs; ++k) refs.insert(rng.below(pos));
      if (!seeded_pos.empty() && rng.chance(0.25)) refs.insert(seeded_pos[rng.below(seeded_pos.size())]);
      for (auto ref : refs) r.references.push_back(fmt::format("P{:06}", ref + 1));
    }
    if (rng.chance(0.15)) r.references.push_back(fmt::format("EXT{:05}", rng.below(o.records / 4 + 10)));

    if (is_seeded[src]) {
      const auto* h = heis[rng.below(heis.size())];
      r.affiliations.push_back({h->id, h->name, h->type, h->country, Continent::Europe});
    }
    if (!rng.chance(0.03)) {
      const auto n_aff = (is_seeded[src] ? 0 : 1) + rng.below(3);
      std::set<std::string> seen;
      for (const auto& a : r.affiliations) seen.insert(a.org_id);
      for (std::size_t k = 0; k < n_aff; ++k) {
        const auto& org = orgs[rng.below(orgs.size())];
        if (!seen.insert(org.id).second) continue;
        r.affiliations.push_back({org.id, org.name, org.type, org.country, Continent::Europe});
      }
    }
    for (auto& a : r.affiliations) a.continent = *continent_of(a.country);

    if (is_seeded[src]) {
      seeded_pos.push_back(pos);
      out.seeded_ids.push_back(r.pub_id);
    }
    out.records.push_back(std::move(r));
  }

  // External database totals: every actor's corpus count scaled up.
  std::map<std::string, std::int64_t> inst, country, continent;
  for (const auto& r : out.records) {
    std::set<std::string> i_seen, c_seen, k_seen;
    for (const auto& a : r.affiliations) {
      if (i_seen.insert(a.org_id).second) ++inst[a.org_id];
      if (c_seen.insert(a.country).second) ++country[a.country];
      if (k_seen.insert(std::string(to_string(a.continent))).second) ++continent[std::string(to_string(a.continent))];
    }
  }
  std::ostringstream csv;
  csv << "all_total," << o.records * 40 << "\n";
  csv << "actor_kind,actor_id,all_count\n";
  for (const auto& [id, n] : inst) csv << "institution," << id << "," << n * (20 + static_cast<std::int64_t>(rng.below(40))) << "\n";
  for (const auto& [id, n] : country) csv << "country," << id << "," << n * (20 + static_cast<std::int64_t>(rng.below(40))) << "\n";
  for (const auto& [id, n] : continent) csv << "continent," << id << "," << n * (20 + static_cast<std::int64_t>(rng.below(40))) << "\n";
  out.external_totals_csv = csv.str();
  std::sort(out.seeded_ids.begin(), out.seeded_ids.end());
  return out;
}

}  // namespace scimetrics::synth

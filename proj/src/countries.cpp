#include "scimetrics/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace scimetrics {
namespace detail {
extern const char* const kCountryTableCsv;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const std::map<std::string, Continent, std::less<>>& country_table() {
  static const auto table = [] {
    std::map<std::string, Continent, std::less<>> t;
    std::istringstream in(detail::kCountryTableCsv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      if (!header_seen) {
        header_seen = true;
        continue;
      }
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw std::logic_error("bad country table row: " + line);
      auto cont = parse_continent(line.substr(comma + 1));
      if (!cont) throw std::logic_error("bad continent in country table: " + line);
      t.emplace(line.substr(0, comma), *cont);
    }
    return t;
  }();
  return table;
}

}  // namespace

std::string_view to_string(OrgType t) {
  switch (t) {
    case OrgType::HEI: return "HEI";
    case OrgType::RC: return "RC";
    case OrgType::GOV: return "GOV";
    case OrgType::HOSPITAL: return "HOSPITAL";
    case OrgType::NGO: return "NGO";
    case OrgType::COMPANY: return "COMPANY";
    case OrgType::OTHER: return "OTHER";
  }
  return "OTHER";
}

std::string_view to_string(Continent c) {
  switch (c) {
    case Continent::Africa: return "Africa";
    case Continent::America: return "America";
    case Continent::Asia: return "Asia";
    case Continent::Europe: return "Europe";
    case Continent::Oceania: return "Oceania";
  }
  return "Europe";
}

std::optional<OrgType> parse_org_type(std::string_view s) {
  const auto l = lower(s);
  for (auto t : {OrgType::HEI, OrgType::RC, OrgType::GOV, OrgType::HOSPITAL, OrgType::NGO,
                 OrgType::COMPANY, OrgType::OTHER}) {
    if (l == lower(to_string(t))) return t;
  }
  return std::nullopt;
}

std::optional<Continent> parse_continent(std::string_view s) {
  const auto l = lower(s);
  for (auto c : {Continent::Africa, Continent::America, Continent::Asia, Continent::Europe,
                 Continent::Oceania}) {
    if (l == lower(to_string(c))) return c;
  }
  return std::nullopt;
}

std::optional<Continent> continent_of(std::string_view country) {
  const auto& t = country_table();
  auto it = t.find(country);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

std::size_t country_table_size() { return country_table().size(); }

}  // namespace scimetrics

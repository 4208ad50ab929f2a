#include "scimetrics/pipeline.hpp"

#include "scimetrics/burst.hpp"
#include "scimetrics/citation_graph.hpp"
#include "scimetrics/cooccur.hpp"
#include "scimetrics/csv.hpp"
#include "scimetrics/delineate.hpp"
#include "scimetrics/digest.hpp"
#include "scimetrics/errors.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/graphml.hpp"
#include "scimetrics/indicators.hpp"
#include "scimetrics/interlink.hpp"
#include "scimetrics/sdg.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace scimetrics::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------- config

fs::path PipelineConfig::resolve(const std::string& p) const {
  fs::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

PipelineConfig config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  PipelineConfig c;
  c.base_dir = base_dir;
  c.corpus_path = get_or<std::string>(j, "corpus_path", "");
  if (auto f = get_or<std::string>(j, "corpus_format", ""); !f.empty()) {
    c.corpus_format = parse_corpus_format(f);
    if (!c.corpus_format) throw ConfigError("corpus_format must be 'jsonl' or 'csv'");
  }
  c.query_text = get_or<std::string>(j, "query", "");
  if (auto it = j.find("year_range"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
        !(*it)[1].is_number_integer()) {
      throw ConfigError("year_range must be [lo, hi]");
    }
    c.year_range = YearRange{(*it)[0].get<int>(), (*it)[1].get<int>()};
  }
  if (auto it = j.find("org_types"); it != j.end()) {
    if (it->is_string() && it->get<std::string>() == "any") {
      c.org_types = OrgTypeFilter::any();
    } else if (it->is_array()) {
      std::set<OrgType> types;
      for (const auto& v : *it) {
        auto t = v.is_string() ? parse_org_type(v.get<std::string>()) : std::nullopt;
        if (!t) throw ConfigError("org_types: unknown organization type " + v.dump());
        types.insert(*t);
      }
      c.org_types = OrgTypeFilter::of(std::move(types));
    } else {
      throw ConfigError("org_types must be \"any\" or a list of types");
    }
  }
  c.expansion_layers = get_or(j, "expansion_layers", c.expansion_layers);
  c.min_occurrence = get_or(j, "min_occurrence", c.min_occurrence);
  if (auto it = j.find("cluster"); it != j.end()) {
    c.cluster.resolution = get_or(*it, "resolution", c.cluster.resolution);
    c.cluster.min_cluster_size = get_or(*it, "min_cluster_size", c.cluster.min_cluster_size);
    c.cluster.seed = get_or(*it, "seed", c.cluster.seed);
    c.cluster.restarts = get_or(*it, "restarts", c.cluster.restarts);
  }
  if (auto it = j.find("burst"); it != j.end()) {
    c.burst.s = get_or(*it, "s", c.burst.s);
    c.burst.gamma = get_or(*it, "gamma", c.burst.gamma);
    c.burst.top_k = get_or(*it, "top_k", c.burst.top_k);
  }
  c.glossary_path = get_or<std::string>(j, "glossary_path", "");
  c.scan_text = get_or(j, "scan_text", c.scan_text);
  c.external_totals_path = get_or<std::string>(j, "external_totals_path", "");
  c.ai_display_multiplier = get_or(j, "ai_display_multiplier", c.ai_display_multiplier);
  c.block_len = get_or(j, "block_len", c.block_len);
  if (auto it = j.find("actor_min_count"); it != j.end()) {
    c.institution_min_count = get_or(*it, "institution", c.institution_min_count);
    c.country_min_count = get_or(*it, "country", c.country_min_count);
    c.continent_min_count = get_or(*it, "continent", c.continent_min_count);
  }
  c.top_terms = get_or(j, "top_terms", c.top_terms);
  if (auto out = get_or<std::string>(j, "output_dir", ""); !out.empty()) c.output_dir = c.resolve(out);
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  auto base = path.parent_path();
  return config_from_json(j, base.empty() ? fs::path(".") : base);
}

ordered_json config_to_json(const PipelineConfig& c) {
  ordered_json j;
  j["corpus_path"] = c.corpus_path;
  j["corpus_format"] = c.corpus_format ? (*c.corpus_format == CorpusFormat::csv ? "csv" : "jsonl") : "";
  j["query"] = c.query_text;
  j["year_range"] = {c.year_range.lo, c.year_range.hi};
  if (c.org_types.is_any()) {
    j["org_types"] = "any";
  } else {
    auto& arr = j["org_types"] = ordered_json::array();
    for (auto t : c.org_types.types()) arr.push_back(std::string(to_string(t)));
  }
  j["expansion_layers"] = c.expansion_layers;
  j["min_occurrence"] = c.min_occurrence;
  j["cluster"] = {{"resolution", c.cluster.resolution},
                  {"min_cluster_size", c.cluster.min_cluster_size},
                  {"seed", c.cluster.seed},
                  {"restarts", c.cluster.restarts}};
  j["burst"] = {{"s", c.burst.s}, {"gamma", c.burst.gamma}, {"top_k", c.burst.top_k}};
  j["glossary_path"] = c.glossary_path;
  j["scan_text"] = c.scan_text;
  j["external_totals_path"] = c.external_totals_path;
  j["ai_display_multiplier"] = c.ai_display_multiplier;
  j["block_len"] = c.block_len;
  j["actor_min_count"] = {{"institution", c.institution_min_count},
                          {"country", c.country_min_count},
                          {"continent", c.continent_min_count}};
  j["top_terms"] = c.top_terms;
  return j;
}

void validate(const PipelineConfig& c) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (c.corpus_path.empty()) fail("corpus_path is required");
  if (c.query_text.empty()) fail("query is required");
  try {
    parse_query(c.query_text);
  } catch (const QueryParseError& e) {
    fail(std::string("query: ") + e.what());
  }
  if (c.year_range.lo > c.year_range.hi) fail("year_range: lo > hi");
  if (c.year_range.lo < kMinYear || c.year_range.hi > kMaxYear) fail("year_range outside [1900, 2100]");
  if (c.expansion_layers < 0 || c.expansion_layers > 10) fail("expansion_layers must be in [0, 10]");
  if (c.min_occurrence < 1) fail("min_occurrence must be >= 1");
  if (!(c.cluster.resolution >= 0)) fail("cluster.resolution must be >= 0");
  if (c.cluster.min_cluster_size < 1) fail("cluster.min_cluster_size must be >= 1");
  if (c.cluster.restarts < 1 || c.cluster.restarts > 1000) fail("cluster.restarts must be in [1, 1000]");
  if (!(c.burst.s > 1)) fail("burst.s must be > 1");
  if (!(c.burst.gamma >= 0)) fail("burst.gamma must be >= 0");
  if (c.burst.top_k < 1) fail("burst.top_k must be >= 1");
  if (!(c.ai_display_multiplier > 0)) fail("ai_display_multiplier must be > 0");
  if (c.block_len < 1) fail("block_len must be >= 1");
  if (c.institution_min_count < 0 || c.country_min_count < 0 || c.continent_min_count < 0) {
    fail("actor_min_count values must be >= 0");
  }
  if (c.top_terms < 1) fail("top_terms must be >= 1");
}

// ---------------------------------------------------------------- stages

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::delineate: return "delineate";
    case Stage::indicators: return "indicators";
    case Stage::cooccur: return "cooccur";
    case Stage::burst: return "burst";
    case Stage::classify: return "classify";
    case Stage::interlink: return "interlink";
    case Stage::report: return "report";
  }
  return "report";
}

std::string_view output_subdir(Stage s) {
  switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::delineate: return "delineation";
    case Stage::indicators: return "indicators";
    case Stage::cooccur: return "cooccur";
    case Stage::burst: return "burst";
    case Stage::classify: return "sdg";
    case Stage::interlink: return "interlink";
    case Stage::report: return "";
  }
  return "";
}

namespace {

struct MissingArtifact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  csv::write_row(out, header);
  for (const auto& r : rows) csv::write_row(out, r);
  return out.str();
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }
std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

Table read_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  csv::Reader reader(in);
  Table t;
  if (!reader.next(t.header)) return t;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != t.header.size()) {
      throw std::runtime_error(path.string() + " line " + std::to_string(reader.line()) +
                               ": wrong field count");
    }
    t.rows.push_back(row);
  }
  return t;
}

std::string str(std::int64_t v) { return std::to_string(v); }

class Session {
 public:
  Session(const PipelineConfig& cfg, const RunOptions& opts) : cfg_(cfg), opts_(opts) {}

  void run(Stage s) {
    try {
      switch (s) {
        case Stage::ingest: ingest(); break;
        case Stage::delineate: delineate(); break;
        case Stage::indicators: indicators(); break;
        case Stage::cooccur: cooccur(); break;
        case Stage::burst: burst(); break;
        case Stage::classify: classify(); break;
        case Stage::interlink: interlink(); break;
        case Stage::report: report(); break;
      }
    } catch (const StageError&) {
      throw;
    } catch (const InputError& e) {
      throw StageError(std::string(to_string(s)), e.what(), kExitInput);
    } catch (const GlossaryError& e) {
      throw StageError(std::string(to_string(s)), e.what(), kExitInput);
    } catch (const std::exception& e) {
      throw StageError(std::string(to_string(s)), e.what(), kExitStage);
    }
  }

 private:
  fs::path dir(Stage s) const { return cfg_.output_dir / output_subdir(s); }

  fs::path require(Stage producer, const std::string& file, Stage consumer) const {
    auto p = dir(producer) / file;
    if (!fs::exists(p)) {
      throw StageError(std::string(to_string(consumer)),
                       "missing " + (fs::path(output_subdir(producer)) / file).string() +
                           "; run the '" + std::string(to_string(producer)) + "' stage first",
                       kExitStage);
    }
    return p;
  }

  // ---- manifest

  void update_manifest(Stage s, json info, const std::vector<std::pair<std::string, fs::path>>& inputs) {
    const auto path = cfg_.output_dir / "manifest.json";
    json m = json::object();
    if (fs::exists(path)) {
      std::ifstream in(path, std::ios::binary);
      try {
        m = json::parse(in);
      } catch (const json::exception&) {
        m = json::object();
      }
    }
    const auto cfg_json = config_to_json(cfg_);
    m["schema_version"] = kSchemaVersion;
    m["config_sha256"] = sha256_hex(cfg_json.dump());
    m["config"] = json::parse(cfg_json.dump());
    if (!m.contains("inputs")) m["inputs"] = json::object();
    for (const auto& [name, p] : inputs) {
      m["inputs"][name] = {{"path", name == "corpus"            ? cfg_.corpus_path
                                    : name == "glossary"        ? cfg_.glossary_path
                                                                : cfg_.external_totals_path},
                           {"sha256", sha256_file(p)}};
    }
    if (!m.contains("stages")) m["stages"] = json::object();
    m["stages"][std::string(to_string(s))] = std::move(info);
    write_file(path, json_text(m));
  }

  // ---- cached inputs

  const Corpus& corpus(Stage consumer) {
    if (!corpus_) {
      auto p = require(Stage::ingest, "corpus.jsonl", consumer);
      auto loaded = load_corpus(p, CorpusFormat::jsonl);
      if (!loaded.report.skipped.empty()) {
        throw std::runtime_error("ingest/corpus.jsonl is corrupt; rerun the 'ingest' stage");
      }
      corpus_ = std::move(loaded.corpus);
    }
    return *corpus_;
  }

  const DatasetLabels& labels(Stage consumer) {
    if (!labels_) {
      const auto prov = read_table(require(Stage::delineate, "provenance.csv", consumer));
      const auto fin = read_table(require(Stage::delineate, "final.csv", consumer));
      DatasetLabels l;
      for (const auto& row : prov.rows) {
        auto p = parse_provenance(row.at(1));
        if (!p) throw std::runtime_error("delineation/provenance.csv: bad provenance " + row[1]);
        l.provenance.emplace(row[0], *p);
        l.expanded.insert(row[0]);
        if (*p == Provenance::core) l.core.insert(row[0]);
      }
      for (const auto& row : fin.rows) l.final.insert(row.at(0));
      labels_ = std::move(l);
    }
    return *labels_;
  }

  const CitationGraph& graph(Stage consumer) {
    if (!graph_) graph_ = CitationGraph::build(corpus(consumer));
    return *graph_;
  }

  // ---- ingest

  void ingest() {
    const auto src = cfg_.resolve(cfg_.corpus_path);
    const auto format = cfg_.corpus_format.value_or(corpus_format_from_path(src));
    auto loaded = load_corpus(src, format);

    std::ostringstream jsonl;
    write_jsonl(jsonl, loaded.corpus);
    write_file(dir(Stage::ingest) / "corpus.jsonl", jsonl.str());

    std::vector<std::vector<std::string>> skipped;
    for (const auto& s : loaded.report.skipped) {
      skipped.push_back({std::to_string(s.line), s.pub_id, s.reason});
    }
    write_file(dir(Stage::ingest) / "load_report.csv", csv_text({"line", "pub_id", "reason"}, skipped));

    const auto g = CitationGraph::build(loaded.corpus);
    json summary = {{"schema_version", kSchemaVersion},
                    {"records", loaded.corpus.size()},
                    {"skipped", loaded.report.skipped.size()},
                    {"duplicates", loaded.report.duplicates},
                    {"citation_edges", g.edge_count()},
                    {"phantom_nodes", g.phantoms().size()}};
    write_file(dir(Stage::ingest) / "summary.json", json_text(summary));
    update_manifest(Stage::ingest,
                    {{"records", loaded.corpus.size()},
                     {"skipped", loaded.report.skipped.size()},
                     {"citation_edges", g.edge_count()}},
                    {{"corpus", src}});
    corpus_ = std::move(loaded.corpus);
    graph_ = g;
  }

  // ---- delineate

  void delineate() {
    const auto& c = corpus(Stage::delineate);
    const auto query = parse_query(cfg_.query_text);
    const auto core = select_core(c, query, cfg_.year_range, opts_.threads);
    auto l = expand_direct_citations(core, graph(Stage::delineate), cfg_.expansion_layers);
    l = finalize(std::move(l), c, cfg_.year_range, cfg_.org_types);
    const auto r = l.report();

    std::vector<std::vector<std::string>> prov;
    for (const auto& [id, p] : l.provenance) prov.push_back({id, std::string(to_string(p))});
    write_file(dir(Stage::delineate) / "provenance.csv", csv_text({"pub_id", "provenance"}, prov));
    std::vector<std::vector<std::string>> fin;
    for (const auto& id : l.final) fin.push_back({id});
    write_file(dir(Stage::delineate) / "final.csv", csv_text({"pub_id"}, fin));

    json card = {{"core", r.core},         {"cited", r.cited}, {"citing", r.citing},
                 {"expanded", r.expanded}, {"final", r.final}, {"phantoms", r.phantoms}};
    ordered_json report;
    report["schema_version"] = kSchemaVersion;
    report["query"] = cfg_.query_text;
    report["year_range"] = {cfg_.year_range.lo, cfg_.year_range.hi};
    report["expansion_layers"] = cfg_.expansion_layers;
    report["cardinalities"] = ordered_json{{"core", r.core},         {"cited", r.cited},
                                           {"citing", r.citing},     {"expanded", r.expanded},
                                           {"final", r.final},       {"phantoms", r.phantoms}};
    write_file(dir(Stage::delineate) / "report.json", json_text(report));
    update_manifest(Stage::delineate, card, {});
    labels_ = std::move(l);
  }

  // ---- indicators

  void indicators() {
    const auto& c = corpus(Stage::indicators);
    const auto& l = labels(Stage::indicators);
    const auto range = cfg_.year_range;

    const auto fin_series = yearly_counts(l.final, c, range);
    const auto exp_series = yearly_counts(l.expanded, c, range);
    std::set<int> years;
    for (const auto& [y, n] : fin_series) years.insert(y);
    for (const auto& [y, n] : exp_series) years.insert(y);
    std::vector<std::vector<std::string>> yearly;
    for (int y : years) {
      auto get = [y](const YearlySeries& s) {
        auto it = s.find(y);
        return it == s.end() ? std::int64_t{0} : it->second;
      };
      yearly.push_back({std::to_string(y), str(get(exp_series)), str(get(fin_series))});
    }
    write_file(dir(Stage::indicators) / "yearly_counts.csv",
               csv_text({"year", "expanded", "final"}, yearly));

    std::optional<ExternalTotals> totals;
    std::vector<std::pair<std::string, fs::path>> inputs;
    if (!cfg_.external_totals_path.empty()) {
      const auto p = cfg_.resolve(cfg_.external_totals_path);
      totals = load_external_totals(p);
      inputs.emplace_back("external_totals", p);
    }

    std::vector<YearRange> periods{range};
    const auto blocks = period_blocks(l.final, c, range, cfg_.block_len);
    std::vector<std::vector<std::string>> period_rows;
    for (const auto& [p, ids] : blocks) {
      if (p != range) periods.push_back(p);
      period_rows.push_back({p.label(), str(static_cast<std::int64_t>(ids.size()))});
    }
    write_file(dir(Stage::indicators) / "periods.csv", csv_text({"period", "publications"}, period_rows));

    auto ai_text = [&](const ActorRow& row) {
      return row.activity_index ? fmtnum::ratio_4dp(*row.activity_index * cfg_.ai_display_multiplier)
                                : std::string("NA");
    };
    std::vector<std::vector<std::string>> raw_rows, ranked_rows;
    ordered_json tables = ordered_json::array();
    for (auto kind : {ActorKind::institution, ActorKind::country, ActorKind::continent}) {
      const auto min_count = kind == ActorKind::institution ? cfg_.institution_min_count
                             : kind == ActorKind::country   ? cfg_.country_min_count
                                                            : cfg_.continent_min_count;
      for (const auto& period : periods) {
        const auto t = actor_table(l.final, c, kind, period, totals ? &*totals : nullptr, min_count);
        for (const auto& row : t.raw) {
          raw_rows.push_back({std::string(to_string(kind)), period.label(), row.actor_id,
                              row.actor_name, str(row.topic_count), str(row.period_total),
                              fmtnum::percent_2dp(row.topic_count, row.period_total), ai_text(row)});
        }
        ordered_json rows = ordered_json::array();
        std::size_t rank = 0;
        for (const auto& row : t.ranked) {
          ++rank;
          ranked_rows.push_back({std::string(to_string(kind)), period.label(), std::to_string(rank),
                                 row.actor_id, row.actor_name, str(row.topic_count),
                                 fmtnum::percent_2dp(row.topic_count, row.period_total),
                                 ai_text(row)});
          rows.push_back(ordered_json{{"rank", rank},
                                      {"actor_id", row.actor_id},
                                      {"actor_name", row.actor_name},
                                      {"topic_count", row.topic_count},
                                      {"topic_share_pct", fmtnum::percent_2dp(row.topic_count, row.period_total)},
                                      {"activity_index", ai_text(row)}});
        }
        tables.push_back(ordered_json{{"actor_kind", to_string(kind)},
                                      {"period", period.label()},
                                      {"min_count", min_count},
                                      {"rows", std::move(rows)}});
      }
    }
    write_file(dir(Stage::indicators) / "actors.csv",
               csv_text({"actor_kind", "period", "actor_id", "actor_name", "topic_count",
                         "period_total", "topic_share_pct", "activity_index"},
                        raw_rows));
    write_file(dir(Stage::indicators) / "actors_ranked.csv",
               csv_text({"actor_kind", "period", "rank", "actor_id", "actor_name", "topic_count",
                         "topic_share_pct", "activity_index"},
                        ranked_rows));
    ordered_json actors;
    actors["schema_version"] = kSchemaVersion;
    actors["ai_display_multiplier"] = cfg_.ai_display_multiplier;
    actors["tables"] = std::move(tables);
    write_file(dir(Stage::indicators) / "actors.json", json_text(actors));

    ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["final_publications"] = l.final.size();
    summary["start_year"] = range.lo;
    summary["end_year"] = range.hi;
    summary["start_count"] = fin_series.at(range.lo);
    summary["end_count"] = fin_series.at(range.hi);
    try {
      const auto g = growth_and_cagr(fin_series, range.lo, range.hi);
      summary["growth_pct"] = fmtnum::percent_2dp(g.growth_pct);
      summary["cagr_pct"] = fmtnum::percent_2dp(g.cagr_pct);
    } catch (const std::exception& e) {
      summary["growth_pct"] = nullptr;
      summary["cagr_pct"] = nullptr;
      summary["growth_note"] = e.what();
    }
    write_file(dir(Stage::indicators) / "summary.json", json_text(summary));
    update_manifest(Stage::indicators,
                    {{"final_publications", l.final.size()},
                     {"actor_rows", raw_rows.size()},
                     {"ranked_rows", ranked_rows.size()}},
                    inputs);
  }

  // ---- cooccur

  void cooccur() {
    const auto& c = corpus(Stage::cooccur);
    const auto& l = labels(Stage::cooccur);
    const auto net = association_strength(build_network(l.final, c, cfg_.min_occurrence));
    ClusteringOptions opts;
    opts.resolution = cfg_.cluster.resolution;
    opts.min_cluster_size = static_cast<std::size_t>(cfg_.cluster.min_cluster_size);
    opts.seed = cfg_.cluster.seed;
    opts.restarts = cfg_.cluster.restarts;
    opts.threads = opts_.threads;
    const auto clustering = cluster_network(net, opts);
    const auto summaries = cluster_summary(net, clustering, l.final, c, l.core,
                                           static_cast<std::size_t>(cfg_.top_terms));

    std::vector<std::vector<std::string>> nodes, edges, clusters;
    graphml::Document doc;
    doc.keys = {{"label", "node", "label", "string"},
                {"occurrence", "node", "occurrence", "int"},
                {"cluster", "node", "cluster", "int"},
                {"count", "edge", "cooccurrence", "int"},
                {"weight", "edge", "weight", "double"}};
    for (std::uint32_t t = 0; t < net.terms.size(); ++t) {
      const auto cl = std::to_string(clustering.membership[t] + 1);
      nodes.push_back({net.terms[t], str(net.occurrence[t]), cl});
      doc.nodes.push_back({"n" + std::to_string(t),
                           {{"label", net.terms[t]}, {"occurrence", str(net.occurrence[t])}, {"cluster", cl}}});
    }
    for (const auto& e : net.edges) {
      edges.push_back({net.terms[e.i], net.terms[e.j], str(e.count), fmtnum::ratio_4dp(e.weight),
                       std::to_string(clustering.membership[e.i] + 1),
                       std::to_string(clustering.membership[e.j] + 1)});
      doc.edges.push_back({"n" + std::to_string(e.i), "n" + std::to_string(e.j),
                           {{"count", str(e.count)}, {"weight", fmtnum::ratio_4dp(e.weight)}}});
    }
    for (const auto& s : summaries) {
      std::string top;
      for (const auto& [term, n] : s.top_terms) {
        if (!top.empty()) top += "; ";
        top += term + " (" + str(n) + ")";
      }
      clusters.push_back({std::to_string(s.cluster_id + 1), str(s.n_nodes), str(s.n_publications),
                          str(s.core_paper_count), fmtnum::percent_2dp(s.core_paper_count, s.core_total),
                          fmtnum::percent_2dp(s.core_paper_count, s.n_publications),
                          fmtnum::ratio_4dp(s.link_avg), fmtnum::ratio_4dp(s.year_avg), top,
                          s.degenerate ? "1" : "0"});
    }
    write_file(dir(Stage::cooccur) / "nodes.csv", csv_text({"term", "occurrence", "cluster"}, nodes));
    write_file(dir(Stage::cooccur) / "edges.csv",
               csv_text({"term_i", "term_j", "c_ij", "a_ij", "cluster_i", "cluster_j"}, edges));
    write_file(dir(Stage::cooccur) / "clusters.csv",
               csv_text({"cluster", "n_nodes", "n_publications", "core_papers", "core_paper_pct",
                         "core_fraction_pct", "link_avg", "year_avg", "top_terms", "degenerate"},
                        clusters));
    std::ostringstream gml;
    graphml::write(gml, doc);
    write_file(dir(Stage::cooccur) / "network.graphml", gml.str());

    ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["publications"] = net.n_publications;
    summary["min_occurrence"] = cfg_.min_occurrence;
    summary["items"] = net.terms.size();
    summary["links"] = net.total_links();
    summary["link_strength"] = net.total_link_strength();
    summary["clusters"] = clustering.n_clusters;
    summary["modularity"] = fmtnum::ratio_4dp(clustering.quality);
    summary["link_avg_definition"] = "term-pair links of network terms per publication";
    write_file(dir(Stage::cooccur) / "summary.json", json_text(summary));
    update_manifest(Stage::cooccur,
                    {{"items", net.terms.size()},
                     {"links", net.total_links()},
                     {"link_strength", net.total_link_strength()},
                     {"clusters", clustering.n_clusters}},
                    {});
  }

  // ---- burst

  void burst() {
    const auto nodes_path = require(Stage::cooccur, "nodes.csv", Stage::burst);
    const auto& c = corpus(Stage::burst);
    const auto& l = labels(Stage::burst);
    std::vector<std::string> terms;
    for (const auto& row : read_table(nodes_path).rows) terms.push_back(row.at(0));
    const auto bursts = top_bursts(l.final, c, terms, cfg_.year_range,
                                   static_cast<std::size_t>(cfg_.burst.top_k),
                                   BurstParams{cfg_.burst.s, cfg_.burst.gamma}, opts_.threads);
    std::vector<std::vector<std::string>> rows;
    for (const auto& b : bursts) {
      rows.push_back({b.term, fmtnum::ratio_4dp(b.strength), std::to_string(b.begin), std::to_string(b.end)});
    }
    write_file(dir(Stage::burst) / "bursts.csv", csv_text({"term", "strength", "begin", "end"}, rows));
    ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["terms_scanned"] = terms.size();
    summary["rows"] = bursts.size();
    summary["s"] = cfg_.burst.s;
    summary["gamma"] = cfg_.burst.gamma;
    summary["transition_cost"] = "gamma * ln(years)";
    write_file(dir(Stage::burst) / "summary.json", json_text(summary));
    update_manifest(Stage::burst, {{"terms_scanned", terms.size()}, {"rows", bursts.size()}}, {});
  }

  // ---- classify

  void classify() {
    const auto& c = corpus(Stage::classify);
    const auto& l = labels(Stage::classify);
    if (cfg_.glossary_path.empty()) throw InputError("glossary_path is not set");
    const auto gpath = cfg_.resolve(cfg_.glossary_path);
    const auto glossary = load_glossary(gpath);
    const auto assignments = classify_all(l.final, c, glossary, cfg_.scan_text, opts_.threads);

    std::vector<std::vector<std::string>> rows;
    for (const auto& a : assignments) rows.push_back({a.pub_id, a.sdgs.to_string()});
    write_file(dir(Stage::classify) / "assignments.csv", csv_text({"pub_id", "sdgs"}, rows));

    const auto prev_cls = prevalence(assignments, Denominator::classified);
    const auto prev_all = prevalence(assignments, Denominator::all);
    std::vector<std::vector<std::string>> prev_rows;
    for (int s = 1; s <= kSdgCount; ++s) {
      prev_rows.push_back({std::to_string(s), str(prev_cls.counts[static_cast<std::size_t>(s - 1)]),
                           prev_cls.pct(s), prev_all.pct(s)});
    }
    write_file(dir(Stage::classify) / "prevalence.csv",
               csv_text({"sdg", "publications", "pct_of_classified", "pct_of_all"}, prev_rows));

    const auto tables = continent_tables(assignments, c);
    std::vector<std::string> header{"sdg"};
    for (std::size_t k = 0; k < kContinentCount; ++k) {
      header.emplace_back(to_string(static_cast<Continent>(k)));
    }
    std::vector<std::vector<std::string>> counts_rows, left, right;
    for (int s = 1; s <= kSdgCount; ++s) {
      std::vector<std::string> cr{std::to_string(s)}, lr{std::to_string(s)}, rr{std::to_string(s)};
      for (std::size_t k = 0; k < kContinentCount; ++k) {
        const auto cont = static_cast<Continent>(k);
        cr.push_back(str(tables.counts[static_cast<std::size_t>(s - 1)][k]));
        lr.push_back(tables.row_pct(s, cont));
        rr.push_back(tables.column_pct(s, cont));
      }
      counts_rows.push_back(std::move(cr));
      left.push_back(std::move(lr));
      right.push_back(std::move(rr));
    }
    write_file(dir(Stage::classify) / "continent_counts.csv", csv_text(header, counts_rows));
    write_file(dir(Stage::classify) / "continent_contribution.csv", csv_text(header, left));
    write_file(dir(Stage::classify) / "continent_profile.csv", csv_text(header, right));

    const auto inst = institutions_per_sdg(assignments, c);
    std::vector<std::vector<std::string>> inst_rows;
    for (int s = 1; s <= kSdgCount; ++s) {
      inst_rows.push_back({std::to_string(s), str(inst.counts[static_cast<std::size_t>(s - 1)]), inst.pct(s)});
    }
    write_file(dir(Stage::classify) / "institutions_per_sdg.csv",
               csv_text({"sdg", "institutions", "pct_of_institutions"}, inst_rows));

    ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["glossary_terms"] = glossary.term_count();
    summary["publications"] = prev_cls.total;
    summary["classified"] = prev_cls.classified;
    summary["classified_pct"] = prev_cls.classified_fraction_pct();
    summary["classified_pct_denominator"] = "all publications of the final set";
    summary["prevalence_denominators"] = ordered_json{{"pct_of_classified", prev_cls.classified},
                                                      {"pct_of_all", prev_all.total}};
    summary["continent_tables_excluded_no_affiliation"] = tables.excluded_no_affiliation;
    summary["total_institutions"] = inst.total_institutions;
    summary["scan_text"] = cfg_.scan_text;
    write_file(dir(Stage::classify) / "summary.json", json_text(summary));
    update_manifest(Stage::classify,
                    {{"publications", prev_cls.total},
                     {"classified", prev_cls.classified},
                     {"glossary_terms", glossary.term_count()}},
                    {{"glossary", gpath}});
  }

  // ---- interlink

  void write_matrix(const std::string& stem, const SdgMatrix& m,
                    const std::vector<std::uint32_t>& membership) {
    std::vector<std::string> header{"sdg"};
    for (int s = 1; s <= kSdgCount; ++s) header.push_back(std::to_string(s));
    std::vector<std::vector<std::string>> rows;
    for (int s = 1; s <= kSdgCount; ++s) {
      std::vector<std::string> r{std::to_string(s)};
      for (int t = 1; t <= kSdgCount; ++t) r.push_back(str(m.at(s, t)));
      rows.push_back(std::move(r));
    }
    write_file(dir(Stage::interlink) / (stem + ".csv"), csv_text(header, rows));

    graphml::Document doc;
    doc.keys = {{"label", "node", "label", "string"},
                {"size", "node", "size", "int"},
                {"avg_year", "node", "avg_year", "double"},
                {"cluster", "node", "cluster", "int"},
                {"weight", "edge", "weight", "int"}};
    for (int s = 1; s <= kSdgCount; ++s) {
      const auto& avg = m.node_avg_year[static_cast<std::size_t>(s - 1)];
      graphml::Data data{{"label", "SDG" + std::to_string(s)},
                         {"size", str(m.node_sizes[static_cast<std::size_t>(s - 1)])}};
      if (avg) data.emplace_back("avg_year", fmtnum::ratio_4dp(*avg));
      data.emplace_back("cluster", std::to_string(membership[static_cast<std::size_t>(s - 1)] + 1));
      doc.nodes.push_back({"sdg" + std::to_string(s), std::move(data)});
    }
    for (int s = 1; s <= kSdgCount; ++s) {
      for (int t = s + 1; t <= kSdgCount; ++t) {
        if (m.at(s, t) > 0) {
          doc.edges.push_back({"sdg" + std::to_string(s), "sdg" + std::to_string(t),
                               {{"weight", str(m.at(s, t))}}});
        }
      }
    }
    std::ostringstream gml;
    graphml::write(gml, doc);
    write_file(dir(Stage::interlink) / (stem + ".graphml"), gml.str());
  }

  void interlink() {
    const auto apath = require(Stage::classify, "assignments.csv", Stage::interlink);
    const auto& c = corpus(Stage::interlink);
    const auto& l = labels(Stage::interlink);
    std::vector<SdgAssignment> assignments;
    for (const auto& row : read_table(apath).rows) {
      assignments.push_back({row.at(0), SdgSet::parse(row.at(1))});
    }
    const auto avg = sdg_avg_year(assignments, c);
    auto cocit = sdg_cocitation_matrix(assignments, graph(Stage::interlink), l.final);
    auto cocls = sdg_coclassification_matrix(assignments);
    cocit.node_avg_year = avg;
    cocls.node_avg_year = avg;
    const auto& cc = cfg_.cluster;
    const auto m_cit = cluster_sdgs(cocit, cc.resolution, cc.seed, cc.restarts);
    const auto m_cls = cluster_sdgs(cocls, cc.resolution, cc.seed, cc.restarts);
    write_matrix("cocitation", cocit, m_cit);
    write_matrix("coclassification", cocls, m_cls);

    std::vector<std::vector<std::string>> rows;
    for (int s = 1; s <= kSdgCount; ++s) {
      const auto i = static_cast<std::size_t>(s - 1);
      rows.push_back({std::to_string(s), str(cocit.node_sizes[i]),
                      avg[i] ? fmtnum::ratio_4dp(*avg[i]) : std::string("NA"),
                      std::to_string(m_cit[i] + 1), std::to_string(m_cls[i] + 1)});
    }
    write_file(dir(Stage::interlink) / "sdg_nodes.csv",
               csv_text({"sdg", "publications", "avg_year", "cluster_cocitation",
                         "cluster_coclassification"},
                        rows));
    std::int64_t cit_total = 0, cls_total = 0;
    for (int s = 1; s <= kSdgCount; ++s) {
      for (int t = s + 1; t <= kSdgCount; ++t) {
        cit_total += cocit.at(s, t);
        cls_total += cocls.at(s, t);
      }
    }
    update_manifest(Stage::interlink,
                    {{"cocitation_link_strength", cit_total},
                     {"coclassification_link_strength", cls_total}},
                    {});
  }

  // ---- report

  void report() {
    require(Stage::ingest, "summary.json", Stage::report);
    ordered_json files = ordered_json::object();
    for (auto s : kAllStages) {
      if (s == Stage::report) continue;
      const auto d = dir(s);
      if (!fs::exists(d)) continue;
      std::vector<fs::path> csvs;
      for (const auto& entry : fs::directory_iterator(d)) {
        if (entry.path().extension() == ".csv") csvs.push_back(entry.path());
      }
      std::sort(csvs.begin(), csvs.end());
      for (const auto& p : csvs) {
        const auto t = read_table(p);
        ordered_json rows = ordered_json::array();
        for (const auto& r : t.rows) rows.push_back(r);
        files[(fs::path(output_subdir(s)) / p.filename()).generic_string()] =
            ordered_json{{"columns", t.header}, {"rows", std::move(rows)}};
      }
    }
    ordered_json out;
    out["schema_version"] = kSchemaVersion;
    out["files"] = std::move(files);
    write_file(cfg_.output_dir / "report.json", json_text(out));
    update_manifest(Stage::report, {{"files", out["files"].size()}}, {});
  }

  const PipelineConfig& cfg_;
  RunOptions opts_;
  std::optional<Corpus> corpus_;
  std::optional<DatasetLabels> labels_;
  std::optional<CitationGraph> graph_;
};

}  // namespace

void run_stage(Stage stage, const PipelineConfig& cfg, const RunOptions& opts) {
  Session(cfg, opts).run(stage);
}

void run_pipeline(const PipelineConfig& cfg, const RunOptions& opts) {
  Session session(cfg, opts);
  for (auto s : kAllStages) session.run(s);
}

}  // namespace scimetrics::pipeline

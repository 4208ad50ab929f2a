#include "scimetrics/pipeline.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <iostream>
#include <optional>

namespace {

using namespace scimetrics;
using namespace scimetrics::pipeline;

struct Overrides {
  std::optional<std::string> corpus, query, org_types, glossary, external_totals, output_dir;
  std::optional<int> year_lo, year_hi, layers, block_len;
  std::optional<std::int64_t> min_occurrence, min_cluster_size, top_k, top_terms;
  std::optional<double> resolution, s, gamma, ai_multiplier;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  bool scan_text = false;
};

template <class T>
std::string dflt(const std::string& text, const T& value) {
  return fmt::format("{} (default: {})", text, value);
}

void apply(const Overrides& o, PipelineConfig& c) {
  if (o.corpus) c.corpus_path = *o.corpus;
  if (o.query) c.query_text = *o.query;
  if (o.year_lo) c.year_range.lo = *o.year_lo;
  if (o.year_hi) c.year_range.hi = *o.year_hi;
  if (o.org_types) {
    nlohmann::json j;
    if (*o.org_types == "any") {
      j["org_types"] = "any";
    } else {
      j["org_types"] = nlohmann::json::array();
      std::string item;
      for (char ch : *o.org_types + ",") {
        if (ch == ',') {
          if (!item.empty()) j["org_types"].push_back(item);
          item.clear();
        } else {
          item.push_back(ch);
        }
      }
    }
    c.org_types = config_from_json(j, c.base_dir).org_types;
  }
  if (o.layers) c.expansion_layers = *o.layers;
  if (o.min_occurrence) c.min_occurrence = *o.min_occurrence;
  if (o.resolution) c.cluster.resolution = *o.resolution;
  if (o.min_cluster_size) c.cluster.min_cluster_size = *o.min_cluster_size;
  if (o.seed) c.cluster.seed = *o.seed;
  if (o.restarts) c.cluster.restarts = *o.restarts;
  if (o.s) c.burst.s = *o.s;
  if (o.gamma) c.burst.gamma = *o.gamma;
  if (o.top_k) c.burst.top_k = *o.top_k;
  if (o.glossary) c.glossary_path = *o.glossary;
  if (o.scan_text) c.scan_text = true;
  if (o.external_totals) c.external_totals_path = *o.external_totals;
  if (o.ai_multiplier) c.ai_display_multiplier = *o.ai_multiplier;
  if (o.block_len) c.block_len = *o.block_len;
  if (o.top_terms) c.top_terms = *o.top_terms;
  if (o.output_dir) c.output_dir = *o.output_dir;
}

}  // namespace

int main(int argc, char** argv) {
  const PipelineConfig d;
  CLI::App app{"Bibliometric mapping pipeline: delineation, indicators, keyword maps, bursts, SDG links"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned threads = 1;
  Overrides o;
  app.add_option("-c,--config", config_path, "JSON config file; flags override its values");
  app.add_option("-j,--threads", threads, "Worker threads (never affects output)")->capture_default_str();
  app.add_option("-o,--output-dir", o.output_dir, dflt("Output directory", d.output_dir.string()));
  app.add_option("--corpus", o.corpus, "Corpus file (.jsonl or .csv)");
  app.add_option("--query", o.query, "Topical query, e.g. TS=\"millennium development goal*\"");
  app.add_option("--year-lo", o.year_lo, dflt("First year of the analysis range", d.year_range.lo));
  app.add_option("--year-hi", o.year_hi, dflt("Last year of the analysis range", d.year_range.hi));
  app.add_option("--org-types", o.org_types, "Comma-separated affiliation types or 'any' (default: HEI,RC)");
  app.add_option("--layers", o.layers, dflt("Direct-citation expansion layers", d.expansion_layers));
  app.add_option("--min-occurrence", o.min_occurrence, dflt("Keyword occurrence threshold", d.min_occurrence));
  app.add_option("--resolution", o.resolution, dflt("Modularity resolution", d.cluster.resolution));
  app.add_option("--min-cluster-size", o.min_cluster_size, dflt("Minimum cluster size", d.cluster.min_cluster_size));
  app.add_option("--seed", o.seed, dflt("Clustering seed", d.cluster.seed));
  app.add_option("--restarts", o.restarts, dflt("Clustering restarts", d.cluster.restarts));
  app.add_option("--s", o.s, dflt("Burst rate ratio s", d.burst.s));
  app.add_option("--gamma", o.gamma, dflt("Burst transition cost gamma", d.burst.gamma));
  app.add_option("--top-k", o.top_k, dflt("Burst rows to keep", d.burst.top_k));
  app.add_option("--glossary", o.glossary, "SDG glossary CSV (term,sdg_id)");
  app.add_flag("--scan-text", o.scan_text, "Also match glossary terms in titles and abstracts");
  app.add_option("--external-totals", o.external_totals, "Database-wide actor totals for the Activity Index");
  app.add_option("--ai-multiplier", o.ai_multiplier, dflt("Activity Index display multiplier", d.ai_display_multiplier));
  app.add_option("--block-len", o.block_len, dflt("Years per period block", d.block_len));
  app.add_option("--top-terms", o.top_terms, dflt("Terms listed per cluster", d.top_terms));

  std::optional<Stage> chosen;
  for (auto s : kAllStages) {
    auto* sub = app.add_subcommand(std::string(to_string(s)), fmt::format("Run the {} stage", to_string(s)));
    sub->fallthrough();
    sub->callback([&chosen, s] { chosen = s; });
  }
  auto* run = app.add_subcommand("run", "Run every stage in order");
  run->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    apply(o, cfg);
    validate(cfg);
    RunOptions opts;
    opts.threads = std::max(1u, threads);
    if (chosen) {
      run_stage(*chosen, cfg, opts);
    } else {
      run_pipeline(cfg, opts);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const StageError& e) {
    std::cerr << "stage '" << e.stage() << "' failed: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStage;
  }
  return kExitOk;
}

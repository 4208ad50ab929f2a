#pragma once

#include "scimetrics/corpus.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scimetrics::pipeline {

inline constexpr int kSchemaVersion = 1;

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitStage = 4;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A stage failed; `exit_code` is kExitInput when the cause was unreadable or
// invalid input data and kExitStage otherwise.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& cause, int exit_code)
      : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct ClusterConfig {
  double resolution = 1.0;
  std::int64_t min_cluster_size = 1;
  std::uint64_t seed = 42;
  int restarts = 10;
};

struct BurstConfig {
  double s = 2.0;
  double gamma = 1.0;
  std::int64_t top_k = 60;
};

struct PipelineConfig {
  // Paths are kept as written; relative ones resolve against base_dir.
  std::string corpus_path;
  std::optional<CorpusFormat> corpus_format;  // inferred from the extension when unset
  std::string query_text;
  YearRange year_range{2000, 2017};
  OrgTypeFilter org_types = OrgTypeFilter::of({OrgType::HEI, OrgType::RC});
  int expansion_layers = 1;
  std::int64_t min_occurrence = 50;
  ClusterConfig cluster;
  BurstConfig burst;
  std::string glossary_path;
  bool scan_text = false;
  std::string external_totals_path;  // optional; AI unavailable without it
  double ai_display_multiplier = 100.0;
  int block_len = 6;
  std::int64_t institution_min_count = 50;
  std::int64_t country_min_count = 20;
  std::int64_t continent_min_count = 0;
  std::int64_t top_terms = 5;

  std::filesystem::path output_dir = "out";
  std::filesystem::path base_dir = ".";

  std::filesystem::path resolve(const std::string& p) const;
};

// Parses the JSON config file; relative paths inside resolve against the
// file's directory. Throws ConfigError.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

// Canonical JSON form used for the manifest hash. Leaves out output_dir and
// base_dir so the hash depends only on what is computed.
nlohmann::ordered_json config_to_json(const PipelineConfig& cfg);

// Range and consistency checks. Throws ConfigError.
void validate(const PipelineConfig& cfg);

enum class Stage { ingest, delineate, indicators, cooccur, burst, classify, interlink, report };

inline constexpr Stage kAllStages[] = {Stage::ingest,  Stage::delineate, Stage::indicators,
                                       Stage::cooccur, Stage::burst,     Stage::classify,
                                       Stage::interlink, Stage::report};

std::string_view to_string(Stage s);
std::string_view output_subdir(Stage s);

struct RunOptions {
  unsigned threads = 1;  // caps workers; never affects output
};

// Runs one stage, reading prior stages' artifacts from the output
// directory. Throws StageError.
void run_stage(Stage stage, const PipelineConfig& cfg, const RunOptions& opts = {});

// ingest -> delineate -> indicators -> cooccur -> burst -> classify ->
// interlink -> report. Stops at the first failing stage; outputs written by
// earlier stages stay in place. Throws StageError.
void run_pipeline(const PipelineConfig& cfg, const RunOptions& opts = {});

}  // namespace scimetrics::pipeline

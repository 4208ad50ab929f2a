// Writes a synthetic corpus plus its external totals and seeded-id list.
#include "synth.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace scimetrics;
  CLI::App app{"Generate a deterministic synthetic publication corpus"};
  synth::Options opts;
  std::string out_path, totals_path, seeded_path;
  app.add_option("--records", opts.records, "Number of records")->capture_default_str();
  app.add_option("--seeded", opts.seeded, "Records matching the topical query")->capture_default_str();
  app.add_option("--orgs", opts.orgs, "Size of the organization pool")->capture_default_str();
  app.add_option("--seed", opts.seed, "Random seed")->capture_default_str();
  app.add_option("--out", out_path, "Corpus file (.jsonl or .csv)")->required();
  app.add_option("--totals", totals_path, "External totals CSV to write");
  app.add_option("--seeded-ids", seeded_path, "File listing the seeded pub_ids");
  CLI11_PARSE(app, argc, argv);

  const auto result = synth::generate(opts);
  Corpus corpus;
  for (const auto& r : result.records) corpus.add(r);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 3;
  }
  if (corpus_format_from_path(out_path) == CorpusFormat::csv) {
    write_csv(out, corpus);
  } else {
    write_jsonl(out, corpus);
  }
  if (!totals_path.empty()) std::ofstream(totals_path, std::ios::binary) << result.external_totals_csv;
  if (!seeded_path.empty()) {
    std::ofstream ids(seeded_path, std::ios::binary);
    for (const auto& id : result.seeded_ids) ids << id << "\n";
  }
  std::cerr << corpus.size() << " records written; query: " << synth::kQuery << "\n";
  return 0;
}

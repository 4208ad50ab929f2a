// Acceptance checks. Prints one PASS/FAIL line per criterion; with an
// argument, runs only the named criterion. Exit status is nonzero when any
// selected criterion fails.
#include "oracles.hpp"
#include "scimetrics/burst.hpp"
#include "scimetrics/citation_graph.hpp"
#include "scimetrics/cooccur.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/indicators.hpp"
#include "scimetrics/interlink.hpp"
#include "scimetrics/modularity.hpp"
#include "scimetrics/pipeline.hpp"
#include "scimetrics/sdg.hpp"
#include "support.hpp"
#include "synth.hpp"

#include <fmt/core.h>

#include <sys/resource.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>

using namespace scimetrics;
using namespace testing;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = SCIMETRICS_SOURCE_DIR;

// Counts checks and keeps the first failure message.
struct Outcome {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

struct Criterion {
  std::string name;
  std::optional<double> limit_s;
  std::function<void(Outcome&)> run;
};

// ---- CAGR

void cagr(Outcome& o) {
  const auto g = growth_and_cagr(10000, 92865, 17);
  o.note = fmt::format("growth {:.4f}%, CAGR {:.4f}%", g.growth_pct, g.cagr_pct);
  o.expect(std::abs(g.growth_pct - 828.65) <= 0.01, "growth " + o.note);
  o.expect(std::abs(g.cagr_pct - 14.01) <= 0.01, "CAGR " + o.note);
}

// ---- Activity Index

void activity(Outcome& o) {
  std::mt19937_64 rng(101);
  auto draw = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    ActivityIndexInput in;
    in.all_total = draw(1, 2'000'000'000);
    in.actor_all_count = draw(1, in.all_total);
    in.topic_total = draw(1, in.all_total);
    in.actor_topic_count = draw(0, std::min(in.topic_total, in.actor_all_count));
    const double got = activity_index(in);
    const double want = oracle::activity_index(in).convert_to<double>();
    const double rel = want == 0 ? std::abs(got) : std::abs(got - want) / want;
    worst = std::max(worst, rel);
    o.expect(rel <= 1e-12, fmt::format("instance {}: {} vs {}", i, got, want));

    // parity: the same share inside the topic as in the database
    const std::int64_t t = draw(1, 100000), a = draw(1, t), k = draw(1, 20000);
    const ActivityIndexInput parity{a, t, a * k, t * k};
    o.expect(activity_index(parity) == 1.0, fmt::format("parity {}/{} x{}", a, t, k));
  }
  o.note = fmt::format("worst relative error {:.2e}", worst);
}

// ---- classification arithmetic

void classification(Outcome& o) {
  std::vector<SdgAssignment> as(25299);
  for (std::size_t i = 0; i < as.size(); ++i) {
    as[i].pub_id = std::to_string(i);
    if (i < 20749) as[i].sdgs.insert(1 + static_cast<int>(i % 17));
  }
  const auto p = prevalence(as, Denominator::all);

  std::vector<PublicationRecord> recs;
  std::vector<SdgAssignment> inst;
  for (int i = 0; i < 1968; ++i) {
    const auto id = "p" + std::to_string(i);
    recs.push_back(rec(id, 2010, {}, {}, {aff("org" + std::to_string(i), OrgType::HEI, "FR")}));
    SdgSet s;
    s.insert(i < 1670 ? 3 : 6);
    inst.push_back({id, s});
  }
  const auto ips = institutions_per_sdg(inst, corpus_of(recs));

  const auto classified = p.classified_fraction_pct();
  const auto sdg3 = ips.pct(3);
  o.note = fmt::format("classified {} (want 82.01), SDG3 institutions {} (want 84.86)", classified, sdg3);
  o.expect(classified == "82.01", "classified share printed " + classified + ", want 82.01");
  o.expect(sdg3 == "84.86", "institution share printed " + sdg3 + ", want 84.86");
}

// ---- bursts

void bursts(Outcome& o) {
  std::mt19937_64 rng(1234);
  std::size_t compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto T = static_cast<std::size_t>(uniform(rng, 1, 12));
    TermYearStream s;
    s.term = "t";
    s.first_year = 2000;
    s.relevant.resize(T);
    s.totals.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
      s.totals[t] = uniform(rng, 0, 40);
      s.relevant[t] = s.totals[t] ? uniform(rng, 0, static_cast<int>(s.totals[t])) : 0;
    }
    const BurstParams params{1.5 + static_cast<double>(rng() % 4) * 0.5, static_cast<double>(rng() % 3) * 0.5};
    const auto det = detect_bursts(s, params);
    std::int64_t rs = 0, ds = 0;
    for (std::size_t t = 0; t < T; ++t) rs += s.relevant[t], ds += s.totals[t];
    if (rs == 0 || rs >= ds) {
      o.expect(det.intervals.empty(), fmt::format("trial {}: degenerate stream reported a burst", trial));
      continue;
    }
    ++compared;
    const auto costs = state_costs(s, params);
    const auto dp = optimal_states(costs);
    const auto brute = oracle::enumerate_states(costs);
    o.expect(dp.cost == brute.cost, fmt::format("trial {}: DP cost {} vs {}", trial, dp.cost, brute.cost));
    o.expect(dp.high == brute.states, fmt::format("trial {}: state sequences differ", trial));

    std::vector<std::pair<int, int>> runs;
    for (std::size_t t = 0; t < T; ++t) {
      if (!brute.states[t]) continue;
      if (t == 0 || !brute.states[t - 1]) runs.emplace_back(s.year(t), s.year(t));
      runs.back().second = s.year(t);
    }
    std::vector<std::pair<int, int>> got;
    for (const auto& b : det.intervals) got.emplace_back(b.begin, b.end);
    o.expect(got == runs, fmt::format("trial {}: intervals differ from the optimum's high runs", trial));
  }
  o.note = fmt::format("{} streams, {} against enumeration", 500, compared);
}

// ---- co-occurrence

void cooccurrence(Outcome& o) {
  std::mt19937_64 rng(31);
  const std::vector<std::string> vocab = {"Alpha", "beta", "Gamma-ray", "delta", "alpha ", "eps",
                                          "zeta", "eta", "theta", "iota", "kappa", "lambda"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PublicationRecord> pubs;
    const int n = uniform(rng, 0, 50);
    for (int i = 0; i < n; ++i) {
      auto r = rec("p" + std::to_string(i), 2000);
      for (int k = uniform(rng, 0, 10); k > 0; --k) {
        (rng() % 2 ? r.author_keywords : r.index_keywords).push_back(vocab[rng() % vocab.size()]);
      }
      pubs.push_back(r);
    }
    const auto c = corpus_of(pubs);
    const std::int64_t min_occ = uniform(rng, 1, 4);
    const auto net = build_network(all_ids(c), c, min_occ);
    const auto want = oracle::cooccurrence(pubs, min_occ);

    std::map<std::string, std::int64_t> occ;
    for (std::size_t i = 0; i < net.terms.size(); ++i) occ[net.terms[i]] = net.occurrence[i];
    o.expect(occ == want.occurrence, fmt::format("trial {}: node set or occurrences differ", trial));
    std::map<std::pair<std::string, std::string>, std::int64_t> pairs;
    for (const auto& e : net.edges) {
      auto a = net.terms[e.i], b = net.terms[e.j];
      if (b < a) std::swap(a, b);
      pairs[{a, b}] += e.count;
    }
    o.expect(pairs == want.pairs && pairs.size() == net.edges.size(),
             fmt::format("trial {}: edges differ", trial));
  }
}

// ---- planted partition

void planted(Outcome& o) {
  std::vector<WeightedGraph::Edge> edges;
  for (std::uint32_t base : {0u, 4u}) {
    for (std::uint32_t i = 0; i < 4; ++i) {
      for (std::uint32_t j = i + 1; j < 4; ++j) edges.push_back({base + i, base + j, 1.0});
    }
  }
  edges.push_back({3, 4, 1.0});
  std::vector<std::vector<double>> A(8, std::vector<double>(8, 0.0));
  for (const auto& e : edges) A[e.u][e.v] = A[e.v][e.u] = e.weight;
  const auto [best_q, best_c] = oracle::best_partition(A, 1.0);

  const WeightedGraph g(8, edges);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ClusteringOptions opts;
    opts.seed = seed * 7919 + 1;
    opts.resolution = 1.0;
    const auto c = cluster(g, opts);
    bool planted_ok = c.n_clusters == 2 && c.membership[0] != c.membership[4];
    for (std::uint32_t i = 0; i < 8; ++i) planted_ok = planted_ok && c.membership[i] == c.membership[i < 4 ? 0 : 4];
    o.expect(planted_ok, fmt::format("seed {}: planted bipartition not recovered", opts.seed));
    o.expect(std::abs(c.quality - best_q) <= 1e-12,
             fmt::format("seed {}: Q {} vs exhaustive {}", opts.seed, c.quality, best_q));
  }
  o.note = fmt::format("exhaustive Q {:.6f} over 4140 partitions", best_q);
}

// ---- SDG matrices

void sdg_matrices(Outcome& o) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PublicationRecord> pubs;
    std::vector<SdgAssignment> as;
    std::map<std::string, SdgSet> by_id;
    std::vector<SdgSet> sets;
    const int n = uniform(rng, 1, 20);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> refs;
      for (int k = uniform(rng, 0, 6); k > 0; --k) {
        const int target = uniform(rng, 0, n + 2);
        refs.push_back(target < n ? "P" + std::to_string(100 + target) : "X" + std::to_string(target));
      }
      pubs.push_back(rec("P" + std::to_string(100 + i), uniform(rng, 2000, 2017), {}, refs));
      SdgSet s;
      for (int k = uniform(rng, 0, 4); k > 0; --k) s.insert(uniform(rng, 1, kSdgCount));
      as.push_back({pubs.back().pub_id, s});
      by_id[pubs.back().pub_id] = s;
      sets.push_back(s);
    }
    const auto corpus = corpus_of(pubs);
    const auto cocit = sdg_cocitation_matrix(as, CitationGraph::build(corpus), all_ids(corpus));
    const auto cocls = sdg_coclassification_matrix(as);
    o.expect(cocit.cells == oracle::cocitation(pubs, by_id), fmt::format("trial {}: co-citation differs", trial));
    o.expect(cocls.cells == oracle::coclassification(sets), fmt::format("trial {}: co-classification differs", trial));
    for (const auto* m : {&cocit, &cocls}) {
      bool shape = true;
      for (int s = 1; s <= kSdgCount; ++s) {
        shape = shape && m->at(s, s) == 0;
        for (int t = 1; t <= kSdgCount; ++t) shape = shape && m->at(s, t) == m->at(t, s);
      }
      o.expect(shape, fmt::format("trial {}: asymmetric or nonzero diagonal", trial));
    }
  }
}

// ---- continent shares

double units_of(const std::string& pct) { return std::stod(pct); }

void continent_shares(Outcome& o) {
  std::mt19937_64 rng(19);
  const std::vector<std::string> countries = {"KE", "BR", "CN", "FR", "AU", "US", "NG", "JP", "DE"};
  double worst = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PublicationRecord> recs;
    std::vector<SdgAssignment> as;
    for (int i = uniform(rng, 1, 300); i > 0; --i) {
      const auto id = "p" + std::to_string(i);
      recs.push_back(rec(id, 2000, {}, {}, {aff("o", OrgType::HEI, countries[rng() % countries.size()])}));
      SdgAssignment a{id, {}};
      for (int k = uniform(rng, 0, 6); k > 0; --k) a.sdgs.insert(uniform(rng, 1, kSdgCount));
      as.push_back(a);
    }
    const auto t = continent_tables(as, corpus_of(recs));
    for (int s = 1; s <= kSdgCount; ++s) {
      double sum = 0;
      std::int64_t n = 0;
      for (std::size_t k = 0; k < kContinentCount; ++k) {
        sum += units_of(t.row_pct(s, static_cast<Continent>(k)));
        n += t.counts[static_cast<std::size_t>(s - 1)][k];
      }
      if (n == 0) continue;
      worst = std::max(worst, std::abs(sum - 100.0));
      o.expect(std::abs(sum - 100.0) <= 0.05, fmt::format("trial {} row {}: sum {:.2f}", trial, s, sum));
    }
    for (std::size_t k = 0; k < kContinentCount; ++k) {
      double sum = 0;
      std::int64_t n = 0;
      for (int s = 1; s <= kSdgCount; ++s) {
        sum += units_of(t.column_pct(s, static_cast<Continent>(k)));
        n += t.counts[static_cast<std::size_t>(s - 1)][k];
      }
      if (n == 0) continue;
      worst = std::max(worst, std::abs(sum - 100.0));
      o.expect(std::abs(sum - 100.0) <= 0.05, fmt::format("trial {} column {}: sum {:.2f}", trial, k, sum));
    }
  }
  o.note = fmt::format("worst deviation from 100: {:.4f}", worst);
}

// ---- determinism

std::map<std::string, std::string> bundle(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = slurp(e.path());
  }
  return files;
}

void determinism(Outcome& o) {
  auto cfg = pipeline::load_config(kSource / "data" / "fixture" / "config.json");
  std::vector<std::map<std::string, std::string>> runs;
  for (unsigned threads : {1u, 1u, 8u}) {
    cfg.output_dir = scratch(fmt::format("acceptance_det_{}", runs.size()));
    pipeline::run_pipeline(cfg, {threads});
    runs.push_back(bundle(cfg.output_dir));
  }
  const auto golden = bundle(kSource / "tests" / "golden");
  o.expect(runs[0] == runs[1], "two single-thread runs differ");
  o.expect(runs[0] == runs[2], "1-thread and 8-thread runs differ");
  o.expect(runs[0] == golden, "bundle differs from tests/golden");
  o.note = fmt::format("{} files compared", runs[0].size());
}

// ---- scale

void scale(Outcome& o) {
  const auto dir = scratch("acceptance_scale");
  synth::Options opts;
  opts.records = 100000;
  opts.seeded = 15000;
  opts.orgs = 3000;
  opts.seed = 3;
  const auto generated = synth::generate(opts);
  {
    Corpus corpus;
    for (const auto& r : generated.records) corpus.add(r);
    std::ofstream out(dir / "corpus.jsonl", std::ios::binary);
    write_jsonl(out, corpus);
  }
  spit(dir / "totals.csv", generated.external_totals_csv);
  nlohmann::json cfg = {{"corpus_path", "corpus.jsonl"},
                        {"query", synth::kQuery},
                        {"glossary_path", (kSource / "data" / "fixture" / "glossary.csv").string()},
                        {"external_totals_path", "totals.csv"},
                        {"output_dir", "out"}};
  spit(dir / "config.json", cfg.dump(2));

  const std::string cmd = fmt::format("\"{}\" run -c \"{}\" >/dev/null 2>&1", SCIMETRICS_CLI,
                                      (dir / "config.json").string());
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rusage usage{};
  getrusage(RUSAGE_CHILDREN, &usage);
  const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;

  o.note = fmt::format("100000 records, pipeline {:.1f} s, peak RSS {:.0f} MB", secs, peak_mb);
  o.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "pipeline exited with failure");
  o.expect(fs::exists(dir / "out" / "report.json"), "no report.json");
  o.expect(secs < 60.0, "over 60 s");
  o.expect(peak_mb < 2048.0, "over 2 GB peak memory");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"cagr", 0.001, cagr},
      {"activity_index", 1.0, activity},
      {"classification_arithmetic", std::nullopt, classification},
      {"burst_dp", 30.0, bursts},
      {"cooccurrence_oracle", 10.0, cooccurrence},
      {"planted_partition", 5.0, planted},
      {"sdg_matrix_oracle", 5.0, sdg_matrices},
      {"continent_share_normalization", 1.0, continent_shares},
      {"determinism", 10.0, determinism},
      {"scale", std::nullopt, scale},
  };
  return all;
}

bool run_one(const Criterion& c) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.limit_s && secs > *c.limit_s) o.expect(false, fmt::format("took {:.3f} s, limit {} s", secs, *c.limit_s));
  const bool pass = o.failures == 0;
  std::string line = fmt::format("{} {} ({:.3f} s, {} checks", pass ? "PASS" : "FAIL", c.name, secs, o.checks);
  if (!o.note.empty()) line += "; " + o.note;
  line += ")";
  if (!pass) line += fmt::format(" {} failed, first: {}", o.failures, o.first_failure);
  fmt::print("{}\n", line);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  bool ok = true;
  bool found = argc < 2;
  for (const auto& c : criteria()) {
    if (argc >= 2 && c.name != argv[1]) continue;
    found = true;
    ok = run_one(c) && ok;
  }
  if (!found) {
    fmt::print(stderr, "unknown criterion '{}'\n", argv[1]);
    return 2;
  }
  return ok ? 0 : 1;
}

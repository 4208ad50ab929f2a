#include "oracles.hpp"
#include "scimetrics/errors.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/indicators.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace scimetrics;
using namespace testing;

TEST_CASE("yearly counts zero-fill the range") {
  const auto c = corpus_of({rec("a", 2000), rec("b", 2000), rec("c", 2001), rec("d", 1990)});
  const auto s = yearly_counts({"a", "b", "c"}, c, {2000, 2002});
  CHECK(s == YearlySeries{{2000, 2}, {2001, 1}, {2002, 0}});
  const auto empty = yearly_counts({}, c, {2000, 2001});
  CHECK(empty == YearlySeries{{2000, 0}, {2001, 0}});
  CHECK(yearly_counts({"d"}, c, {2000, 2000}).at(1990) == 1);
}

TEST_CASE("growth and CAGR") {
  const auto g = growth_and_cagr(10000, 92865, 17);
  CHECK(fmtnum::percent_2dp(g.growth_pct) == "828.65");
  CHECK(fmtnum::percent_2dp(g.cagr_pct) == "14.01");
  CHECK(std::abs(g.cagr_pct - 14.01) <= 0.01);

  const auto flat = growth_and_cagr(7, 7, 5);
  CHECK(flat.growth_pct == 0.0);
  CHECK(flat.cagr_pct == 0.0);

  const auto sq = growth_and_cagr(YearlySeries{{2000, 100}, {2002, 400}}, 2000, 2002);
  CHECK(sq.growth_pct == doctest::Approx(300.0));
  CHECK(sq.cagr_pct == doctest::Approx(100.0));

  CHECK_THROWS_AS(growth_and_cagr(YearlySeries{{2000, 0}, {2001, 5}}, 2000, 2001), UndefinedGrowthError);
  CHECK_THROWS_AS(growth_and_cagr(YearlySeries{{2001, 5}}, 2000, 2001), UndefinedGrowthError);
  CHECK_THROWS_AS(growth_and_cagr(YearlySeries{{2000, 5}}, 2000, 2000), std::invalid_argument);
}

TEST_CASE("property: CAGR compounds back to the end count") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 5000);
    const std::int64_t b = static_cast<std::int64_t>(rng() % 50000);
    const int n = uniform(rng, 1, 30);
    const auto g = growth_and_cagr(a, b, n);
    const double back = std::pow(1 + g.cagr_pct / 100, n) * static_cast<double>(a);
    CHECK(std::abs(back - static_cast<double>(b)) <= 1e-9 * std::max(1.0, static_cast<double>(b)));
  }
}

TEST_CASE("activity index examples and errors") {
  CHECK(activity_index({10, 100, 50, 10000}) == 20.0);
  CHECK(activity_index({1, 4, 25, 100}) == 1.0);
  CHECK(activity_index({0, 25299, 10, 30549291}) == 0.0);
  CHECK_THROWS_AS(activity_index({1, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(activity_index({1, 10, 0, 100}), std::invalid_argument);
  CHECK_THROWS_AS(activity_index({1, 10, 10, 0}), std::invalid_argument);
  CHECK_THROWS_AS(activity_index({5, 10, 4, 100}), std::invalid_argument);   // topic > all for actor
  CHECK_THROWS_AS(activity_index({11, 10, 40, 100}), std::invalid_argument); // actor > topic total
  CHECK_THROWS_AS(activity_index({1, 10, 101, 100}), std::invalid_argument);
}

TEST_CASE("property: activity index against exact rationals, parity and scale invariance") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t all_total = 1 + static_cast<std::int64_t>(rng() % 40000000);
    const std::int64_t topic_total = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::min<std::int64_t>(all_total, 30000)));
    const std::int64_t actor_all = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(all_total));
    const std::int64_t actor_topic = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::min(actor_all, topic_total) + 1));
    const ActivityIndexInput in{actor_topic, topic_total, actor_all, all_total};
    const double got = activity_index(in);
    const double want = oracle::activity_index(in).convert_to<double>();
    CHECK(std::abs(got - want) <= 1e-12 * std::max(std::abs(want), 1e-300));

    const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 7);
    if (actor_all * k <= all_total) {
      CHECK(std::abs(activity_index({actor_topic, topic_total, actor_all * k, all_total * k}) - got) <=
            1e-12 * std::max(got, 1e-300));
    }
    // parity: the actor holds the same share of both totals
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 1000);
    const std::int64_t share = 1 + static_cast<std::int64_t>(rng() % 50);
    CHECK(activity_index({share, share * m, share * 3, share * m * 3}) == 1.0);
  }
}

TEST_CASE("external totals file") {
  std::istringstream ok("all_total,1000\nactor_kind,actor_id,all_count\ninstitution,U1,50\ncountry,FR,300\n");
  const auto t = parse_external_totals(ok);
  CHECK(t.all_total == 1000);
  CHECK(t.lookup(ActorKind::country, "FR") == 300);
  CHECK(!t.lookup(ActorKind::country, "DE"));

  std::istringstream no_total("actor_kind,actor_id,all_count\n");
  CHECK_THROWS_AS(parse_external_totals(no_total), InputError);
  std::istringstream bad_kind("all_total,10\nactor_kind,actor_id,all_count\nplanet,x,1\n");
  CHECK_THROWS_AS(parse_external_totals(bad_kind), InputError);
  std::istringstream bad_count("all_total,10\nactor_kind,actor_id,all_count\ncountry,FR,-1\n");
  CHECK_THROWS_AS(parse_external_totals(bad_count), InputError);
  CHECK_THROWS_AS(load_external_totals("/nonexistent.csv"), InputError);
}

TEST_CASE("actor tables use full counting of distinct actors") {
  const auto c = corpus_of({
      rec("p1", 2001, {}, {}, {aff("U1", OrgType::HEI, "FR"), aff("U2", OrgType::HEI, "DE")}),
      rec("p2", 2002, {}, {}, {aff("U1", OrgType::HEI, "FR"), aff("U1", OrgType::HEI, "FR")}),
      rec("p3", 2003, {}, {}, {aff("U3", OrgType::RC, "KE")}),
      rec("p4", 2010, {}, {}, {aff("U3", OrgType::RC, "KE")}),
  });
  ExternalTotals totals;
  totals.all_total = 1000;
  totals.counts[{ActorKind::institution, "U1"}] = 20;
  totals.counts[{ActorKind::institution, "U2"}] = 10;

  const PubIdSet set{"p1", "p2", "p3", "p4"};
  const auto t = actor_table(set, c, ActorKind::institution, {2000, 2005}, &totals, 2);
  REQUIRE(t.raw.size() == 3);
  CHECK(t.raw[0].actor_id == "U1");
  CHECK(t.raw[0].topic_count == 2);
  CHECK(t.raw[0].period_total == 3);
  CHECK(t.raw[0].actor_name == "Org U1");
  CHECK(*t.raw[0].activity_index == doctest::Approx((2.0 / 3.0) / (20.0 / 1000.0)));
  CHECK(t.raw[1].actor_id == "U2");
  CHECK(t.raw[2].actor_id == "U3");
  CHECK(!t.raw[2].activity_index);  // no external total
  CHECK(t.ranked.size() == 1);
  CHECK(fmtnum::percent_2dp(t.raw[0].topic_count, t.raw[0].period_total) == "66.67");

  const auto cont = actor_table(set, c, ActorKind::continent, {2000, 2017}, nullptr);
  REQUIRE(cont.raw.size() == 2);
  CHECK(cont.raw[0].actor_id == "Africa");  // tie at 2, broken by id
  CHECK(cont.raw[0].topic_count == 2);
  CHECK(cont.raw[1].actor_id == "Europe");
}

TEST_CASE("property: full counting totals and period partition") {
  std::mt19937_64 rng(21);
  const std::vector<std::string> countries = {"FR", "DE", "KE", "BR", "CN"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PublicationRecord> recs;
    bool all_single = true;
    const int n = uniform(rng, 1, 30);
    for (int i = 0; i < n; ++i) {
      std::vector<Affiliation> affs;
      std::set<std::string> distinct;
      for (int k = uniform(rng, 1, 3); k > 0; --k) {
        const auto& cc = countries[rng() % countries.size()];
        affs.push_back(aff("O" + cc, OrgType::HEI, cc));
        distinct.insert(cc);
      }
      all_single = all_single && distinct.size() == 1;
      recs.push_back(rec("p" + std::to_string(i), uniform(rng, 2000, 2017), {}, {}, affs));
    }
    const auto c = corpus_of(recs);
    const auto set = all_ids(c);
    const auto t = actor_table(set, c, ActorKind::country, {2000, 2017}, nullptr);
    std::int64_t sum = 0;
    for (const auto& r : t.raw) sum += r.topic_count;
    CHECK(sum >= static_cast<std::int64_t>(set.size()));
    CHECK((sum == static_cast<std::int64_t>(set.size())) == all_single);

    const int len = uniform(rng, 1, 18);
    std::size_t total = 0;
    for (const auto& [range, ids] : period_blocks(set, c, {2000, 2017}, len)) total += ids.size();
    CHECK(total == set.size());
  }
}

TEST_CASE("period blocks") {
  const auto c = corpus_of({rec("a", 2005), rec("b", 2006), rec("c", 2017)});
  const auto b = period_blocks({"a", "b", "c"}, c, {2000, 2017}, 6);
  REQUIRE(b.size() == 3);
  CHECK(b[0].first.label() == "2000-2005");
  CHECK(b[1].first.label() == "2006-2011");
  CHECK(b[2].first.label() == "2012-2017");
  CHECK(b[0].second == PubIdSet{"a"});
  CHECK(period_blocks({"a"}, c, {2000, 2017}, 18).size() == 1);
  CHECK(period_blocks({"a"}, c, {2000, 2017}, 5).back().first.label() == "2015-2017");
  CHECK_THROWS_AS(period_blocks({}, c, {2000, 2017}, 0), std::invalid_argument);
}

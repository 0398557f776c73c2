#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "sdm/errors.hpp"
#include "sdm/mine.hpp"
#include "sdm/oracle.hpp"
#include "sdm/postprocess.hpp"
#include "toy.hpp"

using namespace sdm;

namespace {

MiningConfig open_config(int max_antecedent = 2) {
  MiningConfig cfg;
  cfg.min_support_target = 0.0;
  cfg.max_antecedent = max_antecedent;
  cfg.partitions = 1;
  return cfg;
}

std::vector<ShardInstance> shard_of(const std::vector<ShardInstance>& all,
                                    ItemId key) {
  std::vector<ShardInstance> out;
  for (const auto& inst : all)
    if (inst.key == key) out.push_back(inst);
  return out;
}

std::vector<ShardInstance> project_all(const CourseDataset& d,
                                       const FList& flist) {
  std::vector<ShardInstance> out;
  for (const Transaction& t : d.transactions)
    for (auto& inst : project_transaction(t, flist))
      out.push_back(std::move(inst));
  return out;
}

}  // namespace

TEST_CASE("item counting matches a straight tally and ignores partitioning") {
  auto f = toy::make();

  std::map<ItemId, std::uint64_t> straight;
  for (const Transaction& t : f.dataset.transactions)
    for (ItemId id : t.items) ++straight[id];

  for (int partitions : {1, 2, 7}) {
    ItemTallies tallies = tally_items(f.dataset.transactions, partitions);
    CHECK(tallies.transactions == 6);
    CHECK(tallies.target_totals == f.dataset.target_totals);
    for (const auto& [id, n] : straight) CHECK(tallies.freq[id] == n);
  }

  FList flist = count_items(f.dataset.transactions, 3);
  std::vector<std::pair<ItemId, std::uint64_t>> want = {
      {f.gH, 4}, {f.dH, 4}, {f.gL, 2}, {f.dL, 2}};
  CHECK(flist.entries == want);  // frequency desc, ties by ascending id
  CHECK(flist.rank_of(f.gH) == 0);
  CHECK(flist.rank_of(f.dL) == 3);
  CHECK(flist.rank_of(999) == FList::kNoRank);
}

TEST_CASE("flist ordering: all-equal frequencies fall back to item id") {
  ItemDictionary dict;
  ItemId a = dict.intern("x", "1"), b = dict.intern("y", "1"),
         c = dict.intern("z", "1");
  CourseDataset d;
  d.transactions.push_back({{a, b, c}, Category::Certified});
  d.target_totals[0] = 1;
  FList flist = count_items(d.transactions, 1);
  REQUIRE(flist.entries.size() == 3);
  CHECK(flist.entries[0].first == a);
  CHECK(flist.entries[1].first == b);
  CHECK(flist.entries[2].first == c);
}

TEST_CASE("projection emits one prefix per item in frequency order") {
  auto f = toy::make();
  FList flist = count_items(f.dataset.transactions, 1);

  // t5 = {grade=low, ndays_act=high}: ndays_act=high ranks first
  auto t5 = project_transaction(f.dataset.transactions[4], flist);
  REQUIRE(t5.size() == 2);
  CHECK(t5[0].key == f.dH);
  CHECK(t5[0].prefix == std::vector<ItemId>{f.dH});
  CHECK(t5[1].key == f.gL);
  CHECK(t5[1].prefix == std::vector<ItemId>{f.dH, f.gL});
  CHECK(t5[1].target == toy::T);

  auto t1 = project_transaction(f.dataset.transactions[0], flist);
  REQUIRE(t1.size() == 2);
  CHECK(t1[0].prefix == std::vector<ItemId>{f.gH});
  CHECK(t1[1].prefix == std::vector<ItemId>{f.gH, f.dH});

  auto all = project_all(f.dataset, flist);
  CHECK(shard_of(all, f.dH).size() == 4);
  CHECK(shard_of(all, f.gH).size() == 4);
  CHECK(shard_of(all, f.gL).size() == 2);
  CHECK(shard_of(all, f.dL).size() == 2);

  Transaction empty;
  empty.target = toy::T;
  CHECK(project_transaction(empty, flist).empty());

  // items missing from the flist are dropped
  Transaction unknown;
  unknown.items = {999};
  unknown.target = toy::T;
  CHECK(project_transaction(unknown, flist).empty());
}

TEST_CASE("the shard tree for ndays_act=high, frozen by hand") {
  auto f = toy::make();
  FList flist = count_items(f.dataset.transactions, 1);
  auto instances = shard_of(project_all(f.dataset, flist), f.dH);
  FPTree tree = build_local_fptree(f.dH, instances);

  std::ostringstream dump;
  tree.dump(dump, &f.dict);
  CHECK(dump.str() ==
        "root\n"
        "  grade=high 3 [2,0,1,0]\n"
        "    ndays_act=high 3 [2,0,1,0]\n"
        "  ndays_act=high 1 [1,0,0,0]\n");

  // per-target counts on every node add up to its total
  for (std::size_t i = 1; i < tree.node_count(); ++i) {
    const FPTree::Node& n = tree.node(i);
    std::uint64_t sum = 0;
    for (auto v : n.per_target) sum += v;
    CHECK(sum == n.total);
  }

  // header chain totals equal the number of instances carrying the item
  std::uint64_t dh_total = 0;
  for (std::uint32_t idx : tree.header().at(f.dH))
    dh_total += tree.node(idx).total;
  CHECK(dh_total == instances.size());
}

TEST_CASE("instances routed to the wrong shard are an internal error") {
  auto f = toy::make();
  ShardInstance bad{f.dH, {f.gH}, toy::T};  // prefix does not end at the key
  std::vector<ShardInstance> v = {bad};
  CHECK_THROWS_AS(build_local_fptree(f.dH, v), InternalError);
}

TEST_CASE("mine_shard on the toy shards, frozen by hand") {
  auto f = toy::make();
  FList flist = count_items(f.dataset.transactions, 1);
  auto all = project_all(f.dataset, flist);

  SUBCASE("ndays_act=high shard yields the pair and the singleton") {
    FPTree tree = build_local_fptree(f.dH, shard_of(all, f.dH));
    auto out = mine_shard(tree, f.dH, open_config());
    REQUIRE(out.size() == 2);
    CHECK(out[0].antecedent == std::vector<ItemId>{f.gH, f.dH});
    CHECK(out[0].ant_total == 3);
    CHECK(out[0].joint == TargetCounts{2, 0, 1, 0});
    CHECK(out[1].antecedent == std::vector<ItemId>{f.dH});
    CHECK(out[1].ant_total == 4);
    CHECK(out[1].joint == TargetCounts{3, 0, 1, 0});
  }
  SUBCASE("grade=high shard has no conditional items") {
    FPTree tree = build_local_fptree(f.gH, shard_of(all, f.gH));
    auto out = mine_shard(tree, f.gH, open_config());
    REQUIRE(out.size() == 1);
    CHECK(out[0].antecedent == std::vector<ItemId>{f.gH});
    CHECK(out[0].ant_total == 4);
    CHECK(out[0].joint == TargetCounts{2, 0, 2, 0});
  }
  SUBCASE("max_antecedent 1 stops at singletons") {
    FPTree tree = build_local_fptree(f.dH, shard_of(all, f.dH));
    auto out = mine_shard(tree, f.dH, open_config(1));
    REQUIRE(out.size() == 1);
    CHECK(out[0].antecedent == std::vector<ItemId>{f.dH});
  }
}

TEST_CASE("scoring divides by the right denominators") {
  CandidateSubgroup c;
  c.antecedent = {1};
  c.ant_total = 4;
  c.joint = {3, 0, 1, 0};
  TargetCounts totals = {3, 0, 3, 0};

  auto m = score(c, Category::Certified, totals);
  REQUIRE(m.has_value());
  CHECK(m->support_target == doctest::Approx(1.0));
  CHECK(m->confidence == doctest::Approx(0.75));

  auto f = score(c, Category::OnlyViewed, totals);
  CHECK(f->support_target == doctest::Approx(1.0 / 3.0));
  CHECK(f->confidence == doctest::Approx(0.25));

  CHECK_FALSE(score(c, Category::OnlyExplored, totals).has_value());
}

TEST_CASE("mine_course equals the reference enumeration on the toy course") {
  auto f = toy::make();
  auto mined = mine_course(f.dataset, f.dict, open_config());

  OracleConfig ocfg;
  ocfg.max_antecedent = 2;
  auto want = enumerate_subgroups(f.dataset, f.dict, ocfg);

  CHECK(mined.by_target[static_cast<std::size_t>(toy::T)] ==
        want[static_cast<std::size_t>(toy::T)]);
  CHECK(mined.by_target[static_cast<std::size_t>(toy::F)] ==
        want[static_cast<std::size_t>(toy::F)]);
  REQUIRE(mined.by_target[static_cast<std::size_t>(toy::T)].size() == 8);

  // the two empty categories are skipped with a note
  CHECK(mined.diagnostics.size() == 2);
}

TEST_CASE("support threshold keeps only broad rules") {
  auto f = toy::make();
  MiningConfig cfg = open_config();
  cfg.min_support_target = 0.5;
  auto mined = mine_course(f.dataset, f.dict, cfg);
  const auto& t = mined.by_target[static_cast<std::size_t>(toy::T)];
  REQUIRE(t.size() == 3);  // {g=H}, {g=H,d=H}, {d=H} reach half the target
  for (const auto& r : t) CHECK(r.support_target() >= 0.5);
}

TEST_CASE("mining results are identical for any partitions and workers") {
  auto f = toy::make();
  auto baseline = mine_course(f.dataset, f.dict, open_config());
  for (int partitions : {1, 3, 7}) {
    for (int workers : {1, 2, 8}) {
      MiningConfig cfg = open_config();
      cfg.partitions = partitions;
      auto again = mine_course(f.dataset, f.dict, cfg, workers);
      CHECK(again.by_target == baseline.by_target);
    }
  }
}

TEST_CASE("the certified flag never describes the certified category") {
  // two certified rows and one explorer; certified=True/False items exist
  ItemDictionary dict;
  CourseDataset d;
  d.course_id = "c";
  ItemId cert_true = dict.intern("certified", "True");
  ItemId cert_false = dict.intern("certified", "False");
  ItemId g_high = dict.intern("grade", "high");
  d.transactions.push_back({{cert_true, g_high}, Category::Certified});
  d.transactions.push_back({{cert_true, g_high}, Category::Certified});
  d.transactions.push_back({{cert_false}, Category::OnlyExplored});
  d.target_totals[0] = 2;
  d.target_totals[1] = 1;

  auto mined = mine_course(d, dict, open_config());
  const auto& cert_rules = mined.by_target[0];
  CHECK(!cert_rules.empty());
  for (const auto& r : cert_rules)
    for (ItemId id : r.antecedent)
      CHECK(dict.attribute_of(id) != "certified");

  // other categories keep the whole flag chain
  const auto& explored_rules = mined.by_target[1];
  bool saw_flag = false;
  for (const auto& r : explored_rules)
    for (ItemId id : r.antecedent)
      if (dict.attribute_of(id) == "certified") saw_flag = true;
  CHECK(saw_flag);
}

TEST_CASE("an attribute allowlist restricts one target only") {
  ItemDictionary dict;
  ItemId country = dict.intern("countryName", "Spain");
  ItemId events = dict.intern("nevents", "low");
  CourseDataset d;
  d.course_id = "c";
  d.transactions.push_back({{country, events}, Category::OnlyRegistered});
  d.transactions.push_back({{country, events}, Category::OnlyRegistered});
  d.transactions.push_back({{country, events}, Category::OnlyViewed});
  d.target_totals[2] = 1;
  d.target_totals[3] = 2;

  MiningConfig cfg = open_config();
  cfg.attribute_allowlist[Category::OnlyRegistered] = {"countryName"};
  auto mined = mine_course(d, dict, cfg);

  for (const auto& r : mined.by_target[3])
    for (ItemId id : r.antecedent)
      CHECK(dict.attribute_of(id) == "countryName");
  CHECK(mined.by_target[3].size() == 1);

  bool viewed_uses_events = false;
  for (const auto& r : mined.by_target[2])
    for (ItemId id : r.antecedent)
      if (id == events) viewed_uses_events = true;
  CHECK(viewed_uses_events);
}

TEST_CASE("config validation rejects out-of-range settings") {
  auto f = toy::make();
  MiningConfig cfg = open_config();
  cfg.min_support_target = 1.5;
  CHECK_THROWS_AS(mine_course(f.dataset, f.dict, cfg), ConfigError);
  cfg = open_config();
  cfg.max_antecedent = 0;
  CHECK_THROWS_AS(mine_course(f.dataset, f.dict, cfg), ConfigError);
  cfg = open_config();
  cfg.partitions = 0;
  CHECK_THROWS_AS(mine_course(f.dataset, f.dict, cfg), ConfigError);
  cfg = open_config();
  cfg.targets.clear();
  CHECK_THROWS_AS(mine_course(f.dataset, f.dict, cfg), ConfigError);
  cfg = open_config();
  CHECK_THROWS_AS(mine_course(f.dataset, f.dict, cfg, 0), ConfigError);
}

TEST_CASE("engine and reference agree on random courses") {
  const double taus[] = {0.0, 0.5, 0.8};
  const double supports[] = {0.0, 0.05, 0.2};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    gen::Rng rng(seed * 7919);
    auto g = gen::random_course_dataset(rng);
    int max_ant = 1 + static_cast<int>(rng.below(3));
    double min_sup = supports[rng.below(3)];
    double tau = taus[rng.below(3)];

    MiningConfig cfg;
    cfg.min_support_target = min_sup;
    cfg.max_antecedent = max_ant;
    cfg.partitions = 1 + static_cast<int>(rng.below(4));
    auto mined = mine_course(g.dataset, g.dict, cfg,
                             1 + static_cast<int>(rng.below(3)));

    OracleConfig ocfg;
    ocfg.max_antecedent = max_ant;
    ocfg.min_support_target = min_sup;
    ocfg.min_confidence = tau;
    auto want = enumerate_subgroups(g.dataset, g.dict, ocfg);

    for (std::size_t ti = 0; ti < kNumCategories; ++ti) {
      auto got = filter_confidence(mined.by_target[ti], tau);
      REQUIRE_MESSAGE(got == want[ti], "seed ", seed, " target ", ti);
    }
  }
}

TEST_CASE("mined antecedents are canonical: sorted, unique, one per attribute") {
  for (std::uint64_t seed = 101; seed <= 110; ++seed) {
    gen::Rng rng(seed);
    auto g = gen::random_course_dataset(rng);
    auto mined = mine_course(g.dataset, g.dict, open_config(3));
    for (const auto& rules : mined.by_target) {
      for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto& ant = rules[i].antecedent;
        CHECK(std::is_sorted(ant.begin(), ant.end()));
        CHECK(ant.size() <= 3);
        std::set<std::string> attrs;
        for (ItemId id : ant) attrs.insert(g.dict.attribute_of(id));
        CHECK(attrs.size() == ant.size());
        if (i) CHECK(rules[i - 1].antecedent < ant);  // unique and ordered
      }
    }
  }
}

TEST_CASE("joint counts across categories add up to the antecedent cover") {
  gen::Rng rng(424242);
  auto g = gen::random_course_dataset(rng);
  auto mined = mine_course(g.dataset, g.dict, open_config(2));

  std::map<std::vector<ItemId>, std::uint64_t> ant_total;
  std::map<std::vector<ItemId>, std::uint64_t> joint_sum;
  std::map<std::vector<ItemId>, std::size_t> seen_in;
  for (const auto& rules : mined.by_target)
    for (const auto& r : rules) {
      ant_total[r.antecedent] = r.ant_total;
      joint_sum[r.antecedent] += r.joint;
      ++seen_in[r.antecedent];
    }
  std::size_t present = 0;
  for (auto t : g.dataset.target_totals) present += (t > 0);
  for (const auto& [ant, total] : ant_total) {
    if (seen_in[ant] == present)  // antecedent reported for every category
      CHECK(joint_sum[ant] == total);
    CHECK(joint_sum[ant] <= total);
  }
}

#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <binpack/packers.hpp>

#include "support.hpp"

using namespace binpack;

namespace {

Instance inst_of(std::initializer_list<const char*> sizes, std::string label = "t") {
  std::vector<Rational> v;
  for (const char* s : sizes) v.push_back(Rational::parse(s));
  return make_instance(std::move(label), v);
}

PackingResult pack(const char* alg, const Instance& inst, bool trace = false) {
  return run_online(AlgorithmSpec::parse(alg), inst, trace);
}

}  // namespace

TEST_SUITE("packers") {

TEST_CASE("next fit never looks back") {
  CHECK(pack("nf", inst_of({"0.6", "0.6", "0.6"})).bins_used == 3);
  CHECK(pack("nf", inst_of({"0.5", "0.5", "0.5", "0.5"})).bins_used == 2);
  // 0.4 closes the first bin even though bin 1 would have had room later.
  CHECK(pack("nf", inst_of({"0.7", "0.4", "0.2"})).bins_used == 2);
}

TEST_CASE("next fit closed-bin property: adjacent bins overflow together") {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 50; ++round) {
    Instance inst = testsupport::random_instance(rng, 60, 37);
    auto res = pack("nf", inst);
    for (std::size_t i = 0; i + 1 < res.bins.size(); ++i)
      CHECK(res.bins[i].content() + res.bins[i + 1].subs[0].items.front().size > Rational(1));
    CHECK(validate_packing(res).empty());
  }
}

TEST_CASE("first fit scans from the left") {
  CHECK(pack("ff", inst_of({"0.5", "0.5", "0.5", "0.5"})).bins_used == 2);
  // 0.3 lands in bin 0 (first that fits), leaving 0.5 to open a third bin.
  auto res = pack("ff", inst_of({"0.5", "0.7", "0.3", "0.5"}));
  CHECK(res.bins_used == 3);
  CHECK(res.bins[0].content() == Rational(4, 5));
  // Exact fits close bins completely.
  CHECK(pack("ff", inst_of({"0.4", "0.7", "0.6", "0.3"})).bins_used == 2);
}

TEST_CASE("best fit picks the tightest bin") {
  // Same stream where first fit needed 3 bins: best fit slots 0.3 into the
  // 0.7-bin and finishes with 2.
  CHECK(pack("bf", inst_of({"0.5", "0.7", "0.3", "0.5"})).bins_used == 2);
  // And a stream where the tightest choice backfires: 0.3 snuggles up to
  // 0.55, so 0.45 squeezes out the 0.2 later.
  CHECK(pack("bf", inst_of({"0.5", "0.55", "0.3", "0.45", "0.2"})).bins_used == 3);
  CHECK(pack("ff", inst_of({"0.5", "0.55", "0.3", "0.45", "0.2"})).bins_used == 2);
}

TEST_CASE("ffd sorts descending before first fit") {
  CHECK(run_ffd(inst_of({"0.3", "0.7", "0.3", "0.7"})).bins_used == 2);
  CHECK(run_ffd(inst_of({"0.5"})).bins_used == 1);
  CHECK(run_ffd(Instance{}).bins_used == 0);
  // Equal sizes are taken in arrival order: indices stay stable.
  auto res = run_ffd(inst_of({"0.5", "0.5", "0.5"}));
  CHECK(res.bins_used == 2);
  CHECK(res.bins[0].subs[0].items[0].index == 0);
  CHECK(res.bins[0].subs[0].items[1].index == 1);
  CHECK(res.bins[1].subs[0].items[0].index == 2);
}

TEST_CASE("ffd is reachable through the algorithm spec") {
  Instance inst = inst_of({"0.3", "0.7", "0.3", "0.7"});
  CHECK(pack("ffd", inst).bins_used == run_ffd(inst).bins_used);
}

TEST_CASE("class router: xl and l items") {
  auto res = pack("ph3:0", inst_of({"0.9", "2/3", "0.6"}));
  REQUIRE(res.bins_used == 3);
  CHECK(res.bins[0].category == BinCategory::XL);
  CHECK(res.bins[1].category == BinCategory::XL);  // exactly 2/3 is XL
  CHECK(res.bins[2].category == BinCategory::L);
  CHECK(res.bins[2].subs.size() == 2);
  CHECK(res.bins[2].subs[0].capacity == Rational(2, 3));
  CHECK(res.bins[2].subs[1].capacity == Rational(1, 3));
  CHECK(res.ph3->xl_bins == 2);
  CHECK(res.ph3->l_bins == 1);
}

TEST_CASE("class router: mediums pair up") {
  auto res = pack("ph3:1/2", inst_of({"0.4", "0.45", "0.5"}));
  CHECK(res.bins_used == 2);
  CHECK(res.bins[0].item_count() == 2);
  CHECK(res.bins[1].item_count() == 1);
  CHECK(res.ph3->m_bins == 2);
  CHECK(validate_packing(res, PH3Config{Rational(1, 2)}).empty());
}

TEST_CASE("router accepts r_l only in [0, 1]") {
  CHECK_THROWS_AS(PH3Packer(PH3Config{Rational(-1, 10)}), std::domain_error);
  CHECK_THROWS_AS(PH3Packer(PH3Config{Rational(11, 10)}), std::domain_error);
}

TEST_CASE("small routing consults the totals before the current item") {
  // First small: both totals are 0, 0 < r_l * 0 fails, so it goes to an
  // S-bin even though an L-bin with a free 1/3 slot exists.
  auto res = pack("ph3:1/2", inst_of({"0.6", "0.3"}), true);
  REQUIRE(res.bins_used == 2);
  CHECK(res.bins[1].category == BinCategory::S);
  CHECK(res.ph3->small_into_l == Rational(0));
  CHECK(res.trace[1].decision == "small-opens-s-bin");

  // Second small: 0 < (1/2) * 0.3 holds, so it goes into the L-bin's slot.
  auto res2 = pack("ph3:1/2", inst_of({"0.6", "0.3", "0.3"}), true);
  REQUIRE(res2.bins_used == 2);
  CHECK(res2.bins[0].subs[1].items.size() == 1);
  CHECK(res2.bins[0].subs[1].items[0].index == 2);
  CHECK(res2.ph3->small_into_l == Rational(3, 10));
  CHECK(res2.trace[2].decision == "small-into-l-sub");
}

TEST_CASE("r_l = 0 sends every small to s-bins") {
  auto res = pack("ph3:0", inst_of({"1/4", "1/4", "1/4", "1/4"}));
  CHECK(res.bins_used == 1);
  CHECK(res.bins[0].category == BinCategory::S);
  CHECK(res.bins[0].content() == Rational(1));
  CHECK(res.ph3->small_into_l == Rational(0));
  CHECK(res.ph3->small_total == Rational(1));
}

TEST_CASE("smalls open reserved l-bins that a later large claims") {
  auto res = pack("ph3:1", inst_of({"0.2", "0.2", "0.55"}), true);
  REQUIRE(res.bins_used == 2);
  CHECK(res.bins[0].category == BinCategory::S);   // first small, totals still 0
  CHECK(res.bins[1].category == BinCategory::L);   // opened by the second small
  CHECK(res.trace[1].decision == "small-into-l-sub");
  CHECK(res.trace[2].decision == "large-claims-reserved-l-bin");
  CHECK(res.bins[1].subs[0].items.size() == 1);    // the large in the 2/3 side
  CHECK(res.bins[1].subs[1].items.size() == 1);    // the small in the 1/3 side
  CHECK(validate_packing(res, PH3Config{Rational(1)}).empty());
}

TEST_CASE("l-slot routing is next fit: the cursor only advances") {
  // Three 1/3-sized smalls at r_l = 1: the first goes to an S-bin, each of
  // the next two fills a fresh L-bin slot to the brim.
  auto res = pack("ph3:1", inst_of({"1/3", "1/3", "1/3"}), true);
  CHECK(res.bins_used == 3);
  CHECK(res.trace[1].decision == "small-into-l-sub");
  CHECK(res.trace[2].decision == "small-opens-l-bin");
  CHECK(res.bins[1].subs[1].content == Rational(1, 3));
  CHECK(res.bins[2].subs[1].content == Rational(1, 3));

  // With existing L-bins (from larges), the cursor advances through them
  // instead of opening new ones.
  auto res2 = pack("ph3:1", inst_of({"0.6", "0.6", "0.1", "1/3", "0.3"}), true);
  // smalls: 0.1 -> S (totals 0), 1/3 -> L-bin 0 slot (0.1 counted), 0.3 ->
  // slot of L-bin 0 is full (1/3), advance to L-bin 1.
  CHECK(res2.trace[3].decision == "small-into-l-sub");
  CHECK(res2.trace[3].bin_id == 0);
  CHECK(res2.trace[4].decision == "small-advances-l-sub");
  CHECK(res2.trace[4].bin_id == 1);
  CHECK(validate_packing(res2, PH3Config{Rational(1)}).empty());
}

TEST_CASE("closed s-bins are filled above 2/3") {
  // 0.3-items: the active S-bin closes at 0.9; a closed S-bin below 2/3
  // would violate the density argument the counter tracks.
  PH3Packer p(PH3Config{Rational(0)});
  std::mt19937_64 rng(55);
  auto sizes = testsupport::random_sizes(rng, 400, 29);
  std::size_t idx = 0;
  for (auto& s : sizes) {
    // keep only smalls for this test
    if (s > Rational(1, 3)) continue;
    p.step(Item{idx++, s, ItemClass::Small});
    CHECK(p.under_two_thirds_s_bins() <= 1);
  }
  std::size_t under = 0;
  for (const Bin& b : p.bins())
    if (b.category == BinCategory::S && b.content() < Rational(2, 3)) ++under;
  CHECK(under <= 1);
  CHECK(under == p.under_two_thirds_s_bins());
}

TEST_CASE("trace rows are deterministic and complete") {
  std::mt19937_64 rng(77);
  Instance inst = testsupport::random_instance(rng, 120, 41);
  for (const char* alg : {"nf", "ff", "bf", "ffd", "ph3:1/19", "ph3:1/2"}) {
    auto a = pack(alg, inst, true);
    auto b = pack(alg, inst, true);
    REQUIRE(a.trace.size() == inst.items.size());
    REQUIRE(b.trace.size() == inst.items.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].item_index == b.trace[i].item_index);
      CHECK(a.trace[i].size == b.trace[i].size);
      CHECK(a.trace[i].decision == b.trace[i].decision);
      CHECK(a.trace[i].bin_id == b.trace[i].bin_id);
    }
    CHECK(pack(alg, inst, false).trace.empty());
  }
}

TEST_CASE("algorithm specs parse and print") {
  CHECK(AlgorithmSpec::parse("nf").kind == AlgorithmSpec::Kind::NextFit);
  CHECK(AlgorithmSpec::parse("FF").kind == AlgorithmSpec::Kind::FirstFit);
  CHECK(AlgorithmSpec::parse("bf").kind == AlgorithmSpec::Kind::BestFit);
  CHECK(AlgorithmSpec::parse("ffd").kind == AlgorithmSpec::Kind::FFD);
  auto ph3 = AlgorithmSpec::parse("ph3:1/19");
  CHECK(ph3.kind == AlgorithmSpec::Kind::PH3);
  CHECK(ph3.r_l == Rational(1, 19));
  CHECK(AlgorithmSpec::parse("ph3:0.25").r_l == Rational(1, 4));
  CHECK(ph3.str() == "ph3:1/19");
  CHECK(AlgorithmSpec::parse("nf").str() == "nf");
  CHECK_THROWS_AS(AlgorithmSpec::parse("zzz"), std::invalid_argument);
  CHECK_THROWS_AS(AlgorithmSpec::parse("ph3:3/2"), std::invalid_argument);
  CHECK_THROWS_AS(AlgorithmSpec::parse("ph3:"), std::invalid_argument);
}

TEST_CASE("empty instances produce empty packings") {
  for (const char* alg : {"nf", "ff", "bf", "ffd", "ph3:1/2"}) {
    auto res = pack(alg, Instance{});
    CHECK(res.bins_used == 0);
    CHECK(validate_packing(res).empty());
  }
}

TEST_CASE("all packers produce valid packings under fuzz") {
  std::mt19937_64 rng(202608);
  for (int round = 0; round < 40; ++round) {
    Instance inst = testsupport::random_instance(rng, 150, 53);
    for (const char* alg : {"nf", "ff", "bf", "ffd"}) {
      auto res = pack(alg, inst);
      auto bad = validate_packing(res);
      if (!bad.empty()) FAIL(alg << ": " << bad.front());
    }
    for (const char* rl : {"0", "1/19", "1/3", "1/2", "1", "7/13"}) {
      PH3Config cfg{Rational::parse(rl)};
      PH3Packer p(cfg);
      for (const auto& it : inst.items) p.step(it);
      auto bad = validate_packing(p.result(), cfg);
      if (!bad.empty()) FAIL("ph3:" << rl << ": " << bad.front());
    }
  }
}

TEST_CASE("first fit and best fit match a quadratic reference under fuzz") {
  // Reference: scan all bins linearly. Guards the segment tree and the
  // residual set against subtle ordering bugs.
  std::mt19937_64 rng(424242);
  for (int round = 0; round < 30; ++round) {
    Instance inst = testsupport::random_instance(rng, 80, 31);
    std::vector<Rational> ff_loads, bf_loads;
    for (const auto& it : inst.items) {
      // first fit reference
      bool placed = false;
      for (auto& load : ff_loads)
        if (load + it.size <= Rational(1)) {
          load += it.size;
          placed = true;
          break;
        }
      if (!placed) ff_loads.push_back(it.size);
      // best fit reference: tightest residual, lowest index on ties
      std::size_t best = bf_loads.size();
      for (std::size_t b = 0; b < bf_loads.size(); ++b)
        if (bf_loads[b] + it.size <= Rational(1) &&
            (best == bf_loads.size() || bf_loads[b] > bf_loads[best]))
          best = b;
      if (best == bf_loads.size())
        bf_loads.push_back(it.size);
      else
        bf_loads[best] += it.size;
    }
    auto ff = pack("ff", inst);
    auto bf = pack("bf", inst);
    REQUIRE(ff.bins_used == ff_loads.size());
    REQUIRE(bf.bins_used == bf_loads.size());
    for (std::size_t b = 0; b < ff_loads.size(); ++b) CHECK(ff.bins[b].content() == ff_loads[b]);
    for (std::size_t b = 0; b < bf_loads.size(); ++b) CHECK(bf.bins[b].content() == bf_loads[b]);
  }
}

TEST_CASE("validation catches tampered packings") {
  Instance inst = inst_of({"0.6", "0.3", "0.3", "0.45", "0.4"});
  PH3Config cfg{Rational(1, 2)};
  auto clean = pack("ph3:1/2", inst);
  REQUIRE(validate_packing(clean, cfg).empty());

  auto r1 = clean;
  r1.bins_used += 1;
  CHECK_FALSE(validate_packing(r1, cfg).empty());

  auto r2 = clean;
  r2.bins[0].subs[0].content += Rational(1, 100);  // cached total drifts from items
  CHECK_FALSE(validate_packing(r2, cfg).empty());

  auto r3 = clean;
  r3.bins[0].subs[0].items.push_back(Item{99, Rational(2, 3), ItemClass::XLarge});
  r3.bins[0].subs[0].content += Rational(2, 3);  // consistent but overfull
  CHECK_FALSE(validate_packing(r3, cfg).empty());

  auto r4 = clean;
  for (auto& b : r4.bins)
    if (b.category == BinCategory::S) {
      b.subs[0].items.push_back(Item{98, Rational(2, 5), ItemClass::Medium});
      b.subs[0].content += Rational(2, 5);  // medium smuggled into an S-bin
    }
  CHECK_FALSE(validate_packing(r4, cfg).empty());

  auto r5 = clean;
  r5.ph3->small_into_l += Rational(1, 7);  // ledger out of sync with bins
  CHECK_FALSE(validate_packing(r5, cfg).empty());

  // Without the ph3 config, category rules are not enforced.
  auto r6 = clean;
  CHECK(validate_packing(r6).empty());
}

}  // TEST_SUITE

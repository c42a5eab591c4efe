// Microbenchmarks for the hot paths: the online packers on a mixed random
// stream, the closed-form ratio bound, cover-chain construction, and the
// tightness-instance generator. Items/sec lets packer numbers compare
// across stream lengths.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "binpack/adversary.hpp"
#include "binpack/model.hpp"
#include "binpack/packers.hpp"
#include "binpack/planner.hpp"
#include "binpack/ratio.hpp"

namespace {

using namespace binpack;

// Deterministic mixed stream; small denominators keep the exact arithmetic
// representative of instance files rather than of worst-case bignums.
Instance mixed_stream(std::size_t count) {
  std::mt19937_64 rng(0xbe9c);
  std::uniform_int_distribution<long> den_dist(1, 12);
  std::vector<Rational> sizes;
  sizes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    long den = den_dist(rng);
    long num = std::uniform_int_distribution<long>(1, den)(rng);
    sizes.emplace_back(num, den);
  }
  return make_instance("bench", sizes);
}

void BM_pack_online(benchmark::State& state, const char* alg) {
  Instance inst = mixed_stream(static_cast<std::size_t>(state.range(0)));
  AlgorithmSpec spec = AlgorithmSpec::parse(alg);
  for (auto _ : state) {
    PackingResult res = run_online(spec, inst);
    benchmark::DoNotOptimize(res.bins_used);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_pack_ffd(benchmark::State& state) {
  Instance inst = mixed_stream(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    PackingResult res = run_ffd(inst);
    benchmark::DoNotOptimize(res.bins_used);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_theorem1_bound(benchmark::State& state) {
  Rational r_l(1, 19), rs(7, 24);
  for (auto _ : state) {
    Rational b = theorem1_bound(r_l, rs);
    benchmark::DoNotOptimize(b);
  }
}

void BM_plan_cover(benchmark::State& state) {
  // 1.5815 -> 6 copies, 1.5402 -> 12 copies.
  Rational R = state.range(0) == 6 ? Rational::parse("1.5815") : Rational::parse("1.5402");
  for (auto _ : state) {
    CoverPlan plan = plan_cover(R);
    benchmark::DoNotOptimize(plan.copies.size());
  }
}

void BM_generate_adversary(benchmark::State& state) {
  Rational r_l(1, 19), rs(1, 2);
  for (auto _ : state) {
    AdversaryInstance adv = generate_adversary(static_cast<unsigned long>(state.range(0)), r_l, rs);
    benchmark::DoNotOptimize(adv.instance.items.size());
  }
}

BENCHMARK_CAPTURE(BM_pack_online, nf, "nf")->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_pack_online, ff, "ff")->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_pack_online, bf, "bf")->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_pack_online, ph3, "ph3:1/19")->Arg(1000)->Arg(10000);
BENCHMARK(BM_pack_ffd)->Arg(1000)->Arg(10000);
BENCHMARK(BM_theorem1_bound);
BENCHMARK(BM_plan_cover)->Arg(6)->Arg(12);
BENCHMARK(BM_generate_adversary)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();

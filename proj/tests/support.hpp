#pragma once

// Shared helpers for the unit and acceptance suites: a deterministic random
// instance generator and an exact exponential-time optimum for cross-checking
// bounds on tiny instances.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include <binpack/model.hpp>
#include <binpack/rational.hpp>

namespace testsupport {

// Random sizes in (0, 1] as num/den with den <= max_den. Small denominators
// on purpose: they hit the class boundaries (1/3, 1/2, 2/3, 1) often.
inline std::vector<binpack::Rational> random_sizes(std::mt19937_64& rng, std::size_t count,
                                                   long max_den) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  std::vector<binpack::Rational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    long den = den_dist(rng);
    long num = std::uniform_int_distribution<long>(1, den)(rng);
    out.emplace_back(num, den);
  }
  return out;
}

inline binpack::Instance random_instance(std::mt19937_64& rng, std::size_t count, long max_den,
                                         std::string label = "fuzz") {
  return binpack::make_instance(std::move(label), random_sizes(rng, count, max_den));
}

// Exact minimum bin count by depth-first search. Branches on the bin each
// item joins; prunes on the incumbent and on bins with identical loads.
// Practical for a dozen items or so.
inline std::size_t brute_force_opt(const std::vector<binpack::Rational>& sizes) {
  using binpack::Rational;
  std::vector<Rational> sorted = sizes;
  std::sort(sorted.begin(), sorted.end(),
            [](const Rational& a, const Rational& b) { return a > b; });
  const Rational one(1);
  std::size_t best = sorted.size();
  std::vector<Rational> loads;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (loads.size() >= best) return;
    if (i == sorted.size()) {
      best = loads.size();
      return;
    }
    const Rational& s = sorted[i];
    std::set<Rational> tried;
    for (std::size_t b = 0; b < loads.size(); ++b) {
      if (loads[b] + s <= one && tried.insert(loads[b]).second) {
        loads[b] += s;
        go(i + 1);
        loads[b] -= s;
      }
    }
    loads.push_back(s);
    go(i + 1);
    loads.pop_back();
  };
  go(0);
  return best;
}

inline std::size_t brute_force_opt(const binpack::Instance& inst) {
  std::vector<binpack::Rational> sizes;
  sizes.reserve(inst.items.size());
  for (const auto& it : inst.items) sizes.push_back(it.size);
  return brute_force_opt(sizes);
}

}  // namespace testsupport

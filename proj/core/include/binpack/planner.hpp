#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "binpack/model.hpp"
#include "binpack/rational.hpp"

namespace binpack {

// One ensemble member: a PH3 copy tuned to r_l, certified to stay within the
// plan's target ratio for every instance balance in [r_min, r_max].
struct CopySpec {
  Rational r_l;
  Rational r_min, r_max;
  Rational verified_max_bound;  // max of theorem1_bound over the interval
};

struct CoverPlan {
  Rational target_r;
  std::vector<CopySpec> copies;  // contiguous intervals, r_min of the first is 0
  std::size_t k() const { return copies.size(); }
};

// Extends a cover from r_min: picks the r_l whose bound equals R at r_min
// (so the bound falls below R on the way up to r_l), then pushes r_max as
// far as either certificate branch allows:
//   r_l    = r_min + (R - 3/2)(2 + 6 r_min)/9   for r_min <= 1/3
//            r_min + (R - 3/2)(4 r_min)/3        for r_min >= 1/3
//   r_max1 = (3 r_l - 3 + 2R) / (12 - 6R)
//   r_max2 = r_l / (7 - 4R)
//   r_max  = max(r_max1, r_max2)
// Exact arithmetic throughout. Domain: 0 <= r_min < 1, 3/2 < R < 33/19.
CopySpec cover_step(const Rational& r_min, const Rational& R);

// Chains cover_step from 0 until r_max reaches 1, clamps the final r_max to
// 1, and re-verifies every interval against theorem1_bound (dense 1000-point
// grids up to 10^4 copies, exact endpoint checks beyond — complete anyway
// because the bound is monotone on each side of r_l). Long chains keep
// denominators bounded by flooring carried endpoints to 128 fractional bits
// (sound: shrinking an interval preserves its certificate). Throws when R is
// out of range or the chain exceeds 10^6 steps.
CoverPlan plan_cover(const Rational& R);

// Structural + sampled-bound verification; returns human-readable violations
// (empty means the plan is sound). grid_points inner samples per interval on
// top of the exact endpoint checks.
std::vector<std::string> verify_cover(const CoverPlan& plan, std::size_t grid_points = 1000);

// ceil(log2 k): advice bits needed to select one of k copies.
std::size_t advice_bits(std::size_t k);

// 2^l: copies addressable with l advice bits.
std::size_t copies_for_bits(std::size_t l);

// Reference bound for l advice bits from the competing red-blue scheme:
// 1.5 + 15 / 2^(l/2 + 1), real-valued exponent.
double redblue_bound(std::size_t l);

// redblue_bound rounded UP at the 4th decimal, e.g. l=16 -> "1.5293".
std::string redblue_bound_str(std::size_t l);

struct BestRatioResult {
  Rational ratio;
  CoverPlan plan;
};

// Smallest target ratio (within tol) whose cover needs at most k copies.
// Binary search over [3/2, 33/19] with exact feasibility probes; k = 1
// returns exactly 33/19 with the single-copy plan (r_l = 1/19 covers [0,1]).
// Probe results are memoized per exact R across calls.
BestRatioResult best_ratio(std::size_t k, const Rational& tol = Rational(1, 1000000000));

struct KCopyResult {
  std::size_t bins_used = 0;               // min over the copies
  std::size_t winner = 0;                  // lowest copy index attaining it
  std::vector<std::size_t> per_copy;
};

// Runs every copy of the plan on the instance; cost is the best copy.
KCopyResult run_kcopy(const CoverPlan& plan, const Instance& inst);

}  // namespace binpack

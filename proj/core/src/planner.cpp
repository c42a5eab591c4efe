#include "binpack/planner.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "binpack/packers.hpp"
#include "binpack/ratio.hpp"

namespace binpack {

namespace {

const Rational kOne(1);
const Rational kThird(1, 3);
const Rational kThreeHalves(3, 2);
const Rational kOneCopyRatio(33, 19);

constexpr std::size_t kMaxChainSteps = 1000000;
// Carried endpoints get floored to kFloorBits fractional bits once their
// denominator passes kFloorTriggerBits, keeping long chains tractable.
constexpr unsigned kFloorTriggerBits = 192;
constexpr unsigned kFloorBits = 128;
constexpr std::size_t kDenseVerifyMaxCopies = 10000;

void check_r(const Rational& r) {
  if (r <= kThreeHalves || r >= kOneCopyRatio)
    throw std::domain_error("cover: target ratio " + r.str() + " outside (3/2, 33/19)");
}

CopySpec cover_step_impl(const Rational& r_min, const Rational& R) {
  Rational slack = R - kThreeHalves;
  Rational r_l;
  if (r_min <= kThird)
    r_l = r_min + slack * (Rational(2) + Rational(6) * r_min) / Rational(9);
  else
    r_l = r_min + slack * (Rational(4) * r_min) / Rational(3);
  // Near the top of the range the affine step can overshoot 1; a routing
  // fraction above 1 is meaningless, and clamping only shrinks the gap
  // r_l - rs, so the interval stays within the target. With r_l = 1 the
  // first r_max formula gives 2R/(12-6R) > 1, closing the chain.
  if (r_l > kOne) r_l = kOne;
  Rational r_max1 = (Rational(3) * r_l - Rational(3) + Rational(2) * R) /
                    (Rational(12) - Rational(6) * R);
  Rational r_max2 = r_l / (Rational(7) - Rational(4) * R);
  CopySpec c;
  c.r_l = r_l;
  c.r_min = r_min;
  c.r_max = r_max1 > r_max2 ? r_max1 : r_max2;
  return c;
}

Rational interval_max_bound(const CopySpec& c) {
  Rational hi = c.r_max > kOne ? kOne : c.r_max;
  Rational a = theorem1_bound(c.r_l, c.r_min);
  Rational b = theorem1_bound(c.r_l, hi);
  return a > b ? a : b;
}

struct ChainOut {
  bool completed = false;
  std::vector<CopySpec> copies;
};

// Runs the cover chain from 0 for at most `cap` steps. When with_bounds is
// set, verified_max_bound is filled from the exact endpoint evaluations
// (feasibility probes skip that work).
ChainOut chain(const Rational& R, std::size_t cap, bool with_bounds) {
  ChainOut out;
  Rational r_min(0);
  while (out.copies.size() < cap) {
    CopySpec c = cover_step_impl(r_min, R);
    if (c.r_max <= r_min)
      throw std::runtime_error("plan_cover: no progress at r_min = " + r_min.str());
    if (c.r_max < kOne && c.r_max.den_bits() > kFloorTriggerBits) {
      c.r_max = c.r_max.floor_to_bits(kFloorBits);
      if (c.r_max <= r_min)
        throw std::runtime_error("plan_cover: no progress after rounding at r_min = " +
                                 r_min.str());
    }
    if (with_bounds) c.verified_max_bound = interval_max_bound(c);
    out.copies.push_back(c);
    if (out.copies.back().r_max >= kOne) {
      out.completed = true;
      break;
    }
    r_min = out.copies.back().r_max;
  }
  return out;
}

CoverPlan finish_plan(const Rational& R, ChainOut&& ch, std::size_t grid_points) {
  CoverPlan plan;
  plan.target_r = R;
  plan.copies = std::move(ch.copies);
  CopySpec& last = plan.copies.back();
  if (last.r_max > kOne) {
    last.r_max = kOne;
    last.verified_max_bound = interval_max_bound(last);
  }
  auto bad = verify_cover(plan, grid_points);
  if (!bad.empty())
    throw std::logic_error("plan_cover: generated plan failed verification: " + bad.front());
  return plan;
}

CoverPlan one_copy_plan() {
  CoverPlan plan;
  plan.target_r = kOneCopyRatio;
  CopySpec c;
  c.r_l = Rational(1, 19);
  c.r_min = Rational(0);
  c.r_max = kOne;
  c.verified_max_bound = interval_max_bound(c);
  plan.copies.push_back(c);
  return plan;
}

// Memo of chain lengths per exact R. `exact` entries store the completed
// chain length; inexact ones record that the chain was still open after
// `value` steps.
struct ProbeMemo {
  bool exact = false;
  std::size_t value = 0;
};
std::map<Rational, ProbeMemo>& probe_cache() {
  static std::map<Rational, ProbeMemo> cache;
  return cache;
}

bool cover_feasible(const Rational& R, std::size_t k) {
  std::size_t cap = k < kMaxChainSteps ? k : kMaxChainSteps;
  auto& cache = probe_cache();
  auto it = cache.find(R);
  if (it != cache.end()) {
    if (it->second.exact) return it->second.value <= k;
    if (it->second.value >= cap) return false;
  }
  ChainOut ch = chain(R, cap, false);
  if (ch.completed)
    cache[R] = ProbeMemo{true, ch.copies.size()};
  else
    cache[R] = ProbeMemo{false, cap};
  return ch.completed;
}

}  // namespace

CopySpec cover_step(const Rational& r_min, const Rational& R) {
  check_r(R);
  if (r_min.sign() < 0 || r_min >= kOne)
    throw std::domain_error("cover_step: r_min " + r_min.str() + " outside [0, 1)");
  CopySpec c = cover_step_impl(r_min, R);
  c.verified_max_bound = interval_max_bound(c);
  return c;
}

CoverPlan plan_cover(const Rational& R) {
  check_r(R);
  ChainOut ch = chain(R, kMaxChainSteps, true);
  if (!ch.completed)
    throw std::runtime_error("plan_cover: chain exceeded " + std::to_string(kMaxChainSteps) +
                             " steps for R = " + R.str());
  std::size_t grid = ch.copies.size() <= kDenseVerifyMaxCopies ? 1000 : 0;
  return finish_plan(R, std::move(ch), grid);
}

std::vector<std::string> verify_cover(const CoverPlan& plan, std::size_t grid_points) {
  std::vector<std::string> bad;
  if (plan.copies.empty()) {
    bad.push_back("plan has no copies");
    return bad;
  }
  if (plan.target_r <= kThreeHalves)
    bad.push_back("target ratio " + plan.target_r.str() + " not above 3/2");
  if (!plan.copies.front().r_min.is_zero())
    bad.push_back("first interval does not start at 0");
  if (plan.copies.back().r_max < kOne)
    bad.push_back("last interval does not reach 1");
  for (std::size_t i = 0; i < plan.copies.size(); ++i) {
    const CopySpec& c = plan.copies[i];
    std::string tag = "copy " + std::to_string(i);
    if (i + 1 < plan.copies.size() && plan.copies[i + 1].r_min != c.r_max)
      bad.push_back(tag + ": interval not contiguous with successor");
    if (c.r_max <= c.r_min) {
      bad.push_back(tag + ": empty interval");
      continue;
    }
    if (c.r_l.sign() < 0 || c.r_l > kOne) {
      bad.push_back(tag + ": r_l outside [0, 1]");
      continue;
    }
    Rational hi = c.r_max > kOne ? kOne : c.r_max;
    Rational end_max = theorem1_bound(c.r_l, c.r_min);
    Rational at_hi = theorem1_bound(c.r_l, hi);
    if (at_hi > end_max) end_max = at_hi;
    if (end_max > plan.target_r)
      bad.push_back(tag + ": bound " + end_max.str() + " exceeds target at an endpoint");
    if (c.verified_max_bound != end_max)
      bad.push_back(tag + ": stored verified_max_bound differs from endpoint maximum");
    Rational width = hi - c.r_min;
    for (std::size_t j = 1; j <= grid_points; ++j) {
      Rational r = c.r_min + width * Rational(static_cast<long>(j)) /
                                 Rational(static_cast<long>(grid_points + 1));
      if (theorem1_bound(c.r_l, r) > plan.target_r) {
        bad.push_back(tag + ": bound exceeds target at sample " + r.str());
        break;
      }
    }
  }
  return bad;
}

std::size_t advice_bits(std::size_t k) {
  if (k == 0) throw std::domain_error("advice_bits: k must be >= 1");
  return static_cast<std::size_t>(std::bit_width(k - 1));
}

std::size_t copies_for_bits(std::size_t l) {
  if (l > 62) throw std::domain_error("copies_for_bits: l too large");
  return static_cast<std::size_t>(1) << l;
}

double redblue_bound(std::size_t l) {
  if (l == 0) throw std::domain_error("redblue_bound: l must be >= 1");
  return 1.5 + 15.0 / std::exp2(static_cast<double>(l) / 2.0 + 1.0);
}

std::string redblue_bound_str(std::size_t l) {
  double v = redblue_bound(l);
  auto n = static_cast<long long>(std::ceil(v * 10000.0));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%04lld", n / 10000, n % 10000);
  return buf;
}

BestRatioResult best_ratio(std::size_t k, const Rational& tol) {
  if (k == 0) throw std::domain_error("best_ratio: k must be >= 1");
  if (tol.sign() <= 0) throw std::domain_error("best_ratio: tol must be positive");
  Rational lo = kThreeHalves;
  Rational hi = kOneCopyRatio;  // always feasible via the single-copy plan
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / Rational(2);
    if (cover_feasible(mid, k))
      hi = mid;
    else
      lo = mid;
  }
  BestRatioResult out;
  out.ratio = hi;
  if (hi == kOneCopyRatio) {
    out.plan = one_copy_plan();
  } else {
    ChainOut ch = chain(hi, k, true);
    if (!ch.completed) throw std::logic_error("best_ratio: accepted ratio not coverable");
    std::size_t grid = ch.copies.size() <= kDenseVerifyMaxCopies ? 1000 : 0;
    out.plan = finish_plan(hi, std::move(ch), grid);
  }
  return out;
}

KCopyResult run_kcopy(const CoverPlan& plan, const Instance& inst) {
  if (plan.copies.empty()) throw std::domain_error("run_kcopy: empty plan");
  KCopyResult out;
  out.per_copy.reserve(plan.k());
  for (const CopySpec& c : plan.copies) {
    PH3Packer p(PH3Config{c.r_l});
    for (const auto& it : inst.items) p.step(it);
    out.per_copy.push_back(p.bins_used());
  }
  out.winner = 0;
  out.bins_used = out.per_copy.front();
  for (std::size_t i = 1; i < out.per_copy.size(); ++i) {
    if (out.per_copy[i] < out.bins_used) {
      out.bins_used = out.per_copy[i];
      out.winner = i;
    }
  }
  return out;
}

}  // namespace binpack

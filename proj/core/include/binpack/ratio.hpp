#pragma once

#include <cstddef>
#include <utility>

#include "binpack/model.hpp"
#include "binpack/packers.hpp"
#include "binpack/rational.hpp"

namespace binpack {

// Certified bracket around the optimal bin count of an instance.
// lb = ceil(max of three lower bounds):
//   count: |XL| + |L|              (each needs its own bin)
//   pairs: |XL| + (|M| + |L|)/2   (mediums and larges pair at best)
//   size:  total item size         (volume bound)
// ub_ffd = bins used by First Fit Decreasing.
struct OptBounds {
  mpz_class lb;
  Rational lb_count, lb_pairs, lb_size;
  std::size_t ub_ffd = 0;
};

OptBounds opt_bounds(const Instance& inst);

// The instance's large-vs-small balance: min(|L| / (6 * size of smalls), 1).
// Defined as 1 when the instance has no small items.
Rational r_star(const Instance& inst);

// Worst-case competitive-ratio bound for a PH3 copy tuned to r_l, applied to
// an instance whose balance is rs. With d = r_l - rs:
//   d <= 0:  3/2 + min(1/(4 rs), 3/(6 rs + 2)) * (-d)
//   d >= 0:  3/2 + min(3/(4 rs), 9/(6 rs + 2)) * d     (9/2 * d at rs = 0)
// Both factor pairs coincide at rs = 1/3. Arguments must lie in [0, 1].
Rational theorem1_bound(const Rational& r_l, const Rational& rs);

// Worst case of theorem1_bound over all rs in [0, 1] for a fixed r_l.
// The two candidates sit at the endpoints:
//   at rs = 1: 7/4 - r_l/4      at rs = 0: 3/2 + (9/2) r_l
struct EnvelopeBounds {
  Rational at_rs_one;   // 7/4 - r_l/4
  Rational at_rs_zero;  // 3/2 + (9/2) r_l
  Rational max() const { return at_rs_one > at_rs_zero ? at_rs_one : at_rs_zero; }
};

EnvelopeBounds envelope_bounds(const Rational& r_l);

// The r_l minimizing the envelope, with its ratio: exactly (1/19, 33/19).
std::pair<Rational, Rational> one_copy_optimum();

// Empirical competitive-ratio bracket for a measured bin count:
// [bins/ub_ffd, bins/lb]. Throws std::domain_error when lb == 0.
struct RatioBracket {
  Rational lower, upper;
};

RatioBracket empirical_ratio(std::size_t bins_used, const OptBounds& bounds);

}  // namespace binpack

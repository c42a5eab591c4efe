#include "binpack/ratio.hpp"

#include <stdexcept>

namespace binpack {

namespace {
const Rational kOne(1);
const Rational kThreeHalves(3, 2);
}  // namespace

OptBounds opt_bounds(const Instance& inst) {
  OptBounds b;
  long xl = static_cast<long>(inst.count(ItemClass::XLarge));
  long lg = static_cast<long>(inst.count(ItemClass::Large));
  long md = static_cast<long>(inst.count(ItemClass::Medium));
  b.lb_count = Rational(xl + lg);
  b.lb_pairs = Rational(xl) + Rational(md + lg, 2);
  b.lb_size = size_of(inst);
  Rational best = b.lb_count;
  if (b.lb_pairs > best) best = b.lb_pairs;
  if (b.lb_size > best) best = b.lb_size;
  b.lb = best.ceil();
  b.ub_ffd = run_ffd(inst).bins_used;
  return b;
}

Rational r_star(const Instance& inst) {
  Rational small_size = size_of(inst, ItemClass::Small);
  if (small_size.is_zero()) return kOne;
  Rational ratio = Rational(static_cast<long>(inst.count(ItemClass::Large))) /
                   (Rational(6) * small_size);
  return ratio < kOne ? ratio : kOne;
}

Rational theorem1_bound(const Rational& r_l, const Rational& rs) {
  if (r_l.sign() < 0 || r_l > kOne)
    throw std::domain_error("theorem1_bound: r_l " + r_l.str() + " outside [0, 1]");
  if (rs.sign() < 0 || rs > kOne)
    throw std::domain_error("theorem1_bound: r_star " + rs.str() + " outside [0, 1]");
  Rational d = r_l - rs;
  if (d.is_zero()) return kThreeHalves;
  Rational six_rs_2 = Rational(6) * rs + Rational(2);
  if (d.sign() < 0) {
    // rs > r_l >= 0, so rs > 0 and both factors are defined.
    Rational f1 = kOne / (Rational(4) * rs);
    Rational f2 = Rational(3) / six_rs_2;
    return kThreeHalves + (f1 < f2 ? f1 : f2) * (-d);
  }
  if (rs.is_zero()) return kThreeHalves + Rational(9, 2) * d;
  Rational f1 = Rational(3) / (Rational(4) * rs);
  Rational f2 = Rational(9) / six_rs_2;
  return kThreeHalves + (f1 < f2 ? f1 : f2) * d;
}

EnvelopeBounds envelope_bounds(const Rational& r_l) {
  if (r_l.sign() < 0 || r_l > kOne)
    throw std::domain_error("envelope_bounds: r_l " + r_l.str() + " outside [0, 1]");
  EnvelopeBounds e;
  e.at_rs_one = Rational(7, 4) - r_l / Rational(4);
  e.at_rs_zero = kThreeHalves + Rational(9, 2) * r_l;
  return e;
}

std::pair<Rational, Rational> one_copy_optimum() {
  // Intersection of the two envelope lines: 7/4 - r/4 = 3/2 + 9r/2.
  return {Rational(1, 19), Rational(33, 19)};
}

RatioBracket empirical_ratio(std::size_t bins_used, const OptBounds& bounds) {
  if (bounds.lb == 0)
    throw std::domain_error("empirical_ratio: lower bound is zero (empty instance?)");
  RatioBracket r;
  long bins = static_cast<long>(bins_used);
  r.lower = Rational(bins) / Rational(static_cast<long>(bounds.ub_ffd));
  r.upper = Rational(bins) / Rational(mpz_class(bounds.lb), mpz_class(1));
  return r;
}

}  // namespace binpack

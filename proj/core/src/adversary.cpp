#include "binpack/adversary.hpp"

#include <stdexcept>

#include "binpack/packers.hpp"
#include "binpack/ratio.hpp"

namespace binpack {

namespace {
const Rational kOne(1);
const Rational kThird(1, 3);

unsigned long to_ulong(const mpz_class& z) {
  if (z < 0 || !z.fits_ulong_p()) throw std::overflow_error("adversary: count out of range");
  return z.get_ui();
}
}  // namespace

AdversaryParams adversary_params(unsigned long n, const Rational& r_l, const Rational& r_star) {
  if (n == 0) throw std::domain_error("adversary: n must be >= 1");
  if (r_l.sign() < 0 || r_l > kOne)
    throw std::domain_error("adversary: r_l " + r_l.str() + " outside [0, 1]");
  if (r_star.sign() < 0 || r_star > kOne)
    throw std::domain_error("adversary: r_star " + r_star.str() + " outside [0, 1]");
  AdversaryParams p;
  p.n = n;
  p.r_l = r_l;
  p.r_star = r_star;
  long ln = static_cast<long>(n);
  p.epsilon = Rational(1, 12 * ln + 2);
  p.n_large = to_ulong((Rational(4) * r_star * Rational(ln)).ceil());
  p.n_medium = r_star <= kThird
                   ? 0
                   : to_ulong(((Rational(6) * r_star - Rational(2)) * Rational(ln)).floor());
  p.n_ss = to_ulong(((kOne - r_l) * Rational(ln)).ceil());
  p.n_sl = to_ulong((Rational(4) * r_l * Rational(ln)).ceil());
  return p;
}

PredictedCounts predicted_counts(const AdversaryParams& params) {
  Rational n(static_cast<long>(params.n));
  Rational d = params.r_l - params.r_star;
  Rational d_pos = d.sign() > 0 ? d : Rational(0);
  Rational n_medium(static_cast<long>(params.n_medium));
  PredictedCounts out;
  out.ph3_lower = Rational(3) * params.r_star * n + d_pos * Rational(4) * n +
                  n_medium / Rational(2) + n - d * n;
  out.ffd_upper =
      ((Rational(12) * params.r_star + Rational(4)) * n + Rational(2) * n_medium + Rational(20)) /
      Rational(6);
  return out;
}

bool ffd_bound_applicable(const AdversaryParams& params) {
  if (params.n_large == 0) return true;
  // n_medium <= n_large by construction, so this cannot underflow.
  unsigned long large_only = params.n_large - params.n_medium;
  unsigned long leads_in_large_only = params.n_ss < large_only ? params.n_ss : large_only;
  return 2 * params.n_ss + params.n_sl >= params.n_medium + leads_in_large_only;
}

AdversaryInstance generate_adversary(unsigned long n, const Rational& r_l,
                                     const Rational& r_star_target) {
  AdversaryParams p = adversary_params(n, r_l, r_star_target);
  const Rational e = p.epsilon;
  const Rational block[4] = {kThird - Rational(2) * e, Rational(1, 6) - e, Rational(1, 6) - e,
                             Rational(12) * e};
  const Rational pair[2] = {Rational(1, 6) - e, Rational(3) * e};
  const Rational medium = kThird + e / Rational(2);
  const Rational large = Rational(1, 2) + e / Rational(2);

  std::vector<Rational> sizes;
  sizes.reserve(4 * p.n_ss + 2 * p.n_sl + p.n_medium + p.n_large);

  // Small phase: the shadow packer decides, before each emission, which
  // stream the next item comes from.
  PH3Packer shadow(PH3Config{p.r_l});
  std::size_t ss_pos = 0, ss_total = 4 * p.n_ss;
  std::size_t sl_pos = 0, sl_total = 2 * p.n_sl;
  while (ss_pos < ss_total || sl_pos < sl_total) {
    bool to_l = shadow.would_route_small_to_l();
    Rational sz;
    if ((to_l && sl_pos < sl_total) || ss_pos >= ss_total) {
      sz = pair[sl_pos % 2];
      ++sl_pos;
    } else {
      sz = block[ss_pos % 4];
      ++ss_pos;
    }
    Item it{sizes.size(), sz, classify(sz)};
    sizes.push_back(sz);
    shadow.step(it);
  }
  for (unsigned long i = 0; i < p.n_medium; ++i) sizes.push_back(medium);
  for (unsigned long i = 0; i < p.n_large; ++i) sizes.push_back(large);

  AdversaryInstance out;
  out.params = p;
  out.instance = make_instance("adversary n=" + std::to_string(n) + " r_l=" + p.r_l.str() +
                                   " r_star=" + p.r_star.str(),
                               sizes);
  out.realized_r_star = r_star(out.instance);
  out.predicted = predicted_counts(p);
  return out;
}

}  // namespace binpack

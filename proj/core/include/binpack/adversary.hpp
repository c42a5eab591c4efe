#pragma once

#include "binpack/model.hpp"
#include "binpack/rational.hpp"

namespace binpack {

// Parameters of the tightness-instance generator. For a scale n >= 1 and
// targets r_l (routing split) and r_star (large-vs-small balance), with
// e = 1/(12n + 2):
//   n_large  = ceil(4 r_star n)        items of 1/2 + e/2
//   n_medium = 0 if r_star <= 1/3,     items of 1/3 + e/2
//              floor((6 r_star - 2) n) otherwise
//   n_ss     = ceil((1 - r_l) n)       blocks (1/3-2e, 1/6-e, 1/6-e, 12e)
//   n_sl     = ceil(4 r_l n)           pairs  (1/6-e, 3e)
struct AdversaryParams {
  unsigned long n = 0;
  Rational r_l, r_star;
  Rational epsilon;
  unsigned long n_large = 0, n_medium = 0, n_ss = 0, n_sl = 0;
};

AdversaryParams adversary_params(unsigned long n, const Rational& r_l, const Rational& r_star);

// Closed-form predictions for the generated instance: a lower bound on the
// PH3(r_l) bin count and an upper bound on the FFD bin count. With
// d = r_l - r_star:
//   ph3_lower = 3 r_star n + max(d, 0) 4n + n_medium/2 + n - d n
//   ffd_upper = ((12 r_star + 4) n + 2 n_medium + 20) / 6
struct PredictedCounts {
  Rational ph3_lower;
  Rational ffd_upper;
};

PredictedCounts predicted_counts(const AdversaryParams& params);

// True when the ffd_upper closed form is a valid ceiling for this item mix.
// Its derivation assumes every large+medium bin absorbs one 1/6-piece and
// every large-only bin absorbs 1/2 - 3e of small mass (a lead plus a
// 1/6-piece, or three 1/6-pieces), so it needs enough 1/6-pieces to serve
// both: 2 n_ss + n_sl >= n_medium + min(n_ss, n_large - n_medium). A mix
// with no larges needs no absorption and is always fine. Once the balance
// parameter gets large relative to (2 + r_l)/3 the condition breaks and
// even an optimal packing exceeds the formula (leads cannot share a bin
// that already holds a large and a medium), so measured-FFD cross-checks
// must skip the ceiling there; ph3_lower holds for every mix.
bool ffd_bound_applicable(const AdversaryParams& params);

struct AdversaryInstance {
  AdversaryParams params;
  Instance instance;
  Rational realized_r_star;  // r_star() of the emitted instance
  PredictedCounts predicted;
};

// Emits the small items first (the two small streams adaptively interleaved:
// a shadow PH3 run with the same r_l decides, before every emission, whether
// the next small item would be routed to an L-bin — if so the next item of
// the pair stream is emitted, else the next item of the block stream; an
// exhausted stream drains the other), then the mediums, then the larges.
// The shadow is a real PH3Packer, so a replay with PH3(r_l) reproduces its
// routing decisions exactly. Note: emitted sizes carry their intended
// classes only for n >= 3 (at n <= 2, 12e is no longer a small size).
AdversaryInstance generate_adversary(unsigned long n, const Rational& r_l,
                                     const Rational& r_star);

}  // namespace binpack

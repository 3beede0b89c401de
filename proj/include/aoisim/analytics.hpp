#pragma once

#include "aoisim/model.hpp"

namespace aoisim {

// Moment description of the homogeneous system: iid sensor transmission times
// with (ex, varx), monitor link with (ex0, varx0).
struct HomogeneousParams {
  int n = 1;
  int s = 1;
  double ex = 1.0;
  double varx = 0.0;
  double ex0 = 1.0;
  double varx0 = 0.0;

  double eta1() const { return ex0 / ex; }
  double eta2() const { return varx0 / varx; }  // defined only for varx > 0
  void validate() const;

  // Requires iid sensors.
  static HomogeneousParams from_model(const SystemModel& model, int s);
};

// Moments of L = ceil((n - R)/s) with R uniform on {0, ..., s-1}: L counts
// the monitor transmissions between successive fresh deliveries of a sensor
// under max-age-first polling.
struct LMoments {
  double e_l = 1.0;
  double e_l2 = 1.0;
  double e_lr = 0.0;
};

// Exact enumeration over the s equally likely values of R.
LMoments l_moments(int n, int s);

// Closed-form average monitor age of any one sensor under max-age-first
// polling with threshold s:
//   Var[X](s+eta2)/(2 E[X](s+eta1)) + (E[L^2]/2E[L]) E[X](s+eta1)
//   + (E[LR]/E[L]) E[X] + (eta1+1) E[X].
// For varx = 0 the first term is taken as varx0/(2 E[X](s+eta1)).
double avg_age_exact(const HomogeneousParams& p);

// L ~= n/s approximation:
//   Var-term + E[X]((n/2s)(s+eta1) + (s-1)/2 + eta1 + 1).
double avg_age_approx(const HomogeneousParams& p);

// avg_age_approx with a real-valued threshold, for optimizer diagnostics
// (p.s is ignored).
double avg_age_approx_at(const HomogeneousParams& p, double s);

// Integer argmin of avg_age_exact over s in {1, ..., n}; ties break toward
// the smallest s.
int s_star(int n, double ex, double varx, double ex0, double varx0);

// Heuristic threshold round(sqrt(eta1 n)) (half-up), clamped to [1, n].
int s_hat(int n, double eta1);

}  // namespace aoisim

#include "aoisim/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aoisim {

void HomogeneousParams::validate() const {
  if (n < 1) throw std::invalid_argument("analytics: n must be at least 1");
  if (s < 1 || s > n)
    throw std::invalid_argument("analytics: require 1 <= s <= n, got s=" + std::to_string(s) +
                                " n=" + std::to_string(n));
  if (!(ex > 0) || !(ex0 > 0)) throw std::invalid_argument("analytics: means must be positive");
  if (varx < 0 || varx0 < 0) throw std::invalid_argument("analytics: variances must be nonnegative");
}

HomogeneousParams HomogeneousParams::from_model(const SystemModel& model, int s) {
  model.validate();
  if (!model.iid_sensors())
    throw std::invalid_argument("analytics: closed form requires iid sensors");
  HomogeneousParams p;
  p.n = model.n();
  p.s = s;
  p.ex = model.sensor_dists.front().mean();
  p.varx = model.sensor_dists.front().variance();
  p.ex0 = model.monitor_dist.mean();
  p.varx0 = model.monitor_dist.variance();
  p.validate();
  return p;
}

LMoments l_moments(int n, int s) {
  if (n < 1 || s < 1 || s > n)
    throw std::invalid_argument("l_moments: require 1 <= s <= n, got s=" + std::to_string(s) +
                                " n=" + std::to_string(n));
  double sum_l = 0, sum_l2 = 0, sum_lr = 0;
  for (int r = 0; r < s; ++r) {
    const double l = static_cast<double>((n - r + s - 1) / s);  // ceil((n-r)/s), all positive
    sum_l += l;
    sum_l2 += l * l;
    sum_lr += l * r;
  }
  return {sum_l / s, sum_l2 / s, sum_lr / s};
}

double avg_age_exact(const HomogeneousParams& p) {
  p.validate();
  const LMoments lm = l_moments(p.n, p.s);
  const double eta1 = p.eta1();
  // varx*(s+eta2) == varx*s + varx0, which also covers varx = 0.
  const double dispersion = (p.varx * p.s + p.varx0) / (2.0 * p.ex * (p.s + eta1));
  return dispersion + (lm.e_l2 / (2.0 * lm.e_l)) * p.ex * (p.s + eta1) +
         (lm.e_lr / lm.e_l) * p.ex + (eta1 + 1.0) * p.ex;
}

double avg_age_approx_at(const HomogeneousParams& p, double s) {
  const double eta1 = p.eta1();
  const double dispersion = (p.varx * s + p.varx0) / (2.0 * p.ex * (s + eta1));
  return dispersion +
         p.ex * ((p.n / (2.0 * s)) * (s + eta1) + 0.5 * (s - 1.0) + eta1 + 1.0);
}

double avg_age_approx(const HomogeneousParams& p) {
  p.validate();
  return avg_age_approx_at(p, static_cast<double>(p.s));
}

int s_star(int n, double ex, double varx, double ex0, double varx0) {
  HomogeneousParams p{n, 1, ex, varx, ex0, varx0};
  p.validate();
  int best = 1;
  double best_age = avg_age_exact(p);
  for (int s = 2; s <= n; ++s) {
    p.s = s;
    const double age = avg_age_exact(p);
    if (age < best_age) {
      best = s;
      best_age = age;
    }
  }
  return best;
}

int s_hat(int n, double eta1) {
  if (n < 1 || !(eta1 > 0)) throw std::invalid_argument("s_hat: need n >= 1 and eta1 > 0");
  const int rounded = static_cast<int>(std::floor(std::sqrt(eta1 * n) + 0.5));
  return std::max(1, std::min(n, rounded));
}

}  // namespace aoisim

#pragma once

#include <string>
#include <utility>
#include <variant>

#include "aoisim/rng.hpp"

namespace aoisim {

enum class DistKind { Deterministic, Uniform, Exponential, TruncatedGaussian, Hyperexponential };

// A parametric transmission-time law with exact first and second moments and
// seeded sampling. Immutable once constructed; all parameters are validated
// at construction (std::invalid_argument on bad input). Every sample is
// strictly positive and finite.
class DistributionSpec {
 public:
  static DistributionSpec deterministic(double value);
  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec exponential(double mean);
  // mu/sigma are the parameters of the underlying Gaussian; the law is that
  // Gaussian restricted to (0, inf). Configurations with acceptance
  // probability below 1e-6 (mu/sigma <= -4.75) are rejected.
  static DistributionSpec truncated_gaussian(double mu, double sigma);
  static DistributionSpec hyperexponential(double p, double mean1, double mean2);

  DistKind kind() const;

  // Exact analytical moments. For TruncatedGaussian these are the
  // post-truncation moments of the Gaussian restricted to (0, inf).
  double mean() const;
  double variance() const;
  std::pair<double, double> moments() const { return {mean(), variance()}; }

  // One strictly positive draw; advances the stream deterministically.
  // TruncatedGaussian redraws on non-positive values.
  double sample(RngStream& rng) const;

  // Config grammar form, e.g. "exp(mean=1)"; parseable by parse_distribution.
  std::string to_string() const;

  bool operator==(const DistributionSpec&) const = default;

  struct Det {
    double value;
    bool operator==(const Det&) const = default;
  };
  struct Unif {
    double lo, hi;
    bool operator==(const Unif&) const = default;
  };
  struct Expo {
    double mean;
    bool operator==(const Expo&) const = default;
  };
  struct TNorm {
    double mu, sigma;
    bool operator==(const TNorm&) const = default;
  };
  struct HyperExp {
    double p, mean1, mean2;
    bool operator==(const HyperExp&) const = default;
  };

 private:
  using Rep = std::variant<Det, Unif, Expo, TNorm, HyperExp>;
  explicit DistributionSpec(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// Two-phase balanced-means hyperexponential matching the requested mean and
// variance: with c2 = variance/mean^2,
//   p = (1 + sqrt((c2-1)/(c2+1))) / 2,  mean1 = mean/(2p),  mean2 = mean/(2(1-p)).
// Requires c2 > 1 (coefficient of variation above 1).
DistributionSpec fit_hyperexponential(double mean, double variance);

// Builds a spec of the given kind from target (mean, variance):
//   det   : variance must be 0
//   exp   : variance is forced to mean^2; passing a different one is an error
//   unif  : lo = mean - sqrt(3 var), hi = mean + sqrt(3 var); lo must be >= 0
//   tnorm : (mu, sigma^2) = (mean, variance) pre-truncation convention
//   hyperexp : balanced-means fit (variance/mean^2 > 1)
// Pass a negative variance to mean "whatever the family implies" (det, exp).
DistributionSpec dist_from_moments(DistKind kind, double mean, double variance);

// Parses the config grammar: det(1), unif(lo=0, hi=10), exp(mean=1),
// tnorm(mu=50, sigma=5), hyperexp(mean=20, var=1300) or
// hyperexp(p=0.8, mean1=10, mean2=70). Arguments may be positional (in the
// order shown) or key=value. Throws std::invalid_argument with a message
// naming the offending token.
DistributionSpec parse_distribution(const std::string& text);

// "det", "unif", ... as used in the config grammar.
DistKind parse_dist_kind(const std::string& name);
std::string dist_kind_name(DistKind kind);

}  // namespace aoisim

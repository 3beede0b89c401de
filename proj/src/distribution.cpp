#include "aoisim/distribution.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

namespace aoisim {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// P(N(0,1) > a)
double normal_upper_tail(double a) { return 0.5 * std::erfc(a / kSqrt2); }

double normal_pdf(double a) { return kInvSqrt2Pi * std::exp(-0.5 * a * a); }

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DistributionSpec DistributionSpec::deterministic(double value) {
  if (!(value > 0) || !std::isfinite(value)) fail("det: value must be positive and finite");
  return DistributionSpec(Det{value});
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  if (!(lo >= 0) || !(hi > lo) || !std::isfinite(hi))
    fail("unif: require 0 <= lo < hi, got lo=" + fmt(lo) + " hi=" + fmt(hi));
  return DistributionSpec(Unif{lo, hi});
}

DistributionSpec DistributionSpec::exponential(double mean) {
  if (!(mean > 0) || !std::isfinite(mean)) fail("exp: mean must be positive and finite");
  return DistributionSpec(Expo{mean});
}

DistributionSpec DistributionSpec::truncated_gaussian(double mu, double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma) || !std::isfinite(mu))
    fail("tnorm: sigma must be positive and finite");
  // Acceptance probability of the positive-part rejection sampler is
  // Phi(mu/sigma); below 1e-6 the sampler would effectively loop forever.
  if (mu / sigma <= -4.75)
    fail("tnorm: acceptance probability below 1e-6 (mu/sigma = " + fmt(mu / sigma) +
         " <= -4.75); configuration rejected");
  return DistributionSpec(TNorm{mu, sigma});
}

DistributionSpec DistributionSpec::hyperexponential(double p, double mean1, double mean2) {
  if (!(p > 0) || !(p < 1)) fail("hyperexp: p must lie in (0,1), got " + fmt(p));
  if (!(mean1 > 0) || !(mean2 > 0) || !std::isfinite(mean1) || !std::isfinite(mean2))
    fail("hyperexp: phase means must be positive and finite");
  return DistributionSpec(HyperExp{p, mean1, mean2});
}

DistKind DistributionSpec::kind() const {
  switch (rep_.index()) {
    case 0: return DistKind::Deterministic;
    case 1: return DistKind::Uniform;
    case 2: return DistKind::Exponential;
    case 3: return DistKind::TruncatedGaussian;
    default: return DistKind::Hyperexponential;
  }
}

double DistributionSpec::mean() const {
  struct V {
    double operator()(const Det& d) const { return d.value; }
    double operator()(const Unif& u) const { return 0.5 * (u.lo + u.hi); }
    double operator()(const Expo& e) const { return e.mean; }
    double operator()(const TNorm& t) const {
      const double a = -t.mu / t.sigma;
      const double lambda = normal_pdf(a) / normal_upper_tail(a);
      return t.mu + t.sigma * lambda;
    }
    double operator()(const HyperExp& h) const { return h.p * h.mean1 + (1 - h.p) * h.mean2; }
  };
  return std::visit(V{}, rep_);
}

double DistributionSpec::variance() const {
  struct V {
    double operator()(const Det&) const { return 0.0; }
    double operator()(const Unif& u) const {
      const double w = u.hi - u.lo;
      return w * w / 12.0;
    }
    double operator()(const Expo& e) const { return e.mean * e.mean; }
    double operator()(const TNorm& t) const {
      const double a = -t.mu / t.sigma;
      const double lambda = normal_pdf(a) / normal_upper_tail(a);
      return t.sigma * t.sigma * (1.0 + a * lambda - lambda * lambda);
    }
    double operator()(const HyperExp& h) const {
      // E[X^2] of an exponential mixture: sum of p_i * 2 m_i^2.
      const double m2 = 2.0 * (h.p * h.mean1 * h.mean1 + (1 - h.p) * h.mean2 * h.mean2);
      const double m = h.p * h.mean1 + (1 - h.p) * h.mean2;
      return m2 - m * m;
    }
  };
  return std::visit(V{}, rep_);
}

double DistributionSpec::sample(RngStream& rng) const {
  struct V {
    RngStream& rng;
    double operator()(const Det& d) const { return d.value; }
    double operator()(const Unif& u) const { return rng.next_uniform(u.lo, u.hi); }
    double operator()(const Expo& e) const { return rng.next_exponential(e.mean); }
    double operator()(const TNorm& t) const {
      for (;;) {
        const double x = rng.next_normal(t.mu, t.sigma);
        if (x > 0) return x;
      }
    }
    double operator()(const HyperExp& h) const {
      const double mean = rng.next_u01() < h.p ? h.mean1 : h.mean2;
      return rng.next_exponential(mean);
    }
  };
  return std::visit(V{rng}, rep_);
}

std::string DistributionSpec::to_string() const {
  struct V {
    std::string operator()(const Det& d) const { return "det(" + fmt(d.value) + ")"; }
    std::string operator()(const Unif& u) const {
      return "unif(lo=" + fmt(u.lo) + ", hi=" + fmt(u.hi) + ")";
    }
    std::string operator()(const Expo& e) const { return "exp(mean=" + fmt(e.mean) + ")"; }
    std::string operator()(const TNorm& t) const {
      return "tnorm(mu=" + fmt(t.mu) + ", sigma=" + fmt(t.sigma) + ")";
    }
    std::string operator()(const HyperExp& h) const {
      return "hyperexp(p=" + fmt(h.p) + ", mean1=" + fmt(h.mean1) + ", mean2=" + fmt(h.mean2) + ")";
    }
  };
  return std::visit(V{}, rep_);
}

DistributionSpec fit_hyperexponential(double mean, double variance) {
  if (!(mean > 0)) fail("hyperexp fit: mean must be positive");
  const double c2 = variance / (mean * mean);
  if (!(c2 > 1.0))
    fail("hyperexp fit infeasible: variance/mean^2 = " + fmt(c2) +
         " <= 1 (needs coefficient of variation above 1)");
  const double p = 0.5 * (1.0 + std::sqrt((c2 - 1.0) / (c2 + 1.0)));
  return DistributionSpec::hyperexponential(p, mean / (2.0 * p), mean / (2.0 * (1.0 - p)));
}

DistributionSpec dist_from_moments(DistKind kind, double mean, double variance) {
  switch (kind) {
    case DistKind::Deterministic:
      if (variance > 0) fail("det: cannot match a positive variance");
      return DistributionSpec::deterministic(mean);
    case DistKind::Exponential:
      if (variance >= 0 && std::abs(variance - mean * mean) > 1e-9 * mean * mean)
        fail("exp: variance is forced to mean^2; requested " + fmt(variance));
      return DistributionSpec::exponential(mean);
    case DistKind::Uniform: {
      if (!(variance > 0)) fail("unif: needs a positive variance");
      const double h = std::sqrt(3.0 * variance);
      if (mean - h < 0)
        fail("unif: moments (" + fmt(mean) + ", " + fmt(variance) +
             ") put the lower endpoint below 0");
      return DistributionSpec::uniform(mean - h, mean + h);
    }
    case DistKind::TruncatedGaussian: {
      if (!(variance > 0)) fail("tnorm: needs a positive variance");
      return DistributionSpec::truncated_gaussian(mean, std::sqrt(variance));
    }
    case DistKind::Hyperexponential: return fit_hyperexponential(mean, variance);
  }
  fail("unknown distribution kind");
}

DistKind parse_dist_kind(const std::string& name) {
  if (name == "det") return DistKind::Deterministic;
  if (name == "unif") return DistKind::Uniform;
  if (name == "exp") return DistKind::Exponential;
  if (name == "tnorm") return DistKind::TruncatedGaussian;
  if (name == "hyperexp") return DistKind::Hyperexponential;
  fail("unknown distribution kind '" + name + "' (expected det|unif|exp|tnorm|hyperexp)");
}

std::string dist_kind_name(DistKind kind) {
  switch (kind) {
    case DistKind::Deterministic: return "det";
    case DistKind::Uniform: return "unif";
    case DistKind::Exponential: return "exp";
    case DistKind::TruncatedGaussian: return "tnorm";
    case DistKind::Hyperexponential: return "hyperexp";
  }
  return "?";
}

namespace {

struct Args {
  std::vector<double> positional;
  std::map<std::string, double> named;

  // Fetch by name, falling back to positional slot `pos`.
  bool get(const std::string& key, size_t pos, double& out) const {
    if (auto it = named.find(key); it != named.end()) {
      out = it->second;
      return true;
    }
    if (pos < positional.size()) {
      out = positional[pos];
      return true;
    }
    return false;
  }

  double require(const std::string& key, size_t pos, const std::string& ctx) const {
    double v;
    if (!get(key, pos, v)) fail(ctx + ": missing argument '" + key + "'");
    return v;
  }
};

Args parse_args(const std::string& body, const std::string& ctx) {
  Args args;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
  };
  skip_ws();
  while (i < body.size()) {
    size_t start = i;
    while (i < body.size() && body[i] != ',') ++i;
    std::string tok = body.substr(start, i - start);
    if (i < body.size()) ++i;  // consume comma
    // trim
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) fail(ctx + ": empty argument");
    tok = tok.substr(a, b - a + 1);
    std::string key;
    std::string val = tok;
    if (size_t eq = tok.find('='); eq != std::string::npos) {
      key = tok.substr(0, eq);
      val = tok.substr(eq + 1);
      while (!key.empty() && key.back() == ' ') key.pop_back();
      while (!val.empty() && val.front() == ' ') val.erase(val.begin());
    }
    char* end = nullptr;
    const double num = std::strtod(val.c_str(), &end);
    if (end == val.c_str() || *end != '\0')
      fail(ctx + ": '" + val + "' is not a number");
    if (key.empty()) {
      if (!args.named.empty()) fail(ctx + ": positional argument after named ones");
      args.positional.push_back(num);
    } else {
      if (args.named.count(key)) fail(ctx + ": duplicate argument '" + key + "'");
      args.named[key] = num;
    }
    skip_ws();
  }
  return args;
}

}  // namespace

DistributionSpec parse_distribution(const std::string& text) {
  const size_t open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    fail("distribution '" + text + "' is not of the form kind(args)");
  std::string name = text.substr(0, open);
  // trim name
  size_t a = name.find_first_not_of(" \t");
  size_t b = name.find_last_not_of(" \t");
  if (a == std::string::npos) fail("distribution '" + text + "' has no kind");
  name = name.substr(a, b - a + 1);
  const DistKind kind = parse_dist_kind(name);
  const Args args = parse_args(text.substr(open + 1, text.size() - open - 2), name);

  switch (kind) {
    case DistKind::Deterministic:
      return DistributionSpec::deterministic(args.require("value", 0, name));
    case DistKind::Uniform:
      return DistributionSpec::uniform(args.require("lo", 0, name), args.require("hi", 1, name));
    case DistKind::Exponential:
      return DistributionSpec::exponential(args.require("mean", 0, name));
    case DistKind::TruncatedGaussian:
      return DistributionSpec::truncated_gaussian(args.require("mu", 0, name),
                                                  args.require("sigma", 1, name));
    case DistKind::Hyperexponential: {
      // Either explicit phases (p, mean1, mean2) or a moment fit (mean, var);
      // three positional arguments mean phases, two mean a fit.
      const bool phases = args.named.count("p") || args.named.count("mean1") ||
                          args.named.count("mean2") || args.positional.size() == 3;
      if (phases) {
        return DistributionSpec::hyperexponential(args.require("p", 0, name),
                                                  args.require("mean1", 1, name),
                                                  args.require("mean2", 2, name));
      }
      return fit_hyperexponential(args.require("mean", 0, name), args.require("var", 1, name));
    }
  }
  fail("unreachable");
}

}  // namespace aoisim

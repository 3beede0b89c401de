#include <doctest.h>

#include <cmath>
#include <set>

#include "aoisim/distribution.hpp"
#include "test_util.hpp"

using namespace aoisim;

TEST_CASE("moments of the basic families") {
  CHECK(DistributionSpec::deterministic(1.0).mean() == 1.0);
  CHECK(DistributionSpec::deterministic(1.0).variance() == 0.0);

  const auto u = DistributionSpec::uniform(0.0, 10.0);
  CHECK(u.mean() == doctest::Approx(5.0));
  CHECK(u.variance() == doctest::Approx(100.0 / 12.0));

  const auto e = DistributionSpec::exponential(2.0);
  CHECK(e.mean() == doctest::Approx(2.0));
  CHECK(e.variance() == doctest::Approx(4.0));
}

TEST_CASE("truncated gaussian moments match quadrature") {
  for (auto [mu, sigma] : {std::pair{1.0, 2.0}, {50.0, 5.0}, {0.5, 1.0}, {-1.0, 1.0}}) {
    const auto d = DistributionSpec::truncated_gaussian(mu, sigma);
    const auto [qm, qv] = testutil::tnorm_moments_quadrature(mu, sigma);
    CAPTURE(mu);
    CAPTURE(sigma);
    CHECK(d.mean() == doctest::Approx(qm).epsilon(1e-9));
    CHECK(d.variance() == doctest::Approx(qv).epsilon(1e-8));
  }
  // mu/sigma = 10: truncation correction is far below double noise.
  const auto paper = DistributionSpec::truncated_gaussian(50.0, 5.0);
  CHECK(paper.mean() == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(paper.variance() == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("hyperexponential fit hits the requested moments") {
  const auto d = fit_hyperexponential(20.0, 1300.0);
  CHECK(d.mean() == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(d.variance() == doctest::Approx(1300.0).epsilon(1e-12));

  // Nearly exponential limit: both phases collapse onto the mean.
  const auto near = fit_hyperexponential(1.0, 1.0 + 1e-9);
  const auto [m, v] = near.moments();
  CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v == doctest::Approx(1.0).epsilon(1e-6));

  const auto big = fit_hyperexponential(50.0, 5000.0);
  CHECK(big.mean() == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(big.variance() == doctest::Approx(5000.0).epsilon(1e-12));
  // Monte Carlo cross-check: sample mean within 3 standard errors.
  const auto xs = testutil::draw(big, 77, 1000000);
  const auto st = testutil::sample_stats(xs);
  CHECK(std::abs(st.mean - 50.0) < 3.0 * std::sqrt(5000.0 / 1e6));

  // Any hyperexponential has coefficient of variation >= 1.
  for (auto [p, m1, m2] : {std::tuple{0.3, 1.0, 5.0}, {0.9, 0.1, 10.0}, {0.5, 2.0, 2.0}}) {
    const auto h = DistributionSpec::hyperexponential(p, m1, m2);
    CHECK(h.variance() / (h.mean() * h.mean()) >= doctest::Approx(1.0));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(DistributionSpec::deterministic(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::uniform(5.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::uniform(-1.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::exponential(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::truncated_gaussian(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::hyperexponential(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::hyperexponential(1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_hyperexponential(2.0, 4.0), std::invalid_argument);   // cv = 1
  CHECK_THROWS_AS(fit_hyperexponential(2.0, 1.0), std::invalid_argument);   // cv < 1
  // Rejection sampler would need > 1e6 attempts per draw.
  CHECK_THROWS_AS(DistributionSpec::truncated_gaussian(-4.76, 1.0), std::invalid_argument);
  CHECK_NOTHROW(DistributionSpec::truncated_gaussian(-4.0, 1.0));
}

TEST_CASE("sampling") {
  RngStream rng(1);
  const auto det = DistributionSpec::deterministic(2.5);
  for (int i = 0; i < 10; ++i) CHECK(det.sample(rng) == 2.5);

  // Law of large numbers at 3 sigma.
  const auto exp1 = DistributionSpec::exponential(1.0);
  const auto xs = testutil::draw(exp1, 42, 1000000);
  const auto st = testutil::sample_stats(xs);
  CHECK(std::abs(st.mean - 1.0) < 0.004);
  CHECK(st.min > 0.0);

  const auto tn = DistributionSpec::truncated_gaussian(50.0, 5.0);
  const auto ys = testutil::draw(tn, 43, 1000000);
  const auto ts = testutil::sample_stats(ys);
  CHECK(ts.min > 0.0);
  CHECK(std::abs(ts.mean - 50.0) < 0.02);
}

TEST_CASE("sample moments match analytic moments within 4 standard errors") {
  const DistributionSpec specs[] = {
      DistributionSpec::deterministic(3.0),
      DistributionSpec::uniform(0.0, 10.0),
      DistributionSpec::exponential(1.0),
      DistributionSpec::truncated_gaussian(1.0, 2.0),
      fit_hyperexponential(20.0, 1300.0),
  };
  std::uint64_t seed = 1000;
  for (const auto& spec : specs) {
    CAPTURE(spec.to_string());
    const auto xs = testutil::draw(spec, seed++, 1000000);
    const auto st = testutil::sample_stats(xs);
    CHECK(st.min > 0.0);
    if (spec.variance() == 0.0) {
      CHECK(st.mean == spec.mean());
      CHECK(st.variance == 0.0);
    } else {
      CHECK(std::abs(st.mean - spec.mean()) <= 4.0 * std::sqrt(spec.variance() / 1e6));
      CHECK(std::abs(st.variance - spec.variance()) <= 4.0 * st.se_variance);
    }
  }
}

TEST_CASE("seeded replay and derived streams") {
  const auto spec = fit_hyperexponential(5.0, 100.0);
  const auto a = testutil::draw(spec, 987654321, 1000);
  const auto b = testutil::draw(spec, 987654321, 1000);
  CHECK(a == b);  // bit-identical replay

  const auto c = testutil::draw(spec, 987654322, 1000);
  CHECK(a != c);

  std::set<std::uint64_t> derived;
  for (std::uint64_t r = 0; r < 1000; ++r) derived.insert(RngStream::derive(123, r));
  CHECK(derived.size() == 1000);
}

TEST_CASE("distribution grammar round-trips") {
  const DistributionSpec specs[] = {
      DistributionSpec::deterministic(1.0),
      DistributionSpec::uniform(0.0, 10.0),
      DistributionSpec::exponential(1.0),
      DistributionSpec::truncated_gaussian(50.0, 5.0),
      fit_hyperexponential(20.0, 1300.0),
  };
  for (const auto& spec : specs) {
    CAPTURE(spec.to_string());
    CHECK(parse_distribution(spec.to_string()) == spec);
  }

  CHECK(parse_distribution("det(1)") == DistributionSpec::deterministic(1.0));
  CHECK(parse_distribution("unif(lo=0, hi=10)") == DistributionSpec::uniform(0.0, 10.0));
  CHECK(parse_distribution("exp(mean=1)") == DistributionSpec::exponential(1.0));
  CHECK(parse_distribution("tnorm(mu=50, sigma=5)") ==
        DistributionSpec::truncated_gaussian(50.0, 5.0));
  const auto fitted = parse_distribution("hyperexp(mean=20, var=1300)");
  CHECK(fitted.mean() == doctest::Approx(20.0));
  CHECK(fitted.variance() == doctest::Approx(1300.0));
  CHECK(parse_distribution("hyperexp(0.5, 1, 3)") ==
        DistributionSpec::hyperexponential(0.5, 1.0, 3.0));

  CHECK_THROWS_AS(parse_distribution("gamma(1,2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution("exp[mean=1]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution("exp(mean=abc)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution("unif(lo=0)"), std::invalid_argument);
}

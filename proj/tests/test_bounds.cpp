#include <catch2/catch_amalgamated.hpp>

#include "qrr/bounds.hpp"
#include "qrr/rng.hpp"
#include "qrr/synth.hpp"

using namespace qrr;
using numkit::RMatrix;
using numkit::RVector;

TEST_CASE("h_max case formulas") {
  // middle case: (N+M)/(2 sqrt(alpha))
  REQUIRE(bounds::h_max(10.0, 2.0, 50.0) == Catch::Approx(10.0 / (2.0 * std::sqrt(50.0))));
  REQUIRE(bounds::h_max(10.0, 2.0, 50.0) == Catch::Approx(0.70710678).epsilon(1e-6));

  // at alpha = (N+M)^2 the middle formula gives exactly 1/2
  REQUIRE(bounds::h_max(10.0, 3.0, 100.0) == Catch::Approx(0.5));

  REQUIRE_THROWS_AS(bounds::h_max(10.0, 2.0, 0.0), input_error);
}

TEST_CASE("h_max agrees with the grid oracle across cases") {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const double dim_sum = rng.uniform(5.0, 30.0);
    const double kappa = rng.uniform(1.3, 12.0);
    const double s2 = dim_sum * dim_sum;
    // span cases: below, inside, above the window
    const double alpha = std::exp(rng.uniform(std::log(s2 / (20.0 * kappa * kappa)),
                                              std::log(3.0 * s2)));
    const double formula = bounds::h_max(dim_sum, kappa, alpha);
    const double grid = bounds::grid_max_abs(dim_sum, kappa, alpha, false);
    REQUIRE(formula == Catch::Approx(grid).epsilon(1e-6));
  }
}

TEST_CASE("h_max is continuous at the case breakpoints") {
  const double dim_sum = 9.0, kappa = 3.0;
  const double s2 = dim_sum * dim_sum;
  for (double breakpoint : {s2 / (kappa * kappa), s2}) {
    const double below = bounds::h_max(dim_sum, kappa, breakpoint * (1.0 - 1e-9));
    const double above = bounds::h_max(dim_sum, kappa, breakpoint * (1.0 + 1e-9));
    REQUIRE(std::abs(below - above) <= 1e-6 * below);
  }
}

TEST_CASE("h_ratio_bound") {
  REQUIRE(bounds::h_ratio_bound(2.0) == Catch::Approx(2.5));
  REQUIRE(bounds::h_ratio_bound(1.0) == Catch::Approx(2.0));

  // kappa = 1 collapses the interval: the empirical ratio is exactly 1
  {
    const double lo = 10.0 / 1.0, hi = 10.0;
    REQUIRE(lo == hi);
  }

  // empirical ratio stays below the bound over a sweep of alpha
  Rng rng(2);
  const double kappa = 5.0, dim_sum = 12.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = std::exp(rng.uniform(std::log(0.5), std::log(300.0)));
    double hmax = 0.0, hmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 2000; ++i) {
      const double lam = dim_sum / kappa + (dim_sum - dim_sum / kappa) * i / 2000.0;
      const double h = bounds::h_filter(dim_sum, lam, alpha);
      hmax = std::max(hmax, h);
      hmin = std::min(hmin, h);
    }
    REQUIRE(hmax / hmin <= 5.2);
    REQUIRE(hmax / hmin <= bounds::h_ratio_bound(kappa) * (1.0 + 1e-9));
  }
}

TEST_CASE("g_max interior-case value and the interior root") {
  const double dim_sum = 10.0, kappa = 3.0;
  // case (2): alpha between s2/((2+sqrt5) k^2) and s2/k^2
  const double alpha = 5.0;
  const double phi = 2.0 + std::sqrt(5.0);
  const double expected =
      (1.0 + std::sqrt(5.0)) / (std::sqrt(phi) * (3.0 + std::sqrt(5.0)) * std::sqrt(alpha));
  REQUIRE(bounds::g_max(dim_sum, kappa, alpha) == Catch::Approx(expected));
  // the quoted 0.3/sqrt(alpha) approximation
  REQUIRE(expected == Catch::Approx(0.3 / std::sqrt(alpha)).epsilon(0.02));

  // g vanishes at lambda = sqrt(alpha)
  REQUIRE(std::abs(bounds::g_envelope(std::sqrt(alpha), alpha)) <= 1e-15);
}

TEST_CASE("g_max agrees with the grid oracle across all five cases") {
  Rng rng(3);
  const double phi = 2.0 + std::sqrt(5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double dim_sum = rng.uniform(5.0, 30.0);
    const double kappa = rng.uniform(2.2, 12.0);  // case list assumes kappa^2 > 2+sqrt(5)
    const double s2 = dim_sum * dim_sum;
    const double lo = s2 / (2.0 * phi * kappa * kappa);
    const double alpha = std::exp(rng.uniform(std::log(lo), std::log(3.0 * s2)));
    const double formula = bounds::g_max(dim_sum, kappa, alpha);
    const double grid = bounds::grid_max_abs(dim_sum, kappa, alpha, true);
    REQUIRE(formula == Catch::Approx(grid).epsilon(1e-6));
  }
}

TEST_CASE("weyl interval with an all-zero fold is tight") {
  RMatrix x(4, 3);
  x << 0, 0, 0, 1.2, -0.4, 0.3, 0.7, 0.9, -1.1, 0.2, 0.5, 0.8;
  RVector y(4);
  y << 0, 1, -1, 0.5;
  const ridge::Dataset d(x, y);
  const auto p = ridge::partition_folds(4, 4);
  const auto res = bounds::weyl_interval(d, p, 0);  // fold {0} is a zero row
  REQUIRE(res.report.satisfied);
  // masking a zero row changes nothing: paired singular values coincide
  const auto f = numkit::svd(x.cast<numkit::Complex>());
  REQUIRE(res.upper == Catch::Approx(f.singular_values(0) * f.singular_values(0)));
  REQUIRE(res.report.empirical_value ==
          Catch::Approx(f.singular_values(2) * f.singular_values(2)));
}

TEST_CASE("weyl interval holds on leave-one-out folds") {
  for (std::uint64_t seed = 5; seed < 10; ++seed) {
    synth::GenSpec spec;
    spec.n = 6;
    spec.m = 3;
    spec.spectrum = {9.0, 5.0, 2.0};
    spec.noise_level = 0.2;
    spec.seed = seed;
    const ridge::Dataset d = synth::generate(spec);
    const auto p = ridge::partition_folds(6, 6);
    for (int l = 0; l < 6; ++l) {
      const auto res = bounds::weyl_interval(d, p, l);
      REQUIRE(res.report.satisfied);
      // the top masked singular value never exceeds the full one
      const auto fm = numkit::svd(ridge::masked_design(d, p, l).X_minus.cast<numkit::Complex>());
      REQUIRE(fm.singular_values(0) <= std::sqrt(res.upper) + 1e-9);
    }
  }
}

TEST_CASE("k_min_recommendation clamps and scales") {
  const ridge::Dataset ident(RMatrix::Identity(3, 3), RVector::Ones(3));
  REQUIRE(bounds::k_min_recommendation(ident) == 2);  // kappa = 1, small X

  synth::GenSpec spec;
  spec.n = 8;
  spec.m = 4;
  spec.spectrum = {12.0, 8.0, 5.0, 3.0};  // kappa = 4
  spec.seed = 12;
  const ridge::Dataset d = synth::generate(spec);
  const int k = bounds::k_min_recommendation(d);
  REQUIRE(k >= 2);
  REQUIRE(k <= 8);  // leave-one-out always satisfies the recommendation
  const double s2 = 144.0;
  const double raw = std::ceil(8.0 * 4.0 * d.x_max * d.x_max * 16.0 / s2);
  REQUIRE(k == static_cast<int>(std::clamp(raw, 2.0, 8.0)));
}

TEST_CASE("pw chain inequality is an equality on duplicated halves") {
  RMatrix a(2, 2);
  a << 1.0, 0.3, -0.2, 0.8;
  RMatrix x(4, 2);
  x << a, a;
  RVector y(4);
  y << 0.7, -0.4, 0.7, -0.4;
  const ridge::Dataset d(x, y);
  const auto p = ridge::partition_folds(4, 2);
  const auto rep = bounds::pw_lower_bound(d, p, 1.0, 0.1);
  REQUIRE(rep.satisfied);
  REQUIRE(rep.empirical_value == Catch::Approx(rep.analytic_value).epsilon(1e-12));
}

TEST_CASE("pw chain inequality holds on random instances") {
  for (std::uint64_t seed = 15; seed < 25; ++seed) {
    synth::GenSpec spec;
    spec.n = 4;
    spec.m = 3;
    spec.spectrum = {7.0, 4.0, 2.0};
    spec.noise_level = 0.3;
    spec.seed = seed;
    const ridge::Dataset d = synth::generate(spec);
    for (int k : {2, 4}) {
      const auto p = ridge::partition_folds(4, k);
      REQUIRE(bounds::pw_lower_bound(d, p, 1.0, 0.1).satisfied);
    }
  }
}

TEST_CASE("good-fit bounds on planted instances") {
  // folds must stay over-determined (N - N/K >= M) or the held-out residual
  // is dominated by the rank deficiency rather than the fit
  synth::GenSpec spec;
  spec.n = 8;
  spec.m = 3;
  spec.spectrum = {11.0, 7.7, 4.4};
  spec.beta = {1.0, 0.4, 0.2};
  spec.noise_level = 0.0;
  spec.seed = 21;
  const ridge::Dataset d = synth::generate(spec);
  const auto p = ridge::partition_folds(8, 2);
  const double alpha = 121.0 / (10.0 * d.kappa * d.kappa);  // low end of the window

  const auto exact_fit = bounds::p1_p2_goodfit_bounds(d, p, alpha);
  REQUIRE(exact_fit.applicable);
  REQUIRE(exact_fit.w_norm.satisfied);
  REQUIRE(exact_fit.p1.satisfied);
  REQUIRE(exact_fit.p2.satisfied);
  REQUIRE(exact_fit.p2.empirical_value >= 0.99);

  // one percent noise
  spec.noise_level = 0.01;
  const ridge::Dataset dn = synth::generate(spec);
  const auto noisy = bounds::p1_p2_goodfit_bounds(dn, p, alpha);
  REQUIRE(noisy.p2.empirical_value >= 0.99);

  // the ||w_l|| bound holds regardless of fit quality
  spec.noise_level = 0.8;
  const ridge::Dataset bad = synth::generate(spec);
  const auto poor = bounds::p1_p2_goodfit_bounds(bad, p, alpha);
  REQUIRE(poor.w_norm.satisfied);
  REQUIRE(poor.p1.satisfied);  // flagged not-applicable, never a failure
  REQUIRE(poor.p2.satisfied);
}

TEST_CASE("rank-kappa bound saturates on a flat Hadamard spectrum") {
  RMatrix h4(4, 4);
  h4 << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
  const RMatrix x = 4.0 * h4;  // singular values all equal 8 = N+M
  const ridge::Dataset d(x, RVector::Ones(4));
  const auto rep = bounds::rank_kappa_bound(d);
  REQUIRE(rep.applicable);
  REQUIRE(rep.satisfied);
  REQUIRE(rep.empirical_value == Catch::Approx(rep.analytic_value).epsilon(1e-9));
}

TEST_CASE("rank-kappa bound on rank-1 and random convention instances") {
  RMatrix u(3, 1), v(2, 1);
  u << 0.6, 0.8, 0.0;
  v << 1.0, 0.0;
  const RMatrix x = 5.0 * u * v.transpose();  // single singular value 5 = N+M
  const ridge::Dataset d(x, RVector::Ones(3));
  const auto rep = bounds::rank_kappa_bound(d);
  REQUIRE(rep.applicable);
  REQUIRE(rep.satisfied);

  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    synth::GenSpec spec;
    spec.n = 5;
    spec.m = 4;
    spec.spectrum = {9.0, 6.0, 4.0, 3.0};
    spec.noise_level = 0.1;
    spec.seed = seed;
    const ridge::Dataset dr = synth::generate(spec);
    const auto r = bounds::rank_kappa_bound(dr);
    REQUIRE(r.applicable);
    REQUIRE(r.satisfied);
  }

  // convention violated: flagged not-applicable
  const ridge::Dataset off(RMatrix::Identity(3, 3), RVector::Ones(3));
  REQUIRE_FALSE(bounds::rank_kappa_bound(off).applicable);
  REQUIRE(bounds::rank_kappa_bound(off).satisfied);
}

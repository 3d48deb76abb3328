#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fcut/error.hpp"
#include "fcut/monotone_smooth.hpp"
#include "fcut/rng.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("pava on hand-checked inputs") {
  CHECK(fcut::pava(std::vector<double>{1, 3, 2}) == std::vector<double>{1, 2.5, 2.5});
  CHECK(fcut::pava(std::vector<double>{3, 2, 1}) == std::vector<double>{2, 2, 2});
  const std::vector<double> sorted{1, 1, 2, 5, 9};
  CHECK(fcut::pava(sorted) == sorted);
  CHECK(fcut::pava(std::vector<double>{}).empty());
  // Weighted: (3*1 + 1*0) / 4
  CHECK(fcut::pava(std::vector<double>{1, 0}, std::vector<double>{3, 1}) ==
        std::vector<double>{0.75, 0.75});
  CHECK_THROWS_AS(fcut::pava(std::vector<double>{1, 2}, std::vector<double>{1}), fcut::Error);
  CHECK_THROWS_AS(fcut::pava(std::vector<double>{1, 2}, std::vector<double>{1, 0}), fcut::Error);
}

TEST_CASE("pava matches brute-force monotone least squares") {
  fcut::SplitMix64 rng(44);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<double> y(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = t % 2 ? static_cast<double>(rng.below(5)) : rng.uniform(-10, 10);
      w[i] = t % 3 ? 1.0 : rng.uniform(0.1, 3.0);
    }
    const auto fit = fcut::pava(y, w);
    const auto ref = oracle::brute_isotonic(y, w);
    REQUIRE(fit.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(fit[i], WithinAbs(ref[i], 1e-9));
    CHECK(std::is_sorted(fit.begin(), fit.end()));
    CHECK(fcut::pava(fit, w) == fit);
    double wm0 = 0, wm1 = 0;
    for (std::size_t i = 0; i < n; ++i) wm0 += w[i] * y[i], wm1 += w[i] * fit[i];
    CHECK_THAT(wm1, WithinAbs(wm0, 1e-9));
  }
}

TEST_CASE("monotone smoothing") {
  const std::vector<double> up{1, 2, 2, 4};
  const auto id = fcut::monotone_smooth(up);
  CHECK(id.values == up);
  CHECK(id.max_abs_change == 0.0);

  const std::vector<double> flat(7, 3.5);
  CHECK(fcut::monotone_smooth(flat).values == flat);
  for (double v : fcut::monotone_smooth(flat, {3}).values) CHECK_THAT(v, WithinAbs(3.5, 1e-15));

  const auto ma = fcut::monotone_smooth(std::vector<double>{0, 3, 0, 3}, {3});
  // Moving average (1.5, 1, 2, 1.5), then pooled.
  CHECK_THAT(ma.values[0], WithinAbs(1.25, 1e-15));
  CHECK_THAT(ma.values[3], WithinAbs(1.75, 1e-15));
  CHECK_THROWS_AS(fcut::monotone_smooth(up, {2}), fcut::Error);

  fcut::SplitMix64 rng(6);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(1 + rng.below(50));
    for (auto& x : v) x = rng.uniform(-5, 5);
    for (std::size_t w : {1u, 3u, 7u}) {
      const auto out = fcut::monotone_smooth(v, {w});
      CHECK(std::is_sorted(out.values.begin(), out.values.end()));
    }
    const auto once = fcut::monotone_smooth(v).values;
    CHECK(fcut::monotone_smooth(once).values == once);
  }
}

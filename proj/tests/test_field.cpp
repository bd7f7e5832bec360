#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "parking/field.hpp"
#include "parking/stats.hpp"

using namespace parking;

TEST_CASE("uniform_at is a pure function of (seed, site)") {
  const UniformField field(Seed{42}, 2);
  const Site i{3, -7};
  const double first = field.uniform_at(i);
  const double second = field.uniform_at(i);
  CHECK(first == second);

  const UniformField same(Seed{42}, 2);
  CHECK(same.uniform_at(i) == first);
}

TEST_CASE("marks lie strictly inside (0,1)") {
  const UniformField field(Seed{7}, 1);
  for (std::int32_t t = -5000; t < 5000; ++t) {
    const double u = field.uniform_at(Site{t});
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("different seeds give different marks almost everywhere") {
  const UniformField a(Seed{1}, 1);
  const UniformField b(Seed{2}, 1);
  int differing = 0;
  const int total = 10000;
  for (std::int32_t t = 0; t < total; ++t)
    differing += a.uniform_at(Site{t}) != b.uniform_at(Site{t});
  CHECK(differing >= total * 99 / 100);
}

TEST_CASE("dimension mismatch is a usage error") {
  const UniformField field(Seed{0}, 2);
  CHECK_THROWS_AS(field.uniform_at(Site{1}), std::invalid_argument);
  CHECK_THROWS_AS(UniformField(Seed{0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(UniformField(Seed{0}, 9), std::invalid_argument);
}

TEST_CASE("empirical CDF of 1e6 draws passes the KS uniformity gate") {
  const UniformField field(Seed{123456}, 1);
  const std::size_t total = 1000000;
  std::vector<double> draws;
  draws.reserve(total);
  for (std::size_t t = 0; t < total; ++t)
    draws.push_back(field.uniform_at(Site{static_cast<std::int32_t>(t)}));
  std::sort(draws.begin(), draws.end());
  const double d = ks_statistic(draws, [](double x) { return x; });
  CHECK(d < 1.95 / std::sqrt(static_cast<double>(total)));
}

TEST_CASE("neighboring marks are uncorrelated within Monte Carlo error") {
  const UniformField field(Seed{99}, 2);
  const int total = 100000;
  for (const int axis : {0, 1}) {
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (std::int32_t t = 0; t < total; ++t) {
      const Site i{t, 2 * t + 1};
      const double x = field.uniform_at(i);
      const double y = field.uniform_at(i.shifted(axis, 1));
      sx += x;
      sy += y;
      sxy += x * y;
      sxx += x * x;
      syy += y * y;
    }
    const double n = total;
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double vx = sxx / n - (sx / n) * (sx / n);
    const double vy = syy / n - (sy / n) * (sy / n);
    const double corr = cov / std::sqrt(vx * vy);
    CHECK(std::abs(corr) < 4.0 / std::sqrt(n));
  }
}

TEST_CASE("rank_less is a strict total order") {
  const UniformField field(Seed{5}, 1);

  SUBCASE("rejects equal sites") {
    CHECK_THROWS_AS(rank_less(field, Site{3}, Site{3}), std::invalid_argument);
  }

  SUBCASE("antisymmetric over random pairs") {
    for (std::int32_t t = 0; t < 10000; ++t) {
      const Site a{t};
      const Site b{t + 1 + (t % 17)};
      CHECK(rank_less(field, a, b) != rank_less(field, b, a));
    }
  }

  SUBCASE("sorting produces a strict chain") {
    std::vector<Site> sites;
    for (std::int32_t t = -500; t <= 500; ++t) sites.push_back(Site{t});
    std::sort(sites.begin(), sites.end(),
              [&](const Site& a, const Site& b) { return rank_less(field, a, b); });
    for (std::size_t k = 1; k < sites.size(); ++k) {
      CHECK(rank_less(field, sites[k - 1], sites[k]));
      CHECK(!rank_less(field, sites[k], sites[k - 1]));
    }
  }
}

TEST_CASE("ties break by lexicographic coordinates") {
  // mark_less is the comparator underneath rank_less; equal marks must fall
  // back to coordinate order.
  CHECK(mark_less(0.5, 0.5, Site{1}, Site{2}));
  CHECK(!mark_less(0.5, 0.5, Site{2}, Site{1}));
  CHECK(mark_less(0.5, 0.5, Site{-1, 5}, Site{-1, 6}));
  CHECK(mark_less(0.2, 0.7, Site{9}, Site{1}));
}

TEST_CASE("direct comparison follows the marks") {
  const UniformField field(Seed{2024}, 1);
  for (std::int32_t t = 0; t < 1000; ++t) {
    const Site a{t}, b{-t - 1};
    const bool expected = field.uniform_at(a) < field.uniform_at(b);
    CHECK(rank_less(field, a, b) == expected);
  }
}

#include <cmath>

#include "doctest.h"
#include "koenigs/error.hpp"
#include "koenigs/hardy.hpp"

using namespace koenigs;

namespace {

WosConfig cfg(long samples, std::uint64_t seed) {
  WosConfig c;
  c.samples = samples;
  c.seed = seed;
  return c;
}

std::vector<HardyRow> synthetic(const std::vector<double>& R, double (*f)(double)) {
  std::vector<HardyRow> rows;
  for (double r : R) {
    HardyRow h;
    h.R = r;
    h.log_R = std::log(r);
    h.neg_log_omega = f(r);
    h.se = 1e-3;
    rows.push_back(h);
  }
  return rows;
}

}  // namespace

TEST_CASE("closed-form Hardy numbers") {
  CHECK(hardy_closed_form(HardyFamily::half_plane) == 1.0);
  CHECK(std::isinf(hardy_closed_form(HardyFamily::strip)));
  CHECK(hardy_closed_form(HardyFamily::sector, pi / 2) == doctest::Approx(2.0));
  CHECK(hardy_closed_form(HardyFamily::sector, 2 * pi) == doctest::Approx(0.5));
  CHECK_THROWS_AS(hardy_closed_form(HardyFamily::sector, 7.0), Error);
}

TEST_CASE("geometric grid") {
  auto g = geometric_grid(10, 1e4, 7);
  REQUIRE(g.size() == 7);
  CHECK(g.front() == 10.0);
  CHECK(g.back() == 1e4);
  CHECK(g[2] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK_THROWS_AS(geometric_grid(10, 5, 3), Error);
}

TEST_CASE("hardy_fit on synthetic profiles") {
  auto R = geometric_grid(10, 1e4, 7);
  auto lin = hardy_fit(synthetic(R, [](double r) { return 0.7 * std::log(r) + 0.3; }));
  CHECK(lin.slope == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(lin.dispersion < 1e-12);
  CHECK(lin.verdict == Verdict::finite);
  CHECK(lin.fit_end == 7);
  CHECK(lin.fit_begin == 3);
  REQUIRE(lin.window_slopes.size() == 3);
  CHECK(lin.liminf_ratio == doctest::Approx(0.7 + 0.3 / std::log(1e4)).epsilon(1e-12));

  auto fast = hardy_fit(synthetic(R, [](double r) { return pi * r; }));
  CHECK(fast.verdict == Verdict::unbounded_trend);

  auto slow = hardy_fit(synthetic(geometric_grid(10, 1e30, 13), [](double r) { return std::log(std::log(r)); }));
  CHECK(slow.verdict == Verdict::zero_trend);

  auto rows = synthetic(R, [](double r) { return std::log(r); });
  rows[4].neg_log_omega = INFINITY;
  CHECK_THROWS_WITH_AS(hardy_fit(rows), "increase samples or reduce R", Error);
}

TEST_CASE("hardy_estimate: sector and half-plane slopes") {
  auto grid = geometric_grid(10, 1e3, 5);
  auto s = hardy_estimate(DomainSpec{Sector{pi / 2, -1.0, 0.0}, 0.0}, grid, cfg(20000, 3));
  CHECK(s.slope == doctest::Approx(2.0).epsilon(0.075));
  auto h = hardy_estimate(DomainSpec{HalfPlane{0.0, -1.0}, 0.0}, grid, cfg(20000, 3));
  CHECK(h.slope == doctest::Approx(1.0).epsilon(0.1));
  REQUIRE(h.per_point.size() == 5);
  for (const auto& r : h.per_point) {
    CHECK(r.truncated == 0);
    CHECK(r.min_stage_hits > 50);
  }
}

TEST_CASE("hardy_estimate: affine invariance") {
  auto grid = geometric_grid(30, 3e3, 5);
  DomainSpec hp{HalfPlane{0.0, -1.0}, 0.0};
  auto img = affine_image(hp, std::polar(3.0, 1.1), Point(5, -2));
  auto a = hardy_estimate(hp, grid, cfg(20000, 8));
  auto b = hardy_estimate(img, grid, cfg(20000, 8));
  CHECK(std::abs(a.slope - b.slope) <= 2 * (a.dispersion + b.dispersion) + 2 * std::hypot(a.slope_se, b.slope_se));
  DomainSpec se{Sector{pi / 2, -1.0, 0.0}, 0.0};
  auto c = hardy_estimate(se, grid, cfg(20000, 8));
  auto d = hardy_estimate(affine_image(se, Point(0, 2), Point(0, 0)), grid, cfg(20000, 8));
  CHECK(std::abs(c.slope - d.slope) <= 2 * (c.dispersion + d.dispersion) + 2 * std::hypot(c.slope_se, d.slope_se));
}

TEST_CASE("hardy_estimate: monotone under inclusion of sectors") {
  auto grid = geometric_grid(10, 1e3, 5);
  auto narrow = hardy_estimate(DomainSpec{Sector{pi / 3, -1.0, 0.0}, 0.0}, grid, cfg(20000, 9));
  auto wide = hardy_estimate(DomainSpec{Sector{2 * pi / 3, -1.0, 0.0}, 0.0}, grid, cfg(20000, 9));
  CHECK(wide.slope <= narrow.slope + 2 * wide.dispersion);
  CHECK(narrow.slope == doctest::Approx(3.0).epsilon(0.1));
  CHECK(wide.slope == doctest::Approx(1.5).epsilon(0.1));
}

TEST_CASE("translated-union domain and polar E") {
  auto d = translated_union_domain(CompactSet({Disc{0.0, 0.25}}));
  CHECK(d.base_point == Point(-1.0));
  CHECK(std::get<TranslatedUnionComplement>(d.family).count == 0);
  CHECK_THROWS_WITH_AS(koenigs_lower_bound_experiment(CompactSet({FinitePoints{{0.0}}}), {10, 100}, cfg(100, 1)),
                       "polar E: the domain has Hardy number 0; experiment skipped", Error);
}

TEST_CASE("prescribed-Hardy construction, two levels") {
  auto r = construct_prescribed_domain(0.25, 2, cfg(20000, 5), 1e-3);
  REQUIRE(r.radii.size() == 2);
  CHECK(r.radii[0] == 2.0);
  CHECK(r.radii[1] >= r.radii[0] * r.radii[0]);
  REQUIRE(r.root_residuals.size() == 1);
  CHECK(r.root_residuals[0] < r.root_tol);
  REQUIRE(r.scan_traces.size() == 1);
  CHECK_FALSE(r.scan_traces[0].empty());
  auto& cs = std::get<CircleSlitDomain>(r.domain.family);
  CHECK(cs.radii == r.radii);
  CHECK_THROWS_AS(construct_prescribed_domain(0.0, 2, cfg(10, 1), 1e-3), Error);
}

TEST_CASE("prescribed-Hardy construction reports a missing bracket") {
  CHECK_THROWS_AS(construct_prescribed_domain(0.25, 2, cfg(2000, 5), 1e-3, 50.0), NonConvergence);
}

TEST_CASE("explicit maps") {
  MapSpec s{MapKind::sector_power, pi / 2, 0};
  CHECK(std::abs(evaluate_map(s, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(evaluate_map(s, 0.6) - std::sqrt(4.0)) < 1e-12);
  MapSpec c{MapKind::cayley_half_plane, 0, 0};
  CHECK(std::abs(evaluate_map(c, Point(0, 1)) - Point(0, 1)) < 1e-15);
  MapSpec z{MapKind::zero, 0, 0};
  CHECK(evaluate_map(z, 0.3) == Point(0.0));
}

TEST_CASE("integral means separate at pi / theta") {
  auto r = default_r_grid();
  REQUIRE(r.size() == 10);
  CHECK(r.back() == doctest::Approx(1 - 1.0 / 1024));
  std::vector<double> pg;
  for (int i = 1; i <= 16; ++i) pg.push_back(0.25 * i);
  auto step = 0.25;

  auto find = [](const IntegralMeansResult& res, double p) {
    for (std::size_t i = 0; i < res.p_grid.size(); ++i)
      if (std::abs(res.p_grid[i] - p) < 1e-12) return res.classes[i];
    FAIL("p not in grid");
    return MeansClass::inconclusive;
  };

  auto sec = hardy_of_map_integral_means({MapKind::sector_power, pi / 2, 0}, pg, r);
  CHECK(find(sec, 1.5) == MeansClass::bounded);
  CHECK(find(sec, 2.5) == MeansClass::unbounded);
  REQUIRE(sec.finite_p.has_value());
  CHECK(std::abs(*sec.finite_p - 2.0) <= step);

  auto half = hardy_of_map_integral_means({MapKind::sector_power, pi, 0}, pg, r);
  REQUIRE(half.finite_p.has_value());
  CHECK(std::abs(*half.finite_p - 1.0) <= step);

  auto cay = hardy_of_map_integral_means({MapKind::cayley_half_plane, 0, 0}, pg, r);
  CHECK(find(cay, 0.5) == MeansClass::bounded);
  CHECK(find(cay, 1.5) == MeansClass::unbounded);

  auto zero = hardy_of_map_integral_means({MapKind::zero, 0, 0}, pg, r);
  for (auto c : zero.classes) CHECK(c == MeansClass::bounded);
  CHECK(zero.finite_p == pg.back());

  CHECK_THROWS_AS(hardy_of_map_integral_means(MapSpec{}, {1.0}, {0.5}), Error);
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "koenigs/domain.hpp"
#include "koenigs/error.hpp"

using namespace koenigs;

namespace {

bool angle_in(const std::vector<AngleInterval>& arcs, double t) {
  for (const auto& a : arcs) {
    double s = std::fmod(t - a.lo, 2 * pi);
    if (s < 0) s += 2 * pi;
    if (s <= a.hi - a.lo + 1e-12) return true;
  }
  return false;
}

double arcs_length(const std::vector<AngleInterval>& arcs) {
  double s = 0;
  for (const auto& a : arcs) s += a.hi - a.lo;
  return s;
}

}  // namespace

TEST_CASE("query: distances to single primitives") {
  CompactSet d({Disc{Point(1, 0), 0.25}});
  auto q = d.query(0.0);
  CHECK(q.distance == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_FALSE(q.inside);

  CompactSet s({Segment{1.0, 2.0}});
  CHECK(s.query(0.0).distance == doctest::Approx(1.0));
  CHECK_FALSE(s.query(0.0).inside);

  CompactSet c({Disc{0.0, 0.25}});
  CHECK(c.query(0.1).distance == 0.0);
  CHECK(c.query(0.1).inside);

  CompactSet a({Arc{0.0, 2.0, 0.0, pi / 2}});
  CHECK(a.distance(Point(0, 0)) == doctest::Approx(2.0));
  CHECK(a.distance(Point(-3, 0)) == doctest::Approx(std::abs(Point(-3, 0) - Point(0, 2))));

  CompactSet p({FinitePoints{{Point(1, 1), Point(-1, 0)}}});
  CHECK(p.distance(0.0) == doctest::Approx(1.0));
  CHECK(p.query(Point(1, 1)).inside);
}

TEST_CASE("query: empty set is an error") {
  CompactSet e;
  CHECK_THROWS_WITH_AS(e.query(0.0), "empty set", Error);
}

TEST_CASE("query: 1-Lipschitz in z and zero exactly on the set") {
  CompactSet set({Disc{Point(0.3, -0.2), 0.4}, Segment{Point(-2, 1), Point(1, 2)}, Arc{Point(0, 0), 3.0, 1.0, 2.5},
                  FinitePoints{{Point(-4, -4), Point(2, -3)}}});
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int i = 0; i < 20000; ++i) {
    Point z1(u(gen), u(gen)), z2 = z1 + Point(u(gen), u(gen)) * 0.05;
    if (i % 3 == 0) z2 = Point(u(gen), u(gen));
    auto q1 = set.query(z1), q2 = set.query(z2);
    REQUIRE(std::abs(q1.distance - q2.distance) <= std::abs(z1 - z2) + 1e-12);
    REQUIRE((q1.distance == 0) == q1.inside);
  }
}

TEST_CASE("polar flag is structural") {
  CHECK(CompactSet({FinitePoints{{0.0, 1.0}}}).polar());
  CHECK(CompactSet({Disc{0.0, 0.0}}).polar());
  CHECK_FALSE(CompactSet({Segment{0.0, 1.0}}).polar());
  CHECK_FALSE(CompactSet({FinitePoints{{0.0}}, Disc{2.0, 0.1}}).polar());
}

TEST_CASE("build_kn examples and primitive count") {
  auto k = build_kn(CompactSet({FinitePoints{{0.0}}}), 3);
  REQUIRE(k.size() == 3);
  for (int j = 1; j <= 3; ++j) CHECK(k.distance(double(j)) == 0.0);
  CHECK(k.polar());

  auto kd = build_kn(CompactSet({Disc{0.0, 0.25}}), 1);
  REQUIRE(kd.size() == 1);
  auto disc = std::get<Disc>(kd.primitives()[0]);
  CHECK(disc.center == Point(1, 0));
  CHECK(disc.radius == 0.25);

  auto ks = build_kn(CompactSet({Segment{-0.25, 0.25}}), 2);
  REQUIRE(ks.size() == 2);
  auto s1 = std::get<Segment>(ks.primitives()[0]), s2 = std::get<Segment>(ks.primitives()[1]);
  CHECK(s1.a == Point(0.75));
  CHECK(s1.b == Point(1.25));
  CHECK(s2.a == Point(1.75));
  CHECK(s2.b == Point(2.25));

  CompactSet two({Segment{-0.2, 0.2}, Disc{Point(0, 0.1), 0.1}});
  CHECK(build_kn(two, 7).size() == 14);
}

TEST_CASE("build_kn rejects sets outside the normalization disc") {
  CHECK_THROWS_WITH_AS(build_kn(CompactSet({Disc{0.0, 0.3}}), 2), "E out of normalization range", Error);
  CHECK_THROWS_AS(build_kn(CompactSet({Disc{0.0, 0.1}}), 0), Error);
}

TEST_CASE("build_kn membership matches translated membership") {
  CompactSet e({Disc{Point(0.05, 0), 0.15}, Segment{Point(-0.2, -0.1), Point(0.1, 0.2)}});
  const long n = 9;
  auto k = build_kn(e, n);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> x(-0.5, n + 0.5), y(-0.4, 0.4);
  for (int i = 0; i < 20000; ++i) {
    Point z(x(gen), y(gen));
    bool any = false;
    for (long j = 1; j <= n; ++j) any = any || e.query(z - double(j)).inside;
    REQUIRE(k.query(z).inside == any);
    double dmin = INFINITY;
    for (long j = 1; j <= n; ++j) dmin = std::min(dmin, e.distance(z - double(j)));
    REQUIRE(k.distance(z) == doctest::Approx(dmin).epsilon(1e-14));
  }
}

TEST_CASE("normalize records the translation") {
  auto a = normalize(CompactSet({Disc{0.0, 0.25}}));
  CHECK(a.shift == Point(0.0));
  auto b = normalize(CompactSet({Segment{Point(3, 1), Point(3.4, 1)}}));
  CHECK(std::abs(b.shift - Point(3.2, 1)) < 1e-15);
  CHECK(b.set.reach(0.0) == doctest::Approx(0.2));
  CHECK_THROWS_WITH_AS(normalize(CompactSet({Segment{0.0, 1.0}})), "E out of normalization range", Error);
}

TEST_CASE("sampling: nodes include endpoints, cells carry arclength") {
  auto nodes = sample_primitive(Segment{0.0, 1.0}, 10, SampleMode::nodes);
  REQUIRE(nodes.size() % 2 == 1);
  CHECK(nodes.front().z == Point(0.0));
  CHECK(nodes.back().z == Point(1.0));
  bool has_mid = false;
  for (auto& s : nodes) has_mid = has_mid || std::abs(s.z - 0.5) < 1e-15;
  CHECK(has_mid);

  auto cells = sample_primitive(Segment{0.0, 2.0}, 8, SampleMode::cells);
  double total = 0;
  for (auto& s : cells) total += s.cell;
  CHECK(total == doctest::Approx(2.0));

  // discs: boundary plus interior rings
  auto ds = sample_primitive(Disc{0.0, 1.0}, 225, SampleMode::nodes);
  int boundary = 0, interior = 0;
  for (auto& s : ds) (std::abs(std::abs(s.z) - 1) < 1e-12 ? boundary : interior)++;
  CHECK(boundary > 0);
  CHECK(interior > 0);
}

TEST_CASE("domain membership and validation") {
  DomainSpec hp{HalfPlane{0.0, -1.0}, 0.0};
  CHECK(contains(hp, 0.0));
  CHECK_FALSE(contains(hp, Point(-2, 0)));

  DomainSpec st{Strip{1.0, 0.0}, 0.0};
  CHECK(contains(st, Point(100, 0.49)));
  CHECK_FALSE(contains(st, Point(0, 0.51)));

  DomainSpec se{Sector{pi / 2, -1.0, 0.0}, 0.0};
  CHECK(contains(se, 0.0));
  CHECK(contains(se, Point(5, 5.9)));
  CHECK_FALSE(contains(se, Point(5, 6.1)));

  DomainSpec bad{Strip{1.0, 0.0}, Point(0, 2)};
  CHECK_THROWS_AS(validate(bad), Error);

  DomainSpec slits{CircleSlitDomain{{2.0, 1.5}, 0.25}, 0.0};
  CHECK_THROWS_AS(validate(slits), Error);
  DomainSpec slits_small{CircleSlitDomain{{0.5}, 0.25}, 0.0};
  CHECK_THROWS_AS(validate(slits_small), Error);
}

TEST_CASE("slit half-angle") {
  CHECK(slit_half_angle(2.0, 0.25) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(slit_half_angle(2.0, 0.25) == doctest::Approx(2.2214).epsilon(1e-4));
}

TEST_CASE("boundary_partition: complement of a disc") {
  DomainSpec d{ComplementOfCompact{CompactSet({Disc{2.0, 0.25}})}, 0.0};
  auto bp = boundary_partition(d, 10.0);
  REQUIRE(bp.outer.size() == 1);
  CHECK(arcs_length(bp.outer) == doctest::Approx(2 * pi));
  REQUIRE(bp.inner.size() == 1);
  CHECK(std::get<Disc>(bp.inner.primitives()[0]).radius == 0.25);
  CHECK(bp.inner_distance(0.0) == doctest::Approx(1.75));
  CHECK_FALSE(bp.certificate.empty());
}

TEST_CASE("boundary_partition: sector") {
  DomainSpec d{Sector{pi / 2, -1.0, 0.0}, 0.0};
  auto bp = boundary_partition(d, 10.0);
  REQUIRE(bp.outer.size() == 1);
  REQUIRE(bp.inner.size() == 2);
  for (const auto& p : bp.inner.primitives()) {
    auto s = std::get<Segment>(p);
    CHECK(s.a == Point(-1.0));
    CHECK(std::abs(s.b) == doctest::Approx(10.0));
  }
  // the outer arc is exactly the part of |z| = 10 inside the sector
  for (int i = 0; i < 3600; ++i) {
    double t = (i + 0.5) * 2 * pi / 3600;
    CHECK(angle_in(bp.outer, t) == contains(d, std::polar(10.0, t)));
  }
}

TEST_CASE("boundary_partition: circle slits") {
  DomainSpec d{CircleSlitDomain{{2.0}, 0.25}, 0.0};
  auto bp = boundary_partition(d, 3.0);
  CHECK(arcs_length(bp.outer) == doctest::Approx(2 * pi));
  REQUIRE(bp.inner.size() == 1);
  auto a = std::get<Arc>(bp.inner.primitives()[0]);
  const double h = pi / std::sqrt(2.0);
  CHECK(a.radius == 2.0);
  CHECK(a.theta0 == doctest::Approx(h));
  CHECK(a.theta1 == doctest::Approx(2 * pi - h));
  // the opening Gamma_1 around angle 0 is not boundary
  CHECK(bp.inner_distance(2.0) > 0.1);
  CHECK(bp.inner_distance(-2.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(boundary_partition(d, 2.0), doctest::Contains("component rule not certified at this radius"), Error);
}

TEST_CASE("boundary_partition: uncertified radii are rejected") {
  DomainSpec d{ComplementOfCompact{CompactSet({Disc{2.0, 0.25}})}, 0.0};
  CHECK_THROWS_WITH_AS(boundary_partition(d, 2.0), doctest::Contains("component rule not certified at this radius"), Error);
  DomainSpec reflex{Sector{1.5 * pi, Point(-5, 0), 0.0}, 0.0};
  CHECK_THROWS_AS(boundary_partition(reflex, 3.0), Error);
  CHECK_NOTHROW(boundary_partition(reflex, 10.0));
}

TEST_CASE("boundary_partition: labelling is total along the circle and the inner pieces") {
  std::vector<DomainSpec> doms{
      {HalfPlane{0.3, -1.0}, 0.0},
      {Strip{1.0, 0.0}, 0.0},
      {Sector{pi / 3, -1.0, 0.2}, 0.0},
      {Sector{2 * pi, -1.0, 0.0}, 0.0},
      {ComplementOfCompact{CompactSet({Disc{2.0, 0.25}, Segment{Point(-3, 1), Point(-2, 2)}})}, 0.0},
      {TranslatedUnionComplement{CompactSet({Disc{0.0, 0.25}}), 0}, -1.0},
      {TranslatedUnionComplement{CompactSet({Segment{Point(0, -0.25), Point(0, 0.25)}}), 0}, -1.0},
      {CircleSlitDomain{{2.0, 9.0}, 0.25}, 0.0},
  };
  const double R = 20.0;
  for (const auto& d : doms) {
    CAPTURE(family_name(d));
    auto bp = boundary_partition(d, R);
    // circle points in the closure of the domain belong to F_R unless they lie on the inner boundary
    for (int i = 0; i < 4000; ++i) {
      double t = (i + 0.5) * 2 * pi / 4000;
      Point z = bp.center + std::polar(R, t);
      bool on_inner = bp.inner_distance(z) < 1e-9;
      if (contains(d, z) && !on_inner) REQUIRE(angle_in(bp.outer, t));
      if (!contains(d, z) && !on_inner) REQUIRE_FALSE(angle_in(bp.outer, t));
    }
    // inner primitives are boundary: the oracle vanishes on them (disc boundaries, segments, arcs)
    for (const auto& prim : bp.inner.primitives()) {
      std::vector<Point> pts;
      if (auto dd = std::get_if<Disc>(&prim)) {
        for (int i = 0; i < 64; ++i) pts.push_back(dd->center + std::polar(dd->radius, 2 * pi * i / 64));
      } else {
        for (const auto& s : sample_primitive(prim, 65, SampleMode::nodes)) pts.push_back(s.z);
      }
      for (Point z : pts)
        if (std::abs(z - bp.center) < R) REQUIRE(bp.inner_distance(z) <= 1e-9);
    }
  }
}

TEST_CASE("translated-union oracle agrees with brute force") {
  CompactSet e({Disc{0.0, 0.25}});
  DomainSpec d{TranslatedUnionComplement{e, 0}, -1.0};
  auto bp = boundary_partition(d, 30.0);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-30, 30);
  for (int i = 0; i < 5000; ++i) {
    Point z(u(gen), u(gen));
    if (std::abs(z + 1.0) >= 30) continue;
    double brute = INFINITY;
    for (int j = 1; j <= 80; ++j) brute = std::min(brute, e.distance(z - double(j)));
    double o = bp.inner_distance(z);
    // the oracle may return a lower bound far away, never more than the truth
    REQUIRE(o <= brute + 1e-12);
    if (brute < 4) REQUIRE(o == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("affine images") {
  DomainSpec hp{HalfPlane{0.0, -1.0}, 0.0};
  auto img = affine_image(hp, Point(0, 2), Point(1, 1));
  CHECK(contains(img, Point(1, 1)));
  for (Point z : {Point(0.5, 0.3), Point(-0.9, 2.0), Point(-1.1, 0.0)})
    CHECK(contains(img, Point(0, 2) * z + Point(1, 1)) == contains(hp, z));
  DomainSpec st{Strip{1.0, 0.0}, 0.0};
  CHECK_THROWS_AS(affine_image(st, Point(0, 1), 0.0), Error);
}

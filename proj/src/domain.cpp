#include "koenigs/domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "koenigs/error.hpp"

namespace koenigs {

namespace {

constexpr double two_pi = 2.0 * pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double ray_distance(Point v, Point dir, Point z) {
  Point rel = (z - v) * std::conj(dir);
  if (rel.real() <= 0) return std::abs(z - v);
  return std::abs(rel.imag());
}

// Parameters t with |a + t d - c| = R, sorted.
std::vector<double> line_circle(Point a, Point d, Point c, double R) {
  Point f = a - c;
  double A = std::norm(d), B = 2 * (f * std::conj(d)).real(), C = std::norm(f) - R * R;
  double disc = B * B - 4 * A * C;
  if (A == 0 || disc < 0) return {};
  double s = std::sqrt(disc);
  double q = -0.5 * (B + std::copysign(s, B));
  double t1 = q / A, t2 = q != 0 ? C / q : -B / (2 * A);
  if (t1 > t2) std::swap(t1, t2);
  return {t1, t2};
}

// Angles (around c) of the intersections of circle (c, R) with circle (c2, r2).
std::vector<double> circle_circle(Point c, double R, Point c2, double r2) {
  Point dv = c2 - c;
  double d = std::abs(dv);
  if (d == 0 || d > R + r2 || d < std::abs(R - r2)) return {};
  double x = (d * d + R * R - r2 * r2) / (2 * d);
  double h = std::sqrt(std::max(0.0, R * R - x * x));
  double base = std::arg(dv);
  double t = std::atan2(h, x);
  return {base - t, base + t};
}

bool on_arc(double t, const Arc& a) {
  if (a.theta1 - a.theta0 >= two_pi) return true;
  double u = std::fmod(t - a.theta0, two_pi);
  if (u < 0) u += two_pi;
  return u <= a.theta1 - a.theta0 + 1e-15;
}

// Angles where the primitive meets the circle (c, R).
void crossings(const Primitive& p, Point c, double R, std::vector<double>& out) {
  std::visit(overloaded{
                 [&](const Disc& d) {
                   for (double t : circle_circle(c, R, d.center, d.radius)) out.push_back(t);
                 },
                 [&](const Segment& s) {
                   for (double t : line_circle(s.a, s.b - s.a, c, R))
                     if (t >= -1e-12 && t <= 1 + 1e-12) out.push_back(std::arg(s.a + t * (s.b - s.a) - c));
                 },
                 [&](const Arc& a) {
                   for (double t : circle_circle(c, R, a.center, a.radius)) {
                     Point z = c + std::polar(R, t);
                     if (on_arc(std::arg(z - a.center), a)) out.push_back(t);
                   }
                   out.push_back(std::arg(a.center + std::polar(a.radius, a.theta0) - c));
                   out.push_back(std::arg(a.center + std::polar(a.radius, a.theta1) - c));
                 },
                 [&](const FinitePoints& f) {
                   for (auto z : f.points)
                     if (std::abs(std::abs(z - c) - R) <= 1e-12 * R) out.push_back(std::arg(z - c));
                 },
             },
             p);
}

// Arcs of the circle on which `inside` holds, split at the given breakpoints.
std::vector<AngleInterval> circle_arcs(Point c, double R, std::vector<double> cuts,
                                       const std::function<bool(Point)>& inside) {
  for (auto& t : cuts) {
    t = std::fmod(t, two_pi);
    if (t < 0) t += two_pi;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-14; }), cuts.end());
  if (cuts.empty()) {
    if (inside(c + std::polar(R, 0.3))) return {{0.0, two_pi}};
    return {};
  }
  std::vector<AngleInterval> arcs;
  std::size_t k = cuts.size();
  for (std::size_t i = 0; i < k; ++i) {
    double lo = cuts[i], hi = i + 1 < k ? cuts[i + 1] : cuts[0] + two_pi;
    if (hi - lo <= 0) continue;
    if (!inside(c + std::polar(R, 0.5 * (lo + hi)))) continue;
    if (!arcs.empty() && std::abs(arcs.back().hi - lo) < 1e-14)
      arcs.back().hi = hi;
    else
      arcs.push_back({lo, hi});
  }
  // merge the piece that wraps past 2 pi into the first one
  if (arcs.size() >= 2 && std::abs(arcs.back().hi - two_pi - arcs.front().lo) < 1e-14) {
    arcs.front().lo = arcs.back().lo - two_pi;
    arcs.pop_back();
  }
  if (arcs.size() == 1 && arcs[0].hi - arcs[0].lo >= two_pi - 1e-14) arcs[0] = {0.0, two_pi};
  return arcs;
}

// Portion of the line a + t d (t in [t0, t1]) inside the closed disc, as a segment.
bool clip_line(Point a, Point d, double t0, double t1, Point c, double R, Segment& out) {
  auto ts = line_circle(a, d, c, R);
  if (ts.empty()) return false;
  double lo = std::max(t0, ts[0]), hi = std::min(t1, ts[1]);
  if (lo > hi) return false;
  out = Segment{a + lo * d, a + hi * d};
  return true;
}

bool separated_primitives(const CompactSet& k) {
  const auto& ps = k.primitives();
  for (const auto& p : ps)
    if (auto a = std::get_if<Arc>(&p); a && a->theta1 - a->theta0 >= two_pi - 1e-12) return false;
  if (ps.size() <= 1) return true;
  std::vector<std::pair<Point, double>> discs;
  for (const auto& p : ps) discs.push_back(CompactSet({p}).bounding_disc());
  for (std::size_t i = 0; i < discs.size(); ++i)
    for (std::size_t j = i + 1; j < discs.size(); ++j)
      if (std::abs(discs[i].first - discs[j].first) <= discs[i].second + discs[j].second) return false;
  return true;
}

long translated_jmax(const TranslatedUnionComplement& t, Point c, double R) {
  long reachable = static_cast<long>(std::floor(std::abs(c) + R + 1.0)) + 1;
  return t.count > 0 ? std::min(t.count, reachable) : reachable;
}

[[noreturn]] void not_certified(const std::string& why) {
  invalid("component rule not certified at this radius (" + why + ")");
}

}  // namespace

double RayPairBoundary::operator()(Point z) const {
  return std::min(ray_distance(vertex, d1, z), ray_distance(vertex, d2, z));
}

double TranslatedBoundary::operator()(Point z) const {
  double x = z.real();
  // far from the row of copies a hull bound is enough for a valid step
  double dx = x < 1.0 - rho ? 1.0 - rho - x : (x > jmax + rho ? x - jmax - rho : 0.0);
  double dy = std::max(0.0, std::abs(z.imag()) - rho);
  double hull = std::hypot(dx, dy);
  if (hull > 4.0) return hull;
  long j0 = std::clamp(std::lround(x), 1L, jmax);
  double best = std::numeric_limits<double>::infinity();
  for (long j = j0; j <= jmax; ++j) {
    if (std::abs(z - double(j)) - rho >= best) break;
    best = std::min(best, e.distance(z - double(j)));
  }
  for (long j = j0 - 1; j >= 1; --j) {
    if (std::abs(z - double(j)) - rho >= best) break;
    best = std::min(best, e.distance(z - double(j)));
  }
  return best;
}

double SlitBoundary::operator()(Point z) const {
  double r = std::abs(z);
  double t = std::abs(std::arg(z));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < radii.size(); ++n) {
    double rn = radii[n];
    if (std::abs(r - rn) >= best) continue;
    double d;
    if (r == 0.0)
      d = rn;
    else if (t >= half_angles[n])
      d = std::abs(r - rn);
    else
      d = std::abs(Point(std::abs(z.real()), std::abs(z.imag())) - std::polar(rn, half_angles[n]));
    best = std::min(best, d);
  }
  return best;
}

double BoundaryPartition::inner_distance(Point z) const {
  return std::visit([&](const auto& o) { return o(z); }, oracle);
}

double slit_half_angle(double radius, double p) { return pi / std::pow(radius, 2 * p); }

std::string family_name(const DomainSpec& d) {
  return std::visit(overloaded{
                        [](const Plane&) { return std::string("plane"); },
                        [](const HalfPlane&) { return std::string("half_plane"); },
                        [](const Strip&) { return std::string("strip"); },
                        [](const Sector&) { return std::string("sector"); },
                        [](const ComplementOfCompact&) { return std::string("complement"); },
                        [](const TranslatedUnionComplement&) { return std::string("translated_union"); },
                        [](const CircleSlitDomain&) { return std::string("circle_slit"); },
                    },
                    d.family);
}

bool contains(const DomainSpec& d, Point z) {
  return std::visit(
      overloaded{
          [&](const Plane&) { return true; },
          [&](const HalfPlane& h) { return (z * std::polar(1.0, -h.orientation)).real() > h.offset; },
          [&](const Strip& s) { return std::abs(z.imag() - s.center) < s.height / 2; },
          [&](const Sector& s) {
            if (z == s.vertex) return false;
            return std::abs(std::arg((z - s.vertex) * std::polar(1.0, -s.bisector))) < s.opening / 2;
          },
          [&](const ComplementOfCompact& c) { return c.set.distance(z) > 0; },
          [&](const TranslatedUnionComplement& t) {
            long jmax = translated_jmax(t, 0.0, std::abs(z) + 1);
            return TranslatedBoundary{t.e, t.e.reach(0.0), jmax}(z) > 0;
          },
          [&](const CircleSlitDomain& c) {
            std::vector<double> ha;
            for (double r : c.radii) ha.push_back(slit_half_angle(r, c.p));
            return SlitBoundary{c.radii, ha}(z) > 0;
          },
      },
      d.family);
}

void validate(const DomainSpec& d) {
  require(std::isfinite(d.base_point.real()) && std::isfinite(d.base_point.imag()), "base point must be finite");
  std::visit(overloaded{
                 [](const Plane&) {},
                 [](const HalfPlane& h) {
                   require(std::isfinite(h.orientation) && std::isfinite(h.offset), "half-plane parameters must be finite");
                 },
                 [](const Strip& s) { require(s.height > 0 && std::isfinite(s.height), "strip height must be > 0"); },
                 [](const Sector& s) {
                   require(s.opening > 0 && s.opening <= two_pi, "sector opening must lie in (0, 2 pi]");
                 },
                 [](const ComplementOfCompact& c) { require(!c.set.empty(), "empty set"); },
                 [](const TranslatedUnionComplement& t) {
                   require(!t.e.empty(), "empty set");
                   require(t.count >= 0, "copy count must be >= 0");
                   if (!within_normalization(t.e)) invalid("E out of normalization range");
                 },
                 [](const CircleSlitDomain& c) {
                   require(c.p > 0, "exponent p must be > 0");
                   require(!c.radii.empty(), "circle-slit domain needs at least one radius");
                   require(c.radii.front() > 1, "radii must exceed 1");
                   for (std::size_t i = 1; i < c.radii.size(); ++i)
                     require(c.radii[i] > c.radii[i - 1], "radii must be strictly increasing");
                 },
             },
             d.family);
  require(contains(d, d.base_point), "base point is not in the domain");
}

DomainSpec affine_image(const DomainSpec& d, Point a, Point b) {
  require(a != 0.0, "affine map needs a != 0");
  double s = std::abs(a), t = std::arg(a);
  DomainSpec out;
  out.base_point = a * d.base_point + b;
  out.family = std::visit(
      overloaded{
          [&](const Plane& p) -> DomainFamily { return p; },
          [&](const HalfPlane& h) -> DomainFamily {
            double o = h.orientation + t;
            return HalfPlane{o, s * h.offset + (b * std::polar(1.0, -o)).real()};
          },
          [&](const Strip& st) -> DomainFamily {
            require(a.imag() == 0 && a.real() > 0, "strips only map under real positive scalings");
            return Strip{st.height * s, st.center * s + b.imag()};
          },
          [&](const Sector& se) -> DomainFamily { return Sector{se.opening, a * se.vertex + b, se.bisector + t}; },
          [&](const ComplementOfCompact& c) -> DomainFamily {
            return ComplementOfCompact{c.set.scaled(s).rotated(std::polar(1.0, t)).translated(b)};
          },
          [&](const TranslatedUnionComplement&) -> DomainFamily {
            invalid("translated-union domains are not closed under affine maps");
          },
          [&](const CircleSlitDomain&) -> DomainFamily {
            invalid("circle-slit domains are not closed under affine maps");
          },
      },
      d.family);
  return out;
}

double level_increment_cap(const DomainSpec& d) {
  if (auto s = std::get_if<Strip>(&d.family)) return s->height;
  return std::numeric_limits<double>::infinity();
}

BoundaryPartition disc_partition(Point center, double R, CompactSet inner) {
  require(R > 0 && std::isfinite(R), "radius must be positive");
  BoundaryPartition bp;
  bp.center = center;
  bp.radius = R;
  std::vector<double> cuts;
  for (const auto& p : inner.primitives()) crossings(p, center, R, cuts);
  if (inner.empty()) {
    bp.outer = {{0.0, two_pi}};
    bp.oracle = NoBoundary{};
  } else {
    bp.outer = circle_arcs(center, R, cuts, [&](Point z) { return inner.distance(z) > 0; });
    bp.oracle = SetBoundary{inner};
  }
  bp.inner = std::move(inner);
  bp.certificate = "assembled disc: caller vouches for connectivity";
  return bp;
}

BoundaryPartition boundary_partition(const DomainSpec& d, double R) {
  validate(d);
  require(R > 0 && std::isfinite(R), "radius must be positive");
  const Point c = d.base_point;
  BoundaryPartition bp;
  bp.center = c;
  bp.radius = R;
  std::vector<Primitive> inner;
  std::vector<double> cuts;
  auto inside = [&](Point z) { return contains(d, z); };

  std::visit(
      overloaded{
          [&](const Plane&) {
            bp.certificate = "plane: Omega_R is the whole disc";
            bp.oracle = NoBoundary{};
          },
          [&](const HalfPlane& h) {
            Point n = std::polar(1.0, h.orientation);
            Segment s;
            if (clip_line(n * h.offset, n * Point(0, 1), -INFINITY, INFINITY, c, R, s)) inner.push_back(s);
            bp.certificate = "half-plane: intersection with the disc is convex";
            bp.oracle = HalfPlaneBoundary{std::polar(1.0, -h.orientation), h.offset};
          },
          [&](const Strip& st) {
            Segment s;
            for (double y : {st.center - st.height / 2, st.center + st.height / 2})
              if (clip_line(Point(0, y), 1.0, -INFINITY, INFINITY, c, R, s)) inner.push_back(s);
            bp.certificate = "strip: intersection with the disc is convex";
            bp.oracle = StripBoundary{st.height / 2, st.center};
          },
          [&](const Sector& se) {
            Point d1 = std::polar(1.0, se.bisector + se.opening / 2);
            Point d2 = std::polar(1.0, se.bisector - se.opening / 2);
            if (se.opening > pi && std::abs(c - se.vertex) >= R)
              not_certified("reflex sector needs the vertex inside the disc");
            Segment s;
            if (clip_line(se.vertex, d1, 0.0, INFINITY, c, R, s)) inner.push_back(s);
            if (se.opening < two_pi && clip_line(se.vertex, d2, 0.0, INFINITY, c, R, s)) inner.push_back(s);
            bp.certificate = se.opening <= pi ? "convex sector: intersection with the disc is convex"
                                              : "reflex sector with vertex inside the disc: disc minus a convex wedge is connected";
            bp.oracle = RayPairBoundary{se.vertex, d1, d2};
          },
          [&](const ComplementOfCompact& k) {
            if (k.set.reach(c) >= R) not_certified("compact set must lie inside the open disc");
            if (!separated_primitives(k.set)) not_certified("primitives must have disjoint bounding discs");
            inner = k.set.primitives();
            bp.certificate = "complement of a compact set with connected complement inside the disc: F_R is the full circle";
            bp.oracle = SetBoundary{k.set};
          },
          [&](const TranslatedUnionComplement& t) {
            if (!separated_primitives(t.e)) not_certified("primitives of E must have disjoint bounding discs");
            long jmax = translated_jmax(t, c, R);
            double rho = t.e.reach(0.0);
            for (long j = 1; j <= jmax; ++j) {
              Point shift(double(j), 0.0);
              if (std::abs(shift - c) - rho >= R) continue;
              for (const auto& p : t.e.primitives()) {
                Primitive q = translated(p, shift);
                bool crossing = reach(q, c) > R;
                if (crossing) {
                  // a thin piece entering and leaving the disc would cut off a cap
                  bool cuts_cap = std::visit(overloaded{
                                                 [&](const Segment& s) {
                                                   return std::abs(s.a - c) > R && std::abs(s.b - c) > R &&
                                                          distance(q, c) < R;
                                                 },
                                                 [&](const Arc& a) {
                                                   return std::abs(a.center + std::polar(a.radius, a.theta0) - c) > R &&
                                                          std::abs(a.center + std::polar(a.radius, a.theta1) - c) > R &&
                                                          distance(q, c) < R;
                                                 },
                                                 [](const auto&) { return false; },
                                             },
                                             q);
                  if (cuts_cap) not_certified("a copy of E cuts a cap off the disc");
                }
                if (distance(q, c) < R) inner.push_back(q);
              }
            }
            bp.certificate = "translated copies with disjoint bounding discs; no copy cuts a cap off the disc";
            bp.oracle = TranslatedBoundary{t.e, rho, jmax};
          },
          [&](const CircleSlitDomain& cs) {
            if (c != 0.0) not_certified("circle-slit partition is centered at 0");
            std::vector<double> rs, ha;
            for (double r : cs.radii) {
              if (std::abs(r - R) <= 1e-12 * R) not_certified("radius coincides with a slit circle");
              if (r < R) {
                double a = slit_half_angle(r, cs.p);
                inner.push_back(Arc{0.0, r, a, two_pi - a});
                rs.push_back(r);
                ha.push_back(a);
              }
            }
            bp.certificate = "concentric circle slits around 0: annuli connect through the openings; F_R is the full circle";
            bp.oracle = SlitBoundary{rs, ha};
          },
      },
      d.family);

  for (const auto& p : inner) crossings(p, c, R, cuts);
  bp.outer = circle_arcs(c, R, cuts, inside);
  bp.inner = CompactSet(std::move(inner));
  return bp;
}

}  // namespace koenigs

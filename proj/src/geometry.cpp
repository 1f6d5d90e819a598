#include "koenigs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

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

bool full_turn(const Arc& a) { return a.theta1 - a.theta0 >= two_pi - 1e-15; }

// Is angle t inside [t0, t1] modulo 2 pi?
bool angle_in(double t, double t0, double t1) {
  if (t1 - t0 >= two_pi) return true;
  double u = std::fmod(t - t0, two_pi);
  if (u < 0) u += two_pi;
  return u <= t1 - t0;
}

double segment_distance(const Segment& s, Point z) {
  Point d = s.b - s.a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - s.a);
  double t = std::clamp(((z - s.a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (s.a + t * d));
}

double arc_distance(const Arc& a, Point z) {
  Point rel = z - a.center;
  double r = std::abs(rel);
  if (r == 0.0) return a.radius;
  if (angle_in(std::arg(rel), a.theta0, a.theta1)) return std::abs(r - a.radius);
  double d0 = std::abs(z - (a.center + std::polar(a.radius, a.theta0)));
  double d1 = std::abs(z - (a.center + std::polar(a.radius, a.theta1)));
  return std::min(d0, d1);
}

void check_primitive(const Primitive& p) {
  std::visit(overloaded{
                 [](const Disc& d) {
                   require(std::isfinite(d.radius) && d.radius >= 0, "disc radius must be finite and >= 0");
                   require(std::isfinite(d.center.real()) && std::isfinite(d.center.imag()), "non-finite coordinate");
                 },
                 [](const Segment& s) {
                   require(std::isfinite(std::abs(s.a)) && std::isfinite(std::abs(s.b)), "non-finite coordinate");
                 },
                 [](const Arc& a) {
                   require(std::isfinite(a.radius) && a.radius > 0, "arc radius must be > 0");
                   require(std::isfinite(a.theta0) && std::isfinite(a.theta1) && a.theta1 >= a.theta0 &&
                               a.theta1 - a.theta0 <= two_pi + 1e-12,
                           "arc angles must satisfy theta0 <= theta1 <= theta0 + 2 pi");
                   require(std::isfinite(std::abs(a.center)), "non-finite coordinate");
                 },
                 [](const FinitePoints& f) {
                   require(!f.points.empty(), "empty point list");
                   for (auto z : f.points) require(std::isfinite(std::abs(z)), "non-finite coordinate");
                 },
             },
             p);
}

void ring(std::vector<Sample>& out, Point c, double rho, int k, SampleMode mode) {
  if (k <= 0) return;
  double off = mode == SampleMode::cells ? 0.5 : 0.0;
  for (int i = 0; i < k; ++i) out.push_back({c + std::polar(rho, two_pi * (i + off) / k), two_pi * rho / k});
}

}  // namespace

double wrap_angle(double t) {
  double u = std::remainder(t, two_pi);
  if (u <= -pi) u += two_pi;
  return u;
}

double distance(const Primitive& prim, Point z) {
  return std::visit(overloaded{
                        [&](const Disc& d) { return std::max(0.0, std::abs(z - d.center) - d.radius); },
                        [&](const Segment& s) { return segment_distance(s, z); },
                        [&](const Arc& a) { return arc_distance(a, z); },
                        [&](const FinitePoints& f) {
                          double best = std::numeric_limits<double>::infinity();
                          for (auto p : f.points) best = std::min(best, std::abs(z - p));
                          return best;
                        },
                    },
                    prim);
}

Primitive translated(const Primitive& prim, Point shift) {
  return std::visit(overloaded{
                        [&](const Disc& d) -> Primitive { return Disc{d.center + shift, d.radius}; },
                        [&](const Segment& s) -> Primitive { return Segment{s.a + shift, s.b + shift}; },
                        [&](const Arc& a) -> Primitive { return Arc{a.center + shift, a.radius, a.theta0, a.theta1}; },
                        [&](const FinitePoints& f) -> Primitive {
                          FinitePoints g = f;
                          for (auto& p : g.points) p += shift;
                          return g;
                        },
                    },
                    prim);
}

Primitive scaled(const Primitive& prim, double s) {
  return std::visit(overloaded{
                        [&](const Disc& d) -> Primitive { return Disc{d.center * s, d.radius * s}; },
                        [&](const Segment& g) -> Primitive { return Segment{g.a * s, g.b * s}; },
                        [&](const Arc& a) -> Primitive { return Arc{a.center * s, a.radius * s, a.theta0, a.theta1}; },
                        [&](const FinitePoints& f) -> Primitive {
                          FinitePoints g = f;
                          for (auto& p : g.points) p *= s;
                          return g;
                        },
                    },
                    prim);
}

Primitive rotated(const Primitive& prim, Point unit) {
  double t = std::arg(unit);
  return std::visit(overloaded{
                        [&](const Disc& d) -> Primitive { return Disc{d.center * unit, d.radius}; },
                        [&](const Segment& g) -> Primitive { return Segment{g.a * unit, g.b * unit}; },
                        [&](const Arc& a) -> Primitive {
                          return Arc{a.center * unit, a.radius, a.theta0 + t, a.theta1 + t};
                        },
                        [&](const FinitePoints& f) -> Primitive {
                          FinitePoints g = f;
                          for (auto& p : g.points) p *= unit;
                          return g;
                        },
                    },
                    prim);
}

double reach(const Primitive& prim, Point about) {
  return std::visit(overloaded{
                        [&](const Disc& d) { return std::abs(d.center - about) + d.radius; },
                        [&](const Segment& s) { return std::max(std::abs(s.a - about), std::abs(s.b - about)); },
                        [&](const Arc& a) {
                          Point rel = a.center - about;
                          // farthest point of the full circle sits in direction rel
                          if (full_turn(a) || (std::abs(rel) > 0 && angle_in(std::arg(rel), a.theta0, a.theta1)) ||
                              std::abs(rel) == 0)
                            return std::abs(rel) + a.radius;
                          return std::max(std::abs(a.center + std::polar(a.radius, a.theta0) - about),
                                          std::abs(a.center + std::polar(a.radius, a.theta1) - about));
                        },
                        [&](const FinitePoints& f) {
                          double m = 0;
                          for (auto p : f.points) m = std::max(m, std::abs(p - about));
                          return m;
                        },
                    },
                    prim);
}

std::vector<Sample> sample_primitive(const Primitive& prim, int count, SampleMode mode) {
  require(count >= 1, "sample count must be positive");
  std::vector<Sample> out;
  std::visit(overloaded{
                 [&](const Disc& d) {
                   if (d.radius == 0.0) {
                     out.push_back({d.center, 0.0});
                     return;
                   }
                   // boundary and rings share points in proportion to circumference
                   int nb = std::max(1, static_cast<int>(std::lround(count / 2.25)));
                   int n75 = static_cast<int>(std::lround(count * 0.75 / 2.25));
                   int n50 = std::max(0, count - nb - n75);
                   ring(out, d.center, d.radius, nb, mode);
                   ring(out, d.center, 0.75 * d.radius, n75, mode);
                   ring(out, d.center, 0.5 * d.radius, n50, mode);
                 },
                 [&](const Segment& s) {
                   double len = std::abs(s.b - s.a);
                   if (len == 0.0) {
                     out.push_back({s.a, 0.0});
                     return;
                   }
                   if (mode == SampleMode::nodes) {
                     int m = std::max(3, count | 1);
                     for (int i = 0; i < m; ++i) out.push_back({s.a + (s.b - s.a) * (double(i) / (m - 1)), len / (m - 1)});
                   } else {
                     for (int i = 0; i < count; ++i) out.push_back({s.a + (s.b - s.a) * ((i + 0.5) / count), len / count});
                   }
                 },
                 [&](const Arc& a) {
                   double span = a.theta1 - a.theta0;
                   if (full_turn(a)) {
                     double off = mode == SampleMode::cells ? 0.5 : 0.0;
                     for (int i = 0; i < count; ++i)
                       out.push_back({a.center + std::polar(a.radius, a.theta0 + two_pi * (i + off) / count),
                                      two_pi * a.radius / count});
                     return;
                   }
                   if (span == 0.0) {
                     out.push_back({a.center + std::polar(a.radius, a.theta0), 0.0});
                     return;
                   }
                   if (mode == SampleMode::nodes) {
                     int m = std::max(3, count | 1);
                     for (int i = 0; i < m; ++i)
                       out.push_back({a.center + std::polar(a.radius, a.theta0 + span * i / (m - 1)), a.radius * span / (m - 1)});
                   } else {
                     for (int i = 0; i < count; ++i)
                       out.push_back({a.center + std::polar(a.radius, a.theta0 + span * (i + 0.5) / count), a.radius * span / count});
                   }
                 },
                 [&](const FinitePoints& f) {
                   for (auto p : f.points) out.push_back({p, 0.0});
                 },
             },
             prim);
  return out;
}

CompactSet::CompactSet(std::vector<Primitive> prims) : prims_(std::move(prims)) {
  for (const auto& p : prims_) check_primitive(p);
}

QueryResult CompactSet::query(Point z) const {
  double d = distance(z);
  return {d, d == 0.0};
}

double CompactSet::distance(Point z) const {
  if (prims_.empty()) invalid("empty set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : prims_) best = std::min(best, koenigs::distance(p, z));
  return best;
}

bool CompactSet::polar() const {
  for (const auto& p : prims_) {
    bool point_like = std::visit(overloaded{
                                     [](const Disc& d) { return d.radius == 0.0; },
                                     [](const Segment& s) { return s.a == s.b; },
                                     [](const Arc& a) { return a.theta1 == a.theta0; },
                                     [](const FinitePoints&) { return true; },
                                 },
                                 p);
    if (!point_like) return false;
  }
  return true;
}

double CompactSet::reach(Point about) const {
  double m = 0;
  for (const auto& p : prims_) m = std::max(m, koenigs::reach(p, about));
  return m;
}

std::pair<Point, double> CompactSet::bounding_disc() const {
  if (prims_.empty()) invalid("empty set");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto add = [&](Point z) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  };
  for (const auto& p : prims_) {
    std::visit(overloaded{
                   [&](const Disc& d) {
                     add(d.center + Point(d.radius, d.radius));
                     add(d.center - Point(d.radius, d.radius));
                   },
                   [&](const Segment& s) {
                     add(s.a);
                     add(s.b);
                   },
                   [&](const Arc& a) {
                     add(a.center + std::polar(a.radius, a.theta0));
                     add(a.center + std::polar(a.radius, a.theta1));
                     for (int q = 0; q < 4; ++q)
                       if (angle_in(q * pi / 2, a.theta0, a.theta1)) add(a.center + std::polar(a.radius, q * pi / 2));
                   },
                   [&](const FinitePoints& f) {
                     for (auto z : f.points) add(z);
                   },
               },
               p);
  }
  Point c((x0 + x1) / 2, (y0 + y1) / 2);
  return {c, reach(c)};
}

CompactSet CompactSet::translated(Point shift) const {
  std::vector<Primitive> out;
  out.reserve(prims_.size());
  for (const auto& p : prims_) out.push_back(koenigs::translated(p, shift));
  return CompactSet(std::move(out));
}

CompactSet CompactSet::scaled(double s) const {
  require(s > 0, "scale must be positive");
  std::vector<Primitive> out;
  for (const auto& p : prims_) out.push_back(koenigs::scaled(p, s));
  return CompactSet(std::move(out));
}

CompactSet CompactSet::rotated(Point unit) const {
  std::vector<Primitive> out;
  for (const auto& p : prims_) out.push_back(koenigs::rotated(p, unit));
  return CompactSet(std::move(out));
}

CompactSet CompactSet::united(const CompactSet& other) const {
  std::vector<Primitive> out = prims_;
  out.insert(out.end(), other.prims_.begin(), other.prims_.end());
  return CompactSet(std::move(out));
}

std::vector<Sample> CompactSet::sample(int per_primitive, SampleMode mode) const {
  if (prims_.empty()) invalid("empty set");
  std::vector<Sample> out;
  for (const auto& p : prims_) {
    auto s = sample_primitive(p, per_primitive, mode);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

bool within_normalization(const CompactSet& e) {
  return !e.empty() && e.reach(0.0) <= normalization_radius + 1e-12;
}

Normalized normalize(const CompactSet& e) {
  if (e.empty()) invalid("empty set");
  if (within_normalization(e)) return {e, 0.0};
  auto [c, r] = e.bounding_disc();
  if (r > normalization_radius + 1e-12) invalid("E out of normalization range");
  return {e.translated(-c), c};
}

CompactSet build_kn(const CompactSet& e, long n) {
  require(n >= 1, "n must be >= 1");
  if (!within_normalization(e)) invalid("E out of normalization range");
  std::vector<Primitive> out;
  out.reserve(e.size() * n);
  for (long j = 1; j <= n; ++j)
    for (const auto& p : e.primitives()) out.push_back(koenigs::translated(p, Point(double(j), 0.0)));
  return CompactSet(std::move(out));
}

}  // namespace koenigs

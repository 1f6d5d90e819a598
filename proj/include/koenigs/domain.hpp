#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "koenigs/geometry.hpp"

namespace koenigs {

struct Plane {};

// { z : Re(z e^{-i orientation}) > offset }
struct HalfPlane {
  double orientation = 0.0;
  double offset = 0.0;
};

// { z : |Im z - center| < height / 2 }
struct Strip {
  double height = 1.0;
  double center = 0.0;
};

// { z : |arg((z - vertex) e^{-i bisector})| < opening / 2 }; opening 2 pi is the slit plane.
struct Sector {
  double opening = pi / 2;
  Point vertex = 0.0;
  double bisector = 0.0;
};

struct ComplementOfCompact {
  CompactSet set;
};

// C minus the union of E + j, j = 1..count (count 0 means every j >= 1).
struct TranslatedUnionComplement {
  CompactSet e;
  long count = 0;
};

// C minus the circles |z| = R_n with the openings |theta| < pi / R_n^{2p} removed.
struct CircleSlitDomain {
  std::vector<double> radii;
  double p = 0.25;
};

using DomainFamily =
    std::variant<Plane, HalfPlane, Strip, Sector, ComplementOfCompact, TranslatedUnionComplement, CircleSlitDomain>;

struct DomainSpec {
  DomainFamily family;
  Point base_point = 0.0;
};

std::string family_name(const DomainSpec& d);

// Throws on broken invariants, including a base point outside the domain.
void validate(const DomainSpec& d);

bool contains(const DomainSpec& d, Point z);

double slit_half_angle(double radius, double p);

/// Image of the domain under z -> a z + b. Strips only allow real positive a.
DomainSpec affine_image(const DomainSpec& d, Point a, Point b);

// --- distance oracles used by the walkers -------------------------------

struct NoBoundary {
  double operator()(Point) const { return INFINITY; }
};

struct SetBoundary {
  CompactSet set;
  double operator()(Point z) const { return set.distance(z); }
};

struct HalfPlaneBoundary {
  Point rot;  // e^{-i orientation}
  double offset;
  double operator()(Point z) const { return (z * rot).real() - offset; }
};

struct StripBoundary {
  double half, center;
  double operator()(Point z) const { return half - std::abs(z.imag() - center); }
};

struct RayPairBoundary {
  Point vertex, d1, d2;  // unit directions of the two edges
  double operator()(Point z) const;
};

struct TranslatedBoundary {
  CompactSet e;
  double rho;  // E inside D(0, rho)
  long jmax;
  double operator()(Point z) const;
};

struct SlitBoundary {
  std::vector<double> radii;
  std::vector<double> half_angles;
  double operator()(Point z) const;
};

using BoundaryOracle =
    std::variant<NoBoundary, SetBoundary, HalfPlaneBoundary, StripBoundary, RayPairBoundary, TranslatedBoundary, SlitBoundary>;

// Closed interval of angles (radians), lo <= hi, hi - lo <= 2 pi.
struct AngleInterval {
  double lo, hi;
};

/// Boundary of Omega_R, the component of Omega inside D(center, R) holding the center:
/// outer = arcs of the circle (F_R), inner = the rest of the boundary inside the disc.
struct BoundaryPartition {
  Point center = 0.0;
  double radius = 1.0;
  std::vector<AngleInterval> outer;
  CompactSet inner;
  std::string certificate;
  BoundaryOracle oracle;

  double inner_distance(Point z) const;
};

/// Certified partition at radius R around the base point.
BoundaryPartition boundary_partition(const DomainSpec& d, double R);

/// Disc of radius R around `center` with a user-supplied inner boundary (annuli, test geometries).
BoundaryPartition disc_partition(Point center, double R, CompactSet inner = {});

// Splitting level rule: largest additive increment between consecutive circles (infinite = pure doubling).
double level_increment_cap(const DomainSpec& d);

}  // namespace koenigs

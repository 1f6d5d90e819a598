#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace koenigs {

using Point = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

struct Disc {
  Point center;
  double radius = 0.0;
};

struct Segment {
  Point a, b;
};

// Closed arc {center + radius e^{it} : t in [theta0, theta1]}, theta1 - theta0 in [0, 2 pi].
struct Arc {
  Point center;
  double radius = 1.0;
  double theta0 = 0.0, theta1 = 0.0;
};

struct FinitePoints {
  std::vector<Point> points;
};

using Primitive = std::variant<Disc, Segment, Arc, FinitePoints>;

struct QueryResult {
  double distance;
  bool inside;
};

double distance(const Primitive& prim, Point z);
Primitive translated(const Primitive& prim, Point shift);
Primitive scaled(const Primitive& prim, double s);
Primitive rotated(const Primitive& prim, Point unit);

// Smallest disc around `about` containing the primitive.
double reach(const Primitive& prim, Point about);

/// How sample points are laid out on a primitive.
/// nodes: endpoints included (segments get an odd count so the midpoint is present).
/// cells: cell midpoints, each carrying the length of its cell.
enum class SampleMode { nodes, cells };

struct Sample {
  Point z;
  double cell;  // arclength of the cell (0 for isolated points)
};

class CompactSet {
 public:
  CompactSet() = default;
  explicit CompactSet(std::vector<Primitive> prims);

  const std::vector<Primitive>& primitives() const noexcept { return prims_; }
  bool empty() const noexcept { return prims_.empty(); }
  std::size_t size() const noexcept { return prims_.size(); }

  QueryResult query(Point z) const;
  double distance(Point z) const;

  // Polar when built from isolated points and zero-radius discs only.
  bool polar() const;

  double reach(Point about) const;
  // Center and radius of a disc containing the set (bounding-box center).
  std::pair<Point, double> bounding_disc() const;

  CompactSet translated(Point shift) const;
  CompactSet scaled(double s) const;
  CompactSet rotated(Point unit) const;
  CompactSet united(const CompactSet& other) const;

  /// Roughly `per_primitive` samples on every primitive. Discs get their
  /// boundary circle plus interior rings at half and three quarters radius.
  std::vector<Sample> sample(int per_primitive, SampleMode mode) const;

 private:
  std::vector<Primitive> prims_;
};

std::vector<Sample> sample_primitive(const Primitive& prim, int count, SampleMode mode);

constexpr double normalization_radius = 0.25;

/// E shifted so its bounding disc is centered at 0; throws if it does not fit in D(0, 1/4).
struct Normalized {
  CompactSet set;
  Point shift;  // set = original - shift
};
Normalized normalize(const CompactSet& e);

bool within_normalization(const CompactSet& e);

/// K_n = union of E + j, j = 1..n. E must lie in the closed disc D(0, 1/4).
CompactSet build_kn(const CompactSet& e, long n);

// Wrap an angle into (-pi, pi].
double wrap_angle(double t);

}  // namespace koenigs

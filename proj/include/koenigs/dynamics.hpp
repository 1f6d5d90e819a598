#pragma once

#include <functional>
#include <string>
#include <vector>

#include "koenigs/geometry.hpp"

namespace koenigs {

enum class ModelKind { strip, half_plane, sector, symmetric_sector };

/// Explicit Koenigs map sigma of the unit disc onto a domain Omega with Omega + 1 inside Omega,
/// written through u = (1 + z) / (1 - z).
///   strip(lambda):        {0 < Im < pi / log lambda}, u -> lambda u
///   half_plane:           upper half-plane, sigma = i u
///   sector(theta):        {0 < arg < theta}, sigma = e^{i theta/2} u^{theta/pi}
///   symmetric_sector:     {|arg| < theta/2}, sigma = u^{theta/pi}
class KoenigsModel {
 public:
  static KoenigsModel strip(double lambda);
  static KoenigsModel half_plane();
  static KoenigsModel sector(double theta);
  static KoenigsModel symmetric_sector(double theta);

  ModelKind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  std::string name() const;

  Point sigma(Point z) const;
  Point sigma_inverse(Point w) const;
  bool in_image(Point w) const;  // w in sigma(D)
  /// phi = sigma^{-1}(sigma + 1)
  Point phi(Point z) const;

 private:
  KoenigsModel(ModelKind k, double p) : kind_(k), param_(p) {}
  ModelKind kind_;
  double param_;
};

double pseudo_hyperbolic(Point a, Point b);

struct OrbitReport {
  std::vector<Point> points;        // points[k] = phi_k(z0)
  std::vector<double> rho_steps;    // rho(points[k], points[k+1])
  Point dw_estimate;
  double derivative_estimate = 1;
  long saturated_at = -1;           // first index where 1 - |z| fell below the precision floor
};

using SelfMap = std::function<Point(Point)>;

constexpr double saturation_floor = 1e-12;

OrbitReport iterate_orbit(const SelfMap& phi, Point z0, long n);

enum class StepClass { hyperbolic, parabolic_positive_step, parabolic_zero_step, inconclusive };
const char* to_string(StepClass c);

struct Classification {
  StepClass kind = StepClass::inconclusive;
  double derivative = 1;
  double tail_mean = 0, tail_dispersion = 0;
  double rho_mid = 0, rho_end = 0;
  long usable = 0;  // orbit points before saturation
  std::string notes;
};

// Engineering constants reported alongside every classification.
constexpr double hyperbolic_sigma_multiplier = 10;
constexpr double zero_step_decay = 0.75;

Classification classify(const SelfMap& phi, Point z0, long n_iter);
Classification classify_orbit(const OrbitReport& orbit);

}  // namespace koenigs

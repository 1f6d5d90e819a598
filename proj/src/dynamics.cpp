#include "koenigs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "koenigs/error.hpp"

namespace koenigs {

namespace {

Point to_u(Point z) { return (1.0 + z) / (1.0 - z); }
Point from_u(Point u) { return (u - 1.0) / (u + 1.0); }

}  // namespace

KoenigsModel KoenigsModel::strip(double lambda) {
  require(lambda > 1 && std::isfinite(lambda), "strip model needs lambda > 1");
  return {ModelKind::strip, lambda};
}

KoenigsModel KoenigsModel::half_plane() { return {ModelKind::half_plane, 0.0}; }

KoenigsModel KoenigsModel::sector(double theta) {
  require(theta > 0 && theta <= pi, "sector model needs theta in (0, pi]");
  return {ModelKind::sector, theta};
}

KoenigsModel KoenigsModel::symmetric_sector(double theta) {
  require(theta > 0 && theta <= pi, "sector model needs theta in (0, pi]");
  return {ModelKind::symmetric_sector, theta};
}

std::string KoenigsModel::name() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case ModelKind::strip: os << "strip(" << param_ << ")"; break;
    case ModelKind::half_plane: os << "half_plane"; break;
    case ModelKind::sector: os << "sector(" << param_ << ")"; break;
    case ModelKind::symmetric_sector: os << "symmetric_sector(" << param_ << ")"; break;
  }
  return os.str();
}

Point KoenigsModel::sigma(Point z) const {
  Point u = to_u(z);
  switch (kind_) {
    case ModelKind::strip: {
      double l = std::log(param_);
      return std::log(u) / l + Point(0, pi / (2 * l));
    }
    case ModelKind::half_plane: return Point(0, 1) * u;
    case ModelKind::sector: return std::polar(1.0, param_ / 2) * std::pow(u, param_ / pi);
    case ModelKind::symmetric_sector: return std::pow(u, param_ / pi);
  }
  return 0.0;
}

Point KoenigsModel::sigma_inverse(Point w) const {
  Point u;
  switch (kind_) {
    case ModelKind::strip: {
      double l = std::log(param_);
      u = std::exp(l * (w - Point(0, pi / (2 * l))));
      break;
    }
    case ModelKind::half_plane: u = Point(0, -1) * w; break;
    case ModelKind::sector: u = std::pow(w * std::polar(1.0, -param_ / 2), pi / param_); break;
    case ModelKind::symmetric_sector: u = std::pow(w, pi / param_); break;
  }
  return from_u(u);
}

bool KoenigsModel::in_image(Point w) const {
  switch (kind_) {
    case ModelKind::strip: return w.imag() > 0 && w.imag() < pi / std::log(param_);
    case ModelKind::half_plane: return w.imag() > 0;
    case ModelKind::sector: {
      double a = std::arg(w);
      return w != 0.0 && a > 0 && a < param_;
    }
    case ModelKind::symmetric_sector: return w != 0.0 && std::abs(std::arg(w)) < param_ / 2;
  }
  return false;
}

Point KoenigsModel::phi(Point z) const {
  // closed forms in u avoid a round trip through sigma
  Point u = to_u(z);
  switch (kind_) {
    case ModelKind::strip: return from_u(param_ * u);
    case ModelKind::half_plane: return from_u(u - Point(0, 1));
    default: return sigma_inverse(sigma(z) + 1.0);
  }
}

double pseudo_hyperbolic(Point a, Point b) {
  // |1 - conj(b) a|^2 = |a - b|^2 + (1 - |a|^2)(1 - |b|^2)
  double num = std::norm(a - b);
  double den = num + (1 - std::norm(a)) * (1 - std::norm(b));
  if (den <= 0) return 0;
  return std::sqrt(num / den);
}

OrbitReport iterate_orbit(const SelfMap& phi, Point z0, long n) {
  require(std::abs(z0) < 1, "z0 must lie in the unit disc");
  require(n >= 1, "n must be >= 1");
  OrbitReport rep;
  rep.points.reserve(n + 1);
  rep.points.push_back(z0);
  Point z = z0;
  for (long k = 1; k <= n; ++k) {
    Point next = rep.saturated_at >= 0 ? z : phi(z);
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag()) || std::abs(next) >= 1) {
      // rounding pushed the orbit onto the circle; freeze just inside
      Point dir = std::abs(z) > 0 ? z / std::abs(z) : Point(1, 0);
      next = dir * (1 - 1e-16);
      if (rep.saturated_at < 0) rep.saturated_at = k;
    } else if (rep.saturated_at < 0 && 1 - std::abs(next) < saturation_floor) {
      rep.saturated_at = k;
    }
    rep.points.push_back(next);
    z = next;
  }
  for (long k = 0; k < n; ++k) rep.rho_steps.push_back(pseudo_hyperbolic(rep.points[k], rep.points[k + 1]));
  Point last = rep.points.back();
  rep.dw_estimate = std::abs(last) > 0 ? last / std::abs(last) : Point(1, 0);
  auto c = classify_orbit(rep);
  rep.derivative_estimate = c.derivative;
  return rep;
}

const char* to_string(StepClass c) {
  switch (c) {
    case StepClass::hyperbolic: return "hyperbolic";
    case StepClass::parabolic_positive_step: return "parabolic_positive_step";
    case StepClass::parabolic_zero_step: return "parabolic_zero_step";
    case StepClass::inconclusive: return "inconclusive";
  }
  return "?";
}

Classification classify_orbit(const OrbitReport& orbit) {
  Classification c;
  long usable = orbit.saturated_at >= 0 ? orbit.saturated_at : static_cast<long>(orbit.points.size());
  c.usable = usable;
  if (usable < 20) {
    c.notes = "fewer than 20 orbit points before saturation";
    return c;
  }
  // contraction ratios (1 - |z_{k+1}|) / (1 - |z_k|) over the second half
  long b = usable / 2;
  std::vector<double> ratios;
  for (long k = b; k + 1 < usable; ++k) {
    double d0 = 1 - std::abs(orbit.points[k]), d1 = 1 - std::abs(orbit.points[k + 1]);
    if (d0 > 0) ratios.push_back(d1 / d0);
  }
  if (ratios.size() < 4) {
    c.notes = "too few usable contraction ratios";
    return c;
  }
  double mean = 0;
  for (double r : ratios) mean += r;
  mean /= double(ratios.size());
  double var = 0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  double sd = std::sqrt(var / double(ratios.size() - 1));
  c.tail_mean = mean;
  c.tail_dispersion = sd;
  if (mean >= 1.0 + 1e-9) {
    c.notes = "orbit is not approaching the circle";
    return c;
  }
  c.rho_mid = orbit.rho_steps[b];
  c.rho_end = orbit.rho_steps[usable - 2];
  if (mean < 1 - hyperbolic_sigma_multiplier * sd) {
    c.kind = StepClass::hyperbolic;
    c.derivative = mean;
  } else {
    c.derivative = 1.0;
    c.kind = c.rho_end > zero_step_decay * c.rho_mid && c.rho_end > 1e-9 ? StepClass::parabolic_positive_step
                                                                          : StepClass::parabolic_zero_step;
  }
  std::ostringstream os;
  os << "hyperbolic if tail mean < 1 - " << hyperbolic_sigma_multiplier << " * dispersion; zero step if rho decays below "
     << zero_step_decay << " of its mid-tail value";
  c.notes = os.str();
  return c;
}

Classification classify(const SelfMap& phi, Point z0, long n_iter) {
  require(n_iter >= 100, "classification needs at least 100 iterations");
  return classify_orbit(iterate_orbit(phi, z0, n_iter));
}

}  // namespace koenigs

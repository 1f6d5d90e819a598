#include "koenigs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "koenigs/capacity.hpp"
#include "koenigs/error.hpp"

namespace koenigs {

namespace {

std::vector<Atom> merge_duplicates(std::vector<Atom> atoms) {
  std::map<std::pair<double, double>, std::size_t> seen;
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    auto [it, fresh] = seen.try_emplace({a.z.real(), a.z.imag()}, out.size());
    if (fresh)
      out.push_back(a);
    else
      out[it->second].w += a.w;
  }
  return out;
}

void check_atoms(const std::vector<Atom>& atoms) {
  require(!atoms.empty(), "measure needs at least one atom");
  for (const auto& a : atoms) {
    require(std::isfinite(a.z.real()) && std::isfinite(a.z.imag()), "non-finite atom");
    require(std::isfinite(a.w) && a.w > 0, "atom weights must be positive");
  }
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  check_atoms(atoms);
  atoms_ = merge_duplicates(std::move(atoms));
  require(std::abs(total() - 1.0) <= 1e-12, "weights must sum to 1");
}

DiscreteMeasure DiscreteMeasure::normalized(std::vector<Atom> atoms) {
  check_atoms(atoms);
  double s = 0;
  for (const auto& a : atoms) s += a.w;
  for (auto& a : atoms) a.w /= s;
  DiscreteMeasure m;
  m.atoms_ = merge_duplicates(std::move(atoms));
  return m;
}

double DiscreteMeasure::total() const {
  double s = 0;
  for (const auto& a : atoms_) s += a.w;
  return s;
}

DiscreteMeasure DiscreteMeasure::translated(Point c) const {
  DiscreteMeasure m = *this;
  for (auto& a : m.atoms_) a.z += c;
  return m;
}

DiscreteMeasure DiscreteMeasure::scaled(double s) const {
  require(s > 0, "scale must be positive");
  DiscreteMeasure m = *this;
  for (auto& a : m.atoms_) a.z *= s;
  return m;
}

double interval_equilibrium_density(double n, double t) {
  require(n > 0, "interval length must be positive");
  if (t < 0 || t > n) return 0.0;
  if (t == 0 || t == n) return std::numeric_limits<double>::infinity();
  return 1.0 / (pi * std::sqrt(t * (n - t)));
}

AlphaCoefficients alpha_coefficients(long n) {
  require(n >= 1, "n must be >= 1");
  AlphaCoefficients a;
  a.n = n;
  a.values.resize(n);
  // antiderivative of the arcsine density: (2/pi) asin(sqrt(t/n))
  auto F = [n](long j) { return (2.0 / pi) * std::asin(std::sqrt(double(j) / double(n))); };
  long half = (n + 1) / 2;
  for (long j = 1; j <= half; ++j) a.values[j - 1] = F(j) - F(j - 1);
  for (long j = half + 1; j <= n; ++j) a.values[j - 1] = a.values[n - j];  // exact symmetry
  return a;
}

double potential(const DiscreteMeasure& mu, Point z) {
  double s = 0;
  for (const auto& a : mu.atoms()) {
    double d = std::abs(z - a.z);
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    s += a.w * std::log(d);
  }
  return s;
}

double energy(const DiscreteMeasure& mu) {
  const auto& at = mu.atoms();
  if (at.size() < 2) invalid("degenerate support");
  double s = 0;
  for (std::size_t i = 0; i < at.size(); ++i)
    for (std::size_t j = i + 1; j < at.size(); ++j) {
      double d = std::abs(at[i].z - at[j].z);
      if (d == 0.0) invalid("degenerate support");
      s += at[i].w * at[j].w * std::log(d);
    }
  return 2 * s;
}

DiscreteMeasure sigma_measure(const DiscreteMeasure& nu, long n) {
  require(n >= 1, "n must be >= 1");
  for (const auto& a : nu.atoms())
    require(std::abs(a.z) <= normalization_radius + 1e-12, "nu must be supported in the closed disc D(0, 1/4)");
  auto alpha = alpha_coefficients(n);
  std::vector<Atom> atoms;
  atoms.reserve(nu.size() * n);
  for (long j = 1; j <= n; ++j)
    for (const auto& a : nu.atoms()) atoms.push_back({a.z + double(j), alpha.values[j - 1] * a.w});
  return DiscreteMeasure::normalized(std::move(atoms));
}

SigmaPotential::SigmaPotential(const DiscreteMeasure& nu, long n, int terms)
    : nu_(nu), n_(n), alpha_(alpha_coefficients(n).values), moments_(terms) {
  for (const auto& a : nu.atoms())
    require(std::abs(a.z) <= normalization_radius + 1e-12, "nu must be supported in the closed disc D(0, 1/4)");
  for (const auto& a : nu.atoms()) {
    Point pk = 1.0;
    for (int k = 1; k <= terms; ++k) {
      pk *= a.z;
      moments_[k - 1] += a.w * pk / double(k);
    }
  }
}

double SigmaPotential::nu_potential(Point w) const {
  if (std::abs(w) < 0.75) return potential(nu_, w);
  // log|w - p| = log|w| - Re sum_k (p/w)^k / k
  Point u = 1.0 / w, acc = 0.0;
  for (std::size_t k = moments_.size(); k-- > 0;) acc = (acc + moments_[k]) * u;
  return std::log(std::abs(w)) - acc.real();
}

double SigmaPotential::operator()(Point z) const {
  double s = 0;
  for (long j = 1; j <= n_; ++j) s += alpha_[j - 1] * nu_potential(z - double(j));
  return s;
}

namespace {

DiscreteMeasure equilibrium_of(const CompactSet& e, const SigmaGrid& grid) {
  if (e.polar()) invalid("equilibrium measure undefined");
  if (!within_normalization(e)) invalid("E out of normalization range");
  return capacity_estimate_energy(e, grid.nu_grid).measure;
}

std::vector<Point> sample_points(const CompactSet& e, int per) {
  std::vector<Point> pts;
  for (const auto& s : e.sample(per, SampleMode::cells)) pts.push_back(s.z);
  return pts;
}

double kn_minimum(const SigmaPotential& ps, const std::vector<Point>& base, long n) {
  double lo = std::numeric_limits<double>::infinity();
  for (long k = 1; k <= n; ++k)
    for (auto x : base) lo = std::min(lo, ps(x + double(k)));
  return lo;
}

}  // namespace

SigmaReport sigma_potential_report(const CompactSet& e, const DiscreteMeasure& nu, long n, const SigmaGrid& grid) {
  if (e.polar()) invalid("equilibrium measure undefined");
  SigmaPotential ps(nu, n);
  SigmaReport r;
  r.n = n;
  r.log_n_over_4 = std::log(n / 4.0);
  auto base = sample_points(e, grid.per_primitive);
  r.max_dev_on_E = 0;
  for (auto x : base) r.max_dev_on_E = std::max(r.max_dev_on_E, std::abs(ps(x) - r.log_n_over_4));
  r.min_on_Kn = kn_minimum(ps, base, n);
  r.samples_E = static_cast<long>(base.size());
  r.samples_Kn = static_cast<long>(base.size()) * n;
  return r;
}

SigmaReport sigma_potential_report(const CompactSet& e, long n, const SigmaGrid& grid) {
  return sigma_potential_report(e, equilibrium_of(e, grid), n, grid);
}

GammaReport gamma_diagnostic(const CompactSet& e, const DiscreteMeasure& nu, long m, const std::vector<Point>& z,
                             const SigmaGrid& grid) {
  if (e.polar()) invalid("equilibrium measure undefined");
  SigmaPotential ps(nu, m);
  GammaReport g;
  g.m = m;
  g.lambda_m = kn_minimum(ps, sample_points(e, grid.per_primitive), m);
  g.gamma.reserve(z.size());
  for (auto x : z) g.gamma.push_back(ps(x) - g.lambda_m);
  return g;
}

GammaReport gamma_diagnostic(const CompactSet& e, long m, const std::vector<Point>& z, const SigmaGrid& grid) {
  return gamma_diagnostic(e, equilibrium_of(e, grid), m, z, grid);
}

}  // namespace koenigs

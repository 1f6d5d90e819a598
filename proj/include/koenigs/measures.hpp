#pragma once

#include <vector>

#include "koenigs/geometry.hpp"

namespace koenigs {

struct Atom {
  Point z;
  double w;
};

/// Probability measure with finitely many atoms. Duplicate points are merged.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  // Weights must be positive and sum to 1 within 1e-12.
  explicit DiscreteMeasure(std::vector<Atom> atoms);
  // Rescales positive weights to total mass 1.
  static DiscreteMeasure normalized(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double total() const;

  DiscreteMeasure translated(Point c) const;
  DiscreteMeasure scaled(double s) const;

 private:
  std::vector<Atom> atoms_;
};

/// Arcsine density of the equilibrium measure of [0, n]; +inf at the endpoints, 0 outside.
double interval_equilibrium_density(double n, double t);

struct AlphaCoefficients {
  long n = 0;
  std::vector<double> values;  // values[j-1] = mass of [j-1, j]
};

AlphaCoefficients alpha_coefficients(long n);

/// Sum of w log|z - p|; -inf when z is an atom.
double potential(const DiscreteMeasure& mu, Point z);

/// Off-diagonal energy sum_{i != j} w_i w_j log|p_i - p_j|.
double energy(const DiscreteMeasure& mu);

/// sum_j alpha_j nu(. - j).
DiscreteMeasure sigma_measure(const DiscreteMeasure& nu, long n);

/// Fast evaluator of p_sigma: copies farther than 3/4 use a multipole expansion of p_nu.
class SigmaPotential {
 public:
  SigmaPotential(const DiscreteMeasure& nu, long n, int terms = 32);
  double operator()(Point z) const;
  long n() const noexcept { return n_; }

 private:
  double nu_potential(Point w) const;
  DiscreteMeasure nu_;
  long n_;
  std::vector<double> alpha_;
  std::vector<Point> moments_;  // M_k / k, k = 1..terms
};

struct SigmaGrid {
  int per_primitive = 256;  // samples per primitive of E
  int nu_grid = 512;        // grid for the equilibrium measure of E
};

struct SigmaReport {
  long n = 0;
  double max_dev_on_E = 0, min_on_Kn = 0, log_n_over_4 = 0;
  long samples_E = 0, samples_Kn = 0;
};

SigmaReport sigma_potential_report(const CompactSet& e, long n, const SigmaGrid& grid = {});
// Same, with a precomputed equilibrium measure of E.
SigmaReport sigma_potential_report(const CompactSet& e, const DiscreteMeasure& nu, long n, const SigmaGrid& grid = {});

struct GammaReport {
  long m = 0;
  double lambda_m = 0;
  std::vector<double> gamma;
};

GammaReport gamma_diagnostic(const CompactSet& e, long m, const std::vector<Point>& z, const SigmaGrid& grid = {});
GammaReport gamma_diagnostic(const CompactSet& e, const DiscreteMeasure& nu, long m, const std::vector<Point>& z,
                             const SigmaGrid& grid = {});

}  // namespace koenigs

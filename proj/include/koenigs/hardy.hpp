#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koenigs/domain.hpp"
#include "koenigs/harmonic.hpp"

namespace koenigs {

enum class HardyFamily { half_plane, strip, sector };
/// Exact Hardy numbers; +inf for the strip.
double hardy_closed_form(HardyFamily family, double theta = pi);

enum class Verdict { finite, unbounded_trend, zero_trend };
const char* to_string(Verdict v);

struct HardyRow {
  double R = 0;
  double neg_log_omega = 0;
  double log_R = 0;
  double se = 0;  // standard error of -log omega
  double mean = 0;
  double ci95 = 0;
  long truncated = 0;
  long min_stage_hits = 0;
};

struct HardyEstimate {
  double slope = 0;         // least squares over the top half of the grid
  double slope_se = 0;
  double dispersion = 0;    // max |residual| of that fit
  std::size_t fit_begin = 0, fit_end = 0;  // rows [fit_begin, fit_end)
  std::vector<double> window_slopes;       // top half, top third, top quarter
  double liminf_ratio = 0;  // min of -log omega / log R over the fit window
  Verdict verdict = Verdict::finite;
  std::vector<HardyRow> per_point;
};

/// Fit and verdict from a finished table.
HardyEstimate hardy_fit(std::vector<HardyRow> rows);

HardyEstimate hardy_estimate(const DomainSpec& d, const std::vector<double>& R_grid, const WosConfig& cfg);

std::vector<double> geometric_grid(double r0, double r1, int points);

struct PrescribedDomainResult {
  double p = 0;
  std::vector<double> radii;
  std::vector<double> root_residuals;
  std::vector<std::vector<std::pair<double, double>>> scan_traces;  // (R, f(R)) per level
  double root_tol = 0;
  DomainSpec domain;
};

/// Radii R_1 = 2 < R_2 < ... < R_N with R_{k+1} the first root of omega_{R,k} = R^{-p}.
PrescribedDomainResult construct_prescribed_domain(double p, int levels, const WosConfig& cfg, double root_tol,
                                                   double radius_cap = 1e40);

/// Omega* = C minus the copies E + j (j >= 1), base point -1.
DomainSpec translated_union_domain(const CompactSet& e);
HardyEstimate koenigs_lower_bound_experiment(const CompactSet& e, const std::vector<double>& R_grid,
                                             const WosConfig& cfg);

enum class MapKind { sector_power, cayley_half_plane, strip_log, zero };

struct MapSpec {
  MapKind kind = MapKind::cayley_half_plane;
  double theta = pi / 2;  // sector_power exponent theta / pi
  double lambda = 2.718281828459045;  // strip_log
};

std::string to_string(const MapSpec& m);
Point evaluate_map(const MapSpec& m, Point z);

enum class MeansClass { bounded, unbounded, inconclusive };
const char* to_string(MeansClass c);

struct IntegralMeansResult {
  std::vector<double> p_grid, r_grid;
  std::vector<std::vector<double>> log_means;  // [p][r]
  std::vector<MeansClass> classes;
  std::vector<double> growth_slopes;  // d log M / d(-log(1 - r)) over the last points
  std::optional<double> finite_p;     // largest p such that it and all smaller grid p are bounded
  int angles = 4096;
};

IntegralMeansResult hardy_of_map_integral_means(const MapSpec& m, const std::vector<double>& p_grid,
                                                const std::vector<double>& r_grid, int angles = 4096);

std::vector<double> default_r_grid();  // 1 - 2^{-k}, k = 1..10

}  // namespace koenigs

#pragma once

#include <map>
#include <string>
#include <vector>

#include "koenigs/geometry.hpp"
#include "koenigs/measures.hpp"

namespace koenigs {

enum class CapacityMethod { closed_form, leja, energy };
const char* to_string(CapacityMethod m);

struct CapacityEstimate {
  double value = 0;
  CapacityMethod method = CapacityMethod::closed_form;
  long points_used = 0;
  std::map<std::string, double> diagnostics;
  std::vector<double> dk;  // Leja: d_k for k = 2..count
};

CapacityEstimate capacity_closed_form_interval(double length);
CapacityEstimate capacity_closed_form_disc(double radius);
CapacityEstimate capacity_closed_form_points(const std::vector<Point>& pts);

/// Default Leja candidate grid: at least max(10^4, 10 k) points, nodes layout.
std::vector<Point> leja_candidates(const CompactSet& set, int k);

/// Greedy Leja sequence on a candidate grid; the first two points realize the grid diameter.
/// Ties go to the smallest grid index.
std::vector<Point> leja_points(const CompactSet& set, int k, const std::vector<Point>& candidates);
std::vector<Point> leja_points(const CompactSet& set, int k);

CapacityEstimate capacity_estimate_leja(const CompactSet& set, int k);
CapacityEstimate capacity_estimate_leja(const CompactSet& set, int k, const std::vector<Point>& candidates);

struct EnergyOptions {
  double tolerance = 1e-8;   // sup-norm of the projected-gradient map
  long max_iterations = 10000;
  double prune = 1e-9;
};

struct EnergyResult {
  CapacityEstimate estimate;
  DiscreteMeasure measure;
  double energy = 0;  // maximal discrete energy (log of the capacity)
};

/// Maximizes the discrete energy of a cell grid with m points over the weight simplex.
EnergyResult capacity_estimate_energy(const CompactSet& set, int m, const EnergyOptions& opt = {});

struct KnRow {
  long n = 0;
  double cap_kn = 0, cap_interval = 0, ratio = 0, scaled_error = 0;
  int leja_points = 0;
  bool polar = false;
};

// Leja count used when the caller has no reason to pick one; bias is roughly k^{1/(k-1)}.
constexpr int default_leja_points = 128;

int kn_leja_count(long n);  // min(8 n, 2048)
std::vector<KnRow> kn_capacity_experiment(const CompactSet& e, const std::vector<long>& n_list);

}  // namespace koenigs

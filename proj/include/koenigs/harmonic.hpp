#pragma once

#include <cstdint>
#include <vector>

#include "koenigs/domain.hpp"

namespace koenigs {

struct WosConfig {
  double epsilon = 1e-6;  // absorb when distance < epsilon * max(1, |z - center|)
  long max_steps = 100000;
  long samples = 100000;
  std::uint64_t seed = 0;
  double outer_clip = 1e12;  // free-space diagnostics only
  int workers = 0;           // 0: runtime default
};

void validate(const WosConfig& c);

enum class ExitLabel { outer, inner, truncated };

struct WosExit {
  ExitLabel label;
  Point exit_point;
  long steps;
};

/// One walk-on-spheres path in Omega_R; randomness keyed by (seed, stream, walk_index).
WosExit wos_exit(const BoundaryPartition& part, Point start, const WosConfig& cfg, std::uint64_t walk_index,
                 std::uint64_t stream = 0);

/// Walks 0..samples-1 from `start`, in index order.
std::vector<WosExit> wos_batch(const BoundaryPartition& part, Point start, const WosConfig& cfg,
                               std::uint64_t stream = 0);

struct HarmonicMeasureEstimate {
  double mean = 0;         // may underflow to 0; log_mean keeps the value
  double ci95 = 0;
  long samples_used = 0;   // walks launched over all stages
  long truncated_walks = 0;
  double log_mean = 0;
  double log_ci95 = 0;     // half-width of the 95% interval for log(mean), delta method
  int stages = 0;
  long min_stage_hits = 0;
};

/// Fixed-effort splitting over concentric circles: each stage launches `samples` walks
/// from the survivors of the previous circle. One stage is the plain binomial estimator.
class SplittingPopulation {
 public:
  struct Stage {
    double radius;
    long launched, reached, truncated;
  };

  SplittingPopulation(DomainSpec domain, WosConfig cfg);

  Stage advance(double radius, std::uint64_t stream);
  // Runs a stage without committing it.
  Stage trial(double radius, std::uint64_t stream) const;

  double radius() const noexcept { return radius_; }
  bool extinct() const noexcept { return extinct_; }
  const std::vector<Point>& survivors() const noexcept { return survivors_; }
  const std::vector<Stage>& stages() const noexcept { return stages_; }
  HarmonicMeasureEstimate estimate() const;
  // Estimate if one more (uncommitted) stage were appended.
  HarmonicMeasureEstimate estimate_with(const Stage& extra) const;

 private:
  Stage run(double radius, std::uint64_t stream, std::vector<Point>* keep) const;
  DomainSpec domain_;
  WosConfig cfg_;
  double radius_ = 0;
  bool extinct_ = false;
  std::vector<Point> survivors_;
  std::vector<Stage> stages_;
};

/// Splitting levels for the requested radii: anchors 0.75 * 2^k (increments capped for strips)
/// merged with the requested radii.
std::vector<double> splitting_levels(const DomainSpec& d, const std::vector<double>& radii);

HarmonicMeasureEstimate harmonic_measure(const DomainSpec& d, double R, const WosConfig& cfg);

struct ScanRow {
  double R;
  HarmonicMeasureEstimate est;
};

/// One nested splitting pass whose levels include every grid radius.
std::vector<ScanRow> omega_scan(const DomainSpec& d, const std::vector<double>& R_grid, const WosConfig& cfg);

// Closed forms used as oracles.
double disc_arc_law(double arc_fraction);
double annulus_law(double r0, double r, double rho);
/// omega(0, circle arc, {Re z > -a} cap D(0, R)) via a Moebius map onto a wedge.
double half_plane_disc_omega(double a, double R);

}  // namespace koenigs

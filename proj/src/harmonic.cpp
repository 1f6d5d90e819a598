#include "koenigs/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "koenigs/error.hpp"
#include "koenigs/random.hpp"

namespace koenigs {

namespace {

template <class Oracle>
WosExit walk(const Oracle& inner, Point c, double R, Point start, const WosConfig& cfg, CounterRng& rng) {
  Point w = start - c;
  for (long s = 0; s < cfg.max_steps; ++s) {
    double r = std::abs(w);
    double d_out = R - r;
    double d_in = inner(c + w);
    double d = std::min(d_in, d_out);
    if (d < cfg.epsilon * std::max(1.0, r)) return {d_out < d_in ? ExitLabel::outer : ExitLabel::inner, c + w, s};
    double phi = 2 * pi * rng.uniform();
    // step direction measured from the radial frame, so rotations about c act pathwise
    Point frame = r > 0 ? w / r : Point(1.0, 0.0);
    w += d * (frame * Point(std::cos(phi), std::sin(phi)));
  }
  return {ExitLabel::truncated, c + w, cfg.max_steps};
}

template <class F>
void for_each_walk(long n, int workers, F&& f) {
#if defined(_OPENMP)
  if (workers > 0) {
#pragma omp parallel for schedule(dynamic, 256) num_threads(workers)
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 256)
  for (long i = 0; i < n; ++i) f(i);
#else
  (void)workers;
  for (long i = 0; i < n; ++i) f(i);
#endif
}

}  // namespace

void validate(const WosConfig& c) {
  require(c.epsilon > 0 && c.epsilon < 1e-2, "epsilon must lie in (0, 1e-2)");
  require(c.samples >= 1, "samples must be >= 1");
  require(c.max_steps >= 1, "max_steps must be >= 1");
  require(c.outer_clip > 0, "outer_clip must be positive");
  require(c.workers >= 0, "workers must be >= 0");
}

WosExit wos_exit(const BoundaryPartition& part, Point start, const WosConfig& cfg, std::uint64_t walk_index,
                 std::uint64_t stream) {
  validate(cfg);
  CounterRng rng(cfg.seed, stream, walk_index);
  return std::visit([&](const auto& o) { return walk(o, part.center, part.radius, start, cfg, rng); }, part.oracle);
}

std::vector<WosExit> wos_batch(const BoundaryPartition& part, Point start, const WosConfig& cfg, std::uint64_t stream) {
  validate(cfg);
  std::vector<WosExit> out(cfg.samples);
  std::visit(
      [&](const auto& o) {
        for_each_walk(cfg.samples, cfg.workers, [&](long i) {
          CounterRng rng(cfg.seed, stream, static_cast<std::uint64_t>(i));
          out[i] = walk(o, part.center, part.radius, start, cfg, rng);
        });
      },
      part.oracle);
  return out;
}

SplittingPopulation::SplittingPopulation(DomainSpec domain, WosConfig cfg) : domain_(std::move(domain)), cfg_(cfg) {
  validate(domain_);
  validate(cfg_);
}

SplittingPopulation::Stage SplittingPopulation::run(double radius, std::uint64_t stream, std::vector<Point>* keep) const {
  require(!extinct_, "increase samples or reduce R");
  require(radius > radius_, "splitting levels must increase");
  auto part = boundary_partition(domain_, radius);
  const long n = cfg_.samples;
  std::vector<WosExit> ex(n);
  const Point base = domain_.base_point;
  const std::size_t S = survivors_.size();
  std::visit(
      [&](const auto& o) {
        for_each_walk(n, cfg_.workers, [&](long i) {
          CounterRng rng(cfg_.seed, stream, static_cast<std::uint64_t>(i));
          Point start = stages_.empty() ? base : survivors_[static_cast<std::size_t>(i) % S];
          ex[i] = walk(o, part.center, part.radius, start, cfg_, rng);
        });
      },
      part.oracle);
  Stage st{radius, n, 0, 0};
  if (keep) keep->clear();
  for (long i = 0; i < n; ++i) {
    if (ex[i].label == ExitLabel::outer) {
      ++st.reached;
      if (keep) keep->push_back(ex[i].exit_point);
    } else if (ex[i].label == ExitLabel::truncated) {
      ++st.truncated;
    }
  }
  return st;
}

SplittingPopulation::Stage SplittingPopulation::advance(double radius, std::uint64_t stream) {
  std::vector<Point> keep;
  Stage st = run(radius, stream, &keep);
  survivors_.swap(keep);
  stages_.push_back(st);
  radius_ = radius;
  extinct_ = st.reached == 0;
  return st;
}

SplittingPopulation::Stage SplittingPopulation::trial(double radius, std::uint64_t stream) const {
  return run(radius, stream, nullptr);
}

namespace {

HarmonicMeasureEstimate combine(const std::vector<SplittingPopulation::Stage>& stages) {
  HarmonicMeasureEstimate e;
  e.stages = static_cast<int>(stages.size());
  e.min_stage_hits = std::numeric_limits<long>::max();
  double log_mean = 0, relvar = 0;
  bool dead = false;
  for (const auto& s : stages) {
    e.samples_used += s.launched;
    e.truncated_walks += s.truncated;
    e.min_stage_hits = std::min(e.min_stage_hits, s.reached);
    long eff = s.launched - s.truncated;
    double p = eff > 0 ? double(s.reached) / double(eff) : 0.0;
    if (p == 0) {
      dead = true;
      continue;
    }
    log_mean += std::log(p);
    relvar += (1 - p) / (double(eff) * p);
  }
  if (stages.empty()) e.min_stage_hits = 0;
  if (dead) {
    e.mean = 0;
    e.ci95 = 0;
    e.log_mean = -std::numeric_limits<double>::infinity();
    e.log_ci95 = std::numeric_limits<double>::infinity();
    return e;
  }
  e.log_mean = log_mean;
  e.mean = std::exp(log_mean);
  e.log_ci95 = 1.96 * std::sqrt(relvar);
  e.ci95 = e.mean * e.log_ci95;
  return e;
}

}  // namespace

HarmonicMeasureEstimate SplittingPopulation::estimate() const { return combine(stages_); }

HarmonicMeasureEstimate SplittingPopulation::estimate_with(const Stage& extra) const {
  auto s = stages_;
  s.push_back(extra);
  return combine(s);
}

std::vector<double> splitting_levels(const DomainSpec& d, const std::vector<double>& radii) {
  require(!radii.empty(), "radius grid is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0 && std::isfinite(radii[i]), "radii must be positive and finite");
    if (i) require(radii[i] > radii[i - 1], "radius grid must be increasing");
  }
  const double top = radii.back();
  const double cap = level_increment_cap(d);
  std::vector<double> levels;
  std::size_t g = 0;
  for (double r = 0.75; r < top; r = std::min(2 * r, r + cap)) {
    while (g < radii.size() && radii[g] <= r * (1 + 1e-9)) levels.push_back(radii[g++]);
    if (!levels.empty() && std::abs(levels.back() - r) <= 1e-9 * r) continue;
    try {
      (void)boundary_partition(d, r);
    } catch (const Error&) {
      continue;  // anchor lands where no component rule applies; skip it
    }
    levels.push_back(r);
  }
  while (g < radii.size()) levels.push_back(radii[g++]);
  return levels;
}

HarmonicMeasureEstimate harmonic_measure(const DomainSpec& d, double R, const WosConfig& cfg) {
  auto rows = omega_scan(d, {R}, cfg);
  return rows.front().est;
}

std::vector<ScanRow> omega_scan(const DomainSpec& d, const std::vector<double>& R_grid, const WosConfig& cfg) {
  for (double R : R_grid) (void)boundary_partition(d, R);  // certificate errors surface before any walking
  auto levels = splitting_levels(d, R_grid);
  SplittingPopulation pop(d, cfg);
  std::vector<ScanRow> rows;
  std::size_t g = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!pop.extinct()) pop.advance(levels[k], k + 1);
    if (g < R_grid.size() && levels[k] == R_grid[g]) {
      HarmonicMeasureEstimate e = pop.estimate();
      if (pop.extinct()) {
        e.mean = 0;
        e.ci95 = 0;
        e.log_mean = -std::numeric_limits<double>::infinity();
      }
      rows.push_back({R_grid[g++], e});
    }
  }
  return rows;
}

double disc_arc_law(double arc_fraction) {
  require(arc_fraction >= 0 && arc_fraction <= 1, "arc fraction must lie in [0, 1]");
  return arc_fraction;
}

double annulus_law(double r0, double r, double rho) {
  require(0 < r0 && r0 < r && r0 <= rho && rho <= r, "need r0 <= rho <= r and r0 < r");
  return std::log(rho / r0) / std::log(r / r0);
}

double half_plane_disc_omega(double a, double R) {
  require(a > 0 && R > 0, "need a > 0 and R > 0");
  if (R <= a) return 1.0;
  double s = std::sqrt(R * R - a * a);
  Point A(-a, s), B(-a, -s);
  auto T = [&](Point z) { return (z - A) / (z - B); };
  // T sends the chord to the ray through -1 and the arc to the ray through T(R)
  double t0 = std::abs(std::arg(-T(0.0)));
  double t1 = std::abs(std::arg(-T(R)));
  return t0 / t1;
}

}  // namespace koenigs

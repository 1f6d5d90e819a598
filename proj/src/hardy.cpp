#include "koenigs/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "koenigs/error.hpp"

namespace koenigs {

double hardy_closed_form(HardyFamily family, double theta) {
  switch (family) {
    case HardyFamily::half_plane: return 1.0;
    case HardyFamily::strip: return std::numeric_limits<double>::infinity();
    case HardyFamily::sector:
      require(theta > 0 && theta <= 2 * pi, "sector angle must lie in (0, 2 pi]");
      return pi / theta;
  }
  return 0;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::finite: return "finite";
    case Verdict::unbounded_trend: return "unbounded_trend";
    case Verdict::zero_trend: return "zero_trend";
  }
  return "?";
}

namespace {

struct Fit {
  double slope = 0, se = 0, dispersion = 0;
};

Fit least_squares(const std::vector<HardyRow>& rows, std::size_t b, std::size_t e) {
  double n = double(e - b), sx = 0, sy = 0;
  for (std::size_t i = b; i < e; ++i) {
    sx += rows[i].log_R;
    sy += rows[i].neg_log_omega;
  }
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0, var = 0;
  for (std::size_t i = b; i < e; ++i) {
    double dx = rows[i].log_R - mx;
    sxx += dx * dx;
    sxy += dx * (rows[i].neg_log_omega - my);
    var += dx * dx * rows[i].se * rows[i].se;
  }
  Fit f;
  f.slope = sxy / sxx;
  f.se = std::sqrt(var) / sxx;
  double icpt = my - f.slope * mx;
  for (std::size_t i = b; i < e; ++i)
    f.dispersion = std::max(f.dispersion, std::abs(rows[i].neg_log_omega - icpt - f.slope * rows[i].log_R));
  return f;
}

std::size_t window_start(std::size_t n, std::size_t parts) {
  std::size_t len = std::max<std::size_t>(2, (n + parts - 1) / parts);
  return n - std::min(n, len);
}

}  // namespace

HardyEstimate hardy_fit(std::vector<HardyRow> rows) {
  require(rows.size() >= 2, "need at least two radii");
  for (const auto& r : rows)
    if (!std::isfinite(r.neg_log_omega)) invalid("increase samples or reduce R");
  HardyEstimate h;
  const std::size_t n = rows.size();
  std::vector<Fit> fits;
  for (std::size_t parts : {2, 3, 4}) fits.push_back(least_squares(rows, window_start(n, parts), n));
  h.fit_begin = window_start(n, 2);
  h.fit_end = n;
  h.slope = fits[0].slope;
  h.slope_se = fits[0].se;
  h.dispersion = fits[0].dispersion;
  for (const auto& f : fits) h.window_slopes.push_back(f.slope);
  h.liminf_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = h.fit_begin; i < n; ++i)
    if (rows[i].log_R > 0) h.liminf_ratio = std::min(h.liminf_ratio, rows[i].neg_log_omega / rows[i].log_R);

  // each narrower window must beat the previous slope by 5% plus two standard errors
  auto rises = [&](const Fit& a, const Fit& b) {
    return b.slope > a.slope + 0.05 * std::abs(a.slope) + 2 * std::hypot(a.se, b.se);
  };
  if (rises(fits[0], fits[1]) && rises(fits[1], fits[2]))
    h.verdict = Verdict::unbounded_trend;
  else if (fits[2].slope < 0.05)
    h.verdict = Verdict::zero_trend;
  else
    h.verdict = Verdict::finite;
  h.per_point = std::move(rows);
  return h;
}

HardyEstimate hardy_estimate(const DomainSpec& d, const std::vector<double>& R_grid, const WosConfig& cfg) {
  auto scan = omega_scan(d, R_grid, cfg);
  std::vector<HardyRow> rows;
  for (const auto& s : scan) {
    if (!(s.est.mean > 0) && !std::isfinite(s.est.log_mean)) invalid("increase samples or reduce R");
    HardyRow r;
    r.R = s.R;
    r.neg_log_omega = -s.est.log_mean;
    r.log_R = std::log(s.R);
    r.se = s.est.log_ci95 / 1.96;
    r.mean = s.est.mean;
    r.ci95 = s.est.ci95;
    r.truncated = s.est.truncated_walks;
    r.min_stage_hits = s.est.min_stage_hits;
    rows.push_back(r);
  }
  return hardy_fit(std::move(rows));
}

std::vector<double> geometric_grid(double r0, double r1, int points) {
  require(r0 > 0 && r1 > r0 && points >= 2, "need 0 < r0 < r1 and at least two points");
  std::vector<double> g(points);
  double l0 = std::log10(r0), l1 = std::log10(r1);
  for (int i = 0; i < points; ++i) g[i] = std::pow(10.0, l0 + (l1 - l0) * i / (points - 1));
  g.front() = r0;
  g.back() = r1;
  return g;
}

PrescribedDomainResult construct_prescribed_domain(double p, int levels, const WosConfig& cfg, double root_tol,
                                                   double radius_cap) {
  require(p > 0, "p must be > 0");
  require(levels >= 1, "levels must be >= 1");
  require(root_tol > 0 && root_tol < 1, "root tolerance must lie in (0, 1)");
  PrescribedDomainResult res;
  res.p = p;
  res.root_tol = root_tol;
  res.radii = {2.0};

  for (int level = 1; level < levels; ++level) {
    DomainSpec dom{CircleSlitDomain{res.radii, p}, 0.0};
    SplittingPopulation pop(dom, cfg);
    const double RN = res.radii.back();
    const std::uint64_t tag = std::uint64_t(level) << 40;
    std::vector<std::pair<double, double>> trace;

    // F(R) = omega_hat(R) - R^{-p}; the last stage runs from the largest anchor below R
    // with a stream fixed by that anchor, so bisection iterates share random numbers.
    int k = 0;
    double a = 0.75;
    auto F = [&](double R) {
      auto st = pop.trial(R, tag | (std::uint64_t(1) << 32) | std::uint64_t(k));
      auto e = pop.estimate_with(st);
      double v = (e.mean > 0 ? e.mean : 0.0) - std::pow(R, -p);
      trace.emplace_back(R, v);
      return v;
    };
    while (2 * a < RN) {
      pop.advance(a, tag | std::uint64_t(k + 1));
      if (pop.extinct()) invalid("increase samples or reduce R");
      a *= 2;
      ++k;
    }
    // pop sits at the last anchor below R_N (or at the start when none)
    if (a < RN) {
      pop.advance(a, tag | std::uint64_t(k + 1));
      ++k;
    }
    double lo = RN * (1 + 1e-9);
    double flo = F(lo);
    if (flo > 0) {
      std::ostringstream os;
      os << "f > 0 just above R_N = " << RN << "; no bracket";
      throw NonConvergence(os.str(), {{"R", lo}, {"f", flo}});
    }
    double next = a * 2;
    if (next <= RN * (1 + 1e-9)) next *= 2;
    double hi = 0;
    for (;;) {
      if (next > radius_cap) {
        std::ostringstream os;
        os << "bracket not found below radius cap " << radius_cap << "; scan:";
        for (auto& [R, v] : trace) os << " (" << R << ", " << v << ")";
        throw NonConvergence(os.str(), {{"radius_cap", radius_cap}, {"level", double(level)}});
      }
      double fn = F(next);
      if (fn > 0) {
        hi = next;
        break;
      }
      pop.advance(next, tag | std::uint64_t(k + 1));
      if (pop.extinct()) invalid("increase samples or reduce R");
      ++k;
      lo = next;
      next *= 2;
    }
    while (hi / lo - 1 > root_tol) {
      double mid = std::sqrt(lo * hi);
      if (mid <= pop.radius()) break;
      double fm = F(mid);
      if (fm > 0)
        hi = mid;
      else
        lo = mid;
    }
    double root = std::sqrt(lo * hi);
    if (root <= pop.radius()) root = hi;
    double resid = std::abs(F(root));
    res.radii.push_back(root);
    res.root_residuals.push_back(resid);
    res.scan_traces.push_back(std::move(trace));
  }
  res.domain = DomainSpec{CircleSlitDomain{res.radii, p}, 0.0};
  return res;
}

DomainSpec translated_union_domain(const CompactSet& e) {
  if (!within_normalization(e)) invalid("E out of normalization range");
  return DomainSpec{TranslatedUnionComplement{e, 0}, Point(-1.0, 0.0)};
}

HardyEstimate koenigs_lower_bound_experiment(const CompactSet& e, const std::vector<double>& R_grid,
                                             const WosConfig& cfg) {
  if (e.polar()) invalid("polar E: the domain has Hardy number 0; experiment skipped");
  return hardy_estimate(translated_union_domain(e), R_grid, cfg);
}

std::string to_string(const MapSpec& m) {
  switch (m.kind) {
    case MapKind::sector_power: return "sector_power";
    case MapKind::cayley_half_plane: return "cayley_half_plane";
    case MapKind::strip_log: return "strip_log";
    case MapKind::zero: return "zero";
  }
  return "?";
}

Point evaluate_map(const MapSpec& m, Point z) {
  Point u = (1.0 + z) / (1.0 - z);
  switch (m.kind) {
    case MapKind::sector_power: return std::pow(u, m.theta / pi);
    case MapKind::cayley_half_plane: return u;
    case MapKind::strip_log: {
      double l = std::log(m.lambda);
      return std::log(u) / l + Point(0, pi / (2 * l));
    }
    case MapKind::zero: return 0.0;
  }
  return 0.0;
}

const char* to_string(MeansClass c) {
  switch (c) {
    case MeansClass::bounded: return "bounded";
    case MeansClass::unbounded: return "unbounded";
    case MeansClass::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<double> default_r_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 10; ++k) g.push_back(1 - std::ldexp(1.0, -k));
  return g;
}

IntegralMeansResult hardy_of_map_integral_means(const MapSpec& m, const std::vector<double>& p_grid,
                                                const std::vector<double>& r_grid, int angles) {
  require(!p_grid.empty() && r_grid.size() >= 2, "need a p grid and at least two radii");
  require(angles >= 16, "need at least 16 angles");
  for (double p : p_grid) require(p > 0, "p must be positive");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    require(r_grid[i] > 0 && r_grid[i] < 1, "radii must lie in (0, 1)");
    if (i) require(r_grid[i] > r_grid[i - 1], "radii must increase");
  }
  if (m.kind == MapKind::sector_power) require(m.theta > 0 && m.theta <= 2 * pi, "sector angle must lie in (0, 2 pi]");
  if (m.kind == MapKind::strip_log) require(m.lambda > 1, "strip lambda must exceed 1");

  IntegralMeansResult res;
  res.p_grid = p_grid;
  res.r_grid = r_grid;
  res.angles = angles;
  const double ninf = -std::numeric_limits<double>::infinity();
  // log|f| on each circle
  std::vector<std::vector<double>> logabs(r_grid.size(), std::vector<double>(angles));
  for (std::size_t i = 0; i < r_grid.size(); ++i)
    for (int j = 0; j < angles; ++j) {
      double a = std::abs(evaluate_map(m, std::polar(r_grid[i], 2 * pi * (j + 0.5) / angles)));
      logabs[i][j] = a > 0 ? std::log(a) : ninf;
    }
  std::vector<double> x;
  for (double r : r_grid) x.push_back(-std::log1p(-r));
  bool all_bounded_so_far = true;
  for (double p : p_grid) {
    std::vector<double> lm;
    for (const auto& row : logabs) {
      double top = ninf;
      for (double v : row) top = std::max(top, p * v);
      double s = 0;
      if (top != ninf)
        for (double v : row) s += std::exp(p * v - top);
      lm.push_back(top == ninf ? ninf : top + std::log(s / angles));
    }
    // growth slope over the last (up to) four radii
    std::size_t n = lm.size(), b = n >= 4 ? n - 4 : 0;
    double slope = 0;
    if (std::isfinite(lm[b]) && std::isfinite(lm[n - 1])) {
      double mx = 0, my = 0;
      for (std::size_t i = b; i < n; ++i) {
        mx += x[i];
        my += lm[i];
      }
      mx /= double(n - b);
      my /= double(n - b);
      double sxx = 0, sxy = 0;
      for (std::size_t i = b; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (lm[i] - my);
      }
      slope = sxy / sxx;
    }
    MeansClass c;
    double l1 = lm[n - 1], l0 = lm[n - 2];
    if (l1 == ninf && l0 == ninf)
      c = MeansClass::bounded;
    else if (!std::isfinite(l1) || !std::isfinite(l0))
      c = MeansClass::unbounded;  // overflow
    else if (std::abs(std::expm1(l1 - l0)) < 0.05)
      c = MeansClass::bounded;
    else if (l1 > l0 && slope > 0.05)
      c = MeansClass::unbounded;
    else
      c = MeansClass::inconclusive;
    if (c == MeansClass::bounded && all_bounded_so_far)
      res.finite_p = p;
    else
      all_bounded_so_far = false;
    res.classes.push_back(c);
    res.growth_slopes.push_back(slope);
    res.log_means.push_back(std::move(lm));
  }
  return res;
}

}  // namespace koenigs

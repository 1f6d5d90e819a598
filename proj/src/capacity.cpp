#include "koenigs/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "koenigs/error.hpp"

namespace koenigs {

const char* to_string(CapacityMethod m) {
  switch (m) {
    case CapacityMethod::closed_form: return "closed_form";
    case CapacityMethod::leja: return "leja";
    case CapacityMethod::energy: return "energy";
  }
  return "?";
}

CapacityEstimate capacity_closed_form_interval(double length) {
  require(length >= 0 && std::isfinite(length), "interval length must be >= 0");
  return {length / 4, CapacityMethod::closed_form, 0, {}, {}};
}

CapacityEstimate capacity_closed_form_disc(double radius) {
  require(radius >= 0 && std::isfinite(radius), "disc radius must be >= 0");
  return {radius, CapacityMethod::closed_form, 0, {}, {}};
}

CapacityEstimate capacity_closed_form_points(const std::vector<Point>& pts) {
  return {0.0, CapacityMethod::closed_form, static_cast<long>(pts.size()), {{"polar", 1.0}}, {}};
}

std::vector<Point> leja_candidates(const CompactSet& set, int k) {
  if (set.empty()) invalid("empty set");
  long total = std::max(10000L, 10L * k);
  long per = std::max(256L, (total + static_cast<long>(set.size()) - 1) / static_cast<long>(set.size()));
  std::vector<Point> pts;
  for (const auto& s : set.sample(static_cast<int>(per), SampleMode::nodes)) pts.push_back(s.z);
  return pts;
}

std::vector<Point> leja_points(const CompactSet& set, int k, const std::vector<Point>& cand) {
  if (set.polar()) invalid("Leja points need a non-polar set");
  require(k >= 2, "need at least two Leja points");
  require(cand.size() >= static_cast<std::size_t>(10L * k), "candidate grid must have at least 10 k points");
  const std::size_t n = cand.size();
  // diameter pair, first strict maximum in index order
  std::size_t bi = 0, bj = 1;
  double best = -1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = std::norm(cand[i] - cand[j]);
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  std::vector<Point> out{cand[bi], cand[bj]};
  std::vector<double> logsum(n, 0.0);
  const double ninf = -std::numeric_limits<double>::infinity();
  auto absorb = [&](Point c) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = std::abs(cand[i] - c);
      logsum[i] = d == 0.0 ? ninf : logsum[i] + std::log(d);
    }
  };
  absorb(cand[bi]);
  absorb(cand[bj]);
  while (static_cast<int>(out.size()) < k) {
    std::size_t arg = n;
    double top = ninf;
    for (std::size_t i = 0; i < n; ++i)
      if (logsum[i] > top) {
        top = logsum[i];
        arg = i;
      }
    if (arg == n) invalid("candidate grid exhausted before k Leja points");
    out.push_back(cand[arg]);
    absorb(cand[arg]);
  }
  return out;
}

std::vector<Point> leja_points(const CompactSet& set, int k) { return leja_points(set, k, leja_candidates(set, k)); }

CapacityEstimate capacity_estimate_leja(const CompactSet& set, int k, const std::vector<Point>& cand) {
  auto pts = leja_points(set, k, cand);
  CapacityEstimate est;
  est.method = CapacityMethod::leja;
  est.points_used = k;
  double pair_log = 0;  // sum over i < j of log|z_i - z_j|
  for (int m = 1; m < k; ++m) {
    for (int i = 0; i < m; ++i) pair_log += std::log(std::abs(pts[m] - pts[i]));
    double kk = m + 1;
    est.dk.push_back(std::exp(2 * pair_log / (kk * (kk - 1))));
  }
  est.value = est.dk.back();
  est.diagnostics["candidates"] = static_cast<double>(cand.size());
  est.diagnostics["log_value"] = 2 * pair_log / (double(k) * (k - 1));
  return est;
}

CapacityEstimate capacity_estimate_leja(const CompactSet& set, int k) {
  return capacity_estimate_leja(set, k, leja_candidates(set, k));
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
void project_simplex(const Eigen::VectorXd& v, Eigen::VectorXd& out) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0, theta = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    css += u[i];
    double t = (css - 1) / double(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  out = (v.array() - theta).max(0.0).matrix();
}

double spectral_bound(const Eigen::MatrixXd& A) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(A.rows(), 1.0 / std::sqrt(double(A.rows())));
  double lam = 0;
  for (int it = 0; it < 300; ++it) {
    Eigen::VectorXd w = A * v;
    lam = w.norm();
    if (lam == 0) break;
    v = w / lam;
  }
  double inf_norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  return std::min(1.05 * lam, inf_norm);
}

// Solve the equality-constrained problem on a support guess and grow/shrink the support.
bool active_set_polish(const Eigen::MatrixXd& A, Eigen::VectorXd& w) {
  const Eigen::Index n = w.size();
  std::vector<Eigen::Index> S;
  for (Eigen::Index i = 0; i < n; ++i)
    if (w(i) > 1e-10) S.push_back(i);
  for (int round = 0; round < 60 && !S.empty(); ++round) {
    const Eigen::Index s = static_cast<Eigen::Index>(S.size());
    Eigen::MatrixXd B(s, s);
    for (Eigen::Index a = 0; a < s; ++a)
      for (Eigen::Index b = 0; b < s; ++b) B(a, b) = A(S[a], S[b]);
    Eigen::VectorXd x = B.partialPivLu().solve(Eigen::VectorXd::Ones(s));
    double sum = x.sum();
    if (!std::isfinite(sum) || std::abs(sum) < 1e-300) return false;
    x /= sum;
    double mu = 1.0 / sum;
    if (x.minCoeff() <= 0) {
      std::vector<Eigen::Index> keep;
      for (Eigen::Index a = 0; a < s; ++a)
        if (x(a) > 0) keep.push_back(S[a]);
      S.swap(keep);
      continue;
    }
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(n);
    for (Eigen::Index a = 0; a < s; ++a) cand(S[a]) = x(a);
    Eigen::VectorXd g = A * cand;
    std::vector<bool> in(n, false);
    for (auto i : S) in[i] = true;
    double tol = 1e-12 * (1 + std::abs(mu));
    std::vector<Eigen::Index> add;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!in[i] && g(i) - mu > tol) add.push_back(i);
    if (add.empty()) {
      w = cand;
      return true;
    }
    S.insert(S.end(), add.begin(), add.end());
    std::sort(S.begin(), S.end());
  }
  return false;
}

}  // namespace

EnergyResult capacity_estimate_energy(const CompactSet& set, int m, const EnergyOptions& opt) {
  if (set.polar()) invalid("energy maximization needs a non-polar set");
  require(m >= 16, "grid size must be >= 16");
  int per = std::max(1, m / static_cast<int>(set.size()));
  std::vector<Sample> grid;
  for (const auto& s : set.sample(per, SampleMode::cells))
    if (s.cell > 0) grid.push_back(s);
  std::sort(grid.begin(), grid.end(), [](const Sample& a, const Sample& b) {
    return std::pair(a.z.real(), a.z.imag()) < std::pair(b.z.real(), b.z.imag());
  });
  grid.erase(std::unique(grid.begin(), grid.end(), [](const Sample& a, const Sample& b) { return a.z == b.z; }),
             grid.end());
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  require(n >= 2, "grid too small");

  // cell self-energy of a uniform measure on a segment of length h: log h - 3/2
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = std::log(grid[i].cell) - 1.5;
    for (Eigen::Index j = i + 1; j < n; ++j) A(i, j) = A(j, i) = std::log(std::abs(grid[i].z - grid[j].z));
  }
  const double L = 2 * spectral_bound(A);

  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / double(n)), y = w, wn(n), g(n), tmp(n);
  auto grad_map_inf = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd gx = 2 * (A * x), px;
    project_simplex(x + gx / L, px);
    return L * (px - x).cwiseAbs().maxCoeff();
  };
  double t = 1, gm = INFINITY;
  long it = 0;
  bool polished = false;
  for (; it < opt.max_iterations; ++it) {
    if (it % 200 == 199) {
      Eigen::VectorXd trial = w;
      if (active_set_polish(A, trial) && trial.dot(A * trial) >= w.dot(A * w) - 1e-14) {
        double gt = grad_map_inf(trial);
        if (gt < opt.tolerance) {
          w = trial;
          gm = gt;
          polished = true;
          break;
        }
      }
    }
    g = 2 * (A * y);
    project_simplex(y + g / L, wn);
    gm = L * (wn - y).cwiseAbs().maxCoeff();
    if (gm < opt.tolerance) {
      w = wn;
      break;
    }
    // gradient-based restart for the ascent direction
    if ((wn - y).dot(wn - w) < 0) {
      t = 1;
      y = wn;
    } else {
      double tn = 0.5 * (1 + std::sqrt(1 + 4 * t * t));
      y = wn + ((t - 1) / tn) * (wn - w);
      t = tn;
    }
    w = wn;
  }
  if (!(gm < opt.tolerance)) {
    Eigen::VectorXd trial = w;
    if (active_set_polish(A, trial)) {
      double gt = grad_map_inf(trial);
      if (gt < opt.tolerance) {
        w = trial;
        gm = gt;
        polished = true;
      }
    }
  }
  double I = w.dot(A * w);
  if (!(gm < opt.tolerance))
    throw NonConvergence("energy maximization did not converge",
                         {{"iterations", double(it)}, {"grad_map_inf", gm}, {"energy", I}, {"lipschitz", L}});

  std::vector<Atom> atoms;
  for (Eigen::Index i = 0; i < n; ++i)
    if (w(i) >= opt.prune) atoms.push_back({grid[i].z, w(i)});
  EnergyResult r;
  r.measure = DiscreteMeasure::normalized(std::move(atoms));
  r.energy = I;
  r.estimate.value = std::exp(I);
  r.estimate.method = CapacityMethod::energy;
  r.estimate.points_used = n;
  r.estimate.diagnostics = {{"iterations", double(it)},
                            {"grad_map_inf", gm},
                            {"energy", I},
                            {"lipschitz", L},
                            {"support", double(r.measure.size())},
                            {"active_set_polish", polished ? 1.0 : 0.0}};
  return r;
}

int kn_leja_count(long n) { return static_cast<int>(std::min(8L * n, 2048L)); }

std::vector<KnRow> kn_capacity_experiment(const CompactSet& e, const std::vector<long>& n_list) {
  if (!within_normalization(e)) invalid("E out of normalization range");
  std::vector<long> ns = n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<KnRow> rows;
  for (long n : ns) {
    require(n >= 1, "n must be >= 1");
    KnRow row;
    row.n = n;
    row.cap_interval = n / 4.0;
    if (e.polar()) {
      row.polar = true;
      row.cap_kn = 0;
      row.ratio = 0;
      row.scaled_error = 0;
    } else {
      row.leja_points = kn_leja_count(n);
      auto est = capacity_estimate_leja(build_kn(e, n), row.leja_points);
      row.cap_kn = est.value;
      row.ratio = row.cap_kn / row.cap_interval;
      row.scaled_error = std::sqrt(double(n)) * std::abs(std::log(row.cap_kn) - std::log(row.cap_interval));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace koenigs

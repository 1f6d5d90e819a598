#include "koenigs/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "koenigs/error.hpp"
#include "koenigs/json_io.hpp"
#include "koenigs/random.hpp"

namespace koenigs::cli {

namespace {

struct Options {
  // common
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string set_file, domain_file;

  // sets
  std::string shape = "interval";
  double length = 1.0;
  double radius = 0.25;
  std::vector<double> center{0.0, 0.0};
  std::string method = "closed-form";
  int k = default_leja_points;
  int m = 128;

  // eq-measure
  std::vector<long> sigma_n;
  std::vector<long> gamma_m;
  long gamma_points = 1000;

  long alpha_n = 4;

  // domains
  std::string domain = "half-plane";
  double angle = pi / 2;
  std::vector<double> vertex{-1.0, 0.0};
  double bisector = 0;
  double offset = -1.0;
  double orientation = 0;
  double height = 1.0;
  std::vector<double> base;
  std::vector<double> radii;
  double slit_p = 0.25;
  long count = 0;

  // walks
  double samples = 1e5;
  double epsilon = 1e-6;
  double max_steps = 1e5;
  std::vector<double> R_list{10.0};
  std::string oracle = "none";
  double lambda_arc = 0.3;
  double r0 = 1, r_out = 4, rho = 2;

  // hardy
  double rmin = 10, rmax = 1e4;
  int grid_points = 0;

  // construct-domain
  double p = 0.25;
  int levels = 3;
  double root_tol = 1e-3;
  double estimate_rmax = 0;
  double radius_cap = 1e40;

  // verify-thm12 / thm11
  std::string e_shape = "disc";
  std::vector<long> n_list{4, 16, 64};

  // dynamics
  std::string model = "strip";
  double model_lambda = std::exp(1.0);
  double theta = pi / 2;
  std::vector<double> z0{0.0, 0.0};
  long iterations = 1000;
  bool integral_means = false;
  std::string map = "sector_power";
  std::vector<double> p_grid;
  int angles = 4096;
};

// Tabular output: header plus rows of preformatted cells.
struct Table {
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << x;
  return os.str();
}
std::string cell(long x) { return std::to_string(x); }
std::string cell(const std::string& s) { return s; }

std::string render_csv(const Table& t) {
  std::string s = t.header + "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ',';
      s += r[i];
    }
    s += '\n';
  }
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    invalid("malformed JSON in '" + path + "': " + e.what());
  }
}

Point as_point(const std::vector<double>& v, const char* name) {
  if (v.size() != 2) invalid(std::string(name) + " needs two numbers: re,im");
  return {v[0], v[1]};
}

long as_count(double x, const char* name) {
  if (!(x >= 1) || x != std::floor(x) || x > 9e15) invalid(std::string(name) + " must be a positive integer");
  return static_cast<long>(x);
}

CompactSet named_set(const std::string& shape, const Options& o) {
  if (shape == "interval") return CompactSet({Segment{0.0, o.length}});
  if (shape == "disc") return CompactSet({Disc{as_point(o.center, "--center"), o.radius}});
  if (shape == "hsegment") return CompactSet({Segment{-o.radius, o.radius}});
  if (shape == "vsegment") return CompactSet({Segment{Point(0, -o.radius), Point(0, o.radius)}});
  if (shape == "point") return CompactSet({FinitePoints{{as_point(o.center, "--center")}}});
  invalid("unknown shape '" + shape + "'");
}

CompactSet resolve_set(const std::string& shape, const Options& o) {
  if (!o.set_file.empty()) return set_from_json(read_json_file(o.set_file));
  return named_set(shape, o);
}

WosConfig wos_config(const Options& o) {
  WosConfig c;
  c.samples = as_count(o.samples, "--samples");
  c.max_steps = as_count(o.max_steps, "--max-steps");
  c.epsilon = o.epsilon;
  c.seed = o.seed;
  c.workers = o.workers;
  validate(c);
  return c;
}

DomainSpec resolve_domain(const Options& o) {
  if (!o.domain_file.empty()) return domain_from_json(read_json_file(o.domain_file));
  DomainSpec d;
  const auto& n = o.domain;
  if (n == "plane")
    d.family = Plane{};
  else if (n == "half-plane")
    d.family = HalfPlane{o.orientation, o.offset};
  else if (n == "strip")
    d.family = Strip{o.height, 0.0};
  else if (n == "sector")
    d.family = Sector{o.angle, as_point(o.vertex, "--vertex"), o.bisector};
  else if (n == "complement")
    d.family = ComplementOfCompact{o.set_file.empty() ? CompactSet({Disc{2.0, 0.25}}) : resolve_set("disc", o)};
  else if (n == "translated-union") {
    d = translated_union_domain(resolve_set(o.e_shape, o));
    std::get<TranslatedUnionComplement>(d.family).count = o.count;
  } else if (n == "circle-slit")
    d.family = CircleSlitDomain{o.radii.empty() ? std::vector<double>{2.0} : o.radii, o.slit_p};
  else
    invalid("unknown domain '" + n + "'");
  if (!o.base.empty()) d.base_point = as_point(o.base, "--base");
  validate(d);
  return d;
}

std::vector<double> hardy_grid(const Options& o) {
  require(o.rmin > 0 && o.rmax > o.rmin, "need 0 < rmin < rmax");
  int pts = o.grid_points;
  if (pts == 0) pts = static_cast<int>(std::lround(2 * std::log10(o.rmax / o.rmin))) + 1;  // half-decade spacing
  require(pts >= 4, "hardy grid needs at least 4 points");
  return geometric_grid(o.rmin, o.rmax, pts);
}

void scan_table(Table& t, const std::vector<HardyRow>& rows) {
  t.header = "R,mean,ci95,truncated";
  for (const auto& r : rows) t.rows.push_back({cell(r.R), cell(r.mean), cell(r.ci95), cell(r.truncated)});
}

KoenigsModel resolve_model(const Options& o) {
  if (o.model == "strip") return KoenigsModel::strip(o.model_lambda);
  if (o.model == "half-plane") return KoenigsModel::half_plane();
  if (o.model == "sector") return KoenigsModel::sector(o.theta);
  if (o.model == "symmetric-sector") return KoenigsModel::symmetric_sector(o.theta);
  invalid("unknown model '" + o.model + "'");
}

MapSpec resolve_map(const Options& o) {
  MapSpec m;
  m.theta = o.theta;
  m.lambda = o.model_lambda;
  if (o.map == "sector_power")
    m.kind = MapKind::sector_power;
  else if (o.map == "cayley_half_plane")
    m.kind = MapKind::cayley_half_plane;
  else if (o.map == "strip_log")
    m.kind = MapKind::strip_log;
  else if (o.map == "zero")
    m.kind = MapKind::zero;
  else
    invalid("unknown map '" + o.map + "'");
  return m;
}

json run_capacity(const Options& o, json& cfg, Table& t) {
  CompactSet s = resolve_set(o.shape, o);
  cfg["set"] = to_json(s);
  cfg["method"] = o.method;
  CapacityEstimate est;
  if (o.method == "closed-form") {
    if (!o.set_file.empty()) invalid("closed-form needs --shape interval, disc or point");
    if (o.shape == "interval")
      est = capacity_closed_form_interval(o.length);
    else if (o.shape == "disc")
      est = capacity_closed_form_disc(o.radius);
    else if (o.shape == "hsegment" || o.shape == "vsegment")
      est = capacity_closed_form_interval(2 * o.radius);
    else
      est = capacity_closed_form_points({as_point(o.center, "--center")});
  } else if (o.method == "leja") {
    cfg["k"] = o.k;
    est = capacity_estimate_leja(s, o.k);
  } else if (o.method == "energy") {
    cfg["m"] = o.m;
    est = capacity_estimate_energy(s, o.m).estimate;
  } else {
    invalid("unknown method '" + o.method + "'");
  }
  t.header = "capacity,method,points_used";
  t.rows.push_back({cell(est.value), to_string(est.method), cell(est.points_used)});
  return to_json(est);
}

json run_eq_measure(const Options& o, json& cfg, Table& t) {
  CompactSet s = resolve_set(o.shape, o);
  cfg["set"] = to_json(s);
  cfg["m"] = o.m;
  if (s.polar()) invalid("equilibrium measure undefined for a polar set");
  auto res = capacity_estimate_energy(s, o.m);
  json j{{"capacity", num(res.estimate.value)}, {"energy", num(res.energy)}, {"measure", to_json(res.measure)}};
  t.header = "re,im,w";
  for (const auto& a : res.measure.atoms()) t.rows.push_back({cell(a.z.real()), cell(a.z.imag()), cell(a.w)});

  if (!o.sigma_n.empty() || !o.gamma_m.empty()) {
    // the sigma machinery uses its own finer grid for the equilibrium measure of E
    SigmaGrid grid;
    auto nu = capacity_estimate_energy(s, grid.nu_grid).measure;
    if (!o.sigma_n.empty()) {
      cfg["sigma_n"] = o.sigma_n;
      json arr = json::array();
      for (long n : o.sigma_n) arr.push_back(to_json(sigma_potential_report(s, nu, n, grid)));
      j["sigma"] = arr;
    }
    if (!o.gamma_m.empty()) {
      cfg["gamma_m"] = o.gamma_m;
      cfg["gamma_points"] = o.gamma_points;
      json arr = json::array();
      for (long mm : o.gamma_m) {
        // origin first, then uniform points in D(0, 4m)
        std::vector<Point> z{0.0};
        for (long i = 0; i < o.gamma_points; ++i) {
          CounterRng rng(o.seed, static_cast<std::uint64_t>(mm), static_cast<std::uint64_t>(i));
          double r = 4.0 * mm * std::sqrt(rng.uniform());
          z.push_back(std::polar(r, 2 * pi * rng.uniform()));
        }
        auto g = gamma_diagnostic(s, nu, mm, z, grid);
        double gmin = INFINITY;
        for (double v : g.gamma) gmin = std::min(gmin, v);
        arr.push_back(json{{"m", g.m},
                           {"lambda_m", num(g.lambda_m)},
                           {"gamma_at_origin", num(g.gamma.front())},
                           {"gamma_min", num(gmin)},
                           {"points", static_cast<long>(z.size())}});
      }
      j["gamma"] = arr;
    }
  }
  return j;
}

json run_alpha(const Options& o, json& cfg, Table& t) {
  cfg["n"] = o.alpha_n;
  auto a = alpha_coefficients(o.alpha_n);
  t.header = "j,alpha";
  for (std::size_t i = 0; i < a.values.size(); ++i) t.rows.push_back({cell(static_cast<long>(i + 1)), cell(a.values[i])});
  return to_json(a);
}

json run_harmonic(const Options& o, json& cfg, Table& t) {
  WosConfig w = wos_config(o);
  cfg["wos"] = to_json(w);
  cfg["oracle"] = o.oracle;
  t.header = "R,mean,ci95,truncated";
  if (o.oracle == "none") {
    DomainSpec d = resolve_domain(o);
    cfg["domain"] = to_json(d);
    cfg["R"] = o.R_list;
    auto rows = omega_scan(d, o.R_list, w);
    json arr = json::array();
    for (const auto& r : rows) {
      json e = to_json(r.est);
      e["R"] = r.R;
      arr.push_back(e);
      t.rows.push_back({cell(r.R), cell(r.est.mean), cell(r.est.ci95), cell(r.est.truncated_walks)});
    }
    return json{{"scan", arr}};
  }

  // Direct walk batches with closed-form references.
  BoundaryPartition part;
  Point start;
  double exact = 0;
  std::function<bool(const WosExit&)> hit;
  if (o.oracle == "disc-arc") {
    cfg["lambda"] = o.lambda_arc;
    part = disc_partition(0.0, 1.0);
    start = 0.0;
    exact = disc_arc_law(o.lambda_arc);
    const double span = 2 * pi * o.lambda_arc;
    hit = [span](const WosExit& e) {
      double a = std::arg(e.exit_point);
      if (a < 0) a += 2 * pi;
      return e.label == ExitLabel::outer && a < span;
    };
  } else if (o.oracle == "annulus") {
    cfg["r0"] = o.r0;
    cfg["r"] = o.r_out;
    cfg["rho"] = o.rho;
    exact = annulus_law(o.r0, o.r_out, o.rho);
    part = disc_partition(0.0, o.r_out, CompactSet({Disc{0.0, o.r0}}));
    start = o.rho;
    hit = [](const WosExit& e) { return e.label == ExitLabel::outer; };
  } else {
    invalid("unknown oracle '" + o.oracle + "'");
  }
  auto exits = wos_batch(part, start, w);
  long hits = 0, trunc = 0;
  for (const auto& e : exits) {
    if (e.label == ExitLabel::truncated) ++trunc;
    if (hit(e)) ++hits;
  }
  const long used = static_cast<long>(exits.size()) - trunc;
  if (used <= 0) throw NonConvergence("every walk was truncated", {{"truncated", double(trunc)}});
  const double mean = double(hits) / used;
  const double se = std::sqrt(mean * (1 - mean) / used);
  t.rows.push_back({cell(part.radius), cell(mean), cell(1.96 * se), cell(trunc)});
  return json{{"mean", mean},
              {"ci95", 1.96 * se},
              {"standard_error", se},
              {"exact", exact},
              {"samples_used", used},
              {"truncated_walks", trunc}};
}

json run_hardy(const Options& o, json& cfg, Table& t) {
  WosConfig w = wos_config(o);
  DomainSpec d = resolve_domain(o);
  auto grid = hardy_grid(o);
  cfg["wos"] = to_json(w);
  cfg["domain"] = to_json(d);
  cfg["R_grid"] = grid;
  auto h = hardy_estimate(d, grid, w);
  scan_table(t, h.per_point);
  return to_json(h);
}

json run_construct(const Options& o, json& cfg, Table& t) {
  WosConfig w = wos_config(o);
  cfg["wos"] = to_json(w);
  cfg["p"] = o.p;
  cfg["levels"] = o.levels;
  cfg["root_tol"] = o.root_tol;
  cfg["radius_cap"] = o.radius_cap;
  auto r = construct_prescribed_domain(o.p, o.levels, w, o.root_tol, o.radius_cap);
  json j = to_json(r);
  t.header = "level,R,residual";
  for (std::size_t i = 0; i < r.radii.size(); ++i)
    t.rows.push_back({cell(static_cast<long>(i + 1)), cell(r.radii[i]),
                      cell(i == 0 ? 0.0 : r.root_residuals[i - 1])});
  if (o.estimate_rmax > 0) {
    Options g = o;
    g.rmax = o.estimate_rmax;
    auto grid = hardy_grid(g);
    cfg["estimate_R_grid"] = grid;
    j["hardy"] = to_json(hardy_estimate(r.domain, grid, w));
  }
  return j;
}

json run_thm12(const Options& o, json& cfg, Table& t) {
  CompactSet e = resolve_set(o.e_shape, o);
  cfg["e"] = to_json(e);
  cfg["n"] = o.n_list;
  auto rows = kn_capacity_experiment(e, o.n_list);
  t.header = "n,cap_kn,cap_interval,ratio,scaled_error";
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back(to_json(r));
    t.rows.push_back({cell(r.n), cell(r.cap_kn), cell(r.cap_interval), cell(r.ratio), cell(r.scaled_error)});
  }
  return json{{"rows", arr}};
}

json run_thm11(const Options& o, json& cfg, Table& t) {
  WosConfig w = wos_config(o);
  CompactSet e = resolve_set(o.e_shape, o);
  auto grid = hardy_grid(o);
  cfg["wos"] = to_json(w);
  cfg["e"] = to_json(e);
  cfg["R_grid"] = grid;
  auto h = koenigs_lower_bound_experiment(e, grid, w);
  scan_table(t, h.per_point);
  json j = to_json(h);
  j["lower_bound"] = 0.5;
  return j;
}

json run_dynamics(const Options& o, json& cfg, Table& t) {
  if (o.integral_means) {
    MapSpec m = resolve_map(o);
    std::vector<double> pg = o.p_grid;
    if (pg.empty())
      for (int i = 1; i <= 16; ++i) pg.push_back(0.25 * i);
    auto rg = default_r_grid();
    cfg["map"] = to_string(m);
    cfg["p_grid"] = pg;
    cfg["angles"] = o.angles;
    auto r = hardy_of_map_integral_means(m, pg, rg, o.angles);
    t.header = "p,class,growth_slope";
    for (std::size_t i = 0; i < r.p_grid.size(); ++i)
      t.rows.push_back({cell(r.p_grid[i]), to_string(r.classes[i]), cell(r.growth_slopes[i])});
    return to_json(r);
  }
  KoenigsModel model = resolve_model(o);
  Point z0 = as_point(o.z0, "--z0");
  require(std::abs(z0) < 1, "z0 must lie in the unit disc");
  require(o.iterations >= 100, "--iterations must be >= 100");
  cfg["model"] = model.name();
  cfg["z0"] = to_json(z0);
  cfg["iterations"] = o.iterations;
  SelfMap phi = [model](Point z) { return model.phi(z); };
  auto orbit = iterate_orbit(phi, z0, o.iterations);
  auto cls = classify_orbit(orbit);
  t.header = "n,re,im,rho_step";
  for (std::size_t k = 0; k < orbit.points.size() && k < 10000; ++k)
    t.rows.push_back({cell(static_cast<long>(k)), cell(orbit.points[k].real()), cell(orbit.points[k].imag()),
                      k < orbit.rho_steps.size() ? cell(orbit.rho_steps[k]) : std::string("")});
  return json{{"orbit", to_json(orbit)}, {"classification", to_json(cls)}};
}

void add_common(CLI::App* s, Options& o) {
  s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  s->add_option("--out", o.out_path, "Output path (default: stdout)");
  s->add_option("--seed", o.seed, "Random seed (default 0)")->envname("KOENIGS_SEED");
  s->add_option("--workers", o.workers, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
}

void add_set(CLI::App* s, Options& o) {
  s->add_option("--shape", o.shape, "interval | disc | hsegment | vsegment | point");
  s->add_option("--length", o.length, "Interval length");
  s->add_option("--radius", o.radius, "Disc radius or segment half-length");
  s->add_option("--center", o.center, "Disc center re,im")->delimiter(',')->expected(2);
  s->add_option("--set-file", o.set_file, "JSON set description");
}

void add_walks(CLI::App* s, Options& o) {
  s->add_option("--samples", o.samples, "Walks per stage");
  s->add_option("--epsilon", o.epsilon, "Relative absorption shell");
  s->add_option("--max-steps", o.max_steps, "Step cap per walk");
}

void add_domain(CLI::App* s, Options& o) {
  s->add_option("--domain", o.domain, "plane | half-plane | strip | sector | complement | translated-union | circle-slit");
  s->add_option("--angle", o.angle, "Sector opening");
  s->add_option("--vertex", o.vertex, "Sector vertex re,im")->delimiter(',')->expected(2);
  s->add_option("--bisector", o.bisector, "Sector bisector direction");
  s->add_option("--offset", o.offset, "Half-plane offset");
  s->add_option("--orientation", o.orientation, "Half-plane normal angle");
  s->add_option("--height", o.height, "Strip height");
  s->add_option("--base", o.base, "Base point re,im")->delimiter(',')->expected(2);
  s->add_option("--radii", o.radii, "Circle-slit radii")->delimiter(',');
  s->add_option("--slit-p", o.slit_p, "Circle-slit exponent");
  s->add_option("--e", o.e_shape, "Translated set shape");
  s->add_option("--count", o.count, "Number of translates (0: unbounded)");
  s->add_option("--set-file", o.set_file, "JSON set for complement / translated-union");
  s->add_option("--radius", o.radius, "Radius of the translated set");
  s->add_option("--domain-file", o.domain_file, "JSON domain description");
}

void add_grid(CLI::App* s, Options& o) {
  s->add_option("--rmin", o.rmin, "Smallest grid radius");
  s->add_option("--rmax", o.rmax, "Largest grid radius");
  s->add_option("--grid-points", o.grid_points, "Grid size (0: half-decade spacing)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Capacities, harmonic measures and Hardy numbers of planar domains", "koenigs"};
  app.require_subcommand(1);

  auto* cap = app.add_subcommand("capacity", "Logarithmic capacity of a compact set");
  add_common(cap, o);
  add_set(cap, o);
  cap->add_option("--method", o.method, "closed-form | leja | energy");
  cap->add_option("--k", o.k, "Leja point count");
  cap->add_option("--m", o.m, "Energy grid per primitive");

  auto* eq = app.add_subcommand("eq-measure", "Discrete equilibrium measure and sigma / gamma diagnostics");
  add_common(eq, o);
  add_set(eq, o);
  eq->add_option("--m", o.m, "Energy grid per primitive");
  eq->add_option("--sigma", o.sigma_n, "n values for the sigma potential report")->delimiter(',');
  eq->add_option("--gamma", o.gamma_m, "m values for the gamma diagnostic")->delimiter(',');
  eq->add_option("--gamma-points", o.gamma_points, "Random points in D(0, 4m)");

  auto* al = app.add_subcommand("alpha", "Interval equilibrium masses alpha_j");
  add_common(al, o);
  al->add_option("--n", o.alpha_n, "Interval length")->required();

  auto* hm = app.add_subcommand("harmonic", "Harmonic measure of the far boundary by walk on spheres");
  add_common(hm, o);
  add_walks(hm, o);
  add_domain(hm, o);
  hm->add_option("--R", o.R_list, "Radii")->delimiter(',');
  hm->add_option("--oracle", o.oracle, "none | disc-arc | annulus");
  hm->add_option("--lambda", o.lambda_arc, "Arc fraction for disc-arc");
  hm->add_option("--r0", o.r0, "Annulus inner radius");
  hm->add_option("--r", o.r_out, "Annulus outer radius");
  hm->add_option("--rho", o.rho, "Annulus start radius");

  auto* hd = app.add_subcommand("hardy", "Hardy number of a domain from harmonic-measure decay");
  add_common(hd, o);
  add_walks(hd, o);
  add_domain(hd, o);
  add_grid(hd, o);

  auto* cd = app.add_subcommand("construct-domain", "Circle-slit domain with a prescribed Hardy number");
  add_common(cd, o);
  add_walks(cd, o);
  add_grid(cd, o);
  cd->add_option("--p", o.p, "Target Hardy number");
  cd->add_option("--levels", o.levels, "Number of slit radii");
  cd->add_option("--root-tol", o.root_tol, "Relative bracket width for each radius");
  cd->add_option("--estimate-rmax", o.estimate_rmax, "Also estimate the Hardy number up to this radius");
  cd->add_option("--radius-cap", o.radius_cap, "Give up when no bracket exists below this radius");

  auto* t12 = app.add_subcommand("verify-thm12", "Capacity of n translates against n/4");
  add_common(t12, o);
  t12->add_option("--e", o.e_shape, "disc | hsegment | vsegment | point");
  t12->add_option("--radius", o.radius, "Disc radius or segment half-length");
  t12->add_option("--set-file", o.set_file, "JSON set description");
  t12->add_option("--n", o.n_list, "Translate counts")->delimiter(',');

  auto* t11 = app.add_subcommand("verify-thm11", "Hardy number of the complement of E + N");
  add_common(t11, o);
  add_walks(t11, o);
  add_grid(t11, o);
  t11->add_option("--e", o.e_shape, "disc | hsegment | vsegment | point");
  t11->add_option("--radius", o.radius, "Disc radius or segment half-length");
  t11->add_option("--set-file", o.set_file, "JSON set description");

  auto* dy = app.add_subcommand("dynamics", "Orbits of model self-maps and integral means of maps");
  add_common(dy, o);
  dy->add_option("--model", o.model, "strip | half-plane | sector | symmetric-sector");
  dy->add_option("--lambda", o.model_lambda, "Strip dilation");
  dy->add_option("--theta", o.theta, "Sector opening");
  dy->add_option("--z0", o.z0, "Start point re,im")->delimiter(',')->expected(2);
  dy->add_option("--iterations", o.iterations, "Orbit length");
  dy->add_flag("--integral-means", o.integral_means, "Integral-means Hardy estimate of --map");
  dy->add_option("--map", o.map, "sector_power | cayley_half_plane | strip_log | zero");
  dy->add_option("--p-grid", o.p_grid, "Exponents")->delimiter(',');
  dy->add_option("--angles", o.angles, "Quadrature angles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return exit_validation;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    json cfg{{"subcommand", name}, {"format", o.format}, {"seed", o.seed}, {"workers", o.workers}};
    if (!o.set_file.empty()) cfg["set_file"] = o.set_file;
    if (!o.domain_file.empty()) cfg["domain_file"] = o.domain_file;
    Table table;
    json result;
    if (name == "capacity")
      result = run_capacity(o, cfg, table);
    else if (name == "eq-measure")
      result = run_eq_measure(o, cfg, table);
    else if (name == "alpha")
      result = run_alpha(o, cfg, table);
    else if (name == "harmonic")
      result = run_harmonic(o, cfg, table);
    else if (name == "hardy")
      result = run_hardy(o, cfg, table);
    else if (name == "construct-domain")
      result = run_construct(o, cfg, table);
    else if (name == "verify-thm12")
      result = run_thm12(o, cfg, table);
    else if (name == "verify-thm11")
      result = run_thm11(o, cfg, table);
    else
      result = run_dynamics(o, cfg, table);

    std::string text;
    if (o.format == "json") {
      json doc{{"command", name}};
      for (auto& [k, v] : result.items()) doc[k] = v;
      doc["config"] = cfg;
      text = doc.dump(2) + "\n";
    } else {
      // header stays on the first line; the config echo trails as a comment
      text = render_csv(table) + "# config " + cfg.dump() + "\n";
    }
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!f) invalid("cannot write '" + o.out_path + "'");
      f << text;
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::nonconvergence) {
      if (auto* nc = dynamic_cast<const NonConvergence*>(&e))
        for (const auto& [k, v] : nc->diagnostics()) err << "  " << k << " = " << v << "\n";
      return exit_nonconvergence;
    }
    return exit_validation;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }
}

}  // namespace koenigs::cli

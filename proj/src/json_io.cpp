#include "koenigs/json_io.hpp"

#include <cmath>

#include "koenigs/error.hpp"

namespace koenigs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double get_num(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) invalid(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return get_num(j, key);
}

}  // namespace

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(Point z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Primitive& p) {
  return std::visit(overloaded{
                        [](const Disc& d) {
                          return json{{"type", "disc"}, {"center", to_json(d.center)}, {"radius", d.radius}};
                        },
                        [](const Segment& s) {
                          return json{{"type", "segment"}, {"a", to_json(s.a)}, {"b", to_json(s.b)}};
                        },
                        [](const Arc& a) {
                          return json{{"type", "arc"},
                                      {"center", to_json(a.center)},
                                      {"radius", a.radius},
                                      {"theta0", a.theta0},
                                      {"theta1", a.theta1}};
                        },
                        [](const FinitePoints& f) {
                          json pts = json::array();
                          for (auto z : f.points) pts.push_back(to_json(z));
                          return json{{"type", "points"}, {"points", pts}};
                        },
                    },
                    p);
}

json to_json(const CompactSet& s) {
  json prims = json::array();
  for (const auto& p : s.primitives()) prims.push_back(to_json(p));
  return json{{"primitives", prims}, {"polar", s.empty() ? true : s.polar()}};
}

json to_json(const DomainSpec& d) {
  json j = std::visit(
      overloaded{
          [](const Plane&) { return json{{"family", "plane"}}; },
          [](const HalfPlane& h) { return json{{"family", "half_plane"}, {"orientation", h.orientation}, {"offset", h.offset}}; },
          [](const Strip& s) { return json{{"family", "strip"}, {"height", s.height}, {"center", s.center}}; },
          [](const Sector& s) {
            return json{{"family", "sector"}, {"opening", s.opening}, {"vertex", to_json(s.vertex)}, {"bisector", s.bisector}};
          },
          [](const ComplementOfCompact& c) { return json{{"family", "complement"}, {"set", to_json(c.set)}}; },
          [](const TranslatedUnionComplement& t) {
            return json{{"family", "translated_union"}, {"e", to_json(t.e)}, {"count", t.count}};
          },
          [](const CircleSlitDomain& c) { return json{{"family", "circle_slit"}, {"radii", c.radii}, {"p", c.p}}; },
      },
      d.family);
  j["base_point"] = to_json(d.base_point);
  return j;
}

json to_json(const BoundaryPartition& bp) {
  json outer = json::array();
  for (auto a : bp.outer) outer.push_back(json{{"lo", a.lo}, {"hi", a.hi}});
  json inner = json::array();
  for (const auto& p : bp.inner.primitives()) inner.push_back(to_json(p));
  return json{{"center", to_json(bp.center)},
              {"radius", bp.radius},
              {"outer", outer},
              {"inner", inner},
              {"component_certificate", bp.certificate}};
}

json to_json(const DiscreteMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back(json{{"re", a.z.real()}, {"im", a.z.imag()}, {"w", a.w}});
  return json{{"atoms", atoms}};
}

json to_json(const AlphaCoefficients& a) { return json{{"n", a.n}, {"values", a.values}}; }

json to_json(const CapacityEstimate& c) {
  json diag = json::object();
  for (const auto& [k, v] : c.diagnostics) diag[k] = num(v);
  json j{{"capacity", num(c.value)}, {"method", to_string(c.method)}, {"points_used", c.points_used}, {"diagnostics", diag}};
  if (!c.dk.empty()) j["d_k"] = c.dk;
  return j;
}

json to_json(const KnRow& r) {
  return json{{"n", r.n},
              {"cap_kn", num(r.cap_kn)},
              {"cap_interval", num(r.cap_interval)},
              {"ratio", num(r.ratio)},
              {"scaled_error", num(r.scaled_error)},
              {"leja_points", r.leja_points},
              {"polar_input", r.polar}};
}

json to_json(const WosConfig& c) {
  return json{{"epsilon", c.epsilon},
              {"max_steps", c.max_steps},
              {"samples", c.samples},
              {"seed", c.seed},
              {"outer_clip", c.outer_clip},
              {"workers", c.workers}};
}

json to_json(const HarmonicMeasureEstimate& e) {
  return json{{"mean", num(e.mean)},
              {"ci95", num(e.ci95)},
              {"log_mean", num(e.log_mean)},
              {"log_ci95", num(e.log_ci95)},
              {"samples_used", e.samples_used},
              {"truncated_walks", e.truncated_walks},
              {"stages", e.stages},
              {"min_stage_hits", e.min_stage_hits}};
}

json to_json(const HardyEstimate& h) {
  json rows = json::array();
  for (const auto& r : h.per_point)
    rows.push_back(json{{"R", r.R},
                        {"neg_log_omega", num(r.neg_log_omega)},
                        {"log_R", r.log_R},
                        {"se", num(r.se)},
                        {"mean", num(r.mean)},
                        {"ci95", num(r.ci95)},
                        {"truncated", r.truncated},
                        {"min_stage_hits", r.min_stage_hits}});
  json ws = json::array();
  for (double s : h.window_slopes) ws.push_back(num(s));
  return json{{"slope", num(h.slope)},
              {"slope_se", num(h.slope_se)},
              {"dispersion", num(h.dispersion)},
              {"fit_window", json{{"begin", h.fit_begin}, {"end", h.fit_end}}},
              {"window_slopes", ws},
              {"liminf_ratio", num(h.liminf_ratio)},
              {"verdict", to_string(h.verdict)},
              {"per_point", rows}};
}

json to_json(const PrescribedDomainResult& r) {
  json traces = json::array();
  for (const auto& t : r.scan_traces) {
    json tr = json::array();
    for (auto [R, f] : t) tr.push_back(json{{"R", R}, {"f", num(f)}});
    traces.push_back(tr);
  }
  return json{{"p", r.p},
              {"radii", r.radii},
              {"root_residuals", r.root_residuals},
              {"root_tol", r.root_tol},
              {"domain", to_json(r.domain)},
              {"scan_traces", traces}};
}

json to_json(const OrbitReport& o, std::size_t cap) {
  json pts = json::array(), rho = json::array();
  for (std::size_t k = 0; k < o.points.size() && k < cap; ++k) pts.push_back(to_json(o.points[k]));
  for (std::size_t k = 0; k < o.rho_steps.size() && k < cap; ++k) rho.push_back(o.rho_steps[k]);
  return json{{"points", pts},
              {"pseudo_hyperbolic_steps", rho},
              {"dw_estimate", to_json(o.dw_estimate)},
              {"derivative_estimate", num(o.derivative_estimate)},
              {"saturated_at", o.saturated_at}};
}

json to_json(const Classification& c) {
  return json{{"class", to_string(c.kind)},
              {"derivative", num(c.derivative)},
              {"tail_mean", num(c.tail_mean)},
              {"tail_dispersion", num(c.tail_dispersion)},
              {"rho_mid", num(c.rho_mid)},
              {"rho_end", num(c.rho_end)},
              {"usable_points", c.usable},
              {"notes", c.notes}};
}

json to_json(const IntegralMeansResult& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.p_grid.size(); ++i) {
    json lm = json::array();
    for (double v : r.log_means[i]) lm.push_back(num(v));
    rows.push_back(json{{"p", r.p_grid[i]},
                        {"class", to_string(r.classes[i])},
                        {"growth_slope", num(r.growth_slopes[i])},
                        {"log_means", lm}});
  }
  return json{{"finite_p", r.finite_p ? json(*r.finite_p) : json(nullptr)},
              {"r_grid", r.r_grid},
              {"angles", r.angles},
              {"growth", rows}};
}

json to_json(const SigmaReport& r) {
  return json{{"n", r.n},
              {"max_dev_on_E", num(r.max_dev_on_E)},
              {"min_on_Kn", num(r.min_on_Kn)},
              {"log_n_over_4", num(r.log_n_over_4)},
              {"samples_E", r.samples_E},
              {"samples_Kn", r.samples_Kn}};
}

Point point_from_json(const json& j) {
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (!j.is_object()) invalid("point must be {re, im} or [re, im]");
  return {get_num(j, "re"), get_num(j, "im", 0.0)};
}

Primitive primitive_from_json(const json& j) {
  if (!j.contains("type")) invalid("primitive needs a 'type'");
  auto t = j.at("type").get<std::string>();
  if (t == "disc") return Disc{point_from_json(j.at("center")), get_num(j, "radius")};
  if (t == "segment") return Segment{point_from_json(j.at("a")), point_from_json(j.at("b"))};
  if (t == "arc")
    return Arc{point_from_json(j.at("center")), get_num(j, "radius"), get_num(j, "theta0"), get_num(j, "theta1")};
  if (t == "points") {
    FinitePoints f;
    for (const auto& p : j.at("points")) f.points.push_back(point_from_json(p));
    return f;
  }
  invalid("unknown primitive type '" + t + "'");
}

CompactSet set_from_json(const json& j) {
  const json& arr = j.is_array() ? j : j.at("primitives");
  std::vector<Primitive> prims;
  for (const auto& p : arr) prims.push_back(primitive_from_json(p));
  if (prims.empty()) invalid("empty set");
  return CompactSet(std::move(prims));
}

DomainSpec domain_from_json(const json& j) {
  if (!j.contains("family")) invalid("domain needs a 'family'");
  auto f = j.at("family").get<std::string>();
  DomainSpec d;
  if (j.contains("base_point")) d.base_point = point_from_json(j.at("base_point"));
  if (f == "plane")
    d.family = Plane{};
  else if (f == "half_plane")
    d.family = HalfPlane{get_num(j, "orientation", 0.0), get_num(j, "offset")};
  else if (f == "strip")
    d.family = Strip{get_num(j, "height"), get_num(j, "center", 0.0)};
  else if (f == "sector")
    d.family = Sector{get_num(j, "opening"), j.contains("vertex") ? point_from_json(j.at("vertex")) : Point(0.0),
                      get_num(j, "bisector", 0.0)};
  else if (f == "complement")
    d.family = ComplementOfCompact{set_from_json(j.at("set"))};
  else if (f == "translated_union")
    d.family = TranslatedUnionComplement{set_from_json(j.at("e")), j.value("count", 0L)};
  else if (f == "circle_slit")
    d.family = CircleSlitDomain{j.at("radii").get<std::vector<double>>(), get_num(j, "p")};
  else
    invalid("unknown domain family '" + f + "'");
  validate(d);
  return d;
}

DiscreteMeasure measure_from_json(const json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back({{get_num(a, "re"), get_num(a, "im")}, get_num(a, "w")});
  return DiscreteMeasure(std::move(atoms));
}

}  // namespace koenigs

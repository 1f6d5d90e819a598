// Thin bindings: structured arguments and results cross the boundary as JSON text, the Python
// package turns them into dicts.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "koenigs/capacity.hpp"
#include "koenigs/cli.hpp"
#include "koenigs/dynamics.hpp"
#include "koenigs/error.hpp"
#include "koenigs/hardy.hpp"
#include "koenigs/harmonic.hpp"
#include "koenigs/json_io.hpp"
#include "koenigs/measures.hpp"

namespace py = pybind11;
using namespace koenigs;

namespace {

WosConfig wos(long samples, std::uint64_t seed, double epsilon, int workers) {
  WosConfig c;
  c.samples = samples;
  c.seed = seed;
  c.epsilon = epsilon;
  c.workers = workers;
  return c;
}

}  // namespace

PYBIND11_MODULE(_koenigs, m) {
  m.doc() = "Potential theory, harmonic measure and Koenigs-domain numerics";

  static py::exception<Error> koenigs_error(m, "KoenigsError", PyExc_ValueError);
  // malformed JSON input is a caller error too
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      koenigs_error(e.what());
    } catch (const json::exception& e) {
      koenigs_error(e.what());
    }
  });

  m.def("alpha_coefficients", [](long n) { return alpha_coefficients(n).values; }, py::arg("n"));

  m.def(
      "capacity",
      [](const std::string& set_json, const std::string& method, int k, int mm) {
        CompactSet s = set_from_json(json::parse(set_json));
        if (method == "leja") return to_json(capacity_estimate_leja(s, k)).dump();
        if (method == "energy") {
          auto r = capacity_estimate_energy(s, mm);
          json j = to_json(r.estimate);
          j["measure"] = to_json(r.measure);
          return j.dump();
        }
        invalid("method must be leja or energy");
      },
      py::arg("set_json"), py::arg("method") = "leja", py::arg("k") = default_leja_points, py::arg("m") = 128);

  m.def(
      "kn_capacity_experiment",
      [](const std::string& set_json, const std::vector<long>& ns) {
        json out = json::array();
        for (const auto& r : kn_capacity_experiment(set_from_json(json::parse(set_json)), ns)) out.push_back(to_json(r));
        return out.dump();
      },
      py::arg("set_json"), py::arg("n_list"));

  m.def(
      "harmonic_measure",
      [](const std::string& domain_json, double R, long samples, std::uint64_t seed, double epsilon, int workers) {
        auto d = domain_from_json(json::parse(domain_json));
        py::gil_scoped_release release;
        return to_json(harmonic_measure(d, R, wos(samples, seed, epsilon, workers))).dump();
      },
      py::arg("domain_json"), py::arg("R"), py::arg("samples") = 100000, py::arg("seed") = 0,
      py::arg("epsilon") = 1e-6, py::arg("workers") = 0);

  m.def(
      "hardy_estimate",
      [](const std::string& domain_json, const std::vector<double>& grid, long samples, std::uint64_t seed,
         double epsilon, int workers) {
        auto d = domain_from_json(json::parse(domain_json));
        py::gil_scoped_release release;
        return to_json(hardy_estimate(d, grid, wos(samples, seed, epsilon, workers))).dump();
      },
      py::arg("domain_json"), py::arg("R_grid"), py::arg("samples") = 100000, py::arg("seed") = 0,
      py::arg("epsilon") = 1e-6, py::arg("workers") = 0);

  m.def("geometric_grid", &geometric_grid, py::arg("r0"), py::arg("r1"), py::arg("points"));

  py::class_<KoenigsModel>(m, "KoenigsModel")
      .def_static("strip", &KoenigsModel::strip, py::arg("lam"))
      .def_static("half_plane", &KoenigsModel::half_plane)
      .def_static("sector", &KoenigsModel::sector, py::arg("theta"))
      .def_static("symmetric_sector", &KoenigsModel::symmetric_sector, py::arg("theta"))
      .def_property_readonly("name", &KoenigsModel::name)
      .def("sigma", &KoenigsModel::sigma)
      .def("sigma_inverse", &KoenigsModel::sigma_inverse)
      .def("phi", &KoenigsModel::phi)
      .def("in_image", &KoenigsModel::in_image)
      .def("classify",
           [](const KoenigsModel& km, Point z0, long n) {
             return to_json(classify([&](Point z) { return km.phi(z); }, z0, n)).dump();
           },
           py::arg("z0") = Point(0.0), py::arg("n_iter") = 1000);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> a{"koenigs"};
        a.insert(a.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (auto& s : a) argv.push_back(s.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}

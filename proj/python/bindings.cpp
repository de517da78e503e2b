#include "fockops/berezin.hpp"
#include "fockops/cli.hpp"
#include "fockops/criteria.hpp"
#include "fockops/error.hpp"
#include "fockops/operator_rep.hpp"
#include "fockops/serialize.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace fockops;

namespace {

// Python dicts and lists cross the boundary as JSON text.
nlohmann::json to_cpp(const py::object& obj) {
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return nlohmann::json::parse(text);
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SymbolPair pair_of(const py::dict& pair, double alpha) { return pair_from_json(Json(to_cpp(pair)), alpha); }

GridSpec grid_of(const py::object& grid) {
  GridSpec g;
  if (grid.is_none()) return g;
  nlohmann::json cfg{{"command", "berezin"}, {"pair", {{"u", {1}}}}, {"grid", to_cpp(grid)}};
  return parse_config(cfg).grid;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Berezin-transform classification of Volterra-type and weighted composition operators on Fock spaces";

  py::register_exception<Error>(m, "FockopsError");
  // Registered later, so tried first: argument problems surface as ValueError.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const PreconditionError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  m.def(
      "berezin_at",
      [](const py::dict& pair, double p, std::complex<double> w, double alpha) {
        return berezin_at(pair_of(pair, alpha), p, w);
      },
      py::arg("pair"), py::arg("p"), py::arg("w"), py::arg("alpha") = 1.0,
      "B(w) for the pair at exponent p; inf when divergent.");

  m.def(
      "berezin_profile",
      [](const py::dict& pair, double p, const py::object& grid, double alpha) {
        const auto prof = berezin_profile(pair_of(pair, alpha), p, grid_of(grid));
        auto out = to_json(prof);
        Json values = Json::array();
        for (std::size_t i = 0; i < prof.radii.size(); ++i)
          for (int j = 0; j < prof.grid.angles; ++j)
            values.push_back({complex_to_json(prof.point(i, j)),
                              number_to_json(prof.values[i * prof.grid.angles + j])});
        out["values"] = values;
        return to_py(out);
      },
      py::arg("pair"), py::arg("p"), py::arg("grid") = py::none(), py::arg("alpha") = 1.0,
      "Profile summary with values as [[re, im], B] entries.");

  m.def(
      "classify",
      [](const py::dict& pair, double p, double q, std::vector<double> schatten_p, const py::object& grid,
         double alpha) {
        return to_py(to_json(classify_berezin(pair_of(pair, alpha), p, q, ClassifyOptions{grid_of(grid), schatten_p, {}})));
      },
      py::arg("pair"), py::arg("p") = 2.0, py::arg("q") = 2.0,
      py::arg("schatten_p") = std::vector<double>{1.0, 2.0, 3.0, 4.0}, py::arg("grid") = py::none(),
      py::arg("alpha") = 1.0, "Berezin-criterion classification as a dict.");

  m.def(
      "oracle_classify",
      [](const py::dict& pair, double p, double q, std::vector<double> schatten_p, double alpha) -> py::object {
        const auto c = oracle_classify(pair_of(pair, alpha), p, q, schatten_p);
        return c ? to_py(to_json(*c)) : py::none();
      },
      py::arg("pair"), py::arg("p") = 2.0, py::arg("q") = 2.0,
      py::arg("schatten_p") = std::vector<double>{1.0, 2.0, 3.0, 4.0}, py::arg("alpha") = 1.0,
      "Closed-form classification, or None outside the covered families.");

  m.def(
      "build_matrix",
      [](const py::dict& pair, int N, double alpha) { return build_matrix(pair_of(pair, alpha), N).entries; },
      py::arg("pair"), py::arg("N"), py::arg("alpha") = 1.0, "N x N truncation <T e_n, e_m> as a complex array.");

  m.def(
      "spectral_summary",
      [](const py::dict& pair, int N, std::vector<double> schatten_p, double alpha) {
        const auto s = spectral_summary(build_matrix(pair_of(pair, alpha), N), schatten_p);
        auto out = to_json(s);
        out["singular_values"] = s.singular_values;
        out["classification"] = to_json(classify_spectral(s));
        return to_py(out);
      },
      py::arg("pair"), py::arg("N"), py::arg("schatten_p") = std::vector<double>{1.0, 2.0, 3.0, 4.0},
      py::arg("alpha") = 1.0);

  m.def(
      "hilbert_schmidt_integral",
      [](const py::dict& pair, double alpha) { return hilbert_schmidt_integral(pair_of(pair, alpha)); },
      py::arg("pair"), py::arg("alpha") = 1.0);

  m.def(
      "lp_integral",
      [](const py::dict& pair, double q, double s, double alpha) {
        const auto r = lp_integral(pair_of(pair, alpha), q, s);
        return to_py(Json{{"integral", number_to_json(r.integral)},
                          {"value", number_to_json(r.value)},
                          {"finite", r.finite}});
      },
      py::arg("pair"), py::arg("q"), py::arg("s"), py::arg("alpha") = 1.0);

  m.def(
      "kernel_image_norm",
      [](const py::dict& pair, std::complex<double> w, double q, double alpha) {
        return kernel_image_norm(pair_of(pair, alpha), w, q);
      },
      py::arg("pair"), py::arg("w"), py::arg("q") = 2.0, py::arg("alpha") = 1.0);

  m.def(
      "run",
      [](const py::dict& config) {
        auto c = parse_config(to_cpp(config));
        std::ostringstream log;
        const auto r = run(c, log);
        return py::make_tuple(r.exit_code, r.primary, log.str());
      },
      py::arg("config"), "Runs a CLI config dict; returns (exit_code, primary artifact, log).");
}

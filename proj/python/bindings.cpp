#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dikin/barrier.hpp"
#include "dikin/error.hpp"
#include "dikin/metrics.hpp"
#include "dikin/polytope.hpp"
#include "dikin/verify.hpp"
#include "dikin/walk.hpp"

namespace py = pybind11;
using namespace dikin;

namespace {

py::dict stats_dict(const ChainStats& s) {
  py::dict d;
  d["steps"] = s.steps;
  d["lazy_stays"] = s.lazy_stays;
  d["proposals"] = s.proposals;
  d["accepted"] = s.accepted;
  d["rejected_outside"] = s.rejected_outside;
  d["rejected_metropolis"] = s.rejected_metropolis;
  return d;
}

// Samples from all chains stacked row-wise, chain 0 first.
Matrix stack_samples(const std::vector<ChainResult>& results, Eigen::Index dim) {
  std::size_t rows = 0;
  for (const auto& r : results) rows += r.samples.size();
  Matrix out(static_cast<Eigen::Index>(rows), dim);
  Eigen::Index i = 0;
  for (const auto& r : results) {
    for (const auto& s : r.samples) out.row(i++) = s.transpose();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian Dikin walk sampler for polytopes {x : A x >= b}";

  // Raised as DikinError (a ValueError) with `code` and `index` attributes.
  static const py::handle error_type = py::exception<Error>(m, "DikinError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type)(e.what());
      instance.attr("code") = std::string(to_string(e.code()));
      instance.attr("index") = e.index();
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  py::class_<Polytope>(m, "Polytope")
      .def(py::init<Matrix, Vector>(), py::arg("A"), py::arg("b"))
      .def_static("generate", [](const std::string& spec) { return generate(parse_generator_spec(spec)); },
                  py::arg("spec"), "Build cube:n, simplex:n or random:m,n,seed.")
      .def_static("parse", [](const std::string& text) { return parse_polytope(text); }, py::arg("text"))
      .def("to_text",
           [](const Polytope& p) {
             std::ostringstream out;
             write_polytope(out, p);
             return out.str();
           })
      .def_property_readonly("A", &Polytope::A)
      .def_property_readonly("b", &Polytope::b)
      .def_property_readonly("rows", &Polytope::rows)
      .def_property_readonly("dim", &Polytope::dim)
      .def("slacks", [](const Polytope& p, const Vector& x) { return slacks(p, x); }, py::arg("x"))
      .def("contains_interior", [](const Polytope& p, const Vector& x) { return contains_interior(p, x); },
           py::arg("x"))
      .def("__eq__", [](const Polytope& a, const Polytope& b) { return a == b; })
      .def("__repr__", [](const Polytope& p) {
        return "<Polytope m=" + std::to_string(p.rows()) + " n=" + std::to_string(p.dim()) + ">";
      });

  m.def("reference_point", [](const std::string& spec) { return reference_point(parse_generator_spec(spec)); },
        py::arg("spec"));

  // barrier
  m.def("barrier_value", &barrier_value, py::arg("polytope"), py::arg("x"));
  m.def("barrier_gradient", &barrier_gradient, py::arg("polytope"), py::arg("x"));
  m.def("barrier_hessian", &barrier_hessian, py::arg("polytope"), py::arg("x"));
  m.def(
      "local_norm", [](const Polytope& p, const Vector& x, const Vector& v) { return local_norm(factor_at(p, x), v); },
      py::arg("polytope"), py::arg("x"), py::arg("v"));
  m.def(
      "leverage_scores", [](const Polytope& p, const Vector& x) { return leverage_scores(factor_at(p, x)); },
      py::arg("polytope"), py::arg("x"));
  m.def(
      "log_gaussian_density",
      [](const Polytope& p, const Vector& x, const Vector& z, double r) {
        return log_gaussian_density(factor_at(p, x), z, r);
      },
      py::arg("polytope"), py::arg("x"), py::arg("z"), py::arg("radius"));
  m.def(
      "analytic_center",
      [](const Polytope& p, std::optional<Vector> x0, int max_iterations, double tolerance) {
        CenterOptions opts;
        opts.max_iterations = max_iterations;
        opts.tolerance = tolerance;
        return analytic_center(p, x0 ? *x0 : find_interior_point(p), opts);
      },
      py::arg("polytope"), py::arg("x0") = py::none(), py::arg("max_iterations") = 100, py::arg("tolerance") = 1e-8);
  m.def("find_interior_point", &find_interior_point, py::arg("polytope"), py::arg("max_iterations") = 200);

  // walk
  m.def("default_radius", &default_radius, py::arg("epsilon"));
  m.def("mixing_steps", &mixing_steps, py::arg("m"), py::arg("n"), py::arg("radius"));
  m.def(
      "log_accept_ratio",
      [](const Polytope& p, const Vector& x, const Vector& z, double r) {
        return log_accept_ratio(p, factor_at(p, x), z, r);
      },
      py::arg("polytope"), py::arg("x"), py::arg("z"), py::arg("radius"));
  m.def(
      "sample",
      [](const Polytope& p, const Vector& x0, std::uint64_t steps, double radius, double laziness,
         std::uint64_t seed, std::uint64_t burn_in, std::uint64_t thin, unsigned chains) {
        WalkConfig cfg;
        cfg.radius = radius;
        cfg.laziness = laziness;
        cfg.seed = seed;
        cfg.burn_in = burn_in;
        cfg.thin = thin;
        std::vector<ChainResult> results;
        {
          py::gil_scoped_release release;
          results = run_chains(p, x0, cfg, steps, chains);
        }
        ChainStats total;
        for (const auto& r : results) total += r.stats;
        return py::make_tuple(stack_samples(results, p.dim()), stats_dict(total));
      },
      py::arg("polytope"), py::arg("x0"), py::arg("steps"), py::arg("radius") = 0.5, py::arg("laziness") = 0.5,
      py::arg("seed") = 1, py::arg("burn_in") = 0, py::arg("thin") = 1, py::arg("chains") = 1,
      "Run lazy Gaussian Dikin chains; returns (samples array, stats dict).");

  // metrics
  m.def(
      "cross_ratio",
      [](const Polytope& p, const Vector& x, const Vector& y) {
        const CrossRatio c = cross_ratio(p, x, y);
        return py::make_tuple(c.sigma, c.hilbert);
      },
      py::arg("polytope"), py::arg("x"), py::arg("y"), "Returns (sigma, hilbert).");
  m.def(
      "check_sigma_local",
      [](const Polytope& p, const Vector& x, const Vector& y) {
        const SigmaLocalCheck c = check_sigma_local(p, x, y);
        return py::make_tuple(c.sigma, c.local, c.ok);
      },
      py::arg("polytope"), py::arg("x"), py::arg("y"), "Returns (sigma, local, ok).");

  // verify
  py::class_<verify::VerifyReport>(m, "VerifyReport")
      .def_readonly("check_name", &verify::VerifyReport::check_name)
      .def_readonly("empirical", &verify::VerifyReport::empirical)
      .def_readonly("bound", &verify::VerifyReport::bound)
      .def_readonly("samples", &verify::VerifyReport::samples)
      .def_readonly("passed", &verify::VerifyReport::passed)
      .def_readonly("seed", &verify::VerifyReport::seed)
      .def_readonly("relation", &verify::VerifyReport::relation)
      .def_readonly("standard_error", &verify::VerifyReport::standard_error)
      .def_property_readonly("details",
                             [](const verify::VerifyReport& r) {
                               py::dict d;
                               for (const auto& [k, v] : r.details) d[py::str(k)] = v;
                               return d;
                             })
      .def("__str__", &verify::format_report)
      .def("__repr__", [](const verify::VerifyReport& r) { return "<VerifyReport " + verify::format_report(r) + ">"; });

  m.def(
      "kl_gaussians",
      [](const Vector& mu1, const Vector& mu2, const Matrix& s1, const Matrix& s2) {
        return verify::kl_gaussians({mu1, mu2, s1, s2});
      },
      py::arg("mu1"), py::arg("mu2"), py::arg("sigma1"), py::arg("sigma2"), "D_KL(N(mu2, sigma2) || N(mu1, sigma1)).");
  m.def("isserlis_mixed_third", &verify::isserlis_mixed_third, py::arg("b1"), py::arg("b2"));
  m.def("isserlis_mixed_fourth", &verify::isserlis_mixed_fourth, py::arg("b1"), py::arg("b2"));
  m.def(
      "radius_conditions",
      [](double eps) {
        const verify::RadiusConditions rc = verify::radius_conditions(eps);
        py::dict d;
        d["lambda1"] = rc.lambda1;
        d["lambda2"] = rc.lambda2;
        d["r_max"] = rc.r_max;
        d["r_cap"] = rc.r_cap;
        d["holds"] = rc.holds;
        return d;
      },
      py::arg("epsilon"));
  m.def("suite_check_names", &verify::suite_check_names);
  m.def(
      "run_suite",
      [](std::uint64_t seed, std::optional<std::uint64_t> samples, double epsilon, std::vector<std::string> checks) {
        verify::SuiteOptions opts;
        opts.seed = seed;
        opts.samples = samples;
        opts.epsilon = epsilon;
        opts.checks = std::move(checks);
        py::gil_scoped_release release;
        return verify::run_suite(opts);
      },
      py::arg("seed") = 1, py::arg("samples") = py::none(), py::arg("epsilon") = 0.5,
      py::arg("checks") = std::vector<std::string>{});
}

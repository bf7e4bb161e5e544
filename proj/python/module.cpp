#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robin/asympt.hpp"
#include "robin/coeffs.hpp"
#include "robin/errors.hpp"
#include "robin/halfline.hpp"
#include "robin/riesz.hpp"
#include "robin/spectra1d.hpp"

namespace py = pybind11;
using namespace robin;

namespace {

std::vector<FacetPair> facets_from(const std::vector<double>& b0, int d) {
  const auto n = static_cast<std::size_t>(d);
  if (b0.size() == 1) return std::vector<FacetPair>(n, {b0[0], b0[0]});
  if (b0.size() != 2 * n) throw InvalidArgument("b0 takes 1 value or 2*d values");
  std::vector<FacetPair> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {b0[2 * i], b0[2 * i + 1]};
  return out;
}

RegimeSpec make_regime(const std::string& kind, const std::vector<FacetPair>& b0, double exponent,
                       double large_switch) {
  RegimeSpec r;
  if (kind == "fixed") r = RegimeSpec::fixed(b0);
  else if (kind == "small") r = RegimeSpec::small(b0, exponent);
  else if (kind == "large") r = RegimeSpec::large(b0, exponent);
  else throw InvalidArgument("regime must be fixed, small or large");
  r.large_switch = large_switch;
  return r;
}

py::dict report_dict(const RieszReport& r) {
  py::dict d;
  d["h"] = r.h;
  d["trace"] = r.trace;
  d["weyl"] = r.weyl_term;
  d["boundary"] = r.boundary_term;
  d["remainder"] = r.remainder;
  d["eig_count"] = r.eig_count;
  d["kroger_ok"] = r.kroger_ok;
  d["kroger_margin"] = r.kroger_margin;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robin-Laplacian semiclassics: coefficients, half-line model, interval spectra, Riesz means";
  m.attr("__version__") = ROBIN_VERSION;

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("l1", [](int d) { return l1(d).value; }, py::arg("d"));
  m.def("c_d", [](int d) { return c_d(Dimension(d)).value; }, py::arg("d"));
  m.def("l2", [](int d, double b) {
    const auto v = l2(Dimension(d), b);
    return py::make_tuple(v.value, v.abs_error_estimate);
  }, py::arg("d"), py::arg("b"), "(value, abs_error) of the boundary coefficient");
  m.def("unit_ball_volume", [](int d) { return unit_ball_volume(d).value; }, py::arg("d"));

  m.def("psi", &halfline::psi, py::arg("b"), py::arg("t"));
  m.def("psi_bound", &halfline::psi_bound, py::arg("b"), py::arg("t"));
  m.def("i_b", [](int d, double b, double t) { return halfline::i_b(Dimension(d), b, t).value; },
        py::arg("d"), py::arg("b"), py::arg("t"));
  m.def("i_b_integral", [](int d, double b) { return halfline::i_b_integral(Dimension(d), b).value; },
        py::arg("d"), py::arg("b"));

  m.def("interval_spectrum", [](double length, double c_left, double c_right, double cutoff) {
    const auto s = spectra1d::enumerate({length, c_left, c_right}, cutoff);
    return s.eigenvalues();
  }, py::arg("length"), py::arg("c_left"), py::arg("c_right"), py::arg("cutoff"),
     "Eigenvalues of -u'' with u'(0) = c_left u(0), -u'(L) = c_right u(L) below cutoff");
  m.def("count_below", [](double length, double c_left, double c_right, double lambda) {
    return spectra1d::count_below({length, c_left, c_right}, lambda);
  }, py::arg("length"), py::arg("c_left"), py::arg("c_right"), py::arg("lambda_"));

  m.def("riesz_mean", [](std::vector<double> sides, std::vector<double> b, double h, unsigned threads) {
    const int d = static_cast<int>(sides.size());
    const BoxDomain box(Dimension(d), std::move(sides), facets_from(b, d));
    py::gil_scoped_release release;
    const auto r = riesz_mean(box, h, RieszOptions{threads});
    py::gil_scoped_acquire acquire;
    return report_dict(r);
  }, py::arg("sides"), py::arg("b"), py::arg("h"), py::arg("threads") = 0);

  m.def("sweep", [](std::vector<double> sides, const std::string& regime, std::vector<double> b0,
                    double exponent, std::vector<double> hs, double large_switch, unsigned threads) {
    const int d = static_cast<int>(sides.size());
    const Dimension dim(d);
    const auto facets = facets_from(b0, d);
    const RegimeSpec spec = make_regime(regime, facets, exponent, large_switch);
    spec.validate(dim);
    const BoxDomain box(dim, std::move(sides), facets);
    std::vector<RieszReport> reports;
    {
      py::gil_scoped_release release;
      reports = run_sweep(box, spec, std::move(hs), threads);
    }
    const auto fit = fit_sweep(reports, spec, dim);
    py::list rows;
    for (const auto& r : reports) {
      py::dict row = report_dict(r);
      row["remainder_normalized"] = normalized_remainder(r, spec, dim);
      rows.append(row);
    }
    py::dict out;
    out["rows"] = rows;
    out["fitted_exponent"] = fit.fitted_exponent;
    out["fit_residual"] = fit.fit_residual;
    out["sign_flip"] = fit.sign_flip;
    out["decays"] = fit.decays();
    return out;
  }, py::arg("sides"), py::arg("regime"), py::arg("b0"), py::arg("exponent") = 0.0,
     py::arg("hs") = default_h_grid(), py::arg("large_switch") = 50.0, py::arg("threads") = 0);
}

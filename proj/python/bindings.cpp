#include "tempered/almost_periodic.hpp"
#include "tempered/cli.hpp"
#include "tempered/crystal.hpp"
#include "tempered/gallery.hpp"
#include "tempered/growth.hpp"
#include "tempered/hypotheses.hpp"
#include "tempered/io.hpp"
#include "tempered/spectrum.hpp"
#include "tempered/summation.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tempered;

namespace {

Point to_point(const std::vector<double>& v) {
  if (v.empty() || v.size() > kMaxDim) throw ContractError("dimension-mismatch", "points have 1 to 3 coordinates");
  Point p(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) p[static_cast<int>(i)] = v[i];
  return p;
}

std::vector<double> from_point(const Point& p) { return {p.data(), p.data() + p.size()}; }

std::vector<Point> to_points(const std::vector<std::vector<double>>& v) {
  std::vector<Point> out;
  for (const auto& p : v) out.push_back(to_point(p));
  return out;
}

std::vector<std::vector<double>> from_points(const std::vector<Point>& v) {
  std::vector<std::vector<double>> out;
  for (const auto& p : v) out.push_back(from_point(p));
  return out;
}

py::dict coefficient_dict(const std::map<MultiIndex, Complex>& m) {
  py::dict d;
  for (const auto& [k, c] : m) d[py::tuple(py::cast(k.entries()))] = c;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete tempered distributions, crystals and their spectra.";

  static py::exception<ContractError> contract_error(m, "ContractError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ContractError& e) {
      py::object err = py::reinterpret_borrow<py::object>(contract_error.ptr())(e.what());
      err.attr("code") = e.code();
      PyErr_SetObject(contract_error.ptr(), err.ptr());
    }
  });

  m.def("set_thread_count", &set_thread_count, py::arg("n"));

  py::class_<Lattice>(m, "Lattice")
      .def(py::init([](const Matrix& basis, double tol) { return Lattice(basis, tol); }), py::arg("basis"),
           py::arg("tolerance") = kDefaultTolerance)
      .def_static("identity", &Lattice::identity, py::arg("dim"), py::arg("scale") = 1.0)
      .def_property_readonly("dim", &Lattice::dim)
      .def_property_readonly("basis", [](const Lattice& l) { return Eigen::MatrixXd(l.basis()); })
      .def_property_readonly("abs_det", &Lattice::abs_det)
      .def("reduce", [](const Lattice& l, const std::vector<double>& x) { return from_point(l.reduce(to_point(x))); })
      .def("covering_radius", &Lattice::covering_radius)
      .def("is_member", [](const Lattice& l, const std::vector<double>& x) { return member(l, to_point(x)).is_member; })
      .def("to_json", [](const Lattice& l) { return to_json(l); });
  m.def("dual", &dual);
  m.def("lattices_equal", &lattices_equal);
  m.def("random_lattice", &random_lattice, py::arg("seed"), py::arg("dim"), py::arg("max_cond") = 10.0);

  py::class_<TestFunction>(m, "TestFunction")
      .def_static(
          "gaussian",
          [](const std::vector<double>& c, double s, Complex k) { return TestFunction::gaussian(to_point(c), s, k); },
          py::arg("center"), py::arg("scale") = 1.0, py::arg("coeff") = Complex(1.0))
      .def_static("from_json", &test_function_from_json)
      .def("to_json", [](const TestFunction& f) { return to_json(f); })
      .def_property_readonly("dim", &TestFunction::dim)
      .def("__call__", [](const TestFunction& f, const std::vector<double>& x) { return f(to_point(x)); })
      .def("fourier", [](const TestFunction& f) { return fourier(f); })
      .def("differentiate", [](const TestFunction& f, std::vector<int> k) { return differentiate(f, MultiIndex(k)); })
      .def("translate", [](const TestFunction& f, const std::vector<double>& t) { return translate(f, to_point(t)); })
      .def("__add__", [](const TestFunction& a, const TestFunction& b) { return a + b; });
  m.def("schwartz_norm", &schwartz_norm, py::arg("phi"), py::arg("n"), py::arg("m"));

  py::class_<GeneratorSum>(m, "GeneratorSum")
      .def(py::init<int, double>(), py::arg("dim"), py::arg("tolerance") = kDefaultTolerance)
      .def_static(
          "comb",
          [](const Lattice& l, const std::vector<double>& a, Complex c) { return GeneratorSum::comb(l, to_point(a), c); },
          py::arg("lattice"), py::arg("coset"), py::arg("coeff") = Complex(1.0))
      .def_static("remark", &GeneratorSum::remark, py::arg("truncation"))
      .def_static("from_json", &distribution_from_json)
      .def("to_json", [](const GeneratorSum& f) { return to_json(f); })
      .def(
          "add_comb",
          [](GeneratorSum& f, const Lattice& l, const std::vector<double>& a, std::vector<int> k, std::vector<int> alpha,
             Complex c) -> GeneratorSum& {
            return f.add(CombGenerator(l, to_point(a), MultiIndex(std::move(k)), MultiIndex(std::move(alpha)), c));
          },
          py::arg("lattice"), py::arg("coset"), py::arg("deriv"), py::arg("moment"), py::arg("coeff") = Complex(1.0),
          py::return_value_policy::reference_internal)
      .def(
          "add_atom",
          [](GeneratorSum& f, const std::vector<double>& x, const py::dict& terms) -> GeneratorSum& {
            Atom a;
            a.point = to_point(x);
            for (const auto& [k, v] : terms) a.terms[MultiIndex(k.cast<std::vector<int>>())] = v.cast<Complex>();
            return f.add(std::move(a));
          },
          py::arg("point"), py::arg("terms"), py::return_value_policy::reference_internal)
      .def_property_readonly("dim", &GeneratorSum::dim)
      .def_property_readonly("crystal_supported", &GeneratorSum::crystal_supported)
      .def("__add__", [](const GeneratorSum& a, const GeneratorSum& b) { return a + b; });

  m.def(
      "pair",
      [](const GeneratorSum& f, const TestFunction& phi, std::optional<double> radius) {
        return pair(f, phi, radius ? Window::ball(f.dim(), *radius) : auto_window(f, phi));
      },
      py::arg("f"), py::arg("phi"), py::arg("radius") = py::none());
  m.def(
      "expand",
      [](const GeneratorSum& f, double radius) {
        py::list out;
        for (const auto& a : expand(f, Window::ball(f.dim(), radius)))
          out.append(py::make_tuple(from_point(a.point), coefficient_dict(a.terms)));
        return out;
      },
      py::arg("f"), py::arg("radius"));
  m.def("kappa", [](const GeneratorSum& f, const std::vector<double>& x) { return kappa(f, to_point(x)); });
  m.def("rho", &rho, py::arg("f"), py::arg("r"));
  m.def("order", &order);
  m.def("translate", [](const GeneratorSum& f, const std::vector<double>& t) { return translate(f, to_point(t)); });

  py::class_<SpectralDistribution>(m, "SpectralDistribution")
      .def_property_readonly("order", &SpectralDistribution::order)
      .def_property_readonly("det_factor", &SpectralDistribution::det_factor)
      .def_property_readonly("dual_lattice", &SpectralDistribution::dual_lattice)
      .def("coefficients",
           [](const SpectralDistribution& F, const std::vector<double>& g) {
             return coefficient_dict(F.coefficients(to_point(g)));
           })
      .def("kappa", [](const SpectralDistribution& F, const std::vector<double>& g) { return F.kappa(to_point(g)); })
      .def("support_points",
           [](const SpectralDistribution& F, double r) { return from_points(F.support_points(r)); })
      .def("to_json", [](const SpectralDistribution& F) { return to_json(F); })
      .def_static("from_json", &spectral_from_json);
  m.def("spectrum", &spectrum);
  m.def(
      "spectral_pair",
      [](const SpectralDistribution& F, const TestFunction& phi, std::optional<double> radius) {
        return spectral_pair(F, phi, radius ? *radius : spectral_radius(F, phi));
      },
      py::arg("F"), py::arg("phi"), py::arg("radius") = py::none());
  m.def("conv_transform", [](const GeneratorSum& f, const TestFunction& psi, const std::vector<double>& t) {
    const auto s = conv_transform(f, psi, to_point(t));
    return py::make_tuple(s.direct, s.spectral);
  });
  m.def(
      "coefficient_probe",
      [](const GeneratorSum& f, const std::vector<double>& x, std::vector<int> k, double eps) {
        return coefficient_probe(f, to_point(x), MultiIndex(std::move(k)), eps);
      },
      py::arg("f"), py::arg("point"), py::arg("k"), py::arg("eps"));

  py::class_<PointSet>(m, "PointSet")
      .def(py::init([](const std::vector<std::vector<double>>& pts, double w, double tol) {
             const int d = pts.empty() ? 1 : static_cast<int>(pts.front().size());
             return PointSet(d, to_points(pts), w, tol);
           }),
           py::arg("points"), py::arg("window_radius"), py::arg("tolerance") = kDefaultTolerance)
      .def_static("from_json", &point_set_from_json)
      .def("to_json", [](const PointSet& a) { return to_json(a); })
      .def_property_readonly("points", [](const PointSet& a) { return from_points(a.points()); })
      .def_property_readonly("window_radius", &PointSet::window_radius)
      .def("__len__", &PointSet::size);
  m.def("separating_constant", &separating_constant);
  m.def("counting", &counting, py::arg("points"), py::arg("r"));
  m.def(
      "bounded_density", [](const PointSet& a, double r) { return bounded_density(a, r).max_count; },
      py::arg("points"), py::arg("probe_radius") = kDensityProbeRadius);
  m.def("finite_type_certificate", [](const PointSet& a, double range) {
    const auto c = finite_type_certificate(a, range);
    py::dict d;
    d["certified"] = c.certified;
    d["min_gap"] = c.min_gap;
    d["clusters"] = c.cluster_count;
    d["half_window_clusters"] = c.half_window_cluster_count;
    return d;
  });
  m.def("covering_radius", [](const PointSet& a) { return covering_radius_estimate(a).radius; });
  m.def("_detect_crystal_json", [](const PointSet& a) { return to_json(detect_crystal(a)); });

  m.def("gallery_names", &gallery_names);
  m.def(
      "gallery",
      [](const std::string& name, const GalleryParams& params, std::uint64_t seed) {
        const auto e = gallery(name, params, seed);
        py::dict d;
        d["name"] = e.name;
        d["params"] = e.params;
        d["distribution"] = e.distribution ? py::cast(*e.distribution) : py::none();
        d["points"] = e.points;
        if (e.crystal) {
          CrystalDetection c;
          c.crystal = e.crystal;
          d["crystal_json"] = to_json(c);
        } else {
          d["crystal_json"] = py::none();
        }
        return d;
      },
      py::arg("name"), py::arg("params") = GalleryParams{}, py::arg("seed") = kDefaultSeed);

  m.def("growth_fit", [](const std::vector<std::pair<double, double>>& samples) {
    std::vector<GrowthSample> s;
    for (const auto& [r, v] : samples) s.push_back({r, v});
    const auto g = growth_fit(s);
    py::dict d;
    d["exponent"] = g.exponent;
    d["relative_residual"] = g.relative_residual;
    d["divergence"] = g.divergence;
    return d;
  });
  m.def("_verify_json", [](const GeneratorSum& f, double radius) {
    return to_json(verify_hypotheses(f, Window::ball(f.dim(), radius)));
  });

  py::class_<SampledFunction>(m, "SampledFunction")
      .def_readonly("values", &SampledFunction::values)
      .def_readonly("step", &SampledFunction::step)
      .def_readonly("tail_bound", &SampledFunction::tail_bound)
      .def("node", [](const SampledFunction& g, std::size_t i) { return from_point(g.node(i)); })
      .def("max_abs", &SampledFunction::max_abs)
      .def("__len__", &SampledFunction::size)
      .def("to_csv", [](const SampledFunction& g) {
        std::ostringstream s;
        write_csv(s, g);
        return s.str();
      });
  m.def(
      "sample_convolution",
      [](const GeneratorSum& f, const TestFunction& psi, double radius, double h) {
        return sample_convolution(f, psi, Window::ball(f.dim(), radius), h);
      },
      py::arg("f"), py::arg("psi"), py::arg("radius"), py::arg("step"));
  m.def(
      "almost_periods",
      [](const SampledFunction& g, double eps, double shift) { return from_points(almost_periods(g, eps, shift).taus); },
      py::arg("g"), py::arg("eps"), py::arg("shift_radius") = 0.0);
  m.def(
      "max_gap",
      [](const std::vector<std::vector<double>>& taus, double radius, double h) {
        const auto pts = to_points(taus);
        return max_gap(pts, Window::ball(static_cast<int>(pts.front().size()), radius), h);
      },
      py::arg("taus"), py::arg("radius"), py::arg("step"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}

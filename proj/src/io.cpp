#include "tempered/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tempered {

using json = nlohmann::ordered_json;

namespace {

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

json index_json(const MultiIndex& k) { return json(k.entries()); }

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json matrix_json(const Matrix& m) {
  // Column-major: one array per basis vector.
  json a = json::array();
  for (int j = 0; j < m.cols(); ++j) a.push_back(point_json(m.col(j)));
  return a;
}

Point point_from(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) throw ContractError("parse-error", "expected a point");
  Point p(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<int>(i)] = j[i].get<double>();
  return p;
}

MultiIndex index_from(const json& j) {
  auto v = j.get<std::vector<int>>();
  for (int x : v)
    if (x < 0) throw ContractError("parse-error", "multi-index entries must be non-negative");
  return MultiIndex(std::move(v));
}

Complex complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ContractError("parse-error", "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix matrix_from(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > kMaxDim) throw ContractError("parse-error", "expected a basis");
  const int d = static_cast<int>(j.size());
  Matrix m(d, d);
  for (int c = 0; c < d; ++c) {
    const Point col = point_from(j[static_cast<std::size_t>(c)]);
    if (col.size() != d) throw ContractError("parse-error", "basis must be square");
    m.col(c) = col;
  }
  return m;
}

json lattice_body(const Lattice& l) { return json{{"basis", matrix_json(l.basis())}, {"tolerance", l.tolerance()}}; }

Lattice lattice_from(const json& j) {
  return Lattice(matrix_from(j.at("basis")), j.value("tolerance", kDefaultTolerance));
}

json parse(const std::string& text, const char* expected) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ContractError("parse-error", std::string("invalid JSON: ") + e.what());
  }
  if (expected && j.value("type", std::string()) != expected)
    throw ContractError("parse-error", std::string("expected a document of type '") + expected + "'");
  return j;
}

template <class F>
auto guarded(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ContractError("parse-error", e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json certification_json(const Certification& c) {
  return json{{"windowRadius", c.window_radius}, {"range", c.range}, {"tolerance", c.tolerance}};
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json detection_body(const CrystalDetection& d) {
  json periods = json::array();
  for (const auto& p : d.periods) periods.push_back(point_json(p));
  json j;
  if (d.crystal) {
    json cosets = json::array();
    for (const auto& c : d.crystal->cosets) cosets.push_back(point_json(c));
    j = json{{"type", "crystal"}, {"lattice", lattice_body(d.crystal->lattice)}, {"cosets", cosets}};
  } else {
    j = json{{"type", "not-crystal"}, {"reason", d.reason}};
  }
  j["periods"] = periods;
  j["certification"] = certification_json(d.cert);
  return j;
}

}  // namespace

std::string to_json(const GeneratorSum& f) {
  json gens = json::array();
  for (const auto& g : f.generators())
    gens.push_back(json{{"lattice", lattice_body(g.lattice)},
                        {"coset", point_json(g.coset)},
                        {"deriv", index_json(g.deriv)},
                        {"moment", index_json(g.moment)},
                        {"coeff", complex_json(g.coeff)}});
  json atoms = json::array();
  for (const auto& a : f.free_atoms()) {
    json terms = json::array();
    for (const auto& [k, p] : a.terms) terms.push_back(json{{"k", index_json(k)}, {"p", complex_json(p)}});
    atoms.push_back(json{{"point", point_json(a.point)}, {"terms", terms}});
  }
  json j{{"type", "distribution"}, {"dim", f.dim()}, {"tolerance", f.tolerance()}, {"generators", gens},
         {"freeAtoms", atoms}};
  j["namedSeries"] = f.series() ? json{{"name", f.series()->name}, {"truncation", f.series()->truncation}}
                                : json(nullptr);
  return dump(j);
}

GeneratorSum distribution_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text, "distribution");
    GeneratorSum f(j.at("dim").get<int>(), j.value("tolerance", kDefaultTolerance));
    for (const auto& g : j.value("generators", json::array()))
      f.add(CombGenerator(lattice_from(g.at("lattice")), point_from(g.at("coset")), index_from(g.at("deriv")),
                          index_from(g.at("moment")), complex_from(g.value("coeff", json(1.0)))));
    for (const auto& a : j.value("freeAtoms", json::array())) {
      Atom atom;
      atom.point = point_from(a.at("point"));
      for (const auto& t : a.at("terms")) atom.terms[index_from(t.at("k"))] = complex_from(t.at("p"));
      f.add(std::move(atom));
    }
    if (j.contains("namedSeries") && !j["namedSeries"].is_null())
      f.set_series({j["namedSeries"].at("name").get<std::string>(), j["namedSeries"].at("truncation").get<int>()});
    return f;
  });
}

std::string to_json(const TestFunction& phi) {
  json atoms = json::array();
  for (const auto& a : phi.atoms())
    atoms.push_back(json{{"scale", point_json(a.scale)},
                         {"shift", point_json(a.shift)},
                         {"modulation", point_json(a.modulation)},
                         {"hermite", index_json(a.hermite)},
                         {"coeff", complex_json(a.coeff)}});
  return dump(json{{"type", "test-function"}, {"dim", phi.dim()}, {"atoms", atoms}});
}

TestFunction test_function_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text, "test-function");
    const int d = j.at("dim").get<int>();
    std::vector<GaussHermiteAtom> atoms;
    for (const auto& a : j.at("atoms")) {
      GaussHermiteAtom g;
      g.shift = point_from(a.at("shift"));
      g.scale = a.contains("scale") ? point_from(a["scale"]) : Point(Point::Ones(d));
      g.modulation = a.contains("modulation") ? point_from(a["modulation"]) : zero_point(d);
      g.hermite = a.contains("hermite") ? index_from(a["hermite"]) : MultiIndex(d);
      g.coeff = complex_from(a.value("coeff", json(1.0)));
      atoms.push_back(std::move(g));
    }
    return TestFunction(d, std::move(atoms));
  });
}

std::string to_json(const PointSet& a) {
  json pts = json::array();
  for (const auto& p : a.points()) pts.push_back(point_json(p));
  return dump(json{{"type", "point-set"},
                   {"dim", a.dim()},
                   {"windowRadius", a.window_radius()},
                   {"tolerance", a.tolerance()},
                   {"points", pts}});
}

PointSet point_set_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text, "point-set");
    std::vector<Point> pts;
    for (const auto& p : j.at("points")) pts.push_back(point_from(p));
    return PointSet(j.at("dim").get<int>(), std::move(pts), j.at("windowRadius").get<double>(),
                    j.value("tolerance", kDefaultTolerance));
  });
}

std::string to_json(const Lattice& l) {
  json j = lattice_body(l);
  j["type"] = "lattice";
  return dump(j);
}

Lattice lattice_from_json(const std::string& text) {
  return guarded([&] { return lattice_from(parse(text, "lattice")); });
}

std::string to_json(const CrystalDetection& d) { return dump(detection_body(d)); }

CrystalDetection detection_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text, nullptr);
    const std::string type = j.value("type", std::string());
    CrystalDetection d;
    if (type == "crystal") {
      Crystal c{lattice_from(j.at("lattice")), {}};
      for (const auto& p : j.at("cosets")) c.cosets.push_back(point_from(p));
      d.crystal = std::move(c);
    } else if (type == "not-crystal") {
      d.reason = j.at("reason").get<std::string>();
    } else {
      throw ContractError("parse-error", "expected a crystal or not-crystal document");
    }
    for (const auto& p : j.value("periods", json::array())) d.periods.push_back(point_from(p));
    if (j.contains("certification")) {
      const auto& c = j["certification"];
      d.cert = {c.at("windowRadius").get<double>(), c.at("range").get<double>(), c.at("tolerance").get<double>()};
    }
    return d;
  });
}

std::string to_json(const SpectralDistribution& F) {
  json terms = json::array();
  for (const auto& t : F.terms())
    terms.push_back(json{{"phase", point_json(t.phase)},
                         {"j", index_json(t.j)},
                         {"monomial", index_json(t.monomial)},
                         {"coeff", complex_json(t.coeff)}});
  return dump(json{{"type", "spectral-distribution"},
                   {"dim", F.dim()},
                   {"dualLattice", lattice_body(F.dual_lattice())},
                   {"order", F.order()},
                   {"detFactor", F.det_factor()},
                   {"terms", terms}});
}

SpectralDistribution spectral_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text, "spectral-distribution");
    std::vector<SpectralTerm> terms;
    for (const auto& t : j.at("terms"))
      terms.push_back({point_from(t.at("phase")), index_from(t.at("j")), index_from(t.at("monomial")),
                       complex_from(t.at("coeff"))});
    return SpectralDistribution(lattice_from(j.at("dualLattice")), std::move(terms), j.at("detFactor").get<double>());
  });
}

std::string to_json(const HypothesisReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back(json{{"name", v.name},
                            {"status", to_string(v.status)},
                            {"value", finite_or_null(v.value)},
                            {"detail", v.detail},
                            {"certification", certification_json(v.cert)}});
  json failed = json::array();
  for (const auto& f : r.failed()) failed.push_back(f);
  return dump(json{{"type", "hypothesis-report"},
                   {"window", json{{"center", point_json(r.window.center)}, {"radius", r.window.radius}}},
                   {"verdicts", verdicts},
                   {"failed", failed},
                   {"detection", detection_body(r.detection)}});
}

std::string to_json(const AlmostPeriodReport& r) {
  json taus = json::array();
  for (const auto& t : r.taus) taus.push_back(point_json(t));
  return dump(json{{"type", "almost-periods"},
                   {"eps", r.eps},
                   {"step", r.step},
                   {"shiftRadius", r.shift_radius},
                   {"overlapRadius", r.overlap_radius},
                   {"count", r.taus.size()},
                   {"taus", taus}});
}

std::string document_type(const std::string& text) {
  return guarded([&] { return parse(text, nullptr).value("type", std::string()); });
}

void write_spectrum_csv(std::ostream& out, const SpectralDistribution& F, double radius) {
  char buf[96];
  for (int a = 0; a < F.dim(); ++a) out << "gamma" << a << ",";
  for (int a = 0; a < F.dim(); ++a) out << "j" << a << ",";
  out << "re,im,abs\n";
  for (const auto& g : F.support_points(radius)) {
    for (const auto& [j, q] : F.coefficients(g)) {
      for (int a = 0; a < F.dim(); ++a) {
        std::snprintf(buf, sizeof buf, "%.17g,", g[a]);
        out << buf;
      }
      for (int a = 0; a < F.dim(); ++a) out << j[a] << ",";
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", q.real(), q.imag(), std::abs(q));
      out << buf;
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("io-error", "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("io-error", "cannot write " + path);
  out << text;
}

}  // namespace tempered

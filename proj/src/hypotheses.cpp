#include "tempered/hypotheses.hpp"

#include "tempered/gallery.hpp"
#include "tempered/growth.hpp"
#include "tempered/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tempered {

namespace {

// Shells for growth fits: radius * i / n for i = 1..n.
constexpr int kGrowthSamples = 12;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

Status status_of(bool ok) { return ok ? Status::pass : Status::fail; }

Verdict kappa_bounded(const std::vector<Atom>& atoms, double radius, const Certification& cert) {
  double full = 0.0, half = 0.0;
  for (const auto& a : atoms) {
    full = std::max(full, a.kappa());
    if (a.point.norm() < 0.5 * radius) half = std::max(half, a.kappa());
  }
  Verdict v{"sup-kappa-bounded", Status::fail, full, "", cert};
  v.status = status_of(full <= half * (1.0 + 1e-9) && std::isfinite(full));
  v.detail = "sup kappa " + fmt(half) + " on the half window, " + fmt(full) + " on the window";
  return v;
}

Verdict growth_verdict(const std::string& name, const std::vector<GrowthSample>& samples, const Certification& cert) {
  Verdict v{name, Status::fail, 0.0, "", cert};
  try {
    const auto g = growth_fit(samples);
    v.value = g.exponent;
    v.status = status_of(!g.divergence);
    v.detail = "exponent " + fmt(g.exponent) + ", relative residual " + fmt(g.relative_residual) +
               (g.super_polynomial ? ", super-polynomial" : "");
  } catch (const ContractError& e) {
    v.detail = e.what();
  }
  return v;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::not_applicable:
      return "not-applicable";
  }
  return "?";
}

const Verdict* HypothesisReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

bool HypothesisReport::passed(const std::string& name) const {
  const auto* v = find(name);
  return v && v->status == Status::pass;
}

std::vector<std::string> HypothesisReport::failed() const {
  std::vector<std::string> out;
  for (const auto& v : verdicts)
    if (v.status == Status::fail) out.push_back(v.name);
  return out;
}

HypothesisReport verify_hypotheses(const GeneratorSum& f, const Window& w) {
  require_dim(f.dim(), w.dim(), "window");
  HypothesisReport rep;
  rep.window = w;
  const double tol = f.tolerance();
  const double radius = w.radius;
  const Certification base{radius, radius, tol};
  auto add = [&](Verdict v) { rep.verdicts.push_back(std::move(v)); };

  const auto atoms = support_atoms(f, Window::ball(f.dim(), radius));
  if (atoms.size() < 2) {
    add({"support", Status::fail, double(atoms.size()), "fewer than two support points in the window", base});
    rep.detection.reason = "too-few-points";
    return rep;
  }

  double inf_kappa = INFINITY;
  for (const auto& a : atoms) inf_kappa = std::min(inf_kappa, a.kappa());
  add({"inf-kappa-positive", status_of(inf_kappa > 10.0 * tol), inf_kappa, "inf kappa " + fmt(inf_kappa), base});
  add(kappa_bounded(atoms, radius, base));

  std::vector<GrowthSample> rho_samples;
  for (int i = 1; i <= kGrowthSamples; ++i) {
    const double r = radius * i / kGrowthSamples;
    double s = 0.0;
    for (const auto& a : atoms)
      if (a.point.norm() < r) s += a.kappa();
    rho_samples.push_back({r, s});
  }
  add(growth_verdict("rho-polynomial", rho_samples, base));

  std::vector<Point> pts;
  for (const auto& a : atoms) pts.push_back(a.point);
  const PointSet support(f.dim(), pts, radius, tol);

  const double eta = separating_constant(support);
  add({"uniformly-discrete", status_of(eta > 10.0 * tol), eta, "separating constant " + fmt(eta), base});

  const auto ft = finite_type_certificate(support, radius / 4.0);
  add({"finite-type", status_of(ft.certified), ft.min_gap,
       "min difference gap " + fmt(ft.min_gap) + ", clusters " + std::to_string(ft.cluster_count) +
           " (half window " + std::to_string(ft.half_window_cluster_count) + ")",
       ft.cert});

  try {
    const auto cov = covering_radius_estimate(support);
    add({"relatively-dense", status_of(cov.radius < cov.interior_radius / 2.0), cov.radius,
         "covering radius " + fmt(cov.radius) + " on interior radius " + fmt(cov.interior_radius), cov.cert});
  } catch (const ContractError& e) {
    add({"relatively-dense", Status::fail, INFINITY, e.what(), base});
  }

  const auto dens = bounded_density(support);
  const auto dens_half = bounded_density(support.restricted(0.5 * radius));
  add({"bounded-density", status_of(dens.max_count == dens_half.max_count), double(dens.max_count),
       "max count " + std::to_string(dens.max_count) + " in balls of radius " + fmt(dens.probe_radius) +
           " (half window " + std::to_string(dens_half.max_count) + ")",
       dens.cert});

  // Spectrum side.
  std::optional<SpectralDistribution> spec;
  try {
    spec.emplace(spectrum(f));
  } catch (const ContractError& e) {
    add({"spectrum-discrete", Status::fail, 0.0, std::string(e.code()) + ": " + e.what(), base});
  }
  std::vector<Point> spec_support;
  if (spec) {
    const double spec_radius = 12.0 * spec->dual_lattice().max_basis_norm();
    const Certification scert{spec_radius, spec_radius, kSpectralTolerance};
    double max_q = 0.0;
    std::vector<std::pair<Point, double>> q;
    for (const auto& g : spec->support_points(spec_radius)) {
      q.emplace_back(g, spec->kappa(g));
      max_q = std::max(max_q, q.back().second);
    }
    for (const auto& [g, k] : q)
      if (k > 1e-12 * max_q) spec_support.push_back(g);
    add({"spectrum-discrete", Status::pass, double(spec_support.size()),
         "spectrum on the dual lattice, order " + std::to_string(spec->order()), scert});
    add({"spectrum-measure", status_of(spec->order() == 0), double(spec->order()),
         "order of the transform " + std::to_string(spec->order()), scert});
    std::vector<GrowthSample> rho_hat, n_gamma;
    for (int i = 1; i <= kGrowthSamples; ++i) {
      const double r = spec_radius * i / kGrowthSamples;
      double s = 0.0, n = 0.0;
      for (const auto& [g, k] : q)
        if (g.norm() < r && k > 1e-12 * max_q) {
          s += k;
          n += 1.0;
        }
      rho_hat.push_back({r, s});
      n_gamma.push_back({r, n});
    }
    add(growth_verdict("spectrum-rho-polynomial", rho_hat, scert));
    add(growth_verdict("spectrum-count-polynomial", n_gamma, scert));
  }

  rep.detection = detect_crystal(support);
  add({"pure-crystal", status_of(rep.detection.found()), double(rep.detection.periods.size()),
       rep.detection.found() ? std::to_string(rep.detection.crystal->cosets.size()) + " cosets"
                             : rep.detection.reason,
       rep.detection.cert});

  if (rep.detection.found() && spec) {
    // The spectrum must fall into finitely many cosets of the conjugate of
    // the detected lattice; the index bounds how many.
    const Lattice conj = dual(rep.detection.crystal->lattice);
    const double index = spec->dual_lattice().abs_det() > 0.0 ? conj.abs_det() / spec->dual_lattice().abs_det() : 0.0;
    std::vector<Point> classes;
    bool inside = true;
    for (const auto& g : spec_support) {
      inside = inside && member(spec->dual_lattice(), g).is_member;
      const Point r = conj.reduce(g);
      bool seen = false;
      for (const auto& c : classes) seen = seen || member(conj, c - r).is_member;
      if (!seen) classes.push_back(r);
    }
    const bool ok = inside && std::abs(index - std::round(index)) < 1e-6 && classes.size() <= std::round(index);
    add({"spectrum-in-dual-crystal", status_of(ok), double(classes.size()),
         std::to_string(classes.size()) + " cosets of the conjugate lattice (index " + fmt(index) + ")",
         Certification{0.0, 0.0, tol}});
  } else {
    add({"spectrum-in-dual-crystal", Status::not_applicable, 0.0,
         rep.detection.found() ? "spectrum not computable" : "no crystal detected", base});
  }

  auto corollary = [&](const std::string& name, const std::vector<std::string>& hyps) {
    std::vector<std::string> missing;
    for (const auto& h : hyps)
      if (!rep.passed(h)) missing.push_back(h);
    Verdict v{name, Status::not_applicable, 0.0, "", base};
    if (missing.empty()) {
      v.status = status_of(rep.detection.found());
      v.detail = rep.detection.found() ? "hypotheses hold and the support is a pure crystal"
                                       : "hypotheses hold but no crystal was detected";
    } else {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      v.detail = "hypothesis not met: " + list;
    }
    add(std::move(v));
  };
  corollary("corollary-1", {"finite-type", "inf-kappa-positive", "spectrum-discrete", "spectrum-measure",
                            "spectrum-rho-polynomial"});
  corollary("corollary-2", {"finite-type", "spectrum-discrete", "spectrum-count-polynomial", "inf-kappa-positive",
                            "sup-kappa-bounded"});
  return rep;
}

}  // namespace tempered

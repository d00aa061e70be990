#include "tempered/crystal.hpp"

#include <algorithm>
#include <cmath>

namespace tempered {

namespace {

bool is_period(const PointSet& a, const SpatialIndex& index, const Point& tau) {
  // Partners of points this close to the rim may sit on the open boundary.
  const double reach = a.window_radius() - tau.norm() - a.tolerance();
  for (const auto& p : a.points()) {
    if (p.norm() >= reach) continue;
    if (!index.find_near(p + tau, a.tolerance())) return false;
  }
  return true;
}

}  // namespace

std::vector<Point> detect_periods(const PointSet& a, std::optional<double> max_norm) {
  if (a.size() < 2) throw ContractError("too-few-points", "period detection needs at least two points");
  const double r_max = max_norm.value_or(a.window_radius() / 4.0);
  const SpatialIndex index(a.points(), std::max(a.tolerance() * 16, a.window_radius() / 64.0));

  // Every period maps the point nearest the origin onto another point, so
  // differences against that anchor already contain all candidates.
  const Point& anchor = a.points().front();
  std::vector<Point> accepted;
  for (const auto& b : a.points()) {
    const Point tau = b - anchor;
    const double n = tau.norm();
    if (n < a.tolerance() || n > r_max + a.tolerance()) continue;
    if (is_period(a, index, tau)) accepted.push_back(tau);
  }
  std::sort(accepted.begin(), accepted.end(), norm_lex_less);
  return accepted;
}

CrystalDetection detect_crystal(const PointSet& a, std::optional<double> max_period_norm) {
  CrystalDetection out;
  out.cert = {a.window_radius(), max_period_norm.value_or(a.window_radius() / 4.0), a.tolerance()};
  if (a.size() < 2) {
    out.reason = "no-full-rank-periods";
    return out;
  }
  out.periods = detect_periods(a, max_period_norm);
  std::optional<Lattice> lattice;
  try {
    lattice = lattice_from_periods(out.periods, a.dim(), a.tolerance());
  } catch (const ContractError&) {
    out.reason = "no-full-rank-periods";
    return out;
  }

  std::vector<Point> reps;
  for (const auto& p : a.points()) {
    const Point r = lattice->reduce(p);
    const bool known =
        std::any_of(reps.begin(), reps.end(), [&](const Point& q) { return member(*lattice, r - q).is_member; });
    if (!known) reps.push_back(r);
  }
  std::sort(reps.begin(), reps.end(), norm_lex_less);

  const SpatialIndex index(a.points(), std::max(a.tolerance() * 16, a.window_radius() / 64.0));
  const double trimmed = a.window_radius() - lattice->max_basis_norm();
  if (trimmed > 0.0) {
    for (const auto& rep : reps)
      for (const auto& q : lattice->points_in_ball(rep, zero_point(a.dim()), trimmed))
        if (!index.find_near(q, a.tolerance())) {
          out.reason = "coset-mismatch";
          return out;
        }
  }
  out.crystal = Crystal{*lattice, std::move(reps)};
  return out;
}

}  // namespace tempered

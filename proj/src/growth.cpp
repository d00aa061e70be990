#include "tempered/growth.hpp"

#include "tempered/types.hpp"

#include <cmath>

namespace tempered {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

GrowthReport growth_fit(const std::vector<GrowthSample>& samples) {
  if (samples.size() < 5) throw ContractError("too-few-samples", "growth_fit needs at least five samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].r > samples[i - 1].r)) throw ContractError("invalid-argument", "sample radii must increase");
  std::vector<GrowthSample> pos;
  for (const auto& s : samples)
    if (s.v > 0.0 && s.r > 0.0) pos.push_back(s);
  if (pos.empty()) throw ContractError("non-positive-values", "every sample value is <= 0");
  if (pos.size() < 4) throw ContractError("too-few-samples", "fewer than four samples with positive values");

  const std::size_t half = pos.size() / 2;
  std::vector<double> lx, ly, ux, uy;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const double x = std::log(pos[i].r), y = std::log(pos[i].v);
    if (i < half) {
      lx.push_back(x);
      ly.push_back(y);
    } else {
      ux.push_back(x);
      uy.push_back(y);
    }
  }
  const LineFit upper = fit_line(ux, uy);
  const LineFit lower = fit_line(lx, ly);

  GrowthReport rep;
  rep.exponent = upper.slope;
  rep.log_constant = upper.intercept;
  rep.lower_exponent = lower.slope;
  rep.samples_used = ux.size();
  const double span = uy.back() - uy.front();
  rep.relative_residual = std::abs(span) > 0.0 ? upper.rms / std::abs(span) : upper.rms;
  // A power law keeps its log-log slope; exponential growth keeps raising it.
  rep.super_polynomial = upper.slope > 1.5 * lower.slope + 0.5;
  rep.divergence = rep.relative_residual > kGrowthResidualThreshold || rep.super_polynomial;
  return rep;
}

}  // namespace tempered

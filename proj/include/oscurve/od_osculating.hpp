#pragma once

// Closed-form OD-osculating curves built from a donor's Frenet frame, the
// modified Darboux vector, and the checks a rectifying OD curve must pass.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "oscurve/classify.hpp"
#include "oscurve/curve_model.hpp"
#include "oscurve/direction.hpp"
#include "oscurve/error.hpp"
#include "oscurve/frenet.hpp"
#include "oscurve/numerics.hpp"

namespace oscurve {

inline constexpr real_t kOdTol = 2e-2;

struct ODParameters {
  real_t a = 1.0;
  real_t b = 1.0;
  real_t phase_c = 0.0;
};

inline void validate(const ODParameters& p) {
  if (p.a == 0.0 || p.b == 0.0 || !std::isfinite(p.a) || !std::isfinite(p.b)) {
    throw InvalidArgument("OD parameters a and b must be finite nonzero constants (got a = " + std::to_string(p.a) +
                          ", b = " + std::to_string(p.b) + ")");
  }
}

/// gamma(s) = m(s) T(s) + n(s) N(s) with
///   m = (s+b) sin(theta) + a cos(theta),  n = (s+b) cos(theta) - a sin(theta),
/// theta = running integral of kappa + phase_c, s the donor's grid values.
/// `unit_speed` reports the numerical check; it is not assumed.
inline CurveSamples od_osculating_curve(const FrenetData& f, const ODParameters& p) {
  validate(p);
  const auto dc = osculating_coefficients(f, p.phase_c);
  std::vector<Vec3> pts(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const real_t rho = f.grid[i] + p.b;
    const real_t m = rho * dc.u[i] + p.a * dc.v[i];
    const real_t n = rho * dc.v[i] - p.a * dc.u[i];
    pts[i] = m * f.T[i] + n * f.normal_continuous(i);
  }
  const bool unit = satisfies_unit_speed(f.grid, pts);
  return CurveSamples{f.grid, std::move(pts), unit};
}

/// (tau/kappa) T + B at every sample.
inline VectorSamples modified_darboux(const FrenetData& f) {
  detail::require_all_valid(f, "modified_darboux");
  std::vector<Vec3> d(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    d[i] = (f.tau[i] / f.kappa_signed(i)) * f.T[i] + f.binormal_continuous(i);
  }
  return VectorSamples(f.grid, std::move(d));
}

struct ODReport {
  RectifyingReport rectifying;
  real_t slope_deviation = std::numeric_limits<real_t>::quiet_NaN();      // |slope - 1/a|
  real_t intercept_deviation = std::numeric_limits<real_t>::quiet_NaN();  // |intercept - b/a|
  real_t max_cross_ratio = std::numeric_limits<real_t>::quiet_NaN();      // |gamma x D| / (|gamma| |D|)
  real_t max_tangent_offset = std::numeric_limits<real_t>::quiet_NaN();   // | |<gamma,T>| - |s+b| |
  real_t max_binormal_offset = std::numeric_limits<real_t>::quiet_NaN();  // | |<gamma,B>| - |a| |
  real_t max_speed_deviation = std::numeric_limits<real_t>::quiet_NaN();
  bool rectifying_passed = false;
  bool ratio_passed = false;
  bool darboux_passed = false;
  bool passed = false;
};

/// Computes gamma's own Frenet data on its grid (any regular parameter) and
/// checks: position in the rectifying plane, tau/kappa = (s+b)/a, and
/// gamma parallel to its modified Darboux vector.
inline ODReport verify_od_properties(const CurveSamples& gamma, const ODParameters& p, real_t tol = kOdTol) {
  validate(p);
  if (!(tol > 0.0)) throw InvalidArgument("OD tolerance must be positive");
  const auto f = frenet_apparatus_regular(gamma.grid, gamma.points);
  const auto inner = interior_mask(f.size(), 2);

  ODReport r;
  r.rectifying = rectifying_test(gamma, f, tol, 2);
  r.rectifying_passed = r.rectifying.normal_component < tol;
  r.slope_deviation = std::fabs(r.rectifying.ratio_fit.slope - 1.0 / p.a);
  r.intercept_deviation = std::fabs(r.rectifying.ratio_fit.intercept - p.b / p.a);
  r.ratio_passed = r.slope_deviation < tol && r.intercept_deviation < tol;

  r.max_cross_ratio = 0.0;
  r.max_tangent_offset = 0.0;
  r.max_binormal_offset = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i] || !f.valid[i]) continue;
    const Vec3& g = gamma.points[i];
    const Vec3 d = (f.tau[i] / f.kappa_signed(i)) * f.T[i] + f.binormal_continuous(i);
    const real_t scale = norm(g) * norm(d);
    if (scale > 0.0) r.max_cross_ratio = std::max(r.max_cross_ratio, norm(cross(g, d)) / scale);
    r.max_tangent_offset =
        std::max(r.max_tangent_offset, std::fabs(std::fabs(dot(g, f.T[i])) - std::fabs(f.grid[i] + p.b)));
    r.max_binormal_offset = std::max(r.max_binormal_offset, std::fabs(std::fabs(dot(g, f.B[i])) - std::fabs(p.a)));
  }
  r.max_speed_deviation = max_speed_deviation(gamma);
  r.darboux_passed = r.max_cross_ratio < tol;
  r.passed = r.rectifying_passed && r.ratio_passed && r.darboux_passed;
  return r;
}

}  // namespace oscurve

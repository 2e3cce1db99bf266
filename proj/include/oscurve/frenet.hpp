#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "oscurve/curve_model.hpp"
#include "oscurve/error.hpp"
#include "oscurve/numerics.hpp"
#include "oscurve/vec3.hpp"

namespace oscurve {

/// Samples whose |c' x c''| falls below this carry no principal normal.
inline constexpr real_t kKappaFloor = 1e-9;
inline constexpr real_t kFrameTol = 1e-6;
inline constexpr real_t kFrenetResidualTol = 1e-4;

/// Frenet apparatus sampled on a grid.
///
/// `kappa` is nonnegative. Where the normal flips sign between neighbouring
/// samples (inflections) `orientation` records the sign that makes the frame
/// continuous; `kappa_signed()` and the `*_continuous()` accessors apply it.
struct FrenetData {
  Grid grid;
  std::vector<Vec3> T, N, B;
  std::vector<real_t> kappa;
  std::vector<real_t> tau;
  std::vector<bool> valid;
  std::vector<int> orientation;

  std::size_t size() const { return kappa.size(); }
  std::size_t valid_count() const { return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), true)); }

  real_t kappa_signed(std::size_t i) const { return valid[i] ? orientation[i] * kappa[i] : 0.0; }
  Vec3 normal_continuous(std::size_t i) const { return static_cast<real_t>(orientation[i]) * N[i]; }
  Vec3 binormal_continuous(std::size_t i) const { return static_cast<real_t>(orientation[i]) * B[i]; }

  std::vector<real_t> kappa_signed_values() const {
    std::vector<real_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = kappa_signed(i);
    return out;
  }
};

namespace detail {

// Propagates the sign of N along the curve; samples whose normal is nearly
// perpendicular to the reference (ill-conditioned near kappa = 0) inherit a
// sign but never become the reference.
inline void continue_orientation(FrenetData& f) {
  const std::size_t n = f.size();
  f.orientation.assign(n, 1);
  bool have_ref = false;
  Vec3 ref{};
  for (std::size_t i = 0; i < n; ++i) {
    if (!f.valid[i]) continue;
    if (!have_ref) {
      ref = f.N[i];
      have_ref = true;
      continue;
    }
    const real_t d = dot(f.N[i], ref);
    f.orientation[i] = d < 0.0 ? -1 : 1;
    if (std::fabs(d) >= 0.5) ref = static_cast<real_t>(f.orientation[i]) * f.N[i];
  }
}

}  // namespace detail

/// Frenet apparatus of any regular sampled curve: the cross-product formulas
/// are independent of parametrization, so the grid may be any parameter.
inline FrenetData frenet_apparatus_regular(const Grid& grid, const std::vector<Vec3>& points) {
  const VectorSamples c(grid, points);
  const auto d1 = derivative(c, 1);
  const auto d2 = derivative(c, 2);
  const auto d3 = derivative(c, 3);
  const std::size_t n = grid.size();

  FrenetData f{grid, std::vector<Vec3>(n), std::vector<Vec3>(n), std::vector<Vec3>(n),
               std::vector<real_t>(n), std::vector<real_t>(n), std::vector<bool>(n), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const real_t speed = norm(d1[i]);
    if (!(speed > 0.0)) throw DegenerateCurve("speed vanishes at parameter " + std::to_string(grid[i]));
    const Vec3 c12 = cross(d1[i], d2[i]);
    const real_t c12n = norm(c12);
    f.T[i] = d1[i] / speed;
    f.kappa[i] = c12n / (speed * speed * speed);
    f.valid[i] = c12n >= kKappaFloor;
    if (f.valid[i]) {
      f.B[i] = c12 / c12n;
      f.N[i] = cross(f.B[i], f.T[i]);
      f.tau[i] = dot(c12, d3[i]) / (c12n * c12n);
    } else {
      f.B[i] = kUnsetVec3;
      f.N[i] = kUnsetVec3;
      f.tau[i] = std::numeric_limits<real_t>::quiet_NaN();
    }
  }
  detail::continue_orientation(f);
  return f;
}

/// Frenet apparatus of a unit-speed curve.
inline FrenetData frenet_apparatus(const CurveSamples& c) {
  if (!c.unit_speed) {
    throw InvalidArgument(
        "frenet_apparatus needs a unit-speed curve; call arclength_reparametrize first");
  }
  return frenet_apparatus_regular(c.grid, c.points);
}

struct FrameReport {
  real_t max_norm_deviation = 0.0;      // max | |v| - 1 | over T, N, B
  real_t max_orthogonality = 0.0;       // max |<T,N>|, |<T,B>|, |<N,B>|
  real_t max_handedness_deviation = 0.0;  // max | <T x N, B> - 1 |
  std::size_t checked = 0;
  bool no_valid_samples = false;
  bool passed = false;
};

/// Orthonormality and right-handedness of the frame at valid interior samples.
inline FrameReport verify_frame(const FrenetData& f, real_t tol = kFrameTol) {
  if (!(tol > 0.0)) throw InvalidArgument("frame tolerance must be positive");
  FrameReport r;
  const auto inner = interior_mask(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i] || !f.valid[i]) continue;
    ++r.checked;
    for (const auto* v : {&f.T[i], &f.N[i], &f.B[i]}) {
      r.max_norm_deviation = std::max(r.max_norm_deviation, std::fabs(norm(*v) - 1.0));
    }
    r.max_orthogonality = std::max({r.max_orthogonality, std::fabs(dot(f.T[i], f.N[i])),
                                    std::fabs(dot(f.T[i], f.B[i])), std::fabs(dot(f.N[i], f.B[i]))});
    r.max_handedness_deviation =
        std::max(r.max_handedness_deviation, std::fabs(dot(cross(f.T[i], f.N[i]), f.B[i]) - 1.0));
  }
  r.no_valid_samples = r.checked == 0;
  r.passed = r.max_norm_deviation < tol && r.max_orthogonality < tol && r.max_handedness_deviation < tol;
  return r;
}

struct FrenetResidualReport {
  real_t max_tangent = 0.0;   // |T' - kappa N|
  real_t max_normal = 0.0;    // |N' + kappa T - tau B|
  real_t max_binormal = 0.0;  // |B' + tau N|
  std::size_t checked = 0;
  bool passed = false;

  real_t max_residual() const { return std::max({max_tangent, max_normal, max_binormal}); }
};

/// Differentiates the sampled frame and measures how well the Frenet-Serret
/// equations hold. Uses the orientation-continued frame.
inline FrenetResidualReport frenet_derivative_check(const FrenetData& f, real_t tol = kFrenetResidualTol) {
  const std::size_t n = f.size();
  std::vector<Vec3> nc(n), bc(n);
  for (std::size_t i = 0; i < n; ++i) {
    nc[i] = f.normal_continuous(i);
    bc[i] = f.binormal_continuous(i);
  }
  const auto dT = derivative(VectorSamples(f.grid, f.T), 1);
  const auto dN = derivative(VectorSamples(f.grid, nc), 1);
  const auto dB = derivative(VectorSamples(f.grid, bc), 1);
  const auto inner = interior_mask(n, 2);

  FrenetResidualReport r;
  for (std::size_t i = 0; i < n; ++i) {
    if (!inner[i] || !f.valid[i]) continue;
    const real_t k = f.kappa_signed(i);
    const real_t t = f.tau[i];
    const Vec3 rt = dT[i] - k * nc[i];
    const Vec3 rn = dN[i] + k * f.T[i] - t * bc[i];
    const Vec3 rb = dB[i] + t * nc[i];
    if (!is_finite(rt) || !is_finite(rn) || !is_finite(rb)) continue;
    ++r.checked;
    r.max_tangent = std::max(r.max_tangent, norm(rt));
    r.max_normal = std::max(r.max_normal, norm(rn));
    r.max_binormal = std::max(r.max_binormal, norm(rb));
  }
  r.passed = r.max_residual() < tol;
  return r;
}

}  // namespace oscurve

#pragma once

// Line, plane, general-helix, slant-helix and rectifying-curve predicates on
// sampled Frenet data.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "oscurve/curve_model.hpp"
#include "oscurve/error.hpp"
#include "oscurve/frenet.hpp"
#include "oscurve/numerics.hpp"

namespace oscurve {

inline constexpr real_t kShapeAbsTol = 1e-6;
inline constexpr real_t kRectifyingTol = 2e-2;

/// A slant-helix invariant whose mean stays below this is reported as the
/// degenerate constant zero (general helices).
inline constexpr real_t kZeroInvariant = 1e-6;

/// Minimum |kappa| / sqrt(kappa^2 + tau^2) for a sample to enter slant-helix
/// statistics. Below it the principal normal is poorly resolved and the
/// torsion derivative is dominated by noise.
inline constexpr real_t kDarbouxMargin = 0.05;

namespace detail {

inline void require_some_valid(const FrenetData& f, const char* what) {
  if (f.valid_count() == 0) throw DomainError(std::string(what) + ": no sample has a defined Frenet frame");
}

inline std::vector<real_t> signed_kappa_or_nan(const FrenetData& f) {
  std::vector<real_t> k(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    k[i] = f.valid[i] ? f.kappa_signed(i) : std::numeric_limits<real_t>::quiet_NaN();
  }
  return k;
}

}  // namespace detail

/// Constancy of tau/kappa over valid interior samples.
inline ConstancyReport general_helix_test(const FrenetData& f, real_t rel_tol = kDefaultConstancyTol) {
  detail::require_some_valid(f, "general_helix_test");
  const auto inner = interior_mask(f.size());
  std::vector<real_t> ratio;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (inner[i] && f.valid[i]) ratio.push_back(f.tau[i] / f.kappa_signed(i));
  }
  if (ratio.empty()) throw DomainError("general_helix_test: no valid interior samples");
  return is_constant(ratio, rel_tol);
}

/// sigma = kappa^2 / (kappa^2 + tau^2)^(3/2) * (tau/kappa)', evaluated as
/// (tau' kappa - tau kappa') / (kappa^2 + tau^2)^(3/2). NaN where the frame
/// is undefined or a stencil reaches such a sample.
inline ScalarSamples slant_helix_invariant(const FrenetData& f) {
  detail::require_some_valid(f, "slant_helix_invariant");
  const auto k = detail::signed_kappa_or_nan(f);
  const auto dk = derivative(ScalarSamples(f.grid, k), 1);
  const auto dt = derivative(ScalarSamples(f.grid, f.tau), 1);
  std::vector<real_t> sigma(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const real_t q = k[i] * k[i] + f.tau[i] * f.tau[i];
    sigma[i] = (dt[i] * k[i] - f.tau[i] * dk[i]) / (q * std::sqrt(q));
  }
  return ScalarSamples(f.grid, std::move(sigma));
}

struct SlantHelixReport {
  ConstancyReport sigma;
  bool degenerate_zero = false;
  bool is_slant_helix = false;
};

/// Samples that enter slant-helix statistics: three stacked derivative
/// passes away from the ends and a resolved principal normal.
inline SampleMask slant_mask(const FrenetData& f, real_t margin = kDarbouxMargin) {
  auto m = interior_mask(f.size(), 3);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!m[i] || !f.valid[i]) {
      m[i] = false;
      continue;
    }
    m[i] = f.kappa[i] >= margin * std::hypot(f.kappa[i], f.tau[i]);
  }
  return m;
}

inline SlantHelixReport slant_helix_test(const FrenetData& f, real_t rel_tol = kDefaultConstancyTol) {
  const auto sigma = slant_helix_invariant(f);
  const auto values = select(sigma.data, slant_mask(f));
  if (values.empty()) throw DomainError("slant_helix_test: no usable interior samples");
  SlantHelixReport r;
  r.sigma = is_constant(values, rel_tol);
  // sigma is dimensionless; around zero its spread is judged on unit scale.
  r.degenerate_zero = std::fabs(r.sigma.mean) < kZeroInvariant && r.sigma.max - r.sigma.min < rel_tol;
  r.is_slant_helix = r.degenerate_zero || r.sigma.is_constant;
  return r;
}

inline bool plane_test(const FrenetData& f, real_t abs_tol = kShapeAbsTol) {
  const auto inner = interior_mask(f.size());
  std::size_t used = 0;
  real_t worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i] || !f.valid[i]) continue;
    worst = std::max(worst, std::fabs(f.tau[i]));
    ++used;
  }
  return used > 0 && worst < abs_tol;
}

inline bool line_test(const FrenetData& f, real_t abs_tol = kShapeAbsTol) {
  const auto inner = interior_mask(f.size());
  real_t worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (inner[i]) worst = std::max(worst, f.kappa[i]);
  }
  return worst < abs_tol;
}

struct RectifyingReport {
  real_t normal_component = std::numeric_limits<real_t>::quiet_NaN();  // max |<c,N>| / max |c|
  LinearFit ratio_fit;                                                  // tau/kappa against s
  real_t residual_bound = std::numeric_limits<real_t>::quiet_NaN();
  bool is_rectifying = false;
};

/// Position in the rectifying plane, and tau/kappa linear in s. `depth` is
/// the number of stacked derivative passes behind `f` (2 when the points
/// themselves came from a sampled frame).
inline RectifyingReport rectifying_test(const CurveSamples& c, const FrenetData& f, real_t tol = kRectifyingTol,
                                        std::size_t depth = 1) {
  require_same_grid(c.grid, f.grid, "rectifying_test");
  detail::require_some_valid(f, "rectifying_test");
  const auto inner = interior_mask(f.size(), depth);
  std::vector<real_t> s, ratio;
  real_t normal = 0.0;
  real_t radius = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i] || !f.valid[i]) continue;
    normal = std::max(normal, std::fabs(dot(c.points[i], f.N[i])));
    radius = std::max(radius, norm(c.points[i]));
    s.push_back(f.grid[i]);
    ratio.push_back(f.tau[i] / f.kappa_signed(i));
  }
  if (s.size() < 2) throw DomainError("rectifying_test: fewer than two valid interior samples");
  RectifyingReport r;
  r.normal_component = radius > 0.0 ? normal / radius : std::numeric_limits<real_t>::infinity();
  r.ratio_fit = linear_fit(s, ratio);
  r.residual_bound = tol * (1.0 + std::fabs(r.ratio_fit.slope) * (s.back() - s.front()));
  r.is_rectifying = r.normal_component < tol && r.ratio_fit.max_residual < r.residual_bound;
  return r;
}

struct ClassifyOptions {
  real_t rel_tol = kDefaultConstancyTol;
  real_t abs_tol = kShapeAbsTol;
  real_t rectifying_tol = kRectifyingTol;
  std::size_t resample_n = kDefaultSamples;
};

struct ClassificationReport {
  bool is_line = false;
  bool is_plane = false;
  bool is_general_helix = false;
  bool is_slant_helix = false;
  bool is_rectifying = false;
  bool reparametrized = false;
  ConstancyReport helix_ratio;
  SlantHelixReport slant;
  RectifyingReport rectifying;
};

/// Runs every predicate. Curves that are not unit speed are first
/// reparametrized by arc length on `resample_n` samples.
inline ClassificationReport classify(const CurveSamples& input, const ClassifyOptions& opt = {}) {
  ClassificationReport r;
  CurveSamples c = input;
  if (!c.unit_speed) {
    c = arclength_reparametrize(input, opt.resample_n);
    r.reparametrized = true;
  }
  const auto f = frenet_apparatus(c);
  r.is_line = line_test(f, opt.abs_tol);
  if (r.is_line) return r;

  r.is_plane = plane_test(f, opt.abs_tol);
  r.helix_ratio = general_helix_test(f, opt.rel_tol);
  r.is_general_helix = r.helix_ratio.is_constant;
  r.slant = slant_helix_test(f, opt.rel_tol);
  r.is_slant_helix = r.slant.is_slant_helix;
  r.rectifying = rectifying_test(c, f, opt.rectifying_tol);
  r.is_rectifying = r.rectifying.is_rectifying;
  return r;
}

}  // namespace oscurve

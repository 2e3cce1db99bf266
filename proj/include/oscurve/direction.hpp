#pragma once

// Osculating-, principal- and binormal-direction curves of a Frenet curve,
// the curvature/torsion they are predicted to have, and the inverse map that
// recovers the donor's curvatures from a direction curve.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oscurve/curve_model.hpp"
#include "oscurve/error.hpp"
#include "oscurve/frenet.hpp"
#include "oscurve/numerics.hpp"

namespace oscurve {

/// |u| or |v| below this marks a sample where the osculating construction
/// degenerates (the field touches T or N).
inline constexpr real_t kDegeneracyThreshold = 1e-6;
inline constexpr real_t kDefaultPhase = std::numbers::pi_v<real_t> / 4.0;
inline constexpr real_t kMannheimTol = 1e-4;

/// Coefficients of X = u T + v N + w B on a grid.
struct DirectionCoefficients {
  Grid grid;
  std::vector<real_t> theta;
  std::vector<real_t> u, v, w;
  real_t phase_c = 0.0;
  std::vector<bool> degenerate;
};

namespace detail {

inline std::string describe_runs(const Grid& g, const std::vector<IndexRange>& runs) {
  std::ostringstream out;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (k) out << ", ";
    out << '[' << g[runs[k].first] << ", " << g[runs[k].last] << ']';
  }
  return out.str();
}

inline std::vector<IndexRange> invalid_runs(const FrenetData& f, IndexRange range) {
  SampleMask bad(f.size(), false);
  for (std::size_t i = range.first; i <= range.last; ++i) bad[i] = !f.valid[i];
  return true_runs(bad);
}

inline void require_all_valid(const FrenetData& f, const char* what) {
  const auto runs = invalid_runs(f, {0, f.size() - 1});
  if (!runs.empty()) {
    throw DomainError(std::string(what) + ": the Frenet frame is undefined (curvature below floor) on " +
                      describe_runs(f.grid, runs));
  }
}

inline DirectionCoefficients constant_coefficients(const Grid& g, real_t u, real_t v, real_t w) {
  const std::size_t n = g.size();
  return {g,
          std::vector<real_t>(n, std::numeric_limits<real_t>::quiet_NaN()),
          std::vector<real_t>(n, u),
          std::vector<real_t>(n, v),
          std::vector<real_t>(n, w),
          0.0,
          std::vector<bool>(n, false)};
}

}  // namespace detail

/// u = sin(theta), v = cos(theta), theta = running integral of kappa + phase_c.
inline DirectionCoefficients osculating_coefficients(const FrenetData& f, real_t phase_c = kDefaultPhase) {
  detail::require_all_valid(f, "osculating_coefficients");
  const auto theta = cumulative_integral(ScalarSamples(f.grid, f.kappa_signed_values()), phase_c);
  const std::size_t n = f.size();
  DirectionCoefficients dc{f.grid, theta.data, std::vector<real_t>(n), std::vector<real_t>(n),
                           std::vector<real_t>(n, 0.0), phase_c, std::vector<bool>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    dc.u[i] = std::sin(dc.theta[i]);
    dc.v[i] = std::cos(dc.theta[i]);
    dc.degenerate[i] = std::fabs(dc.u[i]) < kDegeneracyThreshold || std::fabs(dc.v[i]) < kDegeneracyThreshold;
  }
  return dc;
}

inline DirectionCoefficients principal_coefficients(const Grid& g) { return detail::constant_coefficients(g, 0, 1, 0); }
inline DirectionCoefficients binormal_coefficients(const Grid& g) { return detail::constant_coefficients(g, 0, 0, 1); }
inline DirectionCoefficients tangent_coefficients(const Grid& g) { return detail::constant_coefficients(g, 1, 0, 0); }

/// X = u T + v N + w B in the orientation-continued frame.
inline VectorSamples direction_field(const FrenetData& f, const DirectionCoefficients& dc) {
  require_same_grid(f.grid, dc.grid, "direction_field");
  std::vector<Vec3> x(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Vec3 acc{};
    if (dc.u[i] != 0.0) acc += dc.u[i] * f.T[i];
    if (dc.v[i] != 0.0) acc += dc.v[i] * f.normal_continuous(i);
    if (dc.w[i] != 0.0) acc += dc.w[i] * f.binormal_continuous(i);
    x[i] = acc;
  }
  return VectorSamples(f.grid, std::move(x));
}

/// Integral curve of a unit field: gamma(s) = start + integral of X.
inline CurveSamples integrate_direction_curve(const VectorSamples& field, const Vec3& start = {}) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    const real_t len = norm(field[i]);
    if (!(std::fabs(len - 1.0) <= 1e-6)) {
      std::ostringstream msg;
      msg << "integrate_direction_curve: field is not unit length at s = " << field.grid[i] << " (|X| = " << len
          << ")";
      throw InvalidArgument(msg.str());
    }
  }
  auto gamma = cumulative_integral(field, start);
  return CurveSamples{field.grid, std::move(gamma.data), true};
}

inline CurveSamples principal_direction_curve(const FrenetData& f, const Vec3& start = {}) {
  detail::require_all_valid(f, "principal_direction_curve");
  return integrate_direction_curve(direction_field(f, principal_coefficients(f.grid)), start);
}

inline CurveSamples binormal_direction_curve(const FrenetData& f, const Vec3& start = {}) {
  detail::require_all_valid(f, "binormal_direction_curve");
  return integrate_direction_curve(direction_field(f, binormal_coefficients(f.grid)), start);
}

inline CurveSamples osculating_direction_curve(const FrenetData& f, const DirectionCoefficients& dc,
                                               const Vec3& start = {}) {
  return integrate_direction_curve(direction_field(f, dc), start);
}

/// Curvature, torsion and frame the osculating-direction curve must have.
/// Curvature is signed: negative where cos(theta) < 0, with Nbar = B.
struct PredictedBar {
  Grid grid;
  std::vector<real_t> kappa_bar_signed;
  std::vector<real_t> tau_bar_signed;
  std::vector<Vec3> Tbar, Nbar, Bbar;
};

inline PredictedBar predicted_bar_data(const FrenetData& f, const DirectionCoefficients& dc) {
  require_same_grid(f.grid, dc.grid, "predicted_bar_data");
  const std::size_t n = f.size();
  PredictedBar p{f.grid, std::vector<real_t>(n), std::vector<real_t>(n), std::vector<Vec3>(n),
                 std::vector<Vec3>(n), std::vector<Vec3>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 nrm = f.normal_continuous(i);
    p.kappa_bar_signed[i] = f.tau[i] * dc.v[i];
    p.tau_bar_signed[i] = f.tau[i] * dc.u[i];
    p.Tbar[i] = dc.u[i] * f.T[i] + dc.v[i] * nrm;
    p.Nbar[i] = f.binormal_continuous(i);
    p.Bbar[i] = dc.v[i] * f.T[i] - dc.u[i] * nrm;
  }
  return p;
}

/// Re-signs the normal of `g` so that it points along `reference`
/// (for a direction curve: the donor binormal).
inline void align_orientation(FrenetData& g, const std::vector<Vec3>& reference) {
  if (reference.size() != g.size()) throw InvalidArgument("align_orientation: size mismatch");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.valid[i]) g.orientation[i] = dot(g.N[i], reference[i]) < 0.0 ? -1 : 1;
  }
}

/// Donor binormal in the continued orientation, the usual alignment target.
inline std::vector<Vec3> binormals(const FrenetData& f) {
  std::vector<Vec3> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f.binormal_continuous(i);
  return out;
}

struct DonorCurvatures {
  Grid grid;
  std::vector<real_t> kappa;  // NaN outside `range`
  std::vector<real_t> tau;
  IndexRange range;
};

/// Recovers the donor's curvature and torsion from a direction curve's own
/// Frenet data: tau = sqrt(kb^2 + tb^2), kappa = (tb' kb - tb kb') / (kb^2 + tb^2),
/// the latter being kb^2/(kb^2+tb^2) * (tb/kb)' without the division by kb.
inline DonorCurvatures donor_from_direction(const FrenetData& g, std::optional<IndexRange> range = std::nullopt) {
  const std::size_t n = g.size();
  const IndexRange r = range.value_or(IndexRange{0, n - 1});
  if (r.last >= n || r.first > r.last) throw InvalidArgument("donor_from_direction: bad index range");
  const auto bad = detail::invalid_runs(g, r);
  if (!bad.empty()) {
    throw DomainError("donor_from_direction: direction-curve curvature is below the floor on " +
                      detail::describe_runs(g.grid, bad));
  }
  const auto kb = g.kappa_signed_values();
  const auto dkb = derivative(ScalarSamples(g.grid, kb), 1);
  const auto dtb = derivative(ScalarSamples(g.grid, g.tau), 1);

  const real_t nan = std::numeric_limits<real_t>::quiet_NaN();
  DonorCurvatures out{g.grid, std::vector<real_t>(n, nan), std::vector<real_t>(n, nan), r};
  for (std::size_t i = r.first; i <= r.last; ++i) {
    const real_t q = kb[i] * kb[i] + g.tau[i] * g.tau[i];
    out.tau[i] = std::sqrt(q);
    out.kappa[i] = (dtb[i] * kb[i] - g.tau[i] * dkb[i]) / q;
    if (!std::isfinite(out.kappa[i])) {
      throw DomainError("donor_from_direction: derivative stencil reaches an invalid sample near s = " +
                        std::to_string(g.grid[i]));
    }
  }
  return out;
}

struct RecoveryReport {
  real_t max_kappa_rel = 0.0;  // |kappa_rec - kappa| / |kappa|
  real_t max_tau_rel = 0.0;    // |tau_rec - |tau|| / |tau|
  std::size_t checked = 0;
  std::size_t runs = 0;

  real_t max_rel() const { return std::max(max_kappa_rel, max_tau_rel); }
};

/// Runs donor_from_direction over every stretch where cos(theta) > margin
/// (three derivative passes from the ends) and compares with the donor's own
/// curvatures. The recovered torsion is a magnitude, so |tau| is compared.
inline RecoveryReport recovery_check(const FrenetData& gamma, const FrenetData& donor, const DirectionCoefficients& dc,
                                     real_t margin = 0.05) {
  require_same_grid(gamma.grid, donor.grid, "recovery_check");
  auto m = interior_mask(gamma.size(), 3);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] && gamma.valid[i] && donor.valid[i] && dc.v[i] > margin;
  RecoveryReport r;
  for (const auto& run : true_runs(m)) {
    const auto rec = donor_from_direction(gamma, run);
    ++r.runs;
    for (std::size_t i = run.first; i <= run.last; ++i) {
      const real_t k = donor.kappa_signed(i);
      const real_t t = std::fabs(donor.tau[i]);
      r.max_kappa_rel = std::max(r.max_kappa_rel, std::fabs(rec.kappa[i] - k) / std::fabs(k));
      r.max_tau_rel = std::max(r.max_tau_rel, std::fabs(rec.tau[i] - t) / t);
      ++r.checked;
    }
  }
  return r;
}

/// max | |X| - 1 | over the field.
inline real_t unit_field_deviation(const VectorSamples& field) {
  real_t worst = 0.0;
  for (const auto& x : field.data) worst = std::max(worst, std::fabs(norm(x) - 1.0));
  return worst;
}

/// Samples usable for verification statistics: interior (two stacked derivative
/// passes), valid in both frames, and not flagged degenerate.
inline SampleMask statistics_mask(const FrenetData& gamma, const FrenetData& donor, const DirectionCoefficients& dc,
                               std::size_t depth = 2) {
  auto m = interior_mask(gamma.size(), depth);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] && gamma.valid[i] && donor.valid[i] && !dc.degenerate[i];
  return m;
}

/// Samples where |cos theta| >= margin, i.e. the direction curve's curvature
/// is at least `margin` times the donor torsion.
inline SampleMask conditioned_mask(const DirectionCoefficients& dc, real_t margin) {
  SampleMask m(dc.v.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::fabs(dc.v[i]) >= margin;
  return m;
}

struct MannheimReport {
  real_t min_abs_dot = std::numeric_limits<real_t>::quiet_NaN();  // min |<Nbar, B>|
  std::size_t checked = 0;
  bool passed = false;
};

/// Principal normal of gamma against the donor binormal at matching s.
inline MannheimReport mannheim_check(const FrenetData& gamma, const FrenetData& donor, real_t tol = kMannheimTol,
                                     const SampleMask& include = {}) {
  require_same_grid(gamma.grid, donor.grid, "mannheim_check");
  const auto inner = interior_mask(gamma.size(), 2);
  MannheimReport r;
  real_t worst = std::numeric_limits<real_t>::infinity();
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!inner[i] || !gamma.valid[i] || !donor.valid[i]) continue;
    if (!include.empty() && !include[i]) continue;
    worst = std::min(worst, std::fabs(dot(gamma.N[i], donor.B[i])));
    ++r.checked;
  }
  if (r.checked > 0) r.min_abs_dot = worst;
  r.passed = r.checked > 0 && worst >= 1.0 - tol;
  return r;
}

struct BarAgreementReport {
  real_t max_kappa_deviation = 0.0;    // | kappa_num - |tau cos theta| |
  real_t max_tau_deviation = 0.0;      // | tau_num - tau sin theta |
  real_t max_tangent_deviation = 0.0;  // | Tbar_num - (u T + v N) |
  std::size_t checked = 0;
};

/// Compares gamma's numerical Frenet data with the predicted values.
///
/// Numerical curvature is nonnegative, so it is compared with |kappa_bar|.
/// Torsion from the triple-product formula does not depend on the sign of
/// the normal, so it is compared with tau sin(theta) directly.
inline BarAgreementReport bar_agreement(const FrenetData& gamma, const PredictedBar& predicted,
                                        const SampleMask& include) {
  require_same_grid(gamma.grid, predicted.grid, "bar_agreement");
  BarAgreementReport r;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!include[i] || !gamma.valid[i]) continue;
    ++r.checked;
    r.max_kappa_deviation =
        std::max(r.max_kappa_deviation, std::fabs(gamma.kappa[i] - std::fabs(predicted.kappa_bar_signed[i])));
    r.max_tau_deviation = std::max(r.max_tau_deviation, std::fabs(gamma.tau[i] - predicted.tau_bar_signed[i]));
    r.max_tangent_deviation = std::max(r.max_tangent_deviation, norm(gamma.T[i] - predicted.Tbar[i]));
  }
  return r;
}

}  // namespace oscurve

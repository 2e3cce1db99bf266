#pragma once

// Uniform grids, finite-difference derivatives, cumulative quadrature and
// the constancy / linearity statistics every verdict in the library is built on.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "oscurve/error.hpp"
#include "oscurve/vec3.hpp"

namespace oscurve {

/// Samples this close to either end of a grid are touched by one-sided
/// stencils and are excluded from verification statistics.
inline constexpr std::size_t kBoundaryWidth = 3;

inline constexpr std::size_t kMinSamples = 9;
inline constexpr std::size_t kDefaultSamples = 2001;
inline constexpr real_t kDefaultConstancyTol = 1e-3;

/// Uniformly spaced parameter grid with an odd number (>= 9) of samples.
class Grid {
 public:
  Grid(real_t s_min, real_t s_max, std::size_t n) : s_min_(s_min), s_max_(s_max), values_(n) {
    if (!(s_min < s_max)) {
      std::ostringstream msg;
      msg << "grid requires s_min < s_max (got " << s_min << ", " << s_max << ")";
      throw InvalidArgument(msg.str());
    }
    if (n < kMinSamples) {
      throw InvalidArgument("grid requires at least 9 samples (got " + std::to_string(n) + ")");
    }
    if (n % 2 == 0) {
      throw InvalidArgument("grid requires an odd sample count (got " + std::to_string(n) + ")");
    }
    h_ = (s_max - s_min) / static_cast<real_t>(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) values_[i] = s_min + static_cast<real_t>(i) * h_;
    values_[n - 1] = s_max;
  }

  real_t s_min() const { return s_min_; }
  real_t s_max() const { return s_max_; }
  real_t spacing() const { return h_; }
  real_t span() const { return s_max_ - s_min_; }
  std::size_t size() const { return values_.size(); }
  real_t operator[](std::size_t i) const { return values_[i]; }
  const std::vector<real_t>& values() const { return values_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.size() == b.size() && a.s_min_ == b.s_min_ && a.s_max_ == b.s_max_;
  }

 private:
  real_t s_min_;
  real_t s_max_;
  real_t h_ = 0.0;
  std::vector<real_t> values_;
};

inline Grid uniform_grid(real_t s_min, real_t s_max, std::size_t n) { return Grid(s_min, s_max, n); }

/// One value per grid point.
template <typename T>
struct Samples {
  Grid grid;
  std::vector<T> data;

  Samples(Grid g, std::vector<T> d) : grid(std::move(g)), data(std::move(d)) {
    if (data.size() != grid.size()) {
      throw InvalidArgument("sample count " + std::to_string(data.size()) +
                            " does not match grid size " + std::to_string(grid.size()));
    }
  }

  std::size_t size() const { return data.size(); }
  const T& operator[](std::size_t i) const { return data[i]; }
  T& operator[](std::size_t i) { return data[i]; }
};

using ScalarSamples = Samples<real_t>;
using VectorSamples = Samples<Vec3>;

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string(what) + ": grids do not match");
}

/// Per-sample inclusion flags for statistics.
using SampleMask = std::vector<bool>;

/// True away from the ends; `depth` counts how many derivative passes
/// have been stacked on top of each other.
inline SampleMask interior_mask(std::size_t n, std::size_t depth = 1) {
  SampleMask mask(n, false);
  const std::size_t cut = kBoundaryWidth * depth;
  for (std::size_t i = cut; i + cut < n; ++i) mask[i] = true;
  return mask;
}

inline SampleMask interior_mask(const Grid& g, std::size_t depth = 1) { return interior_mask(g.size(), depth); }

inline SampleMask mask_and(const SampleMask& a, const SampleMask& b) {
  SampleMask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

inline std::size_t mask_count(const SampleMask& m) {
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), true));
}

/// Closed index range [first, last].
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const { return last - first + 1; }
  bool contains(std::size_t i) const { return i >= first && i <= last; }
};

/// Maximal runs of consecutive true entries.
inline std::vector<IndexRange> true_runs(const SampleMask& m) {
  std::vector<IndexRange> runs;
  std::size_t i = 0;
  while (i < m.size()) {
    if (!m[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < m.size() && m[j + 1]) ++j;
    runs.push_back({i, j});
    i = j + 1;
  }
  return runs;
}

inline std::vector<real_t> select(std::span<const real_t> values, const SampleMask& mask) {
  std::vector<real_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i] && std::isfinite(values[i])) out.push_back(values[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

namespace detail {

// Fornberg's recursion: weights of the order-`m` derivative at offset 0 for
// nodes at the given offsets (units of h).
inline std::vector<real_t> fd_weights(std::span<const real_t> nodes, int m) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<real_t>> c(n, std::vector<real_t>(static_cast<std::size_t>(m) + 1, 0.0));
  real_t c1 = 1.0;
  real_t c4 = nodes[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, static_cast<std::size_t>(m));
    real_t c2 = 1.0;
    const real_t c5 = c4;
    c4 = nodes[i];
    for (std::size_t j = 0; j < i; ++j) {
      const real_t c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<real_t>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<real_t>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<real_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][static_cast<std::size_t>(m)];
  return w;
}

struct Stencil {
  std::ptrdiff_t first_offset = 0;
  std::vector<real_t> weights;
};

// Interior: 5-point central for orders 1 and 2, 7-point central for order 3
// (all O(h^4)). Boundary: one-sided stencils of the same formal order.
inline Stencil make_stencil(int order, std::ptrdiff_t first_offset, std::size_t width) {
  std::vector<real_t> nodes(width);
  for (std::size_t k = 0; k < width; ++k) nodes[k] = static_cast<real_t>(first_offset + static_cast<std::ptrdiff_t>(k));
  return {first_offset, fd_weights(nodes, order)};
}

inline std::size_t central_half_width(int order) { return order == 3 ? 3 : 2; }
inline std::size_t one_sided_width(int order) { return static_cast<std::size_t>(order) + 4; }

}  // namespace detail

/// Derivative of the given order (1, 2 or 3) of uniformly sampled data.
template <typename T>
Samples<T> derivative(const Samples<T>& f, int order) {
  if (order < 1 || order > 3) {
    throw InvalidArgument("derivative order must be 1, 2 or 3 (got " + std::to_string(order) + ")");
  }
  const std::size_t n = f.size();
  const std::size_t half = detail::central_half_width(order);
  const std::size_t width = detail::one_sided_width(order);
  const real_t scale = std::pow(f.grid.spacing(), order);

  const auto central = detail::make_stencil(order, -static_cast<std::ptrdiff_t>(half), 2 * half + 1);

  auto apply = [&](const detail::Stencil& st, std::size_t i) {
    T acc{};
    for (std::size_t k = 0; k < st.weights.size(); ++k) {
      const auto idx = static_cast<std::ptrdiff_t>(i) + st.first_offset + static_cast<std::ptrdiff_t>(k);
      acc += f.data[static_cast<std::size_t>(idx)] * st.weights[k];
    }
    return acc * (1.0 / scale);
  };

  std::vector<T> out(n);
  for (std::size_t i = half; i + half < n; ++i) out[i] = apply(central, i);
  for (std::size_t i = 0; i < half; ++i) {
    const auto left = detail::make_stencil(order, -static_cast<std::ptrdiff_t>(i), width);
    out[i] = apply(left, i);
    const std::size_t j = n - 1 - i;
    const auto right = detail::make_stencil(order, -static_cast<std::ptrdiff_t>(width - 1 - i), width);
    out[j] = apply(right, j);
  }
  return Samples<T>(f.grid, std::move(out));
}

/// Running integral from the first grid point, starting at `initial`.
///
/// Even indices accumulate composite Simpson panels. An odd index adds to the
/// preceding even value the integral over one half panel of the local cubic
/// through the four surrounding samples, so the error stays a smooth function
/// of s and can be differentiated again downstream.
template <typename T>
Samples<T> cumulative_integral(const Samples<T>& f, const T& initial) {
  const std::size_t n = f.size();
  const real_t h = f.grid.spacing();
  const auto& y = f.data;
  std::vector<T> out(n);
  out[0] = initial;
  for (std::size_t i = 2; i < n; i += 2) {
    out[i] = out[i - 2] + (y[i - 2] + 4.0 * y[i - 1] + y[i]) * (h / 3.0);
  }
  for (std::size_t i = 1; i < n; i += 2) {
    T half_panel;
    if (i == 1) {
      half_panel = (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]) * (h / 24.0);
    } else {
      half_panel = (13.0 * y[i - 1] + 13.0 * y[i] - y[i - 2] - y[i + 1]) * (h / 24.0);
    }
    out[i] = out[i - 1] + half_panel;
  }
  return Samples<T>(f.grid, std::move(out));
}

/// Total integral over the whole grid (composite Simpson).
template <typename T>
T integral(const Samples<T>& f) {
  return cumulative_integral(f, T{}).data.back();
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct ConstancyReport {
  real_t mean = std::numeric_limits<real_t>::quiet_NaN();
  real_t min = std::numeric_limits<real_t>::quiet_NaN();
  real_t max = std::numeric_limits<real_t>::quiet_NaN();
  real_t median = std::numeric_limits<real_t>::quiet_NaN();
  real_t rel_variation = std::numeric_limits<real_t>::quiet_NaN();
  std::size_t count = 0;
  bool is_constant = false;
};

/// Decides whether the given samples describe a constant function:
/// (max - min) / max(|median|, 1e-12) < rel_tol.
inline ConstancyReport is_constant(std::span<const real_t> values, real_t rel_tol = kDefaultConstancyTol) {
  if (!(rel_tol > 0.0)) throw InvalidArgument("constancy tolerance must be positive");
  if (values.empty()) throw InvalidArgument("constancy test needs at least one sample");
  ConstancyReport r;
  r.count = values.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  r.min = *lo;
  r.max = *hi;
  r.mean = std::accumulate(values.begin(), values.end(), real_t{0}) / static_cast<real_t>(values.size());
  std::vector<real_t> sorted(values.begin(), values.end());
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  r.median = sorted[mid];
  if (sorted.size() % 2 == 0) {
    const real_t below = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
    r.median = 0.5 * (r.median + below);
  }
  r.rel_variation = (r.max - r.min) / std::max(std::fabs(r.median), real_t(1e-12));
  r.is_constant = r.rel_variation < rel_tol;
  return r;
}

struct LinearFit {
  real_t slope = std::numeric_limits<real_t>::quiet_NaN();
  real_t intercept = std::numeric_limits<real_t>::quiet_NaN();
  real_t max_residual = std::numeric_limits<real_t>::quiet_NaN();
  std::size_t count = 0;
};

/// Ordinary least squares y ~ slope * x + intercept.
inline LinearFit linear_fit(std::span<const real_t> x, std::span<const real_t> y) {
  if (x.size() != y.size()) throw InvalidArgument("linear fit: x and y differ in length");
  if (x.size() < 2) throw InvalidArgument("linear fit needs at least two samples");
  const real_t n = static_cast<real_t>(x.size());
  const real_t mx = std::accumulate(x.begin(), x.end(), real_t{0}) / n;
  const real_t my = std::accumulate(y.begin(), y.end(), real_t{0}) / n;
  real_t sxx = 0.0;
  real_t sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.count = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.max_residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual, std::fabs(y[i] - (fit.slope * x[i] + fit.intercept)));
  }
  return fit;
}

}  // namespace oscurve

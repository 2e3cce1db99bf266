#pragma once

#include <algorithm>
#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "oscurve/error.hpp"
#include "oscurve/numerics.hpp"
#include "oscurve/vec3.hpp"

namespace oscurve {

/// A sampled space curve. When `unit_speed` is set the grid parameter is arc length.
struct CurveSamples {
  Grid grid;
  std::vector<Vec3> points;
  bool unit_speed = false;

  std::size_t size() const { return points.size(); }
  VectorSamples as_samples() const { return VectorSamples(grid, points); }
};

inline constexpr real_t kUnitSpeedTol = 1e-4;

/// Largest | |c'| - 1 | over interior samples.
inline real_t max_speed_deviation(const Grid& grid, const std::vector<Vec3>& points) {
  const auto d1 = derivative(VectorSamples(grid, points), 1);
  const auto inner = interior_mask(grid);
  real_t worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (inner[i]) worst = std::max(worst, std::fabs(norm(d1[i]) - 1.0));
  }
  return worst;
}

inline real_t max_speed_deviation(const CurveSamples& c) { return max_speed_deviation(c.grid, c.points); }

inline bool satisfies_unit_speed(const Grid& grid, const std::vector<Vec3>& points) {
  return max_speed_deviation(grid, points) <= kUnitSpeedTol;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

using ParameterMap = std::map<std::string, real_t>;

struct Interval {
  real_t lo = -std::numeric_limits<real_t>::infinity();
  real_t hi = std::numeric_limits<real_t>::infinity();
};

/// A closed-form unit-speed curve with its parameters and domains.
struct CatalogEntry {
  std::string name;
  std::string summary;
  ParameterMap defaults;
  std::function<void(const ParameterMap&)> validate;
  std::function<Interval(const ParameterMap&)> valid_domain;
  std::function<Interval(const ParameterMap&)> default_domain;
  std::function<Vec3(const ParameterMap&, real_t)> point;
};

namespace detail {

inline real_t param(const ParameterMap& p, const char* key) { return p.at(key); }

inline void require_positive(const ParameterMap& p, const char* key, const std::string& entry) {
  if (!(param(p, key) > 0.0)) {
    std::ostringstream msg;
    msg << entry << ": parameter " << key << " must be positive (got " << param(p, key) << ")";
    throw InvalidArgument(msg.str());
  }
}

// Spherical helix endpoints sit where cos t vanishes; t = asin(c s).
inline constexpr real_t kSphericalValidMargin = 1e-3;
inline constexpr real_t kSphericalDefaultFraction = 0.9;
inline constexpr real_t kRootCurveMargin = 1e-3;
// Curvature grows like s^(-1/2) at both ends; a uniform grid resolves the
// stacked derivatives only this far in.
inline constexpr real_t kRootCurveDefaultMargin = 0.05;

inline std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;

  entries.push_back(CatalogEntry{
      "circular_helix",
      "circular helix scale*(a cos t, a sin t, b t), t = s/(scale*sqrt(a^2+b^2)); "
      "a=b=scale=1 gives curvature = torsion = 1/2",
      {{"a", 1.0}, {"b", 1.0}, {"scale", 1.0}},
      [](const ParameterMap& p) {
        require_positive(p, "a", "circular_helix");
        require_positive(p, "scale", "circular_helix");
      },
      [](const ParameterMap&) { return Interval{}; },
      [](const ParameterMap&) { return Interval{0.0, 4.0 * std::numbers::pi_v<real_t>}; },
      [](const ParameterMap& p, real_t s) {
        const real_t a = param(p, "a");
        const real_t b = param(p, "b");
        const real_t k = param(p, "scale");
        const real_t t = s / (k * std::hypot(a, b));
        return Vec3{k * a * std::cos(t), k * a * std::sin(t), k * b * t};
      }});

  entries.push_back(CatalogEntry{
      "spherical_helix",
      "general helix on the unit sphere with torsion/curvature = -c, "
      "arc-length parametrized via t = asin(c s)",
      {{"c", 2.0}},
      [](const ParameterMap& p) { require_positive(p, "c", "spherical_helix"); },
      [](const ParameterMap& p) {
        const real_t bound = std::cos(kSphericalValidMargin) / param(p, "c");
        return Interval{-bound, bound};
      },
      [](const ParameterMap& p) {
        const real_t bound = kSphericalDefaultFraction / param(p, "c");
        return Interval{-bound, bound};
      },
      [](const ParameterMap& p, real_t s) {
        const real_t c = param(p, "c");
        const real_t w = std::sqrt(1.0 + c * c) / c;
        const real_t t = std::asin(c * s);
        const real_t ct = std::cos(t);
        const real_t st = std::sin(t);
        const real_t cw = std::cos(w * t);
        const real_t sw = std::sin(w * t);
        return Vec3{ct * cw + st * sw / w, -ct * sw + st * cw / w, st / (c * w)};
      }});

  entries.push_back(CatalogEntry{
      "root_curve",
      "(sqrt2/3 s^(3/2), sqrt2/3 (1-s)^(3/2), sqrt2/2 s) on (0,1); curvature = torsion",
      {},
      [](const ParameterMap&) {},
      [](const ParameterMap&) { return Interval{kRootCurveMargin, 1.0 - kRootCurveMargin}; },
      [](const ParameterMap&) { return Interval{kRootCurveDefaultMargin, 1.0 - kRootCurveDefaultMargin}; },
      [](const ParameterMap&, real_t s) {
        const real_t r = std::numbers::sqrt2_v<real_t> / 3.0;
        return Vec3{r * std::pow(s, 1.5), r * std::pow(1.0 - s, 1.5), 0.5 * std::numbers::sqrt2_v<real_t> * s};
      }});

  entries.push_back(CatalogEntry{
      "helix_12_5",
      "circular helix (12 cos(s/13), 12 sin(s/13), 5s/13); curvature 12/169, torsion 5/169",
      {},
      [](const ParameterMap&) {},
      [](const ParameterMap&) { return Interval{}; },
      [](const ParameterMap&) { return Interval{0.0, 169.0}; },
      [](const ParameterMap&, real_t s) {
        return Vec3{12.0 * std::cos(s / 13.0), 12.0 * std::sin(s / 13.0), 5.0 * s / 13.0};
      }});

  return entries;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = detail::build_catalog();
  return entries;
}

inline const CatalogEntry& find_catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  std::string known;
  for (const auto& e : catalog()) known += (known.empty() ? "" : ", ") + e.name;
  throw InvalidArgument("unknown catalog curve '" + std::string(name) + "' (known: " + known + ")");
}

/// Entry defaults overridden by `overrides`; unknown keys are rejected.
inline ParameterMap resolve_parameters(const CatalogEntry& entry, const ParameterMap& overrides) {
  ParameterMap p = entry.defaults;
  for (const auto& [key, value] : overrides) {
    if (!p.contains(key)) {
      throw InvalidArgument("catalog curve '" + entry.name + "' has no parameter '" + key + "'");
    }
    p[key] = value;
  }
  entry.validate(p);
  return p;
}

inline Grid default_grid(std::string_view name, const ParameterMap& overrides = {},
                         std::size_t n = kDefaultSamples) {
  const auto& entry = find_catalog_entry(name);
  const auto dom = entry.default_domain(resolve_parameters(entry, overrides));
  return Grid(dom.lo, dom.hi, n);
}

/// Samples the closed form of a catalog curve on `grid` (arc length).
inline CurveSamples evaluate_catalog(std::string_view name, const ParameterMap& overrides, const Grid& grid) {
  const auto& entry = find_catalog_entry(name);
  const auto p = resolve_parameters(entry, overrides);
  const auto dom = entry.valid_domain(p);
  if (grid.s_min() < dom.lo) {
    std::ostringstream msg;
    msg.precision(17);
    msg << entry.name << ": grid s_min = " << grid.s_min() << " is below the lower bound " << dom.lo
        << " of the valid domain";
    throw DomainError(msg.str());
  }
  if (grid.s_max() > dom.hi) {
    std::ostringstream msg;
    msg.precision(17);
    msg << entry.name << ": grid s_max = " << grid.s_max() << " exceeds the upper bound " << dom.hi
        << " of the valid domain";
    throw DomainError(msg.str());
  }
  std::vector<Vec3> pts(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pts[i] = entry.point(p, grid[i]);
  return CurveSamples{grid, std::move(pts), true};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline real_t parse_number(std::string_view field, std::size_t line_no, const std::string& path) {
  real_t value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw DomainError(path + ":" + std::to_string(line_no) + ": malformed number '" + std::string(field) + "'");
  }
  return value;
}

inline std::string format_number(real_t v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general,
                                 std::numeric_limits<real_t>::max_digits10);
  return std::string(buf.data(), res.ptr);
}

}  // namespace detail

/// Reads a curve from `s,x,y,z` or `x,y,z` CSV.
///
/// A uniformly spaced `s` column becomes the grid and `unit_speed` is set
/// when the samples pass the numerical unit-speed check. Without a usable
/// `s` column the samples are indexed 0..n-1 and `unit_speed` is false.
inline CurveSamples load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading: " + std::strerror(errno));

  std::string line;
  std::size_t line_no = 0;
  bool has_s = false;
  bool header_seen = false;
  std::vector<real_t> s;
  std::vector<Vec3> pts;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = detail::trim(line);
    if (view.empty()) continue;
    const auto fields = detail::split_commas(view);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 4 && fields[0] == "s" && fields[1] == "x" && fields[2] == "y" && fields[3] == "z") {
        has_s = true;
        continue;
      }
      if (fields.size() == 3 && fields[0] == "x" && fields[1] == "y" && fields[2] == "z") continue;
      throw DomainError(path + ":" + std::to_string(line_no) + ": expected header 's,x,y,z' or 'x,y,z'");
    }
    const std::size_t expected = has_s ? 4 : 3;
    if (fields.size() != expected) {
      throw DomainError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                        " fields, got " + std::to_string(fields.size()));
    }
    std::size_t k = 0;
    if (has_s) {
      const real_t sv = detail::parse_number(fields[k++], line_no, path);
      if (!s.empty() && !(sv > s.back())) {
        throw DomainError(path + ":" + std::to_string(line_no) + ": s column is not strictly increasing");
      }
      s.push_back(sv);
    }
    const real_t x = detail::parse_number(fields[k++], line_no, path);
    const real_t y = detail::parse_number(fields[k++], line_no, path);
    const real_t z = detail::parse_number(fields[k++], line_no, path);
    pts.push_back({x, y, z});
  }
  if (in.bad()) throw IoError("error while reading '" + path + "': " + std::strerror(errno));
  if (!header_seen) throw DomainError(path + ": empty file");

  const std::size_t n = pts.size();
  if (n < kMinSamples) {
    throw DomainError(path + ": fewer than 9 samples (got " + std::to_string(n) + ")");
  }
  if (n % 2 == 0) {
    throw DomainError(path + ": an odd number of samples is required (got " + std::to_string(n) + ")");
  }

  if (has_s) {
    const real_t h = (s.back() - s.front()) / static_cast<real_t>(n - 1);
    bool uniform = true;
    for (std::size_t i = 0; i + 1 < n && uniform; ++i) {
      uniform = std::fabs((s[i + 1] - s[i]) - h) <= 1e-9 * h;
    }
    if (uniform) {
      Grid grid(s.front(), s.back(), n);
      const bool unit = satisfies_unit_speed(grid, pts);
      return CurveSamples{std::move(grid), std::move(pts), unit};
    }
  }
  return CurveSamples{Grid(0.0, static_cast<real_t>(n - 1), n), std::move(pts), false};
}

/// Writes `s,x,y,z` with enough significant digits to round-trip real_t.
inline void save_csv(const CurveSamples& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  out << "s,x,y,z\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& p = c.points[i];
    out << detail::format_number(c.grid[i]) << ',' << detail::format_number(p.x) << ','
        << detail::format_number(p.y) << ',' << detail::format_number(p.z) << '\n';
  }
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "': " + std::strerror(errno));
}

// ---------------------------------------------------------------------------
// Arc-length reparametrization
// ---------------------------------------------------------------------------

namespace detail {

// Quintic Hermite segment on [t0, t0 + len] from positions, first and second derivatives.
struct QuinticSegment {
  real_t t0;
  real_t len;
  Vec3 p0, d0, a0, p1, d1, a1;

  Vec3 value(real_t t) const {
    const real_t u = (t - t0) / len;
    const real_t u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    const real_t h0 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
    const real_t h1 = u - 6 * u3 + 8 * u4 - 3 * u5;
    const real_t h2 = 0.5 * (u2 - 3 * u3 + 3 * u4 - u5);
    const real_t h3 = 10 * u3 - 15 * u4 + 6 * u5;
    const real_t h4 = -4 * u3 + 7 * u4 - 3 * u5;
    const real_t h5 = 0.5 * (u3 - 2 * u4 + u5);
    return h0 * p0 + (h1 * len) * d0 + (h2 * len * len) * a0 + h3 * p1 + (h4 * len) * d1 +
           (h5 * len * len) * a1;
  }

  Vec3 tangent(real_t t) const {
    const real_t u = (t - t0) / len;
    const real_t u2 = u * u, u3 = u2 * u, u4 = u3 * u;
    const real_t g0 = -30 * u2 + 60 * u3 - 30 * u4;
    const real_t g1 = 1 - 18 * u2 + 32 * u3 - 15 * u4;
    const real_t g2 = 0.5 * (2 * u - 9 * u2 + 12 * u3 - 5 * u4);
    const real_t g3 = 30 * u2 - 60 * u3 + 30 * u4;
    const real_t g4 = -12 * u2 + 28 * u3 - 15 * u4;
    const real_t g5 = 0.5 * (3 * u2 - 8 * u3 + 5 * u4);
    return (g0 / len) * p0 + g1 * d0 + (g2 * len) * a0 + (g3 / len) * p1 + g4 * d1 + (g5 * len) * a1;
  }

  // Arc length from t0 to t (5-point Gauss-Legendre).
  real_t arc_to(real_t t) const {
    static constexpr std::array<real_t, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                -0.9061798459386640, 0.9061798459386640};
    static constexpr std::array<real_t, 5> w = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                0.2369268850561891, 0.2369268850561891};
    const real_t half = 0.5 * (t - t0);
    real_t acc = 0.0;
    for (std::size_t k = 0; k < 5; ++k) acc += w[k] * norm(tangent(t0 + half * (1.0 + x[k])));
    return acc * half;
  }
};

// Monotone cubic Hermite (Fritsch-Carlson limited) for t(sigma) on one cell.
inline real_t monotone_cubic(real_t x0, real_t x1, real_t y0, real_t y1, real_t m0, real_t m1, real_t x) {
  const real_t dx = x1 - x0;
  const real_t secant = (y1 - y0) / dx;
  if (secant > 0.0) {
    const real_t a = m0 / secant;
    const real_t b = m1 / secant;
    const real_t r = a * a + b * b;
    if (r > 9.0) {
      const real_t tau = 3.0 / std::sqrt(r);
      m0 = tau * a * secant;
      m1 = tau * b * secant;
    }
  }
  const real_t u = (x - x0) / dx;
  const real_t u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * dx * m0 + (-2 * u3 + 3 * u2) * y1 +
         (u3 - u2) * dx * m1;
}

}  // namespace detail

/// Resamples `c` at `n_out` equally spaced arc-length values on [0, L].
///
/// The inverse map s -> t starts from a monotone cubic interpolant and is
/// polished by Newton steps on a quintic Hermite model of the curve, so the
/// output stays smooth enough for third derivatives.
inline CurveSamples arclength_reparametrize(const CurveSamples& c, std::size_t n_out) {
  const auto samples = c.as_samples();
  const auto d1 = derivative(samples, 1);
  const auto d2 = derivative(samples, 2);
  const std::size_t n = c.size();

  std::vector<real_t> speed(n);
  for (std::size_t i = 0; i < n; ++i) {
    speed[i] = norm(d1[i]);
    if (!(speed[i] > 1e-9)) {
      std::ostringstream msg;
      msg << "degenerate curve: speed vanishes at parameter " << c.grid[i]
          << "; a regular curve is required for arc-length reparametrization";
      throw DegenerateCurve(msg.str());
    }
  }
  const auto arc = cumulative_integral(ScalarSamples(c.grid, speed), real_t{0});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(arc[i + 1] > arc[i])) throw NumericalError("cumulative arc length is not increasing");
  }
  const real_t length = arc.data.back();
  Grid out_grid(0.0, length, n_out);

  std::vector<Vec3> out(n_out);
  std::size_t cell = 0;
  for (std::size_t j = 0; j < n_out; ++j) {
    const real_t sigma = out_grid[j];
    while (cell + 2 < n && arc[cell + 1] <= sigma) ++cell;
    const std::size_t k = cell;

    // Use exact-length knots where the target coincides with a sample.
    if (j == 0) {
      out[j] = c.points.front();
      continue;
    }
    if (j + 1 == n_out) {
      out[j] = c.points.back();
      continue;
    }

    const detail::QuinticSegment seg{c.grid[k], c.grid.spacing(), c.points[k], d1[k], d2[k],
                                     c.points[k + 1], d1[k + 1], d2[k + 1]};
    real_t t = detail::monotone_cubic(arc[k], arc[k + 1], c.grid[k], c.grid[k + 1], 1.0 / speed[k],
                                      1.0 / speed[k + 1], sigma);
    const real_t t_lo = c.grid[k];
    const real_t t_hi = c.grid[k + 1];
    for (int it = 0; it < 4; ++it) {
      const real_t residual = arc[k] + seg.arc_to(t) - sigma;
      t -= residual / norm(seg.tangent(t));
      t = std::clamp(t, t_lo, t_hi);
    }
    out[j] = seg.value(t);
  }

  if (!satisfies_unit_speed(out_grid, out)) {
    std::ostringstream msg;
    msg << "arc-length resampling failed the unit-speed check (max deviation "
        << max_speed_deviation(out_grid, out) << "); the input is too coarse or too noisy";
    throw NumericalError(msg.str());
  }
  return CurveSamples{std::move(out_grid), std::move(out), true};
}

}  // namespace oscurve

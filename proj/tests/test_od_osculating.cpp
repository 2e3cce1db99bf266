#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oscurve/od_osculating.hpp"
#include "support/bridge.hpp"

using namespace oscurve;
using testing::gap;

namespace {

// Component formulas for a = b = 1 on helix_12_5, angle 12s/169 + e.
oracle::V3 helix_od(oracle::Real s, oracle::Real e) {
  const oracle::Real th = 12 * s / 169 + e;
  const oracle::Real p = (s + 1) * std::sin(th) + std::cos(th);
  const oracle::Real q = (s + 1) * std::cos(th) - std::sin(th);
  return {-12.0L / 13 * p * std::sin(s / 13) - q * std::cos(s / 13),
          12.0L / 13 * p * std::cos(s / 13) - q * std::sin(s / 13), 5.0L / 13 * p};
}

// Same for root_curve, angle (sqrt2/4) asin(2s-1) + d.
oracle::V3 root_od(oracle::Real s, oracle::Real d) {
  const oracle::Real h = std::numbers::sqrt2_v<oracle::Real> / 2;
  const oracle::Real th = oracle::root_theta(s) + d;
  const oracle::Real p = (s + 1) * std::sin(th) + std::cos(th);
  const oracle::Real q = (s + 1) * std::cos(th) - std::sin(th);
  const oracle::Real a = std::sqrt(s), b = std::sqrt(1 - s);
  return {h * p * a + q * b, -h * p * b + q * a, h * p};
}

FrenetData donor(const std::string& name) {
  return frenet_apparatus(evaluate_catalog(name, {}, default_grid(name)));
}

// Unit-speed donor with curvature a/(a^2+(s+b)^2) and torsion 1/2, built
// from its curvatures alone. Its OD curve is rectifying for the phase
// atan((s0+b)/a).
CurveSamples positive_control(real_t a, real_t b, const Grid& g) {
  auto pts = oracle::frenet_serret_curve([&](oracle::Real s) { return a / (a * a + (s + b) * (s + b)); },
                                         [](oracle::Real) { return 0.5L; }, g.s_min(), g.spacing(), g.size() - 1);
  return testing::sample(g, [&](oracle::Real s) {
    return pts[static_cast<std::size_t>(std::llround((s - g.s_min()) / g.spacing()))];
  });
}

}  // namespace

TEST_CASE("helix_12_5 OD curve reproduces the component formulas") {
  const auto f = donor("helix_12_5");
  for (real_t e : {0.0L, 0.7L}) {
    const auto g = od_osculating_curve(f, {1, 1, e});
    real_t worst = 0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, gap(g.points[i], helix_od(g.grid[i], e)) / (1 + g.grid[i]));
    CAPTURE(e);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("root_curve OD curve reproduces the component formulas") {
  const auto f = donor("root_curve");
  const real_t phase = 0.4L;
  const auto g = od_osculating_curve(f, {1, 1, phase});
  const real_t d = phase - oracle::root_theta(f.grid[0]);
  real_t worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, gap(g.points[i], root_od(g.grid[i], d)));
  CHECK(worst < 1e-6);
}

TEST_CASE("OD curve starts at aT + bN when s = 0 and the phase vanishes") {
  const auto f = donor("helix_12_5");
  const ODParameters p{2.5L, -0.75L, 0};
  const auto g = od_osculating_curve(f, p);
  CHECK(norm(g.points[0] - (p.a * f.T[0] + p.b * f.N[0])) < 1e-15);
}

TEST_CASE("OD parameters must be nonzero") {
  const auto f = donor("helix_12_5");
  CHECK_THROWS_AS(od_osculating_curve(f, {0, 1, 0}), InvalidArgument);
  CHECK_THROWS_AS(od_osculating_curve(f, {1, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(od_osculating_curve(f, {std::nan(""), 1, 0}), InvalidArgument);
}

TEST_CASE("modified Darboux vector of a helix is its constant axis") {
  const auto d = modified_darboux(donor("helix_12_5"));
  for (std::size_t i = 0; i < d.size(); ++i) REQUIRE(gap(d[i], {0, 0, 169.0L / 156}) < 1e-9);
  const auto r = modified_darboux(donor("root_curve"));
  for (std::size_t i = 0; i < r.size(); i += 50) {
    const auto x = oracle::root_frame(r.grid[i]);
    REQUIRE(gap(r[i], oracle::add(x.T, x.B)) < 1e-6);
  }
}

TEST_CASE("closed-form OD curve on a helix is not unit speed") {
  const auto g = od_osculating_curve(donor("helix_12_5"), {1, 1, 0});
  CHECK_FALSE(g.unit_speed);
  CHECK(max_speed_deviation(g) > 1);
}

TEST_CASE("OD curve of a donor with curvature a/(a^2+(s+b)^2) is rectifying") {
  const Grid grid(0, 20, 2001);
  for (const auto& [a, b] : std::vector<std::pair<real_t, real_t>>{{1, 1}, {2, 0.5L}, {0.5L, 3}}) {
    CAPTURE(a, b);
    const auto alpha = positive_control(a, b, grid);
    const auto f = frenet_apparatus(alpha);
    const ODParameters p{a, b, std::atan((grid.s_min() + b) / a)};
    const auto g = od_osculating_curve(f, p);
    CHECK(g.unit_speed);
    const auto r = verify_od_properties(g, p);
    CHECK(r.passed);
    CHECK(r.rectifying.normal_component < 1e-6);
    CHECK(r.slope_deviation < 1e-6);
    CHECK(r.intercept_deviation < 1e-5);
    CHECK(r.max_cross_ratio < 1e-4);
    CHECK(r.max_tangent_offset < 1e-6);
    CHECK(r.max_binormal_offset < 1e-6);
  }
}

TEST_CASE("verification rejects a plain helix") {
  const auto alpha = evaluate_catalog("circular_helix", {}, default_grid("circular_helix"));
  const auto r = verify_od_properties(alpha, {1, 1, 0});
  CHECK_FALSE(r.rectifying_passed);
  CHECK_FALSE(r.passed);
  CHECK_THROWS_AS(verify_od_properties(alpha, {1, 1, 0}, 0), InvalidArgument);
}

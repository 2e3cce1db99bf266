#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oscurve/oscurve.hpp"
#include "support/bridge.hpp"

using namespace oscurve;
using Catch::Generators::random;
using Catch::Generators::take;

namespace {

CurveSamples helix(real_t a, real_t b, std::size_t n = kDefaultSamples) {
  return evaluate_catalog("circular_helix", {{"a", a}, {"b", b}}, default_grid("circular_helix", {}, n));
}

}  // namespace

TEST_CASE("random helices: curvatures, frame and Frenet-Serret residual") {
  const double a = GENERATE(take(6, random(0.3, 3.0)));
  const double b = GENERATE(take(2, random(-2.0, 2.0)));
  CAPTURE(a, b);
  const auto f = frenet_apparatus(helix(a, b));
  const oracle::Helix h{a, b};
  const auto inner = interior_mask(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i]) continue;
    REQUIRE(std::fabs(f.kappa[i] - h.kappa()) < 1e-8);
    REQUIRE(std::fabs(f.tau[i] - h.tau()) < 1e-8);
  }
  CHECK(verify_frame(f).passed);
  CHECK(frenet_derivative_check(f).passed);
}

TEST_CASE("random phase: unit direction field and phase-free slant invariant") {
  const double phase = GENERATE(take(6, random(-3.0, 3.0)));
  const double a = GENERATE(take(2, random(0.5, 2.0)));
  CAPTURE(phase, a);
  const auto f = frenet_apparatus(helix(a, 1));
  const auto dc = osculating_coefficients(f, phase);
  CHECK(unit_field_deviation(direction_field(f, dc)) < 1e-9);
  const auto gamma = osculating_direction_curve(f, dc);
  const auto s = slant_helix_test(frenet_apparatus(gamma), 1e-2);
  CHECK(s.sigma.rel_variation < 1e-2);
  // The sign follows gamma's own normal at its first sample, cos(phase).
  CHECK(std::fabs(std::fabs(s.sigma.mean) - a) < 1e-3 * a);
  CHECK((s.sigma.mean > 0) == (std::cos(phase) > 0));
}

TEST_CASE("random rigid motions leave the classification unchanged") {
  const double angle = GENERATE(take(5, random(-3.0, 3.0)));
  const double ax = GENERATE(take(1, random(-1.0, 1.0)));
  CAPTURE(angle, ax);
  const oracle::V3 raw{ax, 0.5L, -0.3L};
  const oracle::RigidMotion motion{oracle::scale(1 / oracle::norm(raw), raw), angle, {1, 2, 3}};
  const auto f = frenet_apparatus(evaluate_catalog("root_curve", {}, default_grid("root_curve")));
  const auto base = osculating_direction_curve(f, osculating_coefficients(f, 0.5));
  auto moved = base;
  for (auto& p : moved.points) p = testing::vec(motion(testing::v3(p)));
  const auto r0 = classify(base);
  const auto r1 = classify(moved);
  CHECK(r0.is_general_helix == r1.is_general_helix);
  CHECK(r0.is_slant_helix == r1.is_slant_helix);
  CHECK(r0.is_rectifying == r1.is_rectifying);
  auto close = [](real_t x, real_t y) { return std::fabs(x - y) <= 1e-6 * std::max(real_t{1}, std::fabs(x)); };
  CHECK(close(r0.helix_ratio.mean, r1.helix_ratio.mean));
  CHECK(close(r0.slant.sigma.mean, r1.slant.sigma.mean));
}

TEST_CASE("random smooth data: fourth-order convergence") {
  const double k = GENERATE(take(5, random(0.5, 4.0)));
  CAPTURE(k);
  auto err = [&](std::size_t n, int order) {
    const Grid g(0, 3, n);
    std::vector<real_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(k * g[i]);
    const auto d = derivative(ScalarSamples(g, v), order);
    const auto inner = interior_mask(g);
    real_t worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const real_t x = k * g[i];
      const real_t exact = order == 1 ? k * std::cos(x) : order == 2 ? -k * k * std::sin(x) : -k * k * k * std::cos(x);
      if (inner[i]) worst = std::max(worst, std::fabs(d[i] - exact));
    }
    return worst;
  };
  for (int order = 1; order <= 3; ++order) CHECK(err(201, order) / err(401, order) >= 12);

  auto qerr = [&](std::size_t n) {
    const Grid g(0, 3, n);
    std::vector<real_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::cos(k * g[i]);
    const auto I = cumulative_integral(ScalarSamples(g, v), real_t{0});
    real_t worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(I[i] - std::sin(k * g[i]) / k));
    return worst;
  };
  CHECK(qerr(201) / qerr(401) >= 12);
}

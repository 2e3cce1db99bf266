#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oscurve/frenet.hpp"
#include "support/bridge.hpp"

using namespace oscurve;
using testing::gap;

namespace {

struct FrameErrors {
  real_t T = 0, N = 0, B = 0, kappa = 0, tau = 0;
};

template <typename FrameAt>
FrameErrors compare(const FrenetData& f, FrameAt exact) {
  FrameErrors e;
  const auto inner = interior_mask(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i]) continue;
    const oracle::Frame x = exact(f.grid[i]);
    e.T = std::max(e.T, gap(f.T[i], x.T));
    e.N = std::max(e.N, gap(f.N[i], x.N));
    e.B = std::max(e.B, gap(f.B[i], x.B));
    e.kappa = std::max(e.kappa, std::fabs(f.kappa[i] - x.kappa));
    e.tau = std::max(e.tau, std::fabs(f.tau[i] - x.tau));
  }
  return e;
}

}  // namespace

TEST_CASE("helix_12_5 frame and curvatures") {
  const auto f = frenet_apparatus(evaluate_catalog("helix_12_5", {}, default_grid("helix_12_5")));
  const auto h = oracle::helix_12_5();
  const auto e = compare(f, [&](real_t s) { return h.frame(s); });
  CHECK(e.kappa < 1e-9);
  CHECK(e.tau < 1e-9);
  CHECK(e.T < 1e-9);
  CHECK(e.N < 1e-9);
  CHECK(e.B < 1e-9);
  CHECK(f.valid_count() == f.size());
}

TEST_CASE("circular_helix frame uses the corrected normal") {
  const auto f = frenet_apparatus(evaluate_catalog("circular_helix", {}, default_grid("circular_helix")));
  const auto h = oracle::unit_helix();
  const auto e = compare(f, [&](real_t s) { return h.frame(s); });
  CHECK(e.kappa < 1e-9);
  CHECK(e.tau < 1e-9);
  CHECK(e.N < 1e-9);
  CHECK(e.B < 1e-9);
  // The normal (-cos, +sin, 0) fails the second component away from sin = 0.
  const std::size_t i = f.size() / 4;
  const real_t t = f.grid[i] / std::numbers::sqrt2_v<real_t>;
  CHECK(gap(f.N[i], {-std::cos(t), std::sin(t), 0}) > 0.5);
}

TEST_CASE("root_curve frame and curvature equal torsion") {
  const auto f = frenet_apparatus(evaluate_catalog("root_curve", {}, default_grid("root_curve")));
  const auto e = compare(f, oracle::root_frame);
  CHECK(e.kappa < 1e-7);
  CHECK(e.tau < 1e-7);
  CHECK(e.T < 1e-9);
  CHECK(e.N < 1e-7);
  CHECK(e.B < 1e-7);
}

TEST_CASE("spherical_helix curvatures") {
  const real_t c = 2;
  const auto f = frenet_apparatus(evaluate_catalog("spherical_helix", {}, default_grid("spherical_helix")));
  const auto inner = interior_mask(f.size());
  real_t dk = 0, dt = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!inner[i]) continue;
    dk = std::max(dk, std::fabs(f.kappa[i] - oracle::spherical_kappa(c, f.grid[i])) / f.kappa[i]);
    dt = std::max(dt, std::fabs(f.tau[i] - oracle::spherical_tau(c, f.grid[i])) / f.kappa[i]);
  }
  CHECK(dk < 1e-7);
  CHECK(dt < 1e-7);
}

TEST_CASE("frame orthonormality and Frenet-Serret residual on the catalog") {
  for (const auto& entry : catalog()) {
    CAPTURE(entry.name);
    const auto f = frenet_apparatus(evaluate_catalog(entry.name, {}, default_grid(entry.name)));
    const auto fr = verify_frame(f);
    CHECK(fr.passed);
    CHECK(fr.checked > 0);
    const auto res = frenet_derivative_check(f);
    CHECK(res.passed);
    CHECK(res.max_residual() < kFrenetResidualTol);
  }
}

TEST_CASE("a straight line has no Frenet frame") {
  std::vector<Vec3> pts;
  const Grid g(0, 1, 101);
  for (std::size_t i = 0; i < g.size(); ++i) pts.push_back(Vec3{0.6L * g[i], 0.8L * g[i], 0});
  const auto f = frenet_apparatus(CurveSamples{g, pts, true});
  CHECK(f.valid_count() == 0);
  CHECK(std::isnan(f.tau[50]));
  CHECK(f.kappa[50] < kKappaFloor);
  CHECK(verify_frame(f).no_valid_samples);
}

TEST_CASE("frenet_apparatus wants unit speed") {
  const Grid g(0, 1, 11);
  std::vector<Vec3> pts;
  for (std::size_t i = 0; i < g.size(); ++i) pts.push_back(Vec3{2 * g[i], g[i] * g[i], 0});
  CHECK_THROWS_AS(frenet_apparatus(CurveSamples{g, pts, false}), InvalidArgument);
  std::vector<Vec3> still(11, Vec3{});
  CHECK_THROWS_AS(frenet_apparatus_regular(g, still), DegenerateCurve);
}

TEST_CASE("curvature is parametrization independent") {
  // The helix traced at speed 3.
  const auto h = oracle::helix_12_5();
  const auto c = testing::sample(Grid(0, 40, 2001), [&](oracle::Real t) { return h.point(3 * t); }, false);
  const auto f = frenet_apparatus_regular(c.grid, c.points);
  const auto inner = interior_mask(f.size());
  for (std::size_t i = 0; i < f.size(); i += 97) {
    if (!inner[i]) continue;
    CHECK(std::fabs(f.kappa[i] - h.kappa()) < 1e-9);
    CHECK(std::fabs(f.tau[i] - h.tau()) < 1e-9);
  }
}

TEST_CASE("orientation continues through an inflection") {
  // Planar cubic y = x^3 through its inflection at the origin.
  const auto raw = testing::sample(Grid(-1, 1, 801), [](oracle::Real x) { return oracle::V3{x, x * x * x, 0}; }, false);
  const auto c = arclength_reparametrize(raw, 1601);
  const auto f = frenet_apparatus(c);
  const std::size_t lo = 200, hi = 1400;
  REQUIRE(f.valid[lo]);
  REQUIRE(f.valid[hi]);
  // The raw normal points into the turn on both sides; the continued one does not flip.
  CHECK(dot(f.N[lo], f.N[hi]) < -0.9);
  CHECK(dot(f.normal_continuous(lo), f.normal_continuous(hi)) > 0.9);
  CHECK(f.kappa_signed(lo) * f.kappa_signed(hi) < 0);
  CHECK(verify_frame(f).passed);
}

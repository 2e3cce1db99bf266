// Builds the osculating-direction curve of a helix, checks what it should
// inherit from its donor and prints the classification.

#include <cstdio>

#include "oscurve/oscurve.hpp"

int main() {
  using namespace oscurve;

  const auto alpha = evaluate_catalog("helix_12_5", {}, default_grid("helix_12_5"));
  const auto f = frenet_apparatus(alpha);
  const auto dc = osculating_coefficients(f, kDefaultPhase);
  const auto gamma = osculating_direction_curve(f, dc);

  auto g = frenet_apparatus(gamma);
  align_orientation(g, binormals(f));
  const auto mask = mask_and(statistics_mask(g, f, dc), conditioned_mask(dc, kDarbouxMargin));

  const auto bar = bar_agreement(g, predicted_bar_data(f, dc), mask);
  const auto mannheim = mannheim_check(g, f, kMannheimTol, mask);
  std::printf("donor tau/kappa        %.10Lg\n", general_helix_test(f).mean);
  std::printf("curvature deviation    %.3Lg\n", bar.max_kappa_deviation);
  std::printf("torsion deviation      %.3Lg\n", bar.max_tau_deviation);
  std::printf("min |<Nbar, B>|        %.12Lg\n", mannheim.min_abs_dot);

  const auto r = classify(gamma);
  std::printf("general helix          %s\n", r.is_general_helix ? "yes" : "no");
  std::printf("slant helix            %s (sigma %.6Lg)\n", r.is_slant_helix ? "yes" : "no", r.slant.sigma.mean);
  std::printf("rectifying             %s\n", r.is_rectifying ? "yes" : "no");
  return 0;
}

#pragma once

#include "oscurve/oscurve.hpp"
#include "support/oracles.hpp"

namespace testing {

inline oracle::V3 v3(const oscurve::Vec3& v) { return {v.x, v.y, v.z}; }
inline oscurve::Vec3 vec(const oracle::V3& v) { return {v[0], v[1], v[2]}; }
inline oscurve::real_t gap(const oscurve::Vec3& a, const oracle::V3& b) { return oracle::dist(v3(a), b); }

inline oscurve::CurveSamples sample(const oscurve::Grid& g, const std::function<oracle::V3(oracle::Real)>& f,
                                    bool unit_speed = true) {
  std::vector<oscurve::Vec3> pts(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) pts[i] = vec(f(g[i]));
  return {g, std::move(pts), unit_speed};
}

}  // namespace testing

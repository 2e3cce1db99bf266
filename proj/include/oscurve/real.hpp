#pragma once

#ifndef OSCURVE_REAL
#define OSCURVE_REAL long double
#endif

namespace oscurve {

/// Working precision of every sampled quantity. Verification stacks up to
/// four finite-difference passes on top of a quadrature, so the default
/// carries more digits than double; define OSCURVE_REAL to override.
using real_t = OSCURVE_REAL;

}  // namespace oscurve

#pragma once

#include "oscurve/classify.hpp"
#include "oscurve/curve_model.hpp"
#include "oscurve/direction.hpp"
#include "oscurve/error.hpp"
#include "oscurve/frenet.hpp"
#include "oscurve/numerics.hpp"
#include "oscurve/od_osculating.hpp"
#include "oscurve/real.hpp"
#include "oscurve/vec3.hpp"

#pragma once

#include "hypgeo/algebra.hpp"
#include "hypgeo/errors.hpp"
#include "hypgeo/geodesic.hpp"
#include "hypgeo/metric.hpp"
#include "hypgeo/optimality.hpp"
#include "hypgeo/parallel.hpp"
#include "hypgeo/roots.hpp"
#include "hypgeo/sr_limit.hpp"

#pragma once
// Everything: domains, metrics, geodesics, maps, scaling probes, the isometry checker and I/O.
#include "checker.hpp"
#include "convex_base.hpp"
#include "domain.hpp"
#include "ellipsoid.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "geodesics.hpp"
#include "integer_matrix.hpp"
#include "io.hpp"
#include "maps.hpp"
#include "metric.hpp"
#include "mobius.hpp"
#include "numerics.hpp"
#include "planar.hpp"
#include "point.hpp"
#include "quadrature.hpp"
#include "scaling.hpp"
#include "tube_metric.hpp"

#pragma once

#include "shapeopt/energy.hpp"
#include "shapeopt/flow.hpp"
#include "shapeopt/geometry.hpp"
#include "shapeopt/io.hpp"
#include "shapeopt/kernel.hpp"
#include "shapeopt/pompeiu.hpp"
#include "shapeopt/quadrature.hpp"
#include "shapeopt/shape_calculus.hpp"
#include "shapeopt/specfun.hpp"

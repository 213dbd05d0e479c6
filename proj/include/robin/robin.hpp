#pragma once

#include "robin/boundary.hpp"
#include "robin/cuboid.hpp"
#include "robin/errors.hpp"
#include "robin/interval.hpp"
#include "robin/minimize.hpp"
#include "robin/parallel.hpp"
#include "robin/quadrature.hpp"
#include "robin/riesz.hpp"
#include "robin/semiclassical.hpp"
#include "robin/shape.hpp"
#include "robin/special.hpp"
#include "robin/thresholds.hpp"
#include "robin/version.hpp"

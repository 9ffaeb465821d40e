#pragma once

#include "abconvex/arc_body.hpp"
#include "abconvex/band.hpp"
#include "abconvex/bounds.hpp"
#include "abconvex/control.hpp"
#include "abconvex/errors.hpp"
#include "abconvex/io.hpp"
#include "abconvex/optimizer.hpp"
#include "abconvex/shapes.hpp"
#include "abconvex/spectral.hpp"
#include "abconvex/support.hpp"
#include "abconvex/svg.hpp"

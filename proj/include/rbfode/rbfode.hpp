#pragma once

// Umbrella header: radial-basis collocation solvers (direct and integrated)
// for the porous-medium cone similarity problem, with a Runge-Kutta shooting
// reference, kernel toolbox, dense linear algebra, and a damped Newton solver.

#include "rbfode/cone.hpp"
#include "rbfode/drbf.hpp"
#include "rbfode/errors.hpp"
#include "rbfode/interpolation.hpp"
#include "rbfode/irbf.hpp"
#include "rbfode/kernels.hpp"
#include "rbfode/linalg.hpp"
#include "rbfode/newton.hpp"
#include "rbfode/report.hpp"
#include "rbfode/reporting.hpp"
#include "rbfode/shooting.hpp"
#include "rbfode/version.hpp"

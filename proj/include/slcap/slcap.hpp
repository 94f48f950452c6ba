#pragma once

// Sobolev-Lorentz capacity toolkit: exact Lorentz-norm arithmetic on
// rearrangement representations, variational condenser capacities with
// certified bounds, and a finite-difference capacity laboratory.

#include "slcap/condenser_solver.hpp"
#include "slcap/exponents.hpp"
#include "slcap/grid_capacity.hpp"
#include "slcap/grid_domain.hpp"
#include "slcap/lorentz_norms.hpp"
#include "slcap/quadrature.hpp"
#include "slcap/radial_profile.hpp"
#include "slcap/special.hpp"
#include "slcap/step_function.hpp"

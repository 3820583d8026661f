#pragma once

#include "radial_sw/core.hpp"
#include "radial_sw/exact_riemann.hpp"
#include "radial_sw/oracle.hpp"
#include "radial_sw/plan.hpp"
#include "radial_sw/quadrature.hpp"
#include "radial_sw/sw_ode.hpp"
#include "radial_sw/verify.hpp"

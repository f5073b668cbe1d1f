#pragma once

// Pseudo-spectral laboratory for dissipative equations u_t + L^kappa u = G(u)
// on periodic boxes: equation registry, exponential integrators, Gevrey and
// Littlewood-Paley norm machinery, and decay-rate verification.

#include "gevlab/analysis.hpp"
#include "gevlab/checks.hpp"
#include "gevlab/config.hpp"
#include "gevlab/equations.hpp"
#include "gevlab/errors.hpp"
#include "gevlab/field.hpp"
#include "gevlab/grid.hpp"
#include "gevlab/initial_conditions.hpp"
#include "gevlab/lp_decomp.hpp"
#include "gevlab/multiplier.hpp"
#include "gevlab/norms.hpp"
#include "gevlab/oracles.hpp"
#include "gevlab/radius.hpp"
#include "gevlab/runner.hpp"
#include "gevlab/timestep.hpp"
#include "gevlab/transform.hpp"

#pragma once

#include "fronts/bounds.hpp"
#include "fronts/errors.hpp"
#include "fronts/evolve.hpp"
#include "fronts/interp.hpp"
#include "fronts/ode.hpp"
#include "fronts/optimize.hpp"
#include "fronts/oracle.hpp"
#include "fronts/quadrature.hpp"
#include "fronts/reaction.hpp"
#include "fronts/roots.hpp"
#include "fronts/trial.hpp"
#include "fronts/verify.hpp"

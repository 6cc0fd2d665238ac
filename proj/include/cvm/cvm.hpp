#pragma once

#include "cvm/analytic.hpp"
#include "cvm/configuration.hpp"
#include "cvm/errors.hpp"
#include "cvm/experiment.hpp"
#include "cvm/lattice.hpp"
#include "cvm/minimizer.hpp"
#include "cvm/oracle.hpp"
#include "cvm/report.hpp"
#include "cvm/rng.hpp"
#include "cvm/thermodynamics.hpp"

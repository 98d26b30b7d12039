#pragma once

// Umbrella header.

#include "qfric/config.hpp"
#include "qfric/errors.hpp"
#include "qfric/halfspace_greens.hpp"
#include "qfric/materials.hpp"
#include "qfric/output.hpp"
#include "qfric/quadrature.hpp"
#include "qfric/quantities.hpp"
#include "qfric/response.hpp"
#include "qfric/run.hpp"
#include "qfric/spectrum.hpp"
#include "qfric/thermal.hpp"
#include "qfric/validate.hpp"

#pragma once

// Umbrella header: sections of the cross-polytope by lines, hyperplanes and
// slabs; closed-form extremal answers; search and Monte Carlo certification.

#include "crosssec/closed_forms.hpp"
#include "crosssec/core.hpp"
#include "crosssec/exact.hpp"
#include "crosssec/jsonio.hpp"
#include "crosssec/montecarlo.hpp"
#include "crosssec/rng.hpp"
#include "crosssec/search.hpp"
#include "crosssec/sweep.hpp"
#include "crosssec/verify.hpp"

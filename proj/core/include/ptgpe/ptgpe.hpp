#pragma once

#include "ptgpe/basis.hpp"
#include "ptgpe/bdg.hpp"
#include "ptgpe/config.hpp"
#include "ptgpe/continuation.hpp"
#include "ptgpe/dynamics.hpp"
#include "ptgpe/error.hpp"
#include "ptgpe/grid.hpp"
#include "ptgpe/io.hpp"
#include "ptgpe/observables.hpp"
#include "ptgpe/potential.hpp"
#include "ptgpe/spectral.hpp"
#include "ptgpe/stationary.hpp"

#pragma once

// Umbrella header for the whole library.

#include "qtst/error.hpp"
#include "qtst/fit.hpp"
#include "qtst/kie.hpp"
#include "qtst/kramers.hpp"
#include "qtst/numerics.hpp"
#include "qtst/qcorr.hpp"
#include "qtst/spectral.hpp"
#include "qtst/units.hpp"
#include "qtst/wkb.hpp"

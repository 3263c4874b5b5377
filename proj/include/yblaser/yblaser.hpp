#pragma once
// Umbrella header.

#include "yblaser/bloch.hpp"
#include "yblaser/config.hpp"
#include "yblaser/contour.hpp"
#include "yblaser/core.hpp"
#include "yblaser/csvio.hpp"
#include "yblaser/dynamics.hpp"
#include "yblaser/errors.hpp"
#include "yblaser/pump.hpp"
#include "yblaser/spectrum.hpp"
#include "yblaser/svg.hpp"
#include "yblaser/sweep.hpp"
#include "yblaser/threshold.hpp"
#include "yblaser/units.hpp"
#include "yblaser/version.hpp"

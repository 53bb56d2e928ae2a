#pragma once

#include "henon/checks.hpp"
#include "henon/horseshoe.hpp"
#include "henon/map.hpp"
#include "henon/nonlinearity.hpp"
#include "henon/orbits.hpp"
#include "henon/polynomial.hpp"
#include "henon/random.hpp"
#include "henon/roots.hpp"
#include "henon/spectrum.hpp"
#include "henon/trapping.hpp"

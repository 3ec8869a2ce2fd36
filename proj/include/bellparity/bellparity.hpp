// Umbrella header.
#pragma once

#include "bellparity/bellcat.hpp"
#include "bellparity/coherent.hpp"
#include "bellparity/correlation.hpp"
#include "bellparity/io.hpp"
#include "bellparity/montecarlo.hpp"
#include "bellparity/rng.hpp"
#include "bellparity/rotation.hpp"
#include "bellparity/search.hpp"
#include "bellparity/spin.hpp"

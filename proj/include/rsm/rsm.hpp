#pragma once

// Umbrella header: robustness of stable matchings via the rotation poset.

#include "rsm/bench.hpp"
#include "rsm/bitset.hpp"
#include "rsm/instance.hpp"
#include "rsm/matching.hpp"
#include "rsm/rng.hpp"
#include "rsm/robustness.hpp"
#include "rsm/rotations.hpp"
#include "rsm/solvers.hpp"

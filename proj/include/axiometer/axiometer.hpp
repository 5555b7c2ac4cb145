#pragma once

#include "axiometer/errors.hpp"
#include "axiometer/subset_lattice.hpp"
#include "axiometer/collections.hpp"
#include "axiometer/capacities.hpp"
#include "axiometer/performance.hpp"
#include "axiometer/incompatibility.hpp"
#include "axiometer/robustness.hpp"
#include "axiometer/simulation.hpp"

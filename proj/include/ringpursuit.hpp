#pragma once

#include "ringpursuit/angles.hpp"
#include "ringpursuit/capture_geometry.hpp"
#include "ringpursuit/config.hpp"
#include "ringpursuit/dynamics.hpp"
#include "ringpursuit/io.hpp"
#include "ringpursuit/numerics.hpp"
#include "ringpursuit/param_sweep.hpp"
#include "ringpursuit/reachability.hpp"
#include "ringpursuit/scenario.hpp"
#include "ringpursuit/tgc_solver.hpp"
#include "ringpursuit/worst_case.hpp"

#pragma once

// Umbrella header for the exact polyhedral relation engine.

#include "polyrel/axioms.hpp"
#include "polyrel/diagram.hpp"
#include "polyrel/dsl.hpp"
#include "polyrel/flow.hpp"
#include "polyrel/fourier_motzkin.hpp"
#include "polyrel/hpoly.hpp"
#include "polyrel/json_io.hpp"
#include "polyrel/linalg.hpp"
#include "polyrel/petri.hpp"
#include "polyrel/rational.hpp"
#include "polyrel/relation.hpp"
#include "polyrel/semantics.hpp"
#include "polyrel/stateful.hpp"
#include "polyrel/vrep.hpp"

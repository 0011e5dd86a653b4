#pragma once

#include "anticonc/bounds.hpp"
#include "anticonc/caps.hpp"
#include "anticonc/chains.hpp"
#include "anticonc/clique.hpp"
#include "anticonc/coloring.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/geometry.hpp"
#include "anticonc/graph.hpp"
#include "anticonc/halasz.hpp"
#include "anticonc/lattice_measure.hpp"
#include "anticonc/norm.hpp"
#include "anticonc/odd_hole.hpp"
#include "anticonc/perfection.hpp"
#include "anticonc/quadratic_field.hpp"
#include "anticonc/rational.hpp"
#include "anticonc/sampling.hpp"
#include "anticonc/scenarios.hpp"

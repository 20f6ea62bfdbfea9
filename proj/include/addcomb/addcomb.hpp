#pragma once

// Umbrella header for the additive-combinatorics toolkit.

#include "corpus.hpp"
#include "cycle_graph.hpp"
#include "dissociation.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "group.hpp"
#include "io.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "setops.hpp"
#include "structure.hpp"
#include "symmetry.hpp"

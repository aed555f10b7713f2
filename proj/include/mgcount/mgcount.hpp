#pragma once

// Umbrella header: counting, estimating, sampling, and verifying
// multigraphs with a prescribed degree sequence and restricted loop and
// link multiplicities.

#include "mgcount/asymptotic.hpp"
#include "mgcount/degree_core.hpp"
#include "mgcount/degree_sequence.hpp"
#include "mgcount/errors.hpp"
#include "mgcount/exact_enum.hpp"
#include "mgcount/json_io.hpp"
#include "mgcount/multigraph.hpp"
#include "mgcount/multiplicity_set.hpp"
#include "mgcount/naive_model.hpp"
#include "mgcount/numeric.hpp"
#include "mgcount/pairing_model.hpp"
#include "mgcount/series_bounds.hpp"
#include "mgcount/switching_calculus.hpp"
#include "mgcount/switching_engine.hpp"
#include "mgcount/thresholds.hpp"

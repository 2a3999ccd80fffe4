#pragma once

// Umbrella header.

#include "salemlab/arith.hpp"
#include "salemlab/cover.hpp"
#include "salemlab/experiments.hpp"
#include "salemlab/graph.hpp"
#include "salemlab/int_polynomial.hpp"
#include "salemlab/interval.hpp"
#include "salemlab/numeric.hpp"
#include "salemlab/proof_chain.hpp"
#include "salemlab/rng.hpp"
#include "salemlab/salem.hpp"
#include "salemlab/spectral.hpp"
#include "salemlab/sturm.hpp"
#include "salemlab/transcendental.hpp"

#pragma once

// Umbrella header. Individual headers stay usable on their own; this is the
// convenience include for the CLI and the tests.

#include "airy.hpp"
#include "black_scholes.hpp"
#include "compensated.hpp"
#include "ctrw.hpp"
#include "errors.hpp"
#include "eval_config.hpp"
#include "ffpe.hpp"
#include "gamma.hpp"
#include "inverse_subordinator.hpp"
#include "io.hpp"
#include "ks.hpp"
#include "mittag_leffler.hpp"
#include "mwright.hpp"
#include "normal.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "sim_types.hpp"
#include "stable.hpp"
#include "subdiffusion.hpp"
#include "subordinated_price.hpp"

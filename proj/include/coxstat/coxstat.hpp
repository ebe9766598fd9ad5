#pragma once

// Umbrella header: finite Coxeter groups, two-sided descent statistics,
// exact and Monte Carlo distribution pipelines, Wasserstein-2 distances to
// the standard normal, characteristic-function bound audits, and the
// experiment harness.

#include "coxstat/audits.hpp"
#include "coxstat/charfn.hpp"
#include "coxstat/coxeter.hpp"
#include "coxstat/descent_stats.hpp"
#include "coxstat/distribution.hpp"
#include "coxstat/element.hpp"
#include "coxstat/enumerate.hpp"
#include "coxstat/errors.hpp"
#include "coxstat/golden.hpp"
#include "coxstat/harness.hpp"
#include "coxstat/normal.hpp"
#include "coxstat/rational.hpp"
#include "coxstat/reflection.hpp"
#include "coxstat/rng.hpp"
#include "coxstat/sample.hpp"
#include "coxstat/wasserstein.hpp"

#pragma once

#include "alohacorr/analytic.hpp"
#include "alohacorr/errors.hpp"
#include "alohacorr/estimators.hpp"
#include "alohacorr/experiments.hpp"
#include "alohacorr/fading.hpp"
#include "alohacorr/manifest.hpp"
#include "alohacorr/montecarlo.hpp"
#include "alohacorr/network.hpp"
#include "alohacorr/pathloss.hpp"
#include "alohacorr/quadrature.hpp"
#include "alohacorr/rng.hpp"
#include "alohacorr/sampling.hpp"
#include "alohacorr/version.hpp"

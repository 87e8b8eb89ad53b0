#pragma once

#include "mxent/bipartite.hpp"
#include "mxent/calculus.hpp"
#include "mxent/campaign.hpp"
#include "mxent/channel.hpp"
#include "mxent/entropy.hpp"
#include "mxent/errors.hpp"
#include "mxent/linalg.hpp"
#include "mxent/oracles.hpp"
#include "mxent/quadrature.hpp"
#include "mxent/report.hpp"
#include "mxent/rng.hpp"

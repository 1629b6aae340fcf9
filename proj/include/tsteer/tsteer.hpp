#pragma once

#include "tsteer/assemblage.hpp"
#include "tsteer/chain.hpp"
#include "tsteer/config.hpp"
#include "tsteer/csv.hpp"
#include "tsteer/measurements.hpp"
#include "tsteer/oracle.hpp"
#include "tsteer/parallel.hpp"
#include "tsteer/power.hpp"
#include "tsteer/qubit.hpp"
#include "tsteer/rng.hpp"
#include "tsteer/runner.hpp"
#include "tsteer/sdp.hpp"
#include "tsteer/steering.hpp"
#include "tsteer/ts_weight.hpp"
#include "tsteer/version.hpp"

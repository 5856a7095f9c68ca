#pragma once

#include "openrev/anomaly.hpp"
#include "openrev/codec.hpp"
#include "openrev/digest.hpp"
#include "openrev/graph.hpp"
#include "openrev/ledger.hpp"
#include "openrev/metrics.hpp"
#include "openrev/report.hpp"
#include "openrev/rules.hpp"
#include "openrev/sim/scenario.hpp"
#include "openrev/stats.hpp"

#pragma once

// Umbrella header.

#include "graph_core.hpp"
#include "objective.hpp"
#include "batch_solver.hpp"
#include "online_solver.hpp"
#include "tracking.hpp"
#include "synth.hpp"
#include "metrics.hpp"
#include "ingest.hpp"
#include "experiment.hpp"
#include "io.hpp"
#include "cli.hpp"

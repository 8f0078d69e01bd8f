#pragma once

#include "reechme/channel.hpp"
#include "reechme/config.hpp"
#include "reechme/energy_model.hpp"
#include "reechme/engine.hpp"
#include "reechme/errors.hpp"
#include "reechme/experiment.hpp"
#include "reechme/protocols.hpp"
#include "reechme/report.hpp"
#include "reechme/rng.hpp"
#include "reechme/stats.hpp"
#include "reechme/topology.hpp"

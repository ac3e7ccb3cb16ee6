#pragma once

#include "cranidnc/baselines.hpp"
#include "cranidnc/channel.hpp"
#include "cranidnc/clique.hpp"
#include "cranidnc/errors.hpp"
#include "cranidnc/fixtures.hpp"
#include "cranidnc/graph.hpp"
#include "cranidnc/harness.hpp"
#include "cranidnc/scenario.hpp"
#include "cranidnc/schedule.hpp"
#include "cranidnc/scheduler.hpp"
#include "cranidnc/side_info.hpp"

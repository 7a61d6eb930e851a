#pragma once

#include "fiscmon/errors.hpp"
#include "fiscmon/model.hpp"
#include "fiscmon/policy_rules.hpp"
#include "fiscmon/ramsey.hpp"
#include "fiscmon/simulation.hpp"

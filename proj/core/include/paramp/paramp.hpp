#pragma once

#include "paramp/constants.hpp"
#include "paramp/errors.hpp"
#include "paramp/gaussian.hpp"
#include "paramp/planner.hpp"
#include "paramp/qfi.hpp"
#include "paramp/simulation.hpp"
#include "paramp/sweep.hpp"

#pragma once

#include "nonrecip/core_types.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/figures.hpp"
#include "nonrecip/io.hpp"
#include "nonrecip/isolator_design.hpp"
#include "nonrecip/response.hpp"
#include "nonrecip/steady_state.hpp"
#include "nonrecip/sweep.hpp"
#include "nonrecip/transmission.hpp"

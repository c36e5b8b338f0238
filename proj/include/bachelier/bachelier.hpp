#pragma once

// Umbrella header for the Bachelier pricing toolkit.

#include "bachelier/barrier.hpp"
#include "bachelier/calibration.hpp"
#include "bachelier/chi_squared.hpp"
#include "bachelier/exotics.hpp"
#include "bachelier/figures.hpp"
#include "bachelier/greeks.hpp"
#include "bachelier/implied_vol.hpp"
#include "bachelier/market.hpp"
#include "bachelier/mc.hpp"
#include "bachelier/model.hpp"
#include "bachelier/normal.hpp"
#include "bachelier/sabr.hpp"
#include "bachelier/vanilla.hpp"
#include "bachelier/vol_convert.hpp"

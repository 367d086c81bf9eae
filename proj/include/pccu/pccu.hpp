#pragma once

#include "error.hpp"
#include "state.hpp"
#include "grid.hpp"
#include "reconstruct.hpp"
#include "flux.hpp"
#include "global_flux.hpp"
#include "models/advection.hpp"
#include "models/multifluid.hpp"
#include "models/trsw.hpp"
#include "time_integration.hpp"
#include "driver.hpp"
#include "schlieren.hpp"
#include "io.hpp"
#include "config.hpp"
#include "catalog.hpp"
#include "setup.hpp"
#include "app.hpp"

#pragma once

#include "bounds.hpp"
#include "config.hpp"
#include "drivers.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "kernels.hpp"
#include "potential.hpp"
#include "reference.hpp"
#include "region.hpp"
#include "runner.hpp"
#include "sliced.hpp"
#include "states.hpp"
#include "wavefunction.hpp"

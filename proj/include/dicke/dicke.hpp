#pragma once

#include "dicke/common.hpp"
#include "dicke/basis.hpp"
#include "dicke/special.hpp"
#include "dicke/density.hpp"
#include "dicke/resolvent.hpp"
#include "dicke/steady_state.hpp"
#include "dicke/liouvillian.hpp"
#include "dicke/coherent.hpp"
#include "dicke/spectrum.hpp"
#include "dicke/oscillator.hpp"
#include "dicke/analytic.hpp"
#include "dicke/sweep.hpp"
#include "dicke/io.hpp"

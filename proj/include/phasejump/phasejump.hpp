#ifndef PHASEJUMP_PHASEJUMP_HPP
#define PHASEJUMP_PHASEJUMP_HPP

#include "phasejump/error.hpp"
#include "phasejump/pulse.hpp"
#include "phasejump/ode.hpp"
#include "phasejump/quadrature.hpp"
#include "phasejump/tls.hpp"
#include "phasejump/riccati.hpp"
#include "phasejump/lambda.hpp"
#include "phasejump/sweep.hpp"
#include "phasejump/config.hpp"
#include "phasejump/csv.hpp"
#include "phasejump/svg.hpp"
#include "phasejump/presets.hpp"
#include "phasejump/runner.hpp"

#endif  // PHASEJUMP_PHASEJUMP_HPP

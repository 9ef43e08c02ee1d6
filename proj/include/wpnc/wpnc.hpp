#pragma once

#include "angles.hpp"
#include "bounds.hpp"
#include "channel.hpp"
#include "io.hpp"
#include "mi.hpp"
#include "parallel.hpp"
#include "params.hpp"
#include "phase_process.hpp"
#include "quadrature.hpp"
#include "receiver.hpp"
#include "rng.hpp"
#include "svg.hpp"
#include "wrapped_gaussian.hpp"

#pragma once

#include "vch/constants.hpp"
#include "vch/dirac.hpp"
#include "vch/errors.hpp"
#include "vch/helicity.hpp"
#include "vch/kinematics.hpp"
#include "vch/oracles.hpp"
#include "vch/planewave.hpp"
#include "vch/triple_bessel.hpp"
#include "vch/validation.hpp"
#include "vch/vortex.hpp"
#include "vch/wigner.hpp"

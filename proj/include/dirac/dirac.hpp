#pragma once

#include "dirac/algebra.hpp"
#include "dirac/error.hpp"
#include "dirac/extensions.hpp"
#include "dirac/random.hpp"
#include "dirac/scattering.hpp"
#include "dirac/spectrum.hpp"
#include "dirac/topology.hpp"
#include "dirac/waveop.hpp"
#include "dirac/weyl_green.hpp"

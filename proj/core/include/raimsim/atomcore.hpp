#pragma once

#include "raimsim/atomcore/angular.hpp"
#include "raimsim/atomcore/basis.hpp"
#include "raimsim/atomcore/quantum_defects.hpp"
#include "raimsim/atomcore/radial.hpp"
#include "raimsim/atomcore/rydberg.hpp"
#include "raimsim/atomcore/wigner.hpp"
#include "raimsim/units.hpp"

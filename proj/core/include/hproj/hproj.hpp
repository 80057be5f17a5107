#pragma once

#include "hproj/arith.hpp"
#include "hproj/character.hpp"
#include "hproj/decomp.hpp"
#include "hproj/errors.hpp"
#include "hproj/hurwitz_cache.hpp"
#include "hproj/power_series.hpp"
#include "hproj/projection.hpp"
#include "hproj/qseries.hpp"
#include "hproj/quadforms.hpp"
#include "hproj/rational.hpp"
#include "hproj/shiftedconv.hpp"
#include "hproj/special.hpp"
#include "hproj/summation.hpp"
#include "hproj/version.hpp"

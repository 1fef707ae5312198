// Umbrella header for the monoval library.

#pragma once

#include <monoval/rational.hpp>
#include <monoval/vec.hpp>
#include <monoval/support_set.hpp>
#include <monoval/lp.hpp>
#include <monoval/newton.hpp>
#include <monoval/piecewise.hpp>
#include <monoval/complex.hpp>
#include <monoval/valuation.hpp>
#include <monoval/fan.hpp>
#include <monoval/subdivision.hpp>
#include <monoval/surface.hpp>
#include <monoval/ideals.hpp>
#include <monoval/multiplicity.hpp>
#include <monoval/random.hpp>
#include <monoval/json_io.hpp>
#include <monoval/report.hpp>

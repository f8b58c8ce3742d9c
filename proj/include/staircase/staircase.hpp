#pragma once

#include "staircase/asep.hpp"
#include "staircase/distributions.hpp"
#include "staircase/enumerate.hpp"
#include "staircase/errors.hpp"
#include "staircase/eulerian.hpp"
#include "staircase/fixtures.hpp"
#include "staircase/random.hpp"
#include "staircase/rational.hpp"
#include "staircase/sampler.hpp"
#include "staircase/tableau.hpp"
#include "staircase/verify.hpp"

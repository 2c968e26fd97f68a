// rotorkick.hpp — umbrella header.

#pragma once

#include "rotorkick/basis.hpp"
#include "rotorkick/estimates.hpp"
#include "rotorkick/lie.hpp"
#include "rotorkick/propagation.hpp"
#include "rotorkick/scenario.hpp"
#include "rotorkick/strategy.hpp"
#include "rotorkick/target.hpp"

#pragma once

#include "sumset/budget.hpp"
#include "sumset/census.hpp"
#include "sumset/combinatorics.hpp"
#include "sumset/engine.hpp"
#include "sumset/error.hpp"
#include "sumset/family.hpp"
#include "sumset/report.hpp"
#include "sumset/set_vector.hpp"
#include "sumset/subsets.hpp"
#include "sumset/verifier.hpp"

#pragma once

#include "setpair/classification.hpp"
#include "setpair/errors.hpp"
#include "setpair/exact_math.hpp"
#include "setpair/io.hpp"
#include "setpair/linalg.hpp"
#include "setpair/search.hpp"
#include "setpair/set_pair.hpp"
#include "setpair/subset.hpp"
#include "setpair/subspace_system.hpp"

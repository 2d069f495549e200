#pragma once

// Convenience header pulling in the whole public API.

#include "hyperc/constants.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/families.hpp"
#include "hyperc/gaussian.hpp"
#include "hyperc/generators.hpp"
#include "hyperc/inequalities.hpp"
#include "hyperc/io.hpp"
#include "hyperc/numeric.hpp"
#include "hyperc/operators.hpp"
#include "hyperc/report.hpp"
#include "hyperc/space.hpp"
#include "hyperc/suite.hpp"

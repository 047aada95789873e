#ifndef MCMW_BUILTIN_DATA_HPP
#define MCMW_BUILTIN_DATA_HPP

#include "mcmw/dataset.hpp"

namespace mcmw {

/// The built-in 50-component failure-time dataset (thousands of hours).
const Dataset& builtin_failure_times();

}  // namespace mcmw

#endif

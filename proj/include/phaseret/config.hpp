#pragma once

#include <cstddef>

namespace phaseret {

/// Numeric knobs shared by every decision procedure.
///
/// `tolerance` only matters for values in float mode; rational values are
/// always compared exactly. `max_enumeration` bounds the frame size accepted
/// by procedures that sweep all index partitions or subsets.
struct NumericConfig {
  double tolerance = 1e-9;
  std::size_t max_enumeration = 22;
};

}  // namespace phaseret

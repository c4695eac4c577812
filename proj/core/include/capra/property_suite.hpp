#pragma once

#include <cstddef>
#include <cstdint>

#include "capra/json_io.hpp"

namespace capra {

struct PropertySuiteOptions {
  std::uint64_t seed = 0;
  /// Random instances per property.
  std::size_t trials = 40;
};

/// Runs every module invariant on seeded random instances.
///
/// The report lists one entry per property with its violation count, the
/// largest residual and the first counterexample; "passed" is false when any
/// property was violated. The report holds no timings, so equal seeds give
/// byte-identical output.
Json run_property_suite(const PropertySuiteOptions& opts = {});

}  // namespace capra

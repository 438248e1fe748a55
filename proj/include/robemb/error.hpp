#pragma once

#include <stdexcept>
#include <string>

// Bad input values are reported with std::invalid_argument. The types below
// cover the remaining failure kinds so callers (and the CLI) can tell them apart.
namespace robemb {

// An exact checker was asked to handle an instance beyond its size limit.
struct UnsupportedSize : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quantitative precondition (degree bound, colour count, ...) does not hold.
struct InfeasibleParameters : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An algorithm broke one of its own guarantees. Always a bug.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct GenerationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PartitionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EstimateUnreliable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace robemb

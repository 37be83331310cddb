#pragma once

#include <stdexcept>
#include <string>

namespace vtolctl {

// Requested desired acceleration lies on the singular vertical ray where no
// thrust/attitude pair exists.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Desired frame too close to the 180-degree branch for the angular velocity
// map to be evaluated.
struct DegenerateFrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// NaN or infinity encountered in an input or produced by an integration step.
struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simulation state left the sanity envelope; the run is aborted with a
// partial log.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Run log ends before the configured horizon or has broken timestamps.
struct IncompleteLogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed config or log text (bad syntax, unknown key, wrong arity).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input with values outside the supported domain.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure (missing file, unwritable output).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace vtolctl

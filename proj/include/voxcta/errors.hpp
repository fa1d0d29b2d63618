#pragma once

#include <stdexcept>
#include <string>

namespace voxcta {

// Grids participating in a boolean/analysis operation must agree on
// dims, spacing and origin. No implicit resampling.
struct FrameMismatchError : std::runtime_error {
    explicit FrameMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (bad magic, truncated stream, dimension overflow, ...).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// FFT output strayed too far from an integer; the caller must split the
// problem or use the direct path.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// The O(n^2d) direct path refused to run because the configured work
// bound would be exceeded.
struct WorkBoundError : std::runtime_error {
    explicit WorkBoundError(const std::string& what) : std::runtime_error(what) {}
};

// The ledger identity failed. This is a bug, never a reportable result.
struct InternalConsistencyError : std::logic_error {
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace voxcta

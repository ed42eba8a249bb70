#pragma once

#include <stdexcept>
#include <string>

namespace ffcz {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: shape mismatches, non-finite values, invalid parameters.
class validation_error : public error {
public:
    using error::error;
};

// Filesystem problems: missing files, size mismatches, short reads.
class io_error : public error {
public:
    using error::error;
};

// Malformed archive bytes: bad magic, version, checksum, truncation.
class format_error : public error {
public:
    using error::error;
};

// Inverse transform of a spectrum whose imaginary residue exceeds tolerance.
class symmetry_error : public error {
public:
    using error::error;
};

// Metric has no defined value for the given inputs (e.g. zero-energy reference).
class undefined_metric_error : public error {
public:
    using error::error;
};

// trial_and_error_tune exhausted the bound search without meeting the target.
class tuning_error : public error {
public:
    using error::error;
};

} // namespace ffcz

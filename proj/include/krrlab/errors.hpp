#pragma once

#include <stdexcept>
#include <string>

namespace krrlab {

// Argument-contract violations use std::invalid_argument / std::domain_error.
// The types below cover failures that are not caller mistakes.

/// The regularized Gram system could not be factorized, even after jitter.
class IllConditionedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructive search (e.g. the Hamming codebook) ran out of candidates.
class ConstructionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure inside an experiment sweep, tagged with where it happened.
class ExperimentError : public std::runtime_error {
public:
    ExperimentError(const std::string& what, long n, long trial)
        : std::runtime_error(what), n_(n), trial_(trial) {}

    long n() const noexcept { return n_; }
    long trial() const noexcept { return trial_; }

private:
    long n_;
    long trial_;
};

} // namespace krrlab

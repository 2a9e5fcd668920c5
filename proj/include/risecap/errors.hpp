#pragma once

#include <stdexcept>
#include <string>

namespace risecap {

// Moment set cannot be represented by a generalized-K distribution.
struct ModelFitError : std::runtime_error {
    explicit ModelFitError(const std::string& what) : std::runtime_error(what) {}
};

// No vertical contour separates the two pole families of a Mellin-Barnes integrand.
struct ContourError : std::runtime_error {
    explicit ContourError(const std::string& what) : std::runtime_error(what) {}
};

// An adaptive integration failed to reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace risecap

#pragma once

#include <stdexcept>

namespace dupdel {

/// An iterative numeric method did not reach its target within its budget.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fit window holds too few occupied points.
class InsufficientSupport : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace dupdel

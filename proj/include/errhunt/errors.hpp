#pragma once

#include <stdexcept>
#include <string>

namespace errhunt {

// Thrown when an operation would exceed a configured resource cap (memory,
// table size).  The message always names the cap and the estimated need so
// callers can adjust configuration instead of guessing.
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown or reported when a bounded search runs out of its evaluation budget
// before certifying a result.
struct budget_exceeded_error : std::runtime_error {
    explicit budget_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when parameters are structurally valid but produce a degenerate
// object (empty resonance set, zero-length window, ...).
struct degenerate_parameters_error : std::runtime_error {
    explicit degenerate_parameters_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation would silently lose precision (phase reduction
// past the representable range, fractional parts of huge products).
struct precision_loss_error : std::runtime_error {
    explicit precision_loss_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a candidate set violates a documented hypothesis; the message
// lists the offending members.
struct invalid_set_error : std::invalid_argument {
    explicit invalid_set_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace errhunt

#pragma once

#include <stdexcept>
#include <string>

namespace nilfourier {

/** Violated caller-side contract (bad window, zero argument, rank deficiency, ...). */
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/** Inputs outside the implemented coverage (non-monogenic factorization, degenerate
    quadratic, ...). Distinct from precondition_error so the CLI can map it to its
    own exit code. */
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Numeric target not reached; carries the achieved error bound. */
struct numeric_error : std::runtime_error {
    double achieved;
    numeric_error(const std::string& msg, double achieved_bound)
        : std::runtime_error(msg), achieved(achieved_bound) {}
};

} // namespace nilfourier

#pragma once

#include <stdexcept>
#include <string>

namespace regtri {

// Base for all recoverable library errors. Callers that want one catch-all can
// catch Error; the CLI maps these to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A node's degree disagrees with the declared d.
struct DegreeViolation : Error {
    using Error::Error;
};

// Duplicate edge or self-loop where a simple graph is required.
struct NonSimple : Error {
    using Error::Error;
};

// d*n is odd (no d-regular graph exists) or a half-edge count is odd.
struct ParityViolation : Error {
    using Error::Error;
};

// Port labels at a node are not a bijection onto {1..d}.
struct LabelViolation : Error {
    using Error::Error;
};

// A supplied permutation is not a bijection on {0..n-1}.
struct NotAPermutation : Error {
    using Error::Error;
};

// Rejection sampling exhausted its attempt budget.
struct RejectionBudgetExceeded : Error {
    using Error::Error;
};

// A planted-family specification cannot be realized (bad b/m arithmetic,
// parity, or unreachable triangle target).
struct InfeasibleSpec : Error {
    using Error::Error;
};

// k outside the meaningful clique range (k < 3 or k > d+1 guard, per op).
struct BadK : Error {
    using Error::Error;
};

// Exact permutation sweep requested beyond the hard n-cap.
struct CapExceeded : Error {
    using Error::Error;
};

// An input graph fails a required conditioning (e.g. not enough triangles).
struct ConstraintUnmet : Error {
    using Error::Error;
};

// A bound that requires d*d <= n (or n > d*d strictly) was asked outside that
// range.
struct PreconditionD2N : Error {
    using Error::Error;
};

// Enumeration workload exceeds the configured budget, or a required exact
// subroutine would.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Markov chain failed to reach the conditioning set within max_steps.
struct ChainTimeout : Error {
    using Error::Error;
};

// dense_spot_from_edge seeded from an edge that fails the good-edge gate.
struct NotAGoodEdge : Error {
    using Error::Error;
};

// Malformed text input (edge lists, rationals, JSON specs).
struct ParseError : Error {
    using Error::Error;
};

// Internal consistency check failed; indicates a library bug, not bad input.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace regtri

#pragma once

#include "cvtkit/digitvec.hpp"

#include <span>
#include <vector>

namespace cvtkit {

struct IterationStep {
    Natural cvt_value;
    Natural xor_value;
};

/// Record of the carry/xor recurrence run to quiescence. At every step
/// cvt_value + xor_value equals the invariant total; the final step has
/// cvt_value zero and xor_value equal to the result.
struct IterationTrace {
    std::vector<IterationStep> steps;
    std::size_t iterations = 0;  // steps.size(); one iteration per evaluation
    Natural result;
};

/// Adds a and b by iterating (x, y) -> (CVT(x, y), XOR(x, y)) until the
/// carry value clears. Each carry value is re-expressed canonically in the
/// base before the next step. Throws InvariantViolation if the trace result
/// ever disagrees with direct addition.
IterationTrace add_pair_iterative(const Natural& a, const Natural& b, Base base);

struct MultiAddResult {
    Natural result;
    Natural initial_cvt;   // valuation of the multi-operand carry value
    Natural initial_xor;   // valuation of the multi-operand xor
    IterationTrace trace;  // reduction step first, then the pairwise run
};

/// K-number addition: one multi-operand transform reduces the list to the
/// pair (CVT, XOR), then the pairwise recurrence finishes.
MultiAddResult add_multi(std::span<const Natural> xs, Base base);

struct ConvergenceCheck {
    std::size_t iterations;
    std::size_t bound;  // max digit length of the addenda, plus one
    bool within;
};

/// Measures the recurrence's iteration count against the claimed length
/// bound (stated for binary strings; measured per base here).
ConvergenceCheck convergence_bound_check(const Natural& a, const Natural& b,
                                         Base base);

}  // namespace cvtkit

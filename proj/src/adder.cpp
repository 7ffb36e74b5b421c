#include "cvtkit/adder.hpp"

#include "cvtkit/errors.hpp"
#include "cvtkit/transforms.hpp"

#include <algorithm>
#include <stdexcept>

namespace cvtkit {

IterationTrace add_pair_iterative(const Natural& a, const Natural& b, Base base) {
    if (sgn(a) < 0 || sgn(b) < 0) {
        throw std::invalid_argument("negative operand");
    }
    IterationTrace trace;
    Natural x = a;
    Natural y = b;
    for (;;) {
        const std::size_t n =
            std::max(digit_length(x, base), digit_length(y, base));
        const DigitVector dx = to_digits(x, base, n);
        const DigitVector dy = to_digits(y, base, n);
        Natural cvt_value = valuation(cvt_pair(dx, dy));
        Natural xor_value = valuation(xor_pair(dx, dy));
        trace.steps.push_back({cvt_value, xor_value});
        if (cvt_value == 0) {
            trace.result = std::move(xor_value);
            break;
        }
        x = std::move(cvt_value);
        y = std::move(xor_value);
    }
    trace.iterations = trace.steps.size();
    if (trace.result != a + b) {
        throw InvariantViolation("recurrence result " + trace.result.get_str() +
                                 " differs from direct sum " +
                                 Natural(a + b).get_str());
    }
    return trace;
}

MultiAddResult add_multi(std::span<const Natural> xs, Base base) {
    if (xs.empty()) {
        throw std::invalid_argument("no operands");
    }
    std::size_t n = 1;
    for (const Natural& x : xs) {
        n = std::max(n, digit_length(x, base));
    }
    std::vector<DigitVector> operands;
    operands.reserve(xs.size());
    for (const Natural& x : xs) {
        operands.push_back(to_digits(x, base, n));
    }
    MultiAddResult out{Natural(0), valuation(cvt_multi(operands)),
                       valuation(xor_multi(operands)), IterationTrace{}};

    // The reduction itself is the first (CVT, XOR) evaluation.
    out.trace.steps.push_back({out.initial_cvt, out.initial_xor});
    if (out.initial_cvt == 0) {
        out.result = out.initial_xor;
    } else {
        IterationTrace rest = add_pair_iterative(out.initial_cvt,
                                                 out.initial_xor, base);
        out.trace.steps.insert(out.trace.steps.end(), rest.steps.begin(),
                               rest.steps.end());
        out.result = std::move(rest.result);
    }
    out.trace.iterations = out.trace.steps.size();
    out.trace.result = out.result;

    Natural direct = 0;
    for (const Natural& x : xs) {
        direct += x;
    }
    if (out.result != direct) {
        throw InvariantViolation("multi-add result " + out.result.get_str() +
                                 " differs from direct sum " + direct.get_str());
    }
    return out;
}

ConvergenceCheck convergence_bound_check(const Natural& a, const Natural& b,
                                         Base base) {
    const IterationTrace trace = add_pair_iterative(a, b, base);
    const std::size_t bound =
        std::max(digit_length(a, base), digit_length(b, base)) + 1;
    return ConvergenceCheck{trace.iterations, bound, trace.iterations <= bound};
}

}  // namespace cvtkit

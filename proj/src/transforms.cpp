#include "cvtkit/transforms.hpp"

#include "cvtkit/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace cvtkit {

namespace {

constexpr std::size_t kMaxRuleTableEntries = std::size_t{1} << 20;

std::size_t table_entry_count(unsigned arity, Base radix) {
    if (arity != 1 && arity != 2) {
        throw std::invalid_argument("rule arity must be 1 or 2");
    }
    std::size_t entries = radix.value();
    if (arity == 2) {
        entries *= radix.value();
    }
    if (entries > kMaxRuleTableEntries) {
        throw std::invalid_argument("rule table too large");
    }
    return entries;
}

Natural encode_rule_index(Base radix, const std::vector<Digit>& outputs) {
    Natural index = 0;
    for (std::size_t row = outputs.size(); row-- > 0;) {
        index *= radix.value();
        index += static_cast<unsigned long>(outputs[row]);
    }
    return index;
}

Base common_base(std::span<const DigitVector> xs) {
    if (xs.empty()) {
        throw std::invalid_argument("no operands");
    }
    Base base = xs.front().base();
    for (const DigitVector& x : xs) {
        if (x.base() != base) {
            throw std::invalid_argument("base mismatch");
        }
    }
    return base;
}

std::size_t common_length(std::span<const DigitVector> xs) {
    std::size_t n = 0;
    for (const DigitVector& x : xs) {
        n = std::max(n, x.length());
    }
    return n;
}

// Column sums over operands zero-padded to the common length.
std::vector<std::uint64_t> column_sums_of(std::span<const DigitVector> xs,
                                          std::size_t n) {
    std::vector<std::uint64_t> sums(n, 0);
    for (const DigitVector& x : xs) {
        const auto& ds = x.digits();
        for (std::size_t i = 0; i < ds.size(); ++i) {
            sums[i] += ds[i];
        }
    }
    return sums;
}

}  // namespace

RuleTable::RuleTable(unsigned arity, Base radix, std::vector<Digit> outputs,
                     Natural rule_index)
    : arity_(arity),
      radix_(radix),
      outputs_(std::move(outputs)),
      rule_index_(std::move(rule_index)) {}

RuleTable RuleTable::from_outputs(unsigned arity, Base radix,
                                  std::vector<Digit> outputs) {
    const std::size_t entries = table_entry_count(arity, radix);
    if (outputs.size() != entries) {
        throw std::invalid_argument("rule table needs " +
                                    std::to_string(entries) + " outputs, got " +
                                    std::to_string(outputs.size()));
    }
    for (Digit d : outputs) {
        if (d >= radix.value()) {
            throw std::invalid_argument("rule output " + std::to_string(d) +
                                        " not below radix " +
                                        std::to_string(radix.value()));
        }
    }
    Natural index = encode_rule_index(radix, outputs);
    RuleTable table(arity, radix, std::move(outputs), index);
    // cross-check: decoding the derived index must reproduce the outputs
    RuleTable decoded = from_index(arity, radix, table.rule_index());
    if (decoded.outputs() != table.outputs()) {
        throw InvariantViolation("rule index round trip mismatch");
    }
    return table;
}

RuleTable RuleTable::from_index(unsigned arity, Base radix,
                                const Natural& rule_index) {
    const std::size_t entries = table_entry_count(arity, radix);
    if (sgn(rule_index) < 0) {
        throw std::invalid_argument("rule index must be non-negative");
    }
    Natural limit = natural_pow(Natural(radix.value()),
                                static_cast<unsigned long>(entries));
    if (rule_index >= limit) {
        throw std::invalid_argument("rule index out of range for radix " +
                                    std::to_string(radix.value()));
    }
    std::vector<Digit> outputs(entries, 0);
    Natural rest = rule_index;
    for (std::size_t row = 0; row < entries; ++row) {
        unsigned long digit =
            mpz_tdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), radix.value());
        outputs[row] = digit;
    }
    if (encode_rule_index(radix, outputs) != rule_index) {
        throw InvariantViolation("rule index decode mismatch");
    }
    return RuleTable(arity, radix, std::move(outputs), rule_index);
}

Digit RuleTable::apply(Digit x) const {
    if (arity_ != 1) {
        throw std::invalid_argument("arity mismatch");
    }
    return outputs_.at(x);
}

Digit RuleTable::apply(Digit x, Digit y) const {
    if (arity_ != 2) {
        throw std::invalid_argument("arity mismatch");
    }
    return outputs_.at(x * radix_.value() + y);
}

DigitVector xor_multi(std::span<const DigitVector> xs) {
    const Base base = common_base(xs);
    const std::size_t n = common_length(xs);
    const auto sums = column_sums_of(xs, n);
    std::vector<Digit> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = sums[i] % base.value();
    }
    return DigitVector(std::move(out), base);
}

GeneralizedDigitVector cvt_multi(std::span<const DigitVector> xs) {
    const Base base = common_base(xs);
    const std::size_t n = common_length(xs);
    const auto sums = column_sums_of(xs, n);
    std::vector<Digit> out(n + 1);
    out[0] = 0;  // no carry into the least significant place
    for (std::size_t i = 0; i < n; ++i) {
        out[i + 1] = sums[i] / base.value();
    }
    return GeneralizedDigitVector(std::move(out), base);
}

GeneralizedDigitVector cvt_pair(const DigitVector& a, const DigitVector& b) {
    const DigitVector pair[2] = {a, b};
    return cvt_multi(pair);
}

DigitVector xor_pair(const DigitVector& a, const DigitVector& b) {
    const DigitVector pair[2] = {a, b};
    return xor_multi(pair);
}

DigitVector ivt_apply(const RuleTable& rule, std::span<const DigitVector> xs) {
    if (xs.size() != rule.arity()) {
        throw std::invalid_argument(
            "arity mismatch: rule expects " + std::to_string(rule.arity()) +
            " operand(s), got " + std::to_string(xs.size()));
    }
    const Base base = common_base(xs);
    if (base != rule.radix()) {
        throw std::invalid_argument("base mismatch");
    }
    const std::size_t n = common_length(xs);
    std::vector<Digit> out(n);
    if (rule.arity() == 1) {
        const DigitVector x = xs[0].padded(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = rule.apply(x.digit(i));
        }
    } else {
        const DigitVector x = xs[0].padded(n);
        const DigitVector y = xs[1].padded(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = rule.apply(x.digit(i), y.digit(i));
        }
    }
    return DigitVector(std::move(out), base);
}

TransformResult transform_all(std::span<const DigitVector> xs) {
    return TransformResult{cvt_multi(xs), xor_multi(xs), xs.size(),
                           common_base(xs)};
}

SumIdentityReport sum_identity_check(std::span<const DigitVector> xs) {
    Natural lhs = 0;
    for (const DigitVector& x : xs) {
        lhs += valuation(x);
    }
    const Natural cvt_value = valuation(cvt_multi(xs));
    const Natural xor_value = valuation(xor_multi(xs));
    return SumIdentityReport{lhs, cvt_value, xor_value,
                             lhs == cvt_value + xor_value};
}

CorollaryReport corollary_predicates(std::span<const DigitVector> xs) {
    const Base base = common_base(xs);
    const std::size_t n = common_length(xs);
    auto sums = column_sums_of(xs, n);
    bool xor_zero = true;
    bool cvt_zero = true;
    for (std::uint64_t s : sums) {
        if (s % base.value() != 0) {
            xor_zero = false;
        }
        if (s >= base.value()) {
            cvt_zero = false;
        }
    }
    return CorollaryReport{xor_zero, cvt_zero, std::move(sums)};
}

}  // namespace cvtkit

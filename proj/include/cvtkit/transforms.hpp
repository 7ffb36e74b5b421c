#pragma once

#include "cvtkit/digitvec.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cvtkit {

/// A p-adic local map f_j on digit tuples, given either by its output
/// column or by its rule number j (the positional encoding of that column,
/// rows enumerated in ascending order of the input tuple). The two
/// representations cross-validate on construction.
class RuleTable {
public:
    static RuleTable from_outputs(unsigned arity, Base radix,
                                  std::vector<Digit> outputs);
    static RuleTable from_index(unsigned arity, Base radix,
                                const Natural& rule_index);

    unsigned arity() const noexcept { return arity_; }
    Base radix() const noexcept { return radix_; }
    const Natural& rule_index() const noexcept { return rule_index_; }
    /// Outputs in ascending input-tuple order (row 0 first).
    const std::vector<Digit>& outputs() const noexcept { return outputs_; }

    Digit apply(Digit x) const;           // arity 1
    Digit apply(Digit x, Digit y) const;  // arity 2

private:
    RuleTable(unsigned arity, Base radix, std::vector<Digit> outputs,
              Natural rule_index);

    unsigned arity_;
    Base radix_;
    std::vector<Digit> outputs_;
    Natural rule_index_;
};

/// Columnwise sum mod beta over operands padded to a common length.
DigitVector xor_multi(std::span<const DigitVector> xs);

/// Columnwise carries: digit i of the result is floor(column-sum i / beta),
/// shifted up one place with a 0 in the least significant position. The
/// output digits may reach or exceed the base.
GeneralizedDigitVector cvt_multi(std::span<const DigitVector> xs);

GeneralizedDigitVector cvt_pair(const DigitVector& a, const DigitVector& b);
DigitVector xor_pair(const DigitVector& a, const DigitVector& b);

/// Digit-wise application of a local rule table; operand count must equal
/// the table's arity.
DigitVector ivt_apply(const RuleTable& rule, std::span<const DigitVector> xs);

struct TransformResult {
    GeneralizedDigitVector cvt;
    DigitVector xor_digits;
    std::size_t operand_count;
    Base base;
};

/// Both transforms of one operand list.
TransformResult transform_all(std::span<const DigitVector> xs);

struct SumIdentityReport {
    Natural lhs;        // direct sum of the operands
    Natural cvt_value;
    Natural xor_value;
    bool holds;         // lhs == cvt_value + xor_value; false means a bug
};

/// The sum-decomposition identity: sum of operands equals the carry value
/// plus the xor value, in any base and for any operand count.
SumIdentityReport sum_identity_check(std::span<const DigitVector> xs);

struct CorollaryReport {
    bool xor_zero;  // every column sum is a multiple of beta
    bool cvt_zero;  // every column sum is below beta
    std::vector<std::uint64_t> column_sums;  // least significant first
};

CorollaryReport corollary_predicates(std::span<const DigitVector> xs);

}  // namespace cvtkit

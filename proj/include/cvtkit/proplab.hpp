#pragma once

#include "cvtkit/digitvec.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cvtkit::proplab {

enum class TrialStatus { holds, fails, not_evaluable };

/// One adjudicated claim instance: the value the claimed law predicts
/// against what the definitions actually produce.
struct CheckOutcome {
    TrialStatus status = TrialStatus::not_evaluable;
    Natural claimed;
    Natural actual;
    std::string note;  // short deterministic diagnostic
};

// -- CVT properties ---------------------------------------------------------

/// Claimed law: K identical operands give K*X when K is even and (K-1)*X
/// when K is odd. True in base 2; adjudicated elsewhere.
CheckOutcome check_p1_cvt_identical(const Natural& x, std::size_t k, Base base);

/// Generalized rule: when K mod beta is 0 or 1, the carry value of K
/// identical operands is exactly (K - K mod beta) * X. Outside that
/// residue set the trial is not evaluable under this rule.
CheckOutcome check_p1_generalized(const Natural& x, std::size_t k, Base base);

struct ScalingOutcome {
    CheckOutcome scaled;   // part (a): operands multiplied by beta^t
    CheckOutcome divided;  // part (b): operands floor-divided by beta^t
};

/// Scaling laws for a scalar K = beta^t. Part (b) uses the claimed divisor
/// K + m with m = (#odd operands) / (K/2), evaluated with exact rational
/// arithmetic; trials where K/2 or m is not a positive integer are flagged
/// not_evaluable instead of guessed.
ScalingOutcome check_p2_cvt_scaling(std::span<const Natural> xs, std::size_t t,
                                    Base base);

struct ConcatOutcome {
    CheckOutcome outcome;
    /// Exact validity condition: no column has (column-sum of xs mod beta)
    /// + (column-sum of ys mod beta) reaching beta. The claim holds exactly
    /// when this is true; the biconditional is asserted internally.
    bool no_column_overflow;
};

/// Claimed law: carry value of the concatenated operand lists equals P + Q.
/// Stated for equally sized lists; unequal sizes are accepted and noted.
ConcatOutcome check_p3_cvt_concat(std::span<const Natural> xs,
                                  std::span<const Natural> ys, Base base);

/// Claimed law: with P the carry value of `copies` copies of X, the carry
/// value of the same number of copies of X^exponent is P * X^(exponent-1).
CheckOutcome check_p4_cvt_power(const Natural& x, std::size_t copies,
                                unsigned exponent, Base base);

// -- XOR properties ---------------------------------------------------------

CheckOutcome check_p5_xor_identical(const Natural& x, std::size_t k, Base base);
CheckOutcome check_p5_generalized(const Natural& x, std::size_t k, Base base);
ScalingOutcome check_p6_xor_scaling(std::span<const Natural> xs, std::size_t t,
                                    Base base);
/// Holds in every base: columnwise modular addition is associative.
CheckOutcome check_p7_xor_concat(std::span<const Natural> xs,
                                 std::span<const Natural> ys, Base base);
CheckOutcome check_p8_xor_power(const Natural& x, std::size_t copies,
                                unsigned exponent, Base base);

// -- Campaign ---------------------------------------------------------------

/// Inputs of one trial, sufficient to replay any property check.
struct TrialCase {
    std::vector<Natural> xs;
    std::vector<Natural> ys;   // concat properties only
    std::size_t scalar_t = 0;  // scaling properties only
    unsigned exponent = 0;     // power properties only
};

struct Counterexample {
    TrialCase inputs;
    Natural claimed;
    Natural actual;
    std::string note;
};

struct PropertyVerdict {
    std::string property_id;
    Base base;
    std::size_t trials = 0;
    std::size_t holds_count = 0;
    std::size_t fail_count = 0;        // distinct failing inputs
    std::size_t fail_trial_count = 0;  // failing trials, duplicates included
    std::size_t not_evaluable_count = 0;
    /// Distinct counterexamples in lexicographic input order, capped at
    /// kMaxStoredCounterexamples; fail_count keeps the full tally.
    std::vector<Counterexample> counterexamples;
    std::string condition_note;
};

inline constexpr std::size_t kMaxStoredCounterexamples = 8;

struct TrialConfig {
    Base base;
    std::size_t operand_count = 2;
    std::size_t width = 4;  // digits per random operand
    std::size_t trial_count = 1000;
    std::uint64_t seed = 0;
    bool exhaustive = false;  // enumerate the width-bounded domain instead
};

/// "P1", "P1G", "P2a", "P2b", "P3", "P4", "P5", "P5G", "P6a", "P6b",
/// "P7", "P8" in report order. "P1G"/"P5G" are the generalized residue
/// rules; the plain ids are the claims as stated.
const std::vector<std::string>& all_property_ids();

/// Deterministic under equal config: trial inputs are drawn serially from
/// the seed, evaluation may fan out across workers, and aggregation is
/// order-independent. CVTKIT_MAX_THREADS caps the worker count.
std::vector<PropertyVerdict> run_campaign(
    const TrialConfig& config, std::span<const std::string> property_ids);

/// Re-evaluates a stored case from scratch.
CheckOutcome replay(const std::string& property_id, const TrialCase& inputs,
                    Base base);

/// Compact one-line rendering, e.g. "xs=5,4,6,7 t=2".
std::string render_trial_case(const TrialCase& inputs);

std::size_t max_worker_threads();

}  // namespace cvtkit::proplab

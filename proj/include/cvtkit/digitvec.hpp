#pragma once

#include "cvtkit/natural.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvtkit {

using Digit = std::uint64_t;

/// Radix of a positional number system. Always at least 2.
class Base {
public:
    explicit Base(unsigned beta);
    unsigned value() const noexcept { return beta_; }

    friend bool operator==(const Base&, const Base&) = default;

private:
    unsigned beta_;
};

/// Canonical digit string: stored least-significant first, every digit
/// strictly below the base. Leading (most-significant) zeros are allowed;
/// value equality is decided by valuation, not by length. operator==
/// compares structurally (digits and base).
class DigitVector {
public:
    DigitVector(std::vector<Digit> lsb_first, Base base);

    static DigitVector zero(Base base, std::size_t width = 1);

    Base base() const noexcept { return base_; }
    std::size_t length() const noexcept { return digits_.size(); }
    /// position 0 is the least significant digit.
    Digit digit(std::size_t position) const { return digits_.at(position); }
    const std::vector<Digit>& digits() const noexcept { return digits_; }

    /// Same value, zero-padded at the most-significant end to at least
    /// `width` digits.
    DigitVector padded(std::size_t width) const;
    bool is_zero() const noexcept;

    friend bool operator==(const DigitVector&, const DigitVector&) = default;

private:
    std::vector<Digit> digits_;
    Base base_;
};

/// Digit string whose entries may reach or exceed the base; carry-value
/// outputs live here. Valued by the same positional formula as a canonical
/// vector.
class GeneralizedDigitVector {
public:
    GeneralizedDigitVector(std::vector<Digit> lsb_first, Base base);
    explicit GeneralizedDigitVector(const DigitVector& canonical);

    Base base() const noexcept { return base_; }
    std::size_t length() const noexcept { return digits_.size(); }
    Digit digit(std::size_t position) const { return digits_.at(position); }
    const std::vector<Digit>& digits() const noexcept { return digits_; }
    bool is_zero() const noexcept;

    friend bool operator==(const GeneralizedDigitVector&,
                           const GeneralizedDigitVector&) = default;

private:
    std::vector<Digit> digits_;
    Base base_;
};

/// Radix conversion. The result always has every digit below the base and
/// at least `min_width` digits (zero-padded at the most-significant end).
DigitVector to_digits(const Natural& value, Base base,
                      std::optional<std::size_t> min_width = std::nullopt);

/// Positional value: sum of digit[i] * beta^i over all positions.
Natural valuation(const DigitVector& v);
Natural valuation(const GeneralizedDigitVector& v);

/// Insert `t` zero digits at the least-significant end: value * beta^t.
DigitVector shift_up(const DigitVector& v, std::size_t t);
/// Drop `t` least-significant digits: floor(value / beta^t). A vector
/// shorter than `t` collapses to the zero vector.
DigitVector shift_down(const DigitVector& v, std::size_t t);

/// Number of digits of `value` in `base`; zero has length 1.
std::size_t digit_length(const Natural& value, Base base);

/// Textual form: "<base>:<digits most-significant first>", e.g. "3:0122".
/// Digits print compactly when each fits one character below the base;
/// otherwise as a bracketed comma list, e.g. "3:[0,3,3,0]".
std::string format_digits(const DigitVector& v);
std::string format_digits(const GeneralizedDigitVector& v);

/// Parses both textual forms. Compact digits may equal or exceed the base
/// (the generalized reading); use as_canonical to narrow.
GeneralizedDigitVector parse_digits(std::string_view text);

/// Narrows to a canonical vector when every digit is below the base.
std::optional<DigitVector> as_canonical(const GeneralizedDigitVector& v);

}  // namespace cvtkit

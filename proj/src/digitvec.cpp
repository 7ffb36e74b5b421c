#include "cvtkit/digitvec.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace cvtkit {

Natural natural_pow(const Natural& value, unsigned long exponent) {
    Natural result;
    mpz_pow_ui(result.get_mpz_t(), value.get_mpz_t(), exponent);
    return result;
}

Natural parse_natural(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("not a natural number: '" + text + "'");
        }
    }
    return Natural(text, 10);
}

bool fits_uint64(const Natural& value) {
    return value.fits_ulong_p() != 0;
}

std::uint64_t to_uint64(const Natural& value) {
    if (!fits_uint64(value)) {
        throw std::overflow_error("value does not fit 64 bits");
    }
    return value.get_ui();
}

Base::Base(unsigned beta) : beta_(beta) {
    if (beta < 2) {
        throw std::invalid_argument("base must be at least 2");
    }
}

DigitVector::DigitVector(std::vector<Digit> lsb_first, Base base)
    : digits_(std::move(lsb_first)), base_(base) {
    if (digits_.empty()) {
        throw std::invalid_argument("empty digit vector");
    }
    for (Digit d : digits_) {
        if (d >= base_.value()) {
            throw std::invalid_argument("digit " + std::to_string(d) +
                                        " not below base " +
                                        std::to_string(base_.value()));
        }
    }
}

DigitVector DigitVector::zero(Base base, std::size_t width) {
    return DigitVector(std::vector<Digit>(std::max<std::size_t>(width, 1), 0), base);
}

DigitVector DigitVector::padded(std::size_t width) const {
    if (digits_.size() >= width) {
        return *this;
    }
    std::vector<Digit> out = digits_;
    out.resize(width, 0);
    return DigitVector(std::move(out), base_);
}

bool DigitVector::is_zero() const noexcept {
    return std::all_of(digits_.begin(), digits_.end(),
                       [](Digit d) { return d == 0; });
}

GeneralizedDigitVector::GeneralizedDigitVector(std::vector<Digit> lsb_first, Base base)
    : digits_(std::move(lsb_first)), base_(base) {
    if (digits_.empty()) {
        throw std::invalid_argument("empty digit vector");
    }
}

GeneralizedDigitVector::GeneralizedDigitVector(const DigitVector& canonical)
    : digits_(canonical.digits()), base_(canonical.base()) {}

bool GeneralizedDigitVector::is_zero() const noexcept {
    return std::all_of(digits_.begin(), digits_.end(),
                       [](Digit d) { return d == 0; });
}

DigitVector to_digits(const Natural& value, Base base,
                      std::optional<std::size_t> min_width) {
    if (sgn(value) < 0) {
        throw std::invalid_argument("to_digits: negative value");
    }
    const unsigned beta = base.value();
    std::vector<Digit> out;
    if (value.fits_ulong_p()) {
        unsigned long v = value.get_ui();
        do {
            out.push_back(v % beta);
            v /= beta;
        } while (v != 0);
    } else {
        Natural v = value;
        while (v != 0) {
            unsigned long r = mpz_tdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), beta);
            out.push_back(r);
        }
    }
    if (min_width && out.size() < *min_width) {
        out.resize(*min_width, 0);
    }
    return DigitVector(std::move(out), base);
}

namespace {

// Horner evaluation, most significant digit first. Tries 64-bit
// accumulation and falls back to bignum on overflow.
Natural valuation_impl(const std::vector<Digit>& digits, unsigned beta) {
    unsigned long long acc = 0;
    bool fits = true;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (__builtin_mul_overflow(acc, beta, &acc) ||
            __builtin_add_overflow(acc, digits[i], &acc)) {
            fits = false;
            break;
        }
    }
    if (fits) {
        return Natural(static_cast<unsigned long>(acc));
    }
    Natural big = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        big *= beta;
        big += static_cast<unsigned long>(digits[i]);
    }
    return big;
}

}  // namespace

Natural valuation(const DigitVector& v) {
    return valuation_impl(v.digits(), v.base().value());
}

Natural valuation(const GeneralizedDigitVector& v) {
    return valuation_impl(v.digits(), v.base().value());
}

DigitVector shift_up(const DigitVector& v, std::size_t t) {
    if (t == 0) {
        return v;
    }
    std::vector<Digit> out(t, 0);
    out.insert(out.end(), v.digits().begin(), v.digits().end());
    return DigitVector(std::move(out), v.base());
}

DigitVector shift_down(const DigitVector& v, std::size_t t) {
    if (t == 0) {
        return v;
    }
    if (v.length() <= t) {
        return DigitVector::zero(v.base());
    }
    std::vector<Digit> out(v.digits().begin() + static_cast<std::ptrdiff_t>(t),
                           v.digits().end());
    return DigitVector(std::move(out), v.base());
}

std::size_t digit_length(const Natural& value, Base base) {
    if (sgn(value) < 0) {
        throw std::invalid_argument("digit_length: negative value");
    }
    if (value == 0) {
        return 1;
    }
    if (value.fits_ulong_p()) {
        unsigned long v = value.get_ui();
        std::size_t n = 0;
        while (v != 0) {
            v /= base.value();
            ++n;
        }
        return n;
    }
    Natural v = value;
    std::size_t n = 0;
    while (v != 0) {
        mpz_tdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), base.value());
        ++n;
    }
    return n;
}

namespace {

std::string format_impl(const std::vector<Digit>& digits, unsigned beta) {
    std::string out = std::to_string(beta);
    out.push_back(':');
    const bool compact =
        std::all_of(digits.begin(), digits.end(),
                    [beta](Digit d) { return d < 10 && d < beta; });
    if (compact) {
        for (std::size_t i = digits.size(); i-- > 0;) {
            out.push_back(static_cast<char>('0' + digits[i]));
        }
    } else {
        out.push_back('[');
        for (std::size_t i = digits.size(); i-- > 0;) {
            out += std::to_string(digits[i]);
            if (i != 0) {
                out.push_back(',');
            }
        }
        out.push_back(']');
    }
    return out;
}

}  // namespace

std::string format_digits(const DigitVector& v) {
    return format_impl(v.digits(), v.base().value());
}

std::string format_digits(const GeneralizedDigitVector& v) {
    return format_impl(v.digits(), v.base().value());
}

GeneralizedDigitVector parse_digits(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) {
        throw std::invalid_argument("digit string needs a '<base>:' prefix: '" +
                                    std::string(text) + "'");
    }
    unsigned beta = 0;
    const auto* first = text.data();
    const auto* last = text.data() + colon;
    auto [ptr, ec] = std::from_chars(first, last, beta);
    if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("bad base in digit string: '" +
                                    std::string(text) + "'");
    }
    Base base(beta);
    std::string_view body = text.substr(colon + 1);
    if (body.empty()) {
        throw std::invalid_argument("digit string has no digits: '" +
                                    std::string(text) + "'");
    }
    std::vector<Digit> msb_first;
    if (body.front() == '[') {
        if (body.back() != ']' || body.size() < 3) {
            throw std::invalid_argument("unterminated digit list: '" +
                                        std::string(text) + "'");
        }
        std::string_view inner = body.substr(1, body.size() - 2);
        while (!inner.empty()) {
            const auto comma = inner.find(',');
            std::string_view piece = inner.substr(0, comma);
            Digit d = 0;
            const auto* pf = piece.data();
            const auto* pl = piece.data() + piece.size();
            auto [dp, de] = std::from_chars(pf, pl, d);
            if (de != std::errc() || dp != pl || piece.empty()) {
                throw std::invalid_argument("bad digit '" + std::string(piece) +
                                            "' in '" + std::string(text) + "'");
            }
            msb_first.push_back(d);
            if (comma == std::string_view::npos) {
                break;
            }
            inner.remove_prefix(comma + 1);
            if (inner.empty()) {
                throw std::invalid_argument("trailing comma in '" +
                                            std::string(text) + "'");
            }
        }
    } else {
        for (char c : body) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument("bad digit character '" +
                                            std::string(1, c) + "' in '" +
                                            std::string(text) + "'");
            }
            msb_first.push_back(static_cast<Digit>(c - '0'));
        }
    }
    std::reverse(msb_first.begin(), msb_first.end());
    return GeneralizedDigitVector(std::move(msb_first), base);
}

std::optional<DigitVector> as_canonical(const GeneralizedDigitVector& v) {
    for (Digit d : v.digits()) {
        if (d >= v.base().value()) {
            return std::nullopt;
        }
    }
    return DigitVector(v.digits(), v.base());
}

}  // namespace cvtkit

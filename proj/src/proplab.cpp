#include "cvtkit/proplab.hpp"

#include "cvtkit/errors.hpp"
#include "cvtkit/transforms.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace cvtkit::proplab {

namespace {

std::vector<DigitVector> to_vectors(std::span<const Natural> xs, Base base) {
    std::vector<DigitVector> out;
    out.reserve(xs.size());
    for (const Natural& x : xs) {
        out.push_back(to_digits(x, base));
    }
    return out;
}

Natural cvt_value_of(std::span<const Natural> xs, Base base) {
    return valuation(cvt_multi(to_vectors(xs, base)));
}

Natural xor_value_of(std::span<const Natural> xs, Base base) {
    return valuation(xor_multi(to_vectors(xs, base)));
}

std::vector<Natural> copies_of(const Natural& x, std::size_t k) {
    return std::vector<Natural>(k, x);
}

CheckOutcome settle(Natural claimed, Natural actual, std::string note) {
    CheckOutcome out;
    out.status = claimed == actual ? TrialStatus::holds : TrialStatus::fails;
    out.claimed = std::move(claimed);
    out.actual = std::move(actual);
    out.note = std::move(note);
    return out;
}

CheckOutcome not_evaluable(std::string note) {
    CheckOutcome out;
    out.status = TrialStatus::not_evaluable;
    out.note = std::move(note);
    return out;
}

}  // namespace

CheckOutcome check_p1_cvt_identical(const Natural& x, std::size_t k, Base base) {
    if (k == 0) {
        throw std::invalid_argument("no operands");
    }
    const Natural actual = cvt_value_of(copies_of(x, k), base);
    const Natural factor = (k % 2 == 0) ? k : k - 1;
    return settle(factor * x, actual,
                  k % 2 == 0 ? "K even" : "K odd");
}

CheckOutcome check_p1_generalized(const Natural& x, std::size_t k, Base base) {
    if (k == 0) {
        throw std::invalid_argument("no operands");
    }
    const std::size_t r = k % base.value();
    if (r > 1) {
        return not_evaluable("K mod beta = " + std::to_string(r) +
                             " outside {0,1}");
    }
    const Natural actual = cvt_value_of(copies_of(x, k), base);
    return settle(Natural(k - r) * x, actual,
                  "K mod beta = " + std::to_string(r));
}

ScalingOutcome check_p2_cvt_scaling(std::span<const Natural> xs, std::size_t t,
                                    Base base) {
    if (t == 0) {
        throw std::invalid_argument("scalar exponent t must be at least 1");
    }
    const Natural scalar = natural_pow(Natural(base.value()), t);
    const Natural p = cvt_value_of(xs, base);

    std::vector<DigitVector> scaled;
    std::vector<DigitVector> divided;
    std::size_t odd_count = 0;
    for (const Natural& x : xs) {
        const DigitVector digits = to_digits(x, base);
        scaled.push_back(shift_up(digits, t));
        divided.push_back(shift_down(digits, t));
        if (mpz_odd_p(x.get_mpz_t())) {
            ++odd_count;
        }
    }

    ScalingOutcome out;
    out.scaled = settle(scalar * p, valuation(cvt_multi(scaled)),
                        "K=" + scalar.get_str());

    if (base.value() % 2 != 0) {
        out.divided = not_evaluable("K/2 not integral (beta odd)");
        return out;
    }
    const Natural half = scalar / 2;
    if (Natural(static_cast<unsigned long>(odd_count)) % half != 0) {
        out.divided = not_evaluable("m = " + std::to_string(odd_count) + "/" +
                                    half.get_str() + " not integral");
        return out;
    }
    const Natural m = Natural(static_cast<unsigned long>(odd_count)) / half;
    out.divided = settle(p / (scalar + m), valuation(cvt_multi(divided)),
                         "m=" + m.get_str());
    return out;
}

ConcatOutcome check_p3_cvt_concat(std::span<const Natural> xs,
                                  std::span<const Natural> ys, Base base) {
    if (xs.empty() || ys.empty()) {
        throw std::invalid_argument("no operands");
    }
    const Natural p = cvt_value_of(xs, base);
    const Natural q = cvt_value_of(ys, base);
    std::vector<Natural> combined(xs.begin(), xs.end());
    combined.insert(combined.end(), ys.begin(), ys.end());
    const Natural actual = cvt_value_of(combined, base);

    const auto sums_x = corollary_predicates(to_vectors(xs, base)).column_sums;
    const auto sums_y = corollary_predicates(to_vectors(ys, base)).column_sums;
    bool no_overflow = true;
    const std::size_t n = std::max(sums_x.size(), sums_y.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t sx = i < sums_x.size() ? sums_x[i] : 0;
        const std::uint64_t sy = i < sums_y.size() ? sums_y[i] : 0;
        if (sx % base.value() + sy % base.value() >= base.value()) {
            no_overflow = false;
            break;
        }
    }

    ConcatOutcome out;
    out.outcome = settle(p + q, actual,
                         xs.size() == ys.size() ? "" : "unequal operand counts");
    out.no_column_overflow = no_overflow;
    if ((out.outcome.status == TrialStatus::holds) != no_overflow) {
        throw InvariantViolation(
            "concat law biconditional violated: equality and column-overflow "
            "condition disagree");
    }
    return out;
}

CheckOutcome check_p4_cvt_power(const Natural& x, std::size_t copies,
                                unsigned exponent, Base base) {
    if (copies == 0) {
        throw std::invalid_argument("no operands");
    }
    if (exponent == 0) {
        throw std::invalid_argument("exponent must be at least 1");
    }
    const Natural p = cvt_value_of(copies_of(x, copies), base);
    const Natural powered = natural_pow(x, exponent);
    const Natural actual = cvt_value_of(copies_of(powered, copies), base);
    return settle(p * natural_pow(x, exponent - 1), actual,
                  "exponent=" + std::to_string(exponent));
}

CheckOutcome check_p5_xor_identical(const Natural& x, std::size_t k, Base base) {
    if (k == 0) {
        throw std::invalid_argument("no operands");
    }
    const Natural actual = xor_value_of(copies_of(x, k), base);
    const Natural claimed = (k % 2 == 0) ? Natural(0) : x;
    return settle(claimed, actual, k % 2 == 0 ? "K even" : "K odd");
}

CheckOutcome check_p5_generalized(const Natural& x, std::size_t k, Base base) {
    if (k == 0) {
        throw std::invalid_argument("no operands");
    }
    const std::size_t r = k % base.value();
    if (r > 1) {
        return not_evaluable("K mod beta = " + std::to_string(r) +
                             " outside {0,1}");
    }
    const Natural actual = xor_value_of(copies_of(x, k), base);
    return settle(r == 0 ? Natural(0) : x, actual,
                  "K mod beta = " + std::to_string(r));
}

ScalingOutcome check_p6_xor_scaling(std::span<const Natural> xs, std::size_t t,
                                    Base base) {
    if (t == 0) {
        throw std::invalid_argument("scalar exponent t must be at least 1");
    }
    const Natural scalar = natural_pow(Natural(base.value()), t);
    const Natural q = xor_value_of(xs, base);

    std::vector<DigitVector> scaled;
    std::vector<DigitVector> divided;
    for (const Natural& x : xs) {
        const DigitVector digits = to_digits(x, base);
        scaled.push_back(shift_up(digits, t));
        divided.push_back(shift_down(digits, t));
    }

    ScalingOutcome out;
    out.scaled = settle(scalar * q, valuation(xor_multi(scaled)),
                        "K=" + scalar.get_str());
    out.divided = settle(q / scalar, valuation(xor_multi(divided)),
                         "K=" + scalar.get_str());
    return out;
}

CheckOutcome check_p7_xor_concat(std::span<const Natural> xs,
                                 std::span<const Natural> ys, Base base) {
    if (xs.empty() || ys.empty()) {
        throw std::invalid_argument("no operands");
    }
    const DigitVector p = xor_multi(to_vectors(xs, base));
    const DigitVector q = xor_multi(to_vectors(ys, base));
    std::vector<Natural> combined(xs.begin(), xs.end());
    combined.insert(combined.end(), ys.begin(), ys.end());
    return settle(valuation(xor_pair(p, q)), xor_value_of(combined, base),
                  xs.size() == ys.size() ? "" : "unequal operand counts");
}

CheckOutcome check_p8_xor_power(const Natural& x, std::size_t copies,
                                unsigned exponent, Base base) {
    if (copies == 0) {
        throw std::invalid_argument("no operands");
    }
    if (exponent == 0) {
        throw std::invalid_argument("exponent must be at least 1");
    }
    const Natural p = xor_value_of(copies_of(x, copies), base);
    const Natural powered = natural_pow(x, exponent);
    const Natural actual = xor_value_of(copies_of(powered, copies), base);
    return settle(p * natural_pow(x, exponent - 1), actual,
                  "exponent=" + std::to_string(exponent));
}

// -- Campaign ----------------------------------------------------------------

namespace {

enum class Kind { p1, p1g, p2a, p2b, p3, p4, p5, p5g, p6a, p6b, p7, p8 };

const std::vector<std::pair<std::string, Kind>>& id_table() {
    static const std::vector<std::pair<std::string, Kind>> table = {
        {"P1", Kind::p1},   {"P1G", Kind::p1g}, {"P2a", Kind::p2a},
        {"P2b", Kind::p2b}, {"P3", Kind::p3},   {"P4", Kind::p4},
        {"P5", Kind::p5},   {"P5G", Kind::p5g}, {"P6a", Kind::p6a},
        {"P6b", Kind::p6b}, {"P7", Kind::p7},   {"P8", Kind::p8},
    };
    return table;
}

Kind kind_from_id(const std::string& id) {
    for (const auto& [name, kind] : id_table()) {
        if (name == id) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown property id: '" + id + "'");
}

std::string condition_note_for(Kind kind) {
    switch (kind) {
        case Kind::p1:
        case Kind::p5:
            return "even/odd dichotomy is the base-2 instance of the "
                   "K mod beta rule";
        case Kind::p1g:
            return "asserted universal: CVT of K copies is (K - K mod beta)*X "
                   "when K mod beta is 0 or 1";
        case Kind::p5g:
            return "asserted universal: XOR of K copies is 0 (K mod beta = 0) "
                   "or X (K mod beta = 1)";
        case Kind::p2a:
        case Kind::p6a:
            return "asserted universal: digit-shift law for scalar K = beta^t";
        case Kind::p2b:
            return "m = odd-count/(K/2) evaluated exactly; non-integral m or "
                   "odd beta is not evaluable";
        case Kind::p6b:
            return "asserted universal: dropping t digits floors the xor "
                   "value by K = beta^t";
        case Kind::p3:
            return "holds iff no column remainder overflow: (sx mod beta) + "
                   "(sy mod beta) < beta in every column";
        case Kind::p7:
            return "asserted universal: columnwise modular addition is "
                   "associative";
        case Kind::p4:
            return "digit floor-linearity; universal in base 2, adjudicated "
                   "per base otherwise";
        case Kind::p8:
            return "digitwise residue scaling; universal in base 2, "
                   "adjudicated per base otherwise";
    }
    return {};
}

CheckOutcome evaluate(Kind kind, const TrialCase& c, Base base) {
    switch (kind) {
        case Kind::p1:
            return check_p1_cvt_identical(c.xs.at(0), c.xs.size(), base);
        case Kind::p1g:
            return check_p1_generalized(c.xs.at(0), c.xs.size(), base);
        case Kind::p2a:
            return check_p2_cvt_scaling(c.xs, c.scalar_t, base).scaled;
        case Kind::p2b:
            return check_p2_cvt_scaling(c.xs, c.scalar_t, base).divided;
        case Kind::p3:
            return check_p3_cvt_concat(c.xs, c.ys, base).outcome;
        case Kind::p4:
            return check_p4_cvt_power(c.xs.at(0), c.xs.size(), c.exponent, base);
        case Kind::p5:
            return check_p5_xor_identical(c.xs.at(0), c.xs.size(), base);
        case Kind::p5g:
            return check_p5_generalized(c.xs.at(0), c.xs.size(), base);
        case Kind::p6a:
            return check_p6_xor_scaling(c.xs, c.scalar_t, base).scaled;
        case Kind::p6b:
            return check_p6_xor_scaling(c.xs, c.scalar_t, base).divided;
        case Kind::p7:
            return check_p7_xor_concat(c.xs, c.ys, base);
        case Kind::p8:
            return check_p8_xor_power(c.xs.at(0), c.xs.size(), c.exponent, base);
    }
    throw std::logic_error("unreachable property kind");
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& id, unsigned beta) {
    std::uint64_t h = 1469598103934665603ull;
    const auto absorb = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (char ch : id) {
        absorb(static_cast<unsigned char>(ch));
    }
    absorb(beta);
    absorb(seed);
    return h;
}

Natural random_value(std::mt19937_64& rng, unsigned beta, std::size_t width) {
    Natural v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        v *= beta;
        v += static_cast<unsigned long>(rng() % beta);
    }
    return v;
}

std::string id_of(Kind kind) {
    for (const auto& [name, k] : id_table()) {
        if (k == kind) {
            return name;
        }
    }
    throw std::logic_error("unreachable property kind");
}

std::vector<TrialCase> generate_random(Kind kind, const TrialConfig& cfg) {
    // per-property stream so campaigns draw identically regardless of the
    // property selection
    std::mt19937_64 rng(mix_seed(cfg.seed, id_of(kind), cfg.base.value()));
    const unsigned beta = cfg.base.value();
    std::vector<TrialCase> cases;
    cases.reserve(cfg.trial_count);
    for (std::size_t i = 0; i < cfg.trial_count; ++i) {
        TrialCase c;
        switch (kind) {
            case Kind::p1:
            case Kind::p5: {
                const std::size_t k = 1 + rng() % (2 * cfg.operand_count);
                c.xs = copies_of(random_value(rng, beta, cfg.width), k);
                break;
            }
            case Kind::p1g:
            case Kind::p5g: {
                const std::size_t mult = 1 + rng() % 4;
                const std::size_t rem = rng() % 2;
                c.xs = copies_of(random_value(rng, beta, cfg.width),
                                 beta * mult + rem);
                break;
            }
            case Kind::p2a:
            case Kind::p2b:
            case Kind::p6a:
            case Kind::p6b: {
                c.scalar_t = 1 + rng() % 2;
                for (std::size_t j = 0; j < cfg.operand_count; ++j) {
                    c.xs.push_back(random_value(rng, beta, cfg.width));
                }
                break;
            }
            case Kind::p3:
            case Kind::p7: {
                for (std::size_t j = 0; j < cfg.operand_count; ++j) {
                    c.xs.push_back(random_value(rng, beta, cfg.width));
                }
                for (std::size_t j = 0; j < cfg.operand_count; ++j) {
                    c.ys.push_back(random_value(rng, beta, cfg.width));
                }
                break;
            }
            case Kind::p4:
            case Kind::p8: {
                const std::size_t copies = 1 + rng() % (2 * cfg.operand_count);
                c.exponent = 1 + static_cast<unsigned>(rng() % 3);
                c.xs = copies_of(random_value(rng, beta, cfg.width), copies);
                break;
            }
        }
        cases.push_back(std::move(c));
    }
    return cases;
}

constexpr std::uint64_t kMaxExhaustiveCases = 20'000'000;

// All values in [0, beta^width), odometer order (index 0 fastest).
class TupleEnumerator {
public:
    TupleEnumerator(std::size_t count, const Natural& limit)
        : values_(count, Natural(0)), limit_(limit), done_(limit == 0) {}

    bool done() const { return done_; }
    const std::vector<Natural>& values() const { return values_; }

    void advance() {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            ++values_[i];
            if (values_[i] < limit_) {
                return;
            }
            values_[i] = 0;
        }
        done_ = true;  // also ends the single empty tuple
    }

private:
    std::vector<Natural> values_;
    Natural limit_;
    bool done_;
};

std::vector<TrialCase> generate_exhaustive(Kind kind, const TrialConfig& cfg) {
    const unsigned beta = cfg.base.value();
    const Natural limit = natural_pow(Natural(beta), cfg.width);

    std::size_t tuple_size = 0;
    std::size_t variants = 1;  // extra K/exponent alternatives per tuple
    switch (kind) {
        case Kind::p1:
        case Kind::p5:
            tuple_size = 1;
            break;
        case Kind::p1g:
        case Kind::p5g:
            tuple_size = 1;
            variants = 2;  // K = beta and K = beta + 1
            break;
        case Kind::p2a:
        case Kind::p2b:
        case Kind::p6a:
        case Kind::p6b:
            tuple_size = cfg.operand_count;
            break;
        case Kind::p3:
        case Kind::p7:
            tuple_size = 2 * cfg.operand_count;
            break;
        case Kind::p4:
        case Kind::p8:
            tuple_size = 1;
            variants = 3;  // exponents 1..3
            break;
    }

    Natural total = natural_pow(limit, tuple_size) * variants;
    if (total > kMaxExhaustiveCases) {
        throw std::invalid_argument(
            "exhaustive domain too large; reduce width or operand count");
    }

    std::vector<TrialCase> cases;
    cases.reserve(total.get_ui());
    for (TupleEnumerator e(tuple_size, limit); !e.done(); e.advance()) {
        const auto& v = e.values();
        for (std::size_t variant = 0; variant < variants; ++variant) {
            TrialCase c;
            switch (kind) {
                case Kind::p1:
                case Kind::p5:
                    c.xs = copies_of(v[0], cfg.operand_count);
                    break;
                case Kind::p1g:
                case Kind::p5g:
                    c.xs = copies_of(v[0], beta + variant);
                    break;
                case Kind::p2a:
                case Kind::p2b:
                case Kind::p6a:
                case Kind::p6b:
                    c.scalar_t = 1;
                    c.xs = v;
                    break;
                case Kind::p3:
                case Kind::p7:
                    c.xs.assign(v.begin(),
                                v.begin() + static_cast<std::ptrdiff_t>(
                                                cfg.operand_count));
                    c.ys.assign(v.begin() + static_cast<std::ptrdiff_t>(
                                                cfg.operand_count),
                                v.end());
                    break;
                case Kind::p4:
                case Kind::p8:
                    c.exponent = 1 + static_cast<unsigned>(variant);
                    c.xs = copies_of(v[0], cfg.operand_count);
                    break;
            }
            cases.push_back(std::move(c));
        }
    }
    return cases;
}

bool natural_vector_less(const std::vector<Natural>& a,
                         const std::vector<Natural>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct TrialCaseLess {
    bool operator()(const TrialCase& a, const TrialCase& b) const {
        if (a.xs != b.xs) {
            return natural_vector_less(a.xs, b.xs);
        }
        if (a.ys != b.ys) {
            return natural_vector_less(a.ys, b.ys);
        }
        if (a.scalar_t != b.scalar_t) {
            return a.scalar_t < b.scalar_t;
        }
        return a.exponent < b.exponent;
    }
};

std::vector<CheckOutcome> evaluate_all(Kind kind, Base base,
                                       const std::vector<TrialCase>& cases) {
    std::vector<CheckOutcome> outcomes(cases.size());
    const std::size_t workers =
        std::min(max_worker_threads(),
                 std::max<std::size_t>(1, cases.size() / 512));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cases.size(); ++i) {
            outcomes[i] = evaluate(kind, cases[i], base);
        }
        return outcomes;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        constexpr std::size_t kChunk = 64;
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= cases.size()) {
                return;
            }
            const std::size_t end = std::min(begin + kChunk, cases.size());
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    outcomes[i] = evaluate(kind, cases[i], base);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) {
        threads.emplace_back(worker);
    }
    for (auto& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return outcomes;
}

PropertyVerdict adjudicate(Kind kind, const std::string& id,
                           const TrialConfig& cfg,
                           const std::vector<TrialCase>& cases,
                           const std::vector<CheckOutcome>& outcomes) {
    PropertyVerdict verdict{id, cfg.base, cases.size(), 0, 0, 0, 0,
                            {}, condition_note_for(kind)};

    std::map<TrialCase, Counterexample, TrialCaseLess> distinct;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const CheckOutcome& outcome = outcomes[i];
        switch (outcome.status) {
            case TrialStatus::holds:
                ++verdict.holds_count;
                break;
            case TrialStatus::not_evaluable:
                ++verdict.not_evaluable_count;
                break;
            case TrialStatus::fails:
                ++verdict.fail_trial_count;
                distinct.emplace(cases[i],
                                 Counterexample{cases[i], outcome.claimed,
                                                outcome.actual, outcome.note});
                break;
        }
    }
    verdict.fail_count = distinct.size();
    for (const auto& [key, cx] : distinct) {
        if (verdict.counterexamples.size() >= kMaxStoredCounterexamples) {
            break;
        }
        verdict.counterexamples.push_back(cx);
    }
    return verdict;
}

}  // namespace

const std::vector<std::string>& all_property_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& [name, kind] : id_table()) {
            out.push_back(name);
        }
        return out;
    }();
    return ids;
}

std::vector<PropertyVerdict> run_campaign(
    const TrialConfig& config, std::span<const std::string> property_ids) {
    if (!config.exhaustive && config.trial_count == 0) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    if (config.operand_count == 0) {
        throw std::invalid_argument("operand count must be at least 1");
    }
    if (config.width == 0) {
        throw std::invalid_argument("operand width must be at least 1");
    }
    std::vector<PropertyVerdict> verdicts;
    verdicts.reserve(property_ids.size());
    for (const std::string& id : property_ids) {
        const Kind kind = kind_from_id(id);
        const std::vector<TrialCase> cases =
            config.exhaustive ? generate_exhaustive(kind, config)
                              : generate_random(kind, config);
        const std::vector<CheckOutcome> outcomes =
            evaluate_all(kind, config.base, cases);
        verdicts.push_back(adjudicate(kind, id, config, cases, outcomes));
    }
    return verdicts;
}

CheckOutcome replay(const std::string& property_id, const TrialCase& inputs,
                    Base base) {
    return evaluate(kind_from_id(property_id), inputs, base);
}

std::string render_trial_case(const TrialCase& inputs) {
    std::string out = "xs=";
    for (std::size_t i = 0; i < inputs.xs.size(); ++i) {
        if (i != 0) {
            out.push_back(',');
        }
        out += inputs.xs[i].get_str();
    }
    if (!inputs.ys.empty()) {
        out += " ys=";
        for (std::size_t i = 0; i < inputs.ys.size(); ++i) {
            if (i != 0) {
                out.push_back(',');
            }
            out += inputs.ys[i].get_str();
        }
    }
    if (inputs.scalar_t != 0) {
        out += " t=" + std::to_string(inputs.scalar_t);
    }
    if (inputs.exponent != 0) {
        out += " e=" + std::to_string(inputs.exponent);
    }
    return out;
}

std::size_t max_worker_threads() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) {
        hw = 1;
    }
    if (const char* env = std::getenv("CVTKIT_MAX_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1) {
            return std::min<std::size_t>(parsed, hw);
        }
    }
    return hw;
}

}  // namespace cvtkit::proplab

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every threshold is pinned in code; timings print alongside.

#include "cvtkit/adder.hpp"
#include "cvtkit/camsim.hpp"
#include "cvtkit/digitvec.hpp"
#include "cvtkit/proplab.hpp"
#include "cvtkit/transforms.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cvtkit;

namespace {

int g_failures = 0;

class Checker {
public:
    void expect(bool condition, const std::string& message) {
        ++checks_;
        if (!condition) {
            ++failures_;
            if (failures_ <= 5) {
                problems_ += "\n    " + message;
            }
        }
    }

    bool passed() const { return failures_ == 0; }
    std::size_t checks() const { return checks_; }
    std::string problems() const {
        std::string out = problems_;
        if (failures_ > 5) {
            out += "\n    ... and " + std::to_string(failures_ - 5) + " more";
        }
        return out;
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string problems_;
};

void report_criterion(int id, const std::string& name, const Checker& checker,
                      double seconds, const std::string& extra = "") {
    std::cout << (checker.passed() ? "PASS" : "FAIL") << " criterion " << id
              << ": " << name << " (" << checker.checks() << " checks";
    if (!extra.empty()) {
        std::cout << "; " << extra;
    }
    std::cout << ") [" << std::fixed << std::setprecision(2) << seconds
              << "s]";
    if (!checker.passed()) {
        std::cout << checker.problems();
        ++g_failures;
    }
    std::cout << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

std::vector<DigitVector> vectors_of(const std::vector<Natural>& values,
                                    Base base) {
    std::vector<DigitVector> out;
    out.reserve(values.size());
    for (const Natural& v : values) {
        out.push_back(to_digits(v, base));
    }
    return out;
}

Natural random_value(std::mt19937_64& rng, unsigned beta, std::size_t width) {
    Natural v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        v *= beta;
        v += static_cast<unsigned long>(rng() % beta);
    }
    return v;
}

std::string verdicts_to_string(
    const std::vector<proplab::PropertyVerdict>& verdicts) {
    std::ostringstream out;
    for (const proplab::PropertyVerdict& v : verdicts) {
        out << v.property_id << " base=" << v.base.value()
            << " trials=" << v.trials << " holds=" << v.holds_count
            << " fails=" << v.fail_count << " ne=" << v.not_evaluable_count
            << "\n";
        for (const proplab::Counterexample& cx : v.counterexamples) {
            out << "  " << proplab::render_trial_case(cx.inputs)
                << " claimed=" << cx.claimed.get_str()
                << " actual=" << cx.actual.get_str() << "\n";
        }
    }
    return out.str();
}

std::string sim_to_string(const camsim::SimulationReport& report) {
    std::ostringstream out;
    for (const Natural& x : report.inputs) {
        out << x.get_str() << ",";
    }
    out << "=" << report.result.get_str() << " model="
        << report.model_delay << " measured=" << report.measured_delay
        << " levels=";
    for (std::size_t c : report.per_level_cycles) {
        out << c << ",";
    }
    out << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------

void criterion_1_golden_values() {
    const auto start = std::chrono::steady_clock::now();
    Checker c;

    // single-variable ternary rules on 14
    const DigitVector fourteen = to_digits(14, Base(3));
    const RuleTable f5 = RuleTable::from_index(1, Base(3), 5);
    const RuleTable f16 = RuleTable::from_index(1, Base(3), 16);
    c.expect(valuation(ivt_apply(f5, std::span(&fourteen, 1))) == 12,
             "rule 5 on 14 must give 12");
    c.expect(valuation(ivt_apply(f16, std::span(&fourteen, 1))) == 25,
             "rule 16 on 14 must give 25");

    // binary pair 11, 13
    const auto pair = vectors_of({11, 13}, Base(2));
    c.expect(valuation(cvt_multi(pair)) == 18, "CVT(11,13) must be 18");
    c.expect(valuation(xor_multi(pair)) == 6, "XOR(11,13) must be 6");
    c.expect(format_digits(cvt_multi(pair)) == "2:10010",
             "carry string must read 10010");

    // six ternary operands
    const auto six = vectors_of({17, 8, 11, 8, 4, 8}, Base(3));
    const SumIdentityReport identity = sum_identity_check(six);
    c.expect(identity.cvt_value == 36, "ternary CVT must be 36");
    c.expect(identity.xor_value == 20, "ternary XOR must be 20");
    c.expect(identity.lhs == 56 && identity.holds, "56 = 36 + 20 must hold");

    // identical operands: carry values 20/20, xor values 0/5
    c.expect(proplab::check_p1_cvt_identical(5, 4, Base(2)).actual == 20,
             "CVT of four fives must be 20");
    c.expect(proplab::check_p1_cvt_identical(5, 5, Base(2)).actual == 20,
             "CVT of five fives must be 20");
    c.expect(proplab::check_p5_xor_identical(5, 4, Base(2)).actual == 0,
             "XOR of four fives must be 0");
    c.expect(proplab::check_p5_xor_identical(5, 5, Base(2)).actual == 5,
             "XOR of five fives must be 5");

    // scaling: 22 -> 88 and 4
    const std::vector<Natural> quad = {5, 4, 6, 7};
    c.expect(valuation(cvt_multi(vectors_of(quad, Base(2)))) == 22,
             "CVT(5,4,6,7) must be 22");
    const proplab::ScalingOutcome p2 =
        proplab::check_p2_cvt_scaling(quad, 2, Base(2));
    c.expect(p2.scaled.actual == 88, "scaled CVT must be 88");
    c.expect(p2.divided.actual == 4 && p2.divided.claimed == 4,
             "divided CVT must be 4 = floor(22/5)");

    // concatenation: 22, 44 -> 66
    const std::vector<Natural> ys = {13, 9, 9, 13};
    c.expect(valuation(cvt_multi(vectors_of(ys, Base(2)))) == 44,
             "CVT(13,9,9,13) must be 44");
    const proplab::ConcatOutcome p3 =
        proplab::check_p3_cvt_concat(quad, ys, Base(2));
    c.expect(p3.outcome.actual == 66 && p3.outcome.status ==
             proplab::TrialStatus::holds,
             "combined CVT must be 66 = 22 + 44");

    // powers: 12 -> 108
    const proplab::CheckOutcome p4 =
        proplab::check_p4_cvt_power(3, 4, 3, Base(2));
    c.expect(p4.claimed == 108 && p4.status == proplab::TrialStatus::holds,
             "CVT of four 27s must be 108 = 12 * 9");

    // xor scaling: 3 -> 12 -> 0
    const std::vector<Natural> xq = {5, 4, 5, 7};
    c.expect(valuation(xor_multi(vectors_of(xq, Base(2)))) == 3,
             "XOR(5,4,5,7) must be 3");
    const proplab::ScalingOutcome p6 =
        proplab::check_p6_xor_scaling(xq, 2, Base(2));
    c.expect(p6.scaled.actual == 12, "scaled XOR must be 12");
    c.expect(p6.divided.actual == 0, "divided XOR must be 0");

    // xor concatenation: 4 = 3 xor 7
    const std::vector<Natural> yq = {13, 9, 9, 10};
    c.expect(valuation(xor_multi(vectors_of(yq, Base(2)))) == 7,
             "XOR(13,9,9,10) must be 7");
    const proplab::CheckOutcome p7 =
        proplab::check_p7_xor_concat(xq, yq, Base(2));
    c.expect(p7.actual == 4 && p7.status == proplab::TrialStatus::holds,
             "combined XOR must be 4 = 3 xor 7");

    // xor powers: 3 -> 9
    const proplab::CheckOutcome p8 =
        proplab::check_p8_xor_power(3, 3, 2, Base(2));
    c.expect(p8.claimed == 9 && p8.status == proplab::TrialStatus::holds,
             "XOR of three 9s must be 9 = 3 * 3");

    const double elapsed = seconds_since(start);
    c.expect(elapsed < 1.0, "golden suite must run in under one second");
    report_criterion(1, "golden value suite", c, elapsed);
}

void criterion_2_sum_identity() {
    const auto start = std::chrono::steady_clock::now();
    Checker c;
    std::size_t evaluations = 0;

    for (unsigned beta : {2u, 3u}) {
        const Base base(beta);
        const unsigned long limit = static_cast<unsigned long>(
            to_uint64(natural_pow(Natural(beta), 4)));
        for (std::size_t k : {2u, 3u}) {
            std::vector<unsigned long> tuple(k, 0);
            for (;;) {
                std::vector<DigitVector> xs;
                xs.reserve(k);
                for (unsigned long v : tuple) {
                    xs.push_back(to_digits(v, base));
                }
                const SumIdentityReport identity = sum_identity_check(xs);
                ++evaluations;
                if (!identity.holds) {
                    c.expect(false, "identity violated at base " +
                                        std::to_string(beta));
                }
                std::size_t pos = 0;
                while (pos < k && ++tuple[pos] == limit) {
                    tuple[pos] = 0;
                    ++pos;
                }
                if (pos == k) {
                    break;
                }
            }
        }
    }
    c.expect(true, "");  // record the exhaustive block as one check

    // 64-bit-scale random tuples in the larger bases
    const std::size_t widths[10] = {0, 0, 0, 0, 32, 28, 25, 23, 22, 21};
    std::mt19937_64 rng(0xCB7u);
    std::size_t random_violations = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        const unsigned beta = 4 + static_cast<unsigned>(rng() % 6);
        const std::size_t k = 1 + rng() % 6;
        std::vector<Natural> values;
        values.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            values.push_back(random_value(rng, beta, widths[beta]));
        }
        const SumIdentityReport identity =
            sum_identity_check(vectors_of(values, Base(beta)));
        ++evaluations;
        if (!identity.holds || identity.lhs != oracle::sum_value(values)) {
            ++random_violations;
        }
    }
    c.expect(random_violations == 0, "random 64-bit-scale tuples violated");

    const double elapsed = seconds_since(start);
    c.expect(elapsed < 120.0, "identity sweep must finish inside 2 minutes");
    report_criterion(2, "sum identity, exhaustive + random", c, elapsed,
                     std::to_string(evaluations) + " evaluations");
}

void criterion_3_recurrence_adder() {
    const auto start = std::chrono::steady_clock::now();
    Checker c;
    const Base binary(2);

    std::size_t max_iterations = 0;
    std::size_t bound_breaches = 0;
    std::size_t wrong_sums = 0;
    for (unsigned long a = 0; a < 1024; ++a) {
        const std::size_t len_a = digit_length(a, binary);
        for (unsigned long b = 0; b < 1024; ++b) {
            const IterationTrace trace = add_pair_iterative(a, b, binary);
            if (trace.result != a + b) {
                ++wrong_sums;
            }
            const std::size_t bound =
                std::max(len_a, digit_length(b, binary)) + 1;
            if (trace.iterations > bound) {
                ++bound_breaches;
            }
            max_iterations = std::max(max_iterations, trace.iterations);
        }
    }
    c.expect(wrong_sums == 0, "every pair below 2^10 must sum exactly");
    c.expect(bound_breaches == 0,
             "iterations must stay within max digit length + 1");

    const double elapsed = seconds_since(start);
    c.expect(elapsed < 30.0, "exhaustive adder sweep must finish inside 30 s");
    report_criterion(3, "recurrence adder, exhaustive below 2^10", c, elapsed,
                     "observed max iterations " +
                         std::to_string(max_iterations));
}

std::string run_cam_trials(Checker& c, std::size_t* max_measured_out = nullptr) {
    const camsim::AdderTree tree = camsim::build_tree(16, 4);
    std::mt19937_64 rng(20260810);
    std::string serialized;
    std::size_t max_measured = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Natural> inputs;
        inputs.reserve(16);
        for (int i = 0; i < 16; ++i) {
            inputs.push_back(static_cast<unsigned long>(rng() % 16));
        }
        const camsim::SimulationReport report = camsim::simulate(tree, inputs);
        if (report.result != oracle::sum_value(inputs)) {
            c.expect(false, "tree result diverged from the direct sum");
        }
        if (report.model_delay != 16) {
            c.expect(false, "fixed model delay must be 4 x 4 = 16");
        }
        max_measured = std::max(max_measured, report.measured_delay);
        serialized += sim_to_string(report);
    }
    serialized += "max_measured=" + std::to_string(max_measured) + "\n";
    if (max_measured_out != nullptr) {
        *max_measured_out = max_measured;
    }
    return serialized;
}

void criterion_4_cam_tree(std::string& serialized_out) {
    const auto start = std::chrono::steady_clock::now();
    Checker c;

    std::size_t max_measured = 0;
    serialized_out = run_cam_trials(c, &max_measured);
    c.expect(true, "");

    // exhaustive four-input trees at small widths
    for (std::size_t n = 1; n <= 3; ++n) {
        const camsim::AdderTree tree = camsim::build_tree(4, n);
        const unsigned long limit = 1ul << n;
        std::size_t wrong = 0;
        for (unsigned long a = 0; a < limit; ++a) {
            for (unsigned long b = 0; b < limit; ++b) {
                for (unsigned long cc = 0; cc < limit; ++cc) {
                    for (unsigned long d = 0; d < limit; ++d) {
                        const std::vector<Natural> inputs = {a, b, cc, d};
                        const camsim::SimulationReport report =
                            camsim::simulate(tree, inputs);
                        if (report.result != a + b + cc + d) {
                            ++wrong;
                        }
                    }
                }
            }
        }
        c.expect(wrong == 0, "exhaustive four-input sweep at width " +
                                 std::to_string(n) + " must be exact");
    }

    report_criterion(4, "CAM adder tree", c, seconds_since(start),
                     "model delay 16, max measured " +
                         std::to_string(max_measured) +
                         "; exhaustive K=4 exact");
}

proplab::TrialConfig campaign_config(unsigned beta, std::uint64_t seed) {
    proplab::TrialConfig config{Base(beta), 3, 4, 10000, seed, false};
    return config;
}

void criterion_5_universal_laws(std::string& serialized_out) {
    const auto start = std::chrono::steady_clock::now();
    Checker c;
    const std::vector<std::string> ids = {"P2a", "P6a", "P6b", "P7"};
    for (unsigned beta = 2; beta <= 7; ++beta) {
        const auto verdicts =
            proplab::run_campaign(campaign_config(beta, 90210), ids);
        for (const proplab::PropertyVerdict& v : verdicts) {
            c.expect(v.fail_count == 0,
                     v.property_id + " at base " + std::to_string(beta) +
                         " must have zero counterexamples");
            c.expect(v.trials == 10000, "campaign must run 10^4 trials");
        }
        if (beta == 2) {
            serialized_out += verdicts_to_string(verdicts);
        }
    }
    report_criterion(5, "expected-universal laws, bases 2-7", c,
                     seconds_since(start), "10^4 trials per base/property");
}

void criterion_6_base2_laws(std::string& serialized_out) {
    const auto start = std::chrono::steady_clock::now();
    Checker c;

    const std::vector<std::string> base2_ids = {"P1", "P4", "P5", "P8"};
    const auto base2 =
        proplab::run_campaign(campaign_config(2, 8128), base2_ids);
    for (const proplab::PropertyVerdict& v : base2) {
        c.expect(v.fail_count == 0,
                 v.property_id + " must never fail in base 2");
    }
    serialized_out += verdicts_to_string(base2);

    const std::vector<std::string> residue_ids = {"P1G", "P5G"};
    for (unsigned beta = 3; beta <= 7; ++beta) {
        const auto verdicts =
            proplab::run_campaign(campaign_config(beta, 8128), residue_ids);
        for (const proplab::PropertyVerdict& v : verdicts) {
            c.expect(v.fail_count == 0,
                     v.property_id + " at base " + std::to_string(beta) +
                         " must have zero counterexamples");
            c.expect(v.not_evaluable_count == 0,
                     "residue-rule trials always draw evaluable K");
        }
    }
    report_criterion(6, "base-2 laws and the residue rule", c,
                     seconds_since(start));
}

void criterion_7_falsification(std::string& serialized_out) {
    const auto start = std::chrono::steady_clock::now();
    Checker c;

    // concat law: exhaustive two-operand sets below 2^4 in base 2
    const proplab::TrialConfig p3_config{Base(2), 2, 4, 0, 0, true};
    const std::vector<std::string> p3_ids = {"P3"};
    const auto p3 = proplab::run_campaign(p3_config, p3_ids);
    c.expect(p3.size() == 1 && p3[0].trials == 65536,
             "exhaustive concat search must cover 16^4 cases");
    c.expect(p3[0].fail_count > 0, "concat law must produce counterexamples");
    c.expect(p3[0].holds_count + p3[0].fail_count <= p3[0].trials,
             "verdict table must be definite");
    serialized_out += verdicts_to_string(p3);
    // the campaign completing at all means the equality <=> no-column-overflow
    // biconditional held on every one of the 65536 trials (it is asserted
    // inside the check); pin the canonical instance too
    const proplab::ConcatOutcome disjoint = proplab::check_p3_cvt_concat(
        std::vector<Natural>{1, 0}, std::vector<Natural>{1, 0}, Base(2));
    c.expect(disjoint.outcome.status == proplab::TrialStatus::fails &&
                 disjoint.outcome.claimed == 0 && disjoint.outcome.actual == 2,
             "{1,0} u {1,0} must give 2 != 0");

    // identical-operand law at base 3 pins (2,2)
    const proplab::TrialConfig p1_config{Base(3), 2, 2, 0, 0, true};
    const std::vector<std::string> p1_ids = {"P1"};
    const auto p1 = proplab::run_campaign(p1_config, p1_ids);
    bool found = false;
    for (const proplab::Counterexample& cx : p1[0].counterexamples) {
        if (cx.inputs.xs == std::vector<Natural>{2, 2} && cx.claimed == 4 &&
            cx.actual == 3) {
            found = true;
        }
    }
    c.expect(found, "base-3 search must find the (2,2) counterexample");
    serialized_out += verdicts_to_string(p1);

    // division rule: the worked instance holds, and a campaign reaches a
    // definite verdict
    const proplab::ScalingOutcome worked = proplab::check_p2_cvt_scaling(
        std::vector<Natural>{5, 4, 6, 7}, 2, Base(2));
    c.expect(worked.divided.status == proplab::TrialStatus::holds &&
                 worked.divided.claimed == 4,
             "the worked division instance must hold with m = 1");
    const std::vector<std::string> p2b_ids = {"P2b"};
    const auto p2b =
        proplab::run_campaign(campaign_config(2, 1729), p2b_ids);
    c.expect(p2b[0].holds_count + p2b[0].fail_trial_count +
                     p2b[0].not_evaluable_count == p2b[0].trials,
             "every division trial must land in exactly one bucket");
    serialized_out += verdicts_to_string(p2b);

    // every stored counterexample replays from scratch
    for (const auto* campaign : {&p3, &p1, &p2b}) {
        for (const proplab::PropertyVerdict& v : *campaign) {
            for (const proplab::Counterexample& cx : v.counterexamples) {
                const proplab::CheckOutcome again =
                    proplab::replay(v.property_id, cx.inputs, v.base);
                c.expect(again.status == proplab::TrialStatus::fails &&
                             again.claimed == cx.claimed &&
                             again.actual == cx.actual,
                         "counterexample must replay identically");
            }
        }
    }
    // and the independent oracle confirms the violations
    for (const proplab::Counterexample& cx : p1[0].counterexamples) {
        c.expect(oracle::cvt_value(cx.inputs.xs, 3) == cx.actual &&
                     cx.actual != cx.claimed,
                 "oracle must confirm each identical-operand violation");
    }
    for (const proplab::Counterexample& cx : p3[0].counterexamples) {
        std::vector<Natural> combined = cx.inputs.xs;
        combined.insert(combined.end(), cx.inputs.ys.begin(),
                        cx.inputs.ys.end());
        const Natural direct = oracle::cvt_value(combined, 2);
        const Natural parts = oracle::cvt_value(cx.inputs.xs, 2) +
                              oracle::cvt_value(cx.inputs.ys, 2);
        c.expect(direct == cx.actual && parts == cx.claimed && direct != parts,
                 "oracle must confirm each concat violation");
    }

    report_criterion(7, "falsification searches", c, seconds_since(start),
                     std::to_string(p3[0].fail_count) +
                         " concat counterexamples");
}

void criterion_8_determinism(const std::string& first_pass) {
    const auto start = std::chrono::steady_clock::now();
    Checker c;

    std::string second_pass;
    {
        Checker scratch;
        second_pass += run_cam_trials(scratch);
        const std::vector<std::string> c5_ids = {"P2a", "P6a", "P6b", "P7"};
        second_pass +=
            verdicts_to_string(proplab::run_campaign(campaign_config(2, 90210),
                                                     c5_ids));
        const std::vector<std::string> c6_ids = {"P1", "P4", "P5", "P8"};
        second_pass +=
            verdicts_to_string(proplab::run_campaign(campaign_config(2, 8128),
                                                     c6_ids));
        const proplab::TrialConfig p3_config{Base(2), 2, 4, 0, 0, true};
        const std::vector<std::string> p3_ids = {"P3"};
        second_pass +=
            verdicts_to_string(proplab::run_campaign(p3_config, p3_ids));
        const proplab::TrialConfig p1_config{Base(3), 2, 2, 0, 0, true};
        const std::vector<std::string> p1_ids = {"P1"};
        second_pass +=
            verdicts_to_string(proplab::run_campaign(p1_config, p1_ids));
        const std::vector<std::string> p2b_ids = {"P2b"};
        second_pass += verdicts_to_string(
            proplab::run_campaign(campaign_config(2, 1729), p2b_ids));
    }
    c.expect(first_pass == second_pass,
             "equal seeds must reproduce byte-identical payloads");

    // worker count must not leak into the payload
    setenv("CVTKIT_MAX_THREADS", "1", 1);
    const std::vector<std::string> ids = {"P2a", "P6a", "P6b", "P7"};
    const std::string serial = verdicts_to_string(
        proplab::run_campaign(campaign_config(2, 90210), ids));
    unsetenv("CVTKIT_MAX_THREADS");
    const std::string parallel = verdicts_to_string(
        proplab::run_campaign(campaign_config(2, 90210), ids));
    c.expect(serial == parallel,
             "single-worker and multi-worker campaigns must agree byte for "
             "byte");

    report_criterion(8, "seeded determinism of criteria 4-7", c,
                     seconds_since(start));
}

}  // namespace

int main() {
    std::cout << "cvtkit acceptance suite\n";
    criterion_1_golden_values();
    criterion_2_sum_identity();
    criterion_3_recurrence_adder();

    std::string first_pass;
    {
        std::string cam_serialized;
        criterion_4_cam_tree(cam_serialized);
        first_pass += cam_serialized;
    }
    {
        std::string c5_serialized;
        criterion_5_universal_laws(c5_serialized);
        first_pass += c5_serialized;
    }
    {
        std::string c6_serialized;
        criterion_6_base2_laws(c6_serialized);
        first_pass += c6_serialized;
    }
    {
        std::string c7_serialized;
        criterion_7_falsification(c7_serialized);
        first_pass += c7_serialized;
    }
    criterion_8_determinism(first_pass);

    if (g_failures != 0) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}

#include "cvtkit/cli.hpp"

#include "cvtkit/adder.hpp"
#include "cvtkit/camsim.hpp"
#include "cvtkit/errors.hpp"
#include "cvtkit/proplab.hpp"
#include "cvtkit/report.hpp"
#include "cvtkit/transforms.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace cvtkit::cli {

namespace {

struct ParsedOperands {
    Base base;
    std::vector<Natural> values;
    std::vector<DigitVector> digits;
};

// Bare decimals take the radix from --base; "beta:digits" strings carry
// their own. Mixing the two forms is ambiguous and rejected.
ParsedOperands parse_operands(const std::vector<std::string>& tokens,
                              unsigned base_flag, bool base_flag_given,
                              std::optional<std::size_t> width) {
    if (tokens.empty()) {
        throw std::invalid_argument("no operands");
    }
    bool any_prefixed = false;
    bool any_bare = false;
    for (const std::string& token : tokens) {
        if (token.find(':') != std::string::npos) {
            any_prefixed = true;
        } else {
            any_bare = true;
        }
    }
    if (any_prefixed && any_bare) {
        throw std::invalid_argument("mix of bare and base-prefixed operands");
    }

    if (any_bare) {
        Base base(base_flag);
        ParsedOperands out{base, {}, {}};
        for (const std::string& token : tokens) {
            Natural value = parse_natural(token);
            out.digits.push_back(to_digits(value, base, width));
            out.values.push_back(std::move(value));
        }
        return out;
    }

    std::optional<Base> base;
    ParsedOperands out{Base(2), {}, {}};
    for (const std::string& token : tokens) {
        GeneralizedDigitVector parsed = parse_digits(token);
        if (!base) {
            base = parsed.base();
        } else if (parsed.base() != *base) {
            throw std::invalid_argument("base mismatch in operand '" + token +
                                        "'");
        }
        std::optional<DigitVector> canonical = as_canonical(parsed);
        if (!canonical) {
            throw std::invalid_argument("operand '" + token +
                                        "' has a digit not below its base");
        }
        if (width) {
            canonical = canonical->padded(*width);
        }
        out.values.push_back(valuation(*canonical));
        out.digits.push_back(std::move(*canonical));
    }
    if (base_flag_given && base->value() != base_flag) {
        throw std::invalid_argument("--base " + std::to_string(base_flag) +
                                    " conflicts with the operands' base " +
                                    std::to_string(base->value()));
    }
    out.base = *base;
    return out;
}

std::string echo_of(int argc, const char* const* argv) {
    std::string echo;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) {
            echo.push_back(' ');
        }
        echo += argv[i];
    }
    return echo;
}

void add_operand_lines(Report& report, const ParsedOperands& operands) {
    report.add_count("operand.count", operands.values.size());
    for (std::size_t i = 0; i < operands.values.size(); ++i) {
        const std::string prefix = "operand." + std::to_string(i);
        report.add(prefix + ".value", operands.values[i]);
        report.add(prefix + ".digits", format_digits(operands.digits[i]));
    }
}

struct TransformArgs {
    std::vector<std::string> numbers;
    unsigned base = 2;
    bool base_given = false;
    std::string op = "both";
    std::string rule;
    unsigned arity = 1;
    std::size_t width = 0;
};

void run_transform(const TransformArgs& args, const std::string& echo,
                   std::ostream& out) {
    if (args.op != "cvt" && args.op != "xor" && args.op != "both" &&
        args.op != "ivt") {
        throw std::invalid_argument("unknown --op '" + args.op + "'");
    }
    std::optional<std::size_t> width;
    if (args.width > 0) {
        width = args.width;
    }
    const ParsedOperands operands =
        parse_operands(args.numbers, args.base, args.base_given, width);

    Report report(echo, "none");
    report.add("op", args.op);
    report.add_count("base", operands.base.value());
    add_operand_lines(report, operands);

    if (args.op == "cvt") {
        const GeneralizedDigitVector cvt = cvt_multi(operands.digits);
        report.add("cvt.value", valuation(cvt));
        report.add("cvt.digits", format_digits(cvt));
    }
    if (args.op == "xor") {
        const DigitVector xr = xor_multi(operands.digits);
        report.add("xor.value", valuation(xr));
        report.add("xor.digits", format_digits(xr));
    }
    if (args.op == "both") {
        const TransformResult both = transform_all(operands.digits);
        report.add("cvt.value", valuation(both.cvt));
        report.add("cvt.digits", format_digits(both.cvt));
        report.add("xor.value", valuation(both.xor_digits));
        report.add("xor.digits", format_digits(both.xor_digits));
        const SumIdentityReport identity = sum_identity_check(operands.digits);
        report.add("identity.lhs", identity.lhs);
        report.add("identity.cvt_plus_xor",
                   Natural(identity.cvt_value + identity.xor_value));
        report.add_bool("identity.holds", identity.holds);
        if (!identity.holds) {
            throw InvariantViolation("sum identity violated");
        }
    }
    if (args.op == "ivt") {
        if (args.rule.empty()) {
            throw std::invalid_argument("--op ivt requires --rule");
        }
        const RuleTable rule = RuleTable::from_index(
            args.arity, operands.base, parse_natural(args.rule));
        const DigitVector result = ivt_apply(rule, operands.digits);
        report.add("rule.index", rule.rule_index());
        report.add_count("rule.arity", rule.arity());
        report.add_count("rule.radix", rule.radix().value());
        report.add("result.value", valuation(result));
        report.add("result.digits", format_digits(result));
    }
    out << report.render();
}

struct AddArgs {
    std::vector<std::string> numbers;
    unsigned base = 2;
    bool base_given = false;
    bool trace = false;
};

void run_add(const AddArgs& args, const std::string& echo, std::ostream& out) {
    const ParsedOperands operands =
        parse_operands(args.numbers, args.base, args.base_given, std::nullopt);
    const MultiAddResult result = add_multi(operands.values, operands.base);

    Report report(echo, "none");
    report.add_count("base", operands.base.value());
    report.add_count("operand.count", operands.values.size());
    for (std::size_t i = 0; i < operands.values.size(); ++i) {
        report.add("operand." + std::to_string(i), operands.values[i]);
    }
    report.add("initial.cvt", result.initial_cvt);
    report.add("initial.xor", result.initial_xor);
    report.add("result", result.result);
    report.add_count("iterations", result.trace.iterations);
    if (args.trace) {
        for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
            const std::string prefix = "step." + std::to_string(i);
            report.add(prefix + ".cvt", result.trace.steps[i].cvt_value);
            report.add(prefix + ".xor", result.trace.steps[i].xor_value);
        }
    }
    out << report.render();
}

struct PropsArgs {
    unsigned base = 2;
    std::string properties = "all";
    std::string trials = "1000";
    std::uint64_t seed = 0;
    std::size_t width = 4;
    std::size_t operand_count = 2;
};

std::vector<std::string> parse_property_selection(const std::string& text) {
    if (text == "all") {
        return proplab::all_property_ids();
    }
    std::vector<std::string> ids;
    std::stringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        if (!piece.empty()) {
            ids.push_back(piece);
        }
    }
    if (ids.empty()) {
        throw std::invalid_argument("empty property selection");
    }
    return ids;
}

void run_props(const PropsArgs& args, const std::string& echo,
               std::ostream& out) {
    proplab::TrialConfig config{Base(args.base), args.operand_count, args.width,
                                0, args.seed, false};
    if (args.trials == "exhaustive") {
        config.exhaustive = true;
    } else {
        const Natural trials = parse_natural(args.trials);
        if (!fits_uint64(trials)) {
            throw std::invalid_argument("trial count out of range");
        }
        config.trial_count = static_cast<std::size_t>(to_uint64(trials));
    }
    const std::vector<std::string> ids =
        parse_property_selection(args.properties);
    const std::vector<proplab::PropertyVerdict> verdicts =
        proplab::run_campaign(config, ids);

    Report report(echo, std::to_string(args.seed));
    report.add_count("base", args.base);
    report.add("properties", args.properties);
    report.add("mode", config.exhaustive ? "exhaustive" : "random");
    report.add_count("width", args.width);
    report.add_count("k", args.operand_count);
    report.add_count("verdict.count", verdicts.size());
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const proplab::PropertyVerdict& v = verdicts[i];
        const std::string prefix = "verdict." + std::to_string(i);
        report.add(prefix + ".property", v.property_id);
        report.add_count(prefix + ".trials", v.trials);
        report.add_count(prefix + ".holds", v.holds_count);
        report.add_count(prefix + ".fails", v.fail_count);
        report.add_count(prefix + ".fail_trials", v.fail_trial_count);
        report.add_count(prefix + ".not_evaluable", v.not_evaluable_count);
        report.add(prefix + ".note", v.condition_note);
        for (std::size_t j = 0; j < v.counterexamples.size(); ++j) {
            const proplab::Counterexample& cx = v.counterexamples[j];
            const std::string cp = prefix + ".cx." + std::to_string(j);
            report.add(cp + ".inputs", proplab::render_trial_case(cx.inputs));
            report.add(cp + ".claimed", cx.claimed);
            report.add(cp + ".actual", cx.actual);
            if (!cx.note.empty()) {
                report.add(cp + ".note", cx.note);
            }
        }
    }
    out << report.render();
}

struct CamArgs {
    std::vector<std::string> inputs;
    std::size_t k = 0;
    std::size_t n = 0;
    bool random = false;
    std::uint64_t seed = 0;
    bool trace = false;
};

void run_cam(const CamArgs& args, const std::string& echo, std::ostream& out) {
    const camsim::AdderTree tree = camsim::build_tree(args.k, args.n);

    std::vector<Natural> inputs;
    if (args.random) {
        if (!args.inputs.empty()) {
            throw std::invalid_argument(
                "--random and explicit inputs are mutually exclusive");
        }
        std::mt19937_64 rng(args.seed);
        for (std::size_t i = 0; i < args.k; ++i) {
            Natural v = 0;
            for (std::size_t bit = 0; bit < args.n; ++bit) {
                v *= 2;
                v += static_cast<unsigned long>(rng() % 2);
            }
            inputs.push_back(std::move(v));
        }
    } else {
        const ParsedOperands operands =
            parse_operands(args.inputs, 2, false, args.n);
        if (operands.base != Base(2)) {
            throw std::invalid_argument("CAM inputs must be binary");
        }
        inputs = operands.values;
    }

    camsim::SimulationOptions options;
    options.trace = args.trace;
    const camsim::SimulationReport sim = camsim::simulate(tree, inputs, options);

    Report report(echo, args.random ? std::to_string(args.seed) : "none");
    report.add_count("k", args.k);
    report.add_count("n", args.n);
    report.add_count("cam.count", tree.cam_count());
    report.add_count("level.count", tree.level_count());
    for (std::size_t i = 0; i < sim.inputs.size(); ++i) {
        report.add("input." + std::to_string(i), sim.inputs[i]);
    }
    report.add("result", sim.result);
    report.add_count("model_delay", sim.model_delay);
    report.add_count("measured_delay", sim.measured_delay);
    for (std::size_t i = 0; i < sim.per_level_cycles.size(); ++i) {
        report.add_count("level." + std::to_string(i) + ".cycles",
                         sim.per_level_cycles[i]);
    }
    for (std::size_t i = 0; i < sim.trace_lines.size(); ++i) {
        report.add("trace." + std::to_string(i), sim.trace_lines[i]);
    }
    out << report.render();
}

}  // namespace

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const InvariantViolation*>(&error) != nullptr) {
        return kExitInvariant;
    }
    if (dynamic_cast<const std::overflow_error*>(&error) != nullptr) {
        return kExitInvariant;  // register sizing bug, not user input
    }
    if (dynamic_cast<const std::invalid_argument*>(&error) != nullptr ||
        dynamic_cast<const std::out_of_range*>(&error) != nullptr) {
        return kExitUsage;
    }
    return kExitInvariant;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    CLI::App app{
        "cvtkit: carry-value and generalized-xor transforms over any radix, "
        "a recurrence adder, a property lab, and a CAM adder-tree simulator"};
    app.require_subcommand(1);

    TransformArgs transform_args;
    CLI::App* transform =
        app.add_subcommand("transform", "columnwise CVT / XOR / IVT transforms");
    transform
        ->add_option("numbers", transform_args.numbers,
                     "operands: decimals or '<base>:<digits>' strings")
        ->required();
    transform->add_option("--base", transform_args.base,
                          "radix for bare decimal operands");
    transform->add_option("--op", transform_args.op, "cvt | xor | both | ivt");
    transform->add_option("--rule", transform_args.rule,
                          "rule number j for --op ivt");
    transform->add_option("--arity", transform_args.arity,
                          "rule arity (1 or 2) for --op ivt");
    transform->add_option("--width", transform_args.width,
                          "zero-pad operands to this many digits");

    AddArgs add_args;
    CLI::App* add =
        app.add_subcommand("add", "addition via the CVT-XOR recurrence");
    add->add_option("numbers", add_args.numbers, "addends")->required();
    add->add_option("--base", add_args.base, "radix for bare decimal operands");
    add->add_flag("--trace", add_args.trace, "include the full iteration trace");

    PropsArgs props_args;
    CLI::App* props =
        app.add_subcommand("props", "adjudicate the claimed algebraic laws");
    props->add_option("--base", props_args.base, "radix under test");
    props->add_option("--properties", props_args.properties,
                      "'all' or a comma list like P1,P2a,P3");
    props->add_option("--trials", props_args.trials,
                      "trial count, or 'exhaustive'");
    props->add_option("--seed", props_args.seed, "campaign seed");
    props->add_option("--width", props_args.width, "operand width in digits");
    props->add_option("--k", props_args.operand_count, "operands per trial");

    CamArgs cam_args;
    CLI::App* cam =
        app.add_subcommand("cam", "simulate the K-input CAM adder tree");
    cam->add_option("inputs", cam_args.inputs, "K input numbers");
    cam->add_option("--k", cam_args.k, "input count (power of two)")
        ->required();
    cam->add_option("--n", cam_args.n, "input width in bits")->required();
    cam->add_flag("--random", cam_args.random, "draw seeded random inputs");
    cam->add_option("--seed", cam_args.seed, "seed for --random");
    cam->add_flag("--trace", cam_args.trace,
                  "dump per-cycle register contents");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        app.exit(e, out, err);
        return kExitUsage;
    }

    transform_args.base_given = transform->count("--base") > 0;
    add_args.base_given = add->count("--base") > 0;

    const std::string echo = echo_of(argc, argv);
    try {
        if (transform->parsed()) {
            run_transform(transform_args, echo, out);
        } else if (add->parsed()) {
            run_add(add_args, echo, out);
        } else if (props->parsed()) {
            run_props(props_args, echo, out);
        } else if (cam->parsed()) {
            run_cam(cam_args, echo, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitOk;
}

}  // namespace cvtkit::cli

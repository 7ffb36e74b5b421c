#include "cvtkit/camsim.hpp"

#include "cvtkit/errors.hpp"
#include "cvtkit/transforms.hpp"

#include <bit>
#include <stdexcept>

namespace cvtkit::camsim {

namespace {

const Base kBinary(2);

}  // namespace

CamUnit::CamUnit(std::size_t width)
    : width_(width),
      reg_x_(DigitVector::zero(kBinary, width)),
      reg_y_(DigitVector::zero(kBinary, width)) {
    if (width == 0) {
        throw std::invalid_argument("register width must be at least 1");
    }
}

void CamUnit::load(const Natural& x, const Natural& y) {
    if (state_ == CamState::running) {
        throw std::logic_error("load on a running CAM");
    }
    if (digit_length(x, kBinary) > width_ || digit_length(y, kBinary) > width_) {
        throw std::overflow_error("operand wider than CAM register");
    }
    reg_x_ = to_digits(x, kBinary, width_);
    reg_y_ = to_digits(y, kBinary, width_);
    cycle_count_ = 0;
    state_ = CamState::running;
}

void CamUnit::step() {
    if (state_ != CamState::running) {
        throw std::logic_error("step on a CAM that is not running");
    }
    const GeneralizedDigitVector carry = cvt_pair(reg_x_, reg_y_);
    // binary pairwise carries are AND bits, canonical by construction;
    // only the width+1 position can spill
    if (carry.digit(width_) != 0) {
        throw std::overflow_error("carry shifted beyond CAM register width");
    }
    std::vector<Digit> clamped(carry.digits().begin(),
                               carry.digits().begin() +
                                   static_cast<std::ptrdiff_t>(width_));
    const DigitVector next_y = xor_pair(reg_x_, reg_y_);
    reg_x_ = DigitVector(std::move(clamped), kBinary);
    reg_y_ = next_y;
    ++cycle_count_;
    if (reg_x_.is_zero()) {
        state_ = CamState::done;
    }
}

Natural CamUnit::sum() const {
    if (state_ != CamState::done) {
        throw std::logic_error("sum read before the carry register cleared");
    }
    return valuation(reg_y_);
}

AdderTree::AdderTree(std::size_t leaf_count, std::size_t input_width)
    : leaf_count_(leaf_count), input_width_(input_width) {
    if (leaf_count < 2 || !std::has_single_bit(leaf_count)) {
        throw std::invalid_argument(
            "leaf count must be a power of two, at least 2");
    }
    if (input_width == 0) {
        throw std::invalid_argument("input width must be at least 1");
    }
    std::size_t units = leaf_count / 2;
    std::size_t level = 1;
    while (units >= 1) {
        levels_.push_back(LevelSpec{units, input_width + level});
        if (units == 1) {
            break;
        }
        units /= 2;
        ++level;
    }
}

std::size_t AdderTree::cam_count() const noexcept {
    std::size_t total = 0;
    for (const LevelSpec& level : levels_) {
        total += level.unit_count;
    }
    return total;
}

Wire AdderTree::wiring(std::size_t level, std::size_t unit) const {
    if (level >= levels_.size() || unit >= levels_[level].unit_count) {
        throw std::out_of_range("no such CAM unit");
    }
    return Wire{2 * unit, 2 * unit + 1};
}

AdderTree build_tree(std::size_t k, std::size_t n) {
    return AdderTree(k, n);
}

SimulationReport simulate(const AdderTree& tree, std::span<const Natural> inputs,
                          const SimulationOptions& options) {
    if (inputs.size() != tree.leaf_count()) {
        throw std::invalid_argument(
            "expected " + std::to_string(tree.leaf_count()) + " inputs, got " +
            std::to_string(inputs.size()));
    }
    const Natural limit =
        natural_pow(Natural(2), static_cast<unsigned long>(tree.input_width()));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (sgn(inputs[i]) < 0 || inputs[i] >= limit) {
            throw std::invalid_argument("input " + std::to_string(i) + " (" +
                                        inputs[i].get_str() +
                                        ") out of range for width " +
                                        std::to_string(tree.input_width()));
        }
    }

    SimulationReport report;
    report.inputs.assign(inputs.begin(), inputs.end());
    report.model_delay = tree.input_width() * tree.level_count();

    std::vector<Natural> values(inputs.begin(), inputs.end());
    for (std::size_t level = 0; level < tree.level_count(); ++level) {
        const LevelSpec& spec = tree.levels()[level];
        std::vector<Natural> next;
        next.reserve(spec.unit_count);
        std::size_t level_max = 0;
        for (std::size_t unit = 0; unit < spec.unit_count; ++unit) {
            const Wire wire = tree.wiring(level, unit);
            CamUnit cam(spec.width);
            cam.load(values[wire.left], values[wire.right]);
            while (cam.state() == CamState::running) {
                cam.step();
                if (options.trace) {
                    report.trace_lines.push_back(
                        "L" + std::to_string(level + 1) + ".U" +
                        std::to_string(unit) + " c" +
                        std::to_string(cam.cycle_count()) + " x=" +
                        format_digits(cam.reg_x()) + " y=" +
                        format_digits(cam.reg_y()));
                }
            }
            level_max = std::max(level_max, cam.cycle_count());
            next.push_back(cam.sum());
        }
        report.per_level_cycles.push_back(level_max);
        values = std::move(next);
    }

    report.result = values.front();
    report.measured_delay = 0;
    for (std::size_t cycles : report.per_level_cycles) {
        report.measured_delay += cycles;
    }

    Natural direct = 0;
    for (const Natural& x : inputs) {
        direct += x;
    }
    if (report.result != direct) {
        throw InvariantViolation("tree sum " + report.result.get_str() +
                                 " differs from direct sum " + direct.get_str());
    }
    return report;
}

}  // namespace cvtkit::camsim

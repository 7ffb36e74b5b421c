#pragma once

#include "cvtkit/digitvec.hpp"

#include <span>
#include <string>
#include <vector>

namespace cvtkit::camsim {

enum class CamState { idle, running, done };

/// One cellular-automata adder machine: a synchronous binary register pair
/// clocking (x, y) -> (CVT(x, y), XOR(x, y)) until the carry register
/// clears, at which point the y register holds the sum. Registers keep a
/// fixed width; a carry that would leave the register raises an overflow
/// error instead of wrapping.
class CamUnit {
public:
    explicit CamUnit(std::size_t width);

    void load(const Natural& x, const Natural& y);  // idle/done -> running
    void step();                                    // one clock; pre: running

    CamState state() const noexcept { return state_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t cycle_count() const noexcept { return cycle_count_; }
    const DigitVector& reg_x() const noexcept { return reg_x_; }  // carries
    const DigitVector& reg_y() const noexcept { return reg_y_; }
    Natural sum() const;  // pre: done

private:
    std::size_t width_;
    DigitVector reg_x_;
    DigitVector reg_y_;
    std::size_t cycle_count_ = 0;
    CamState state_ = CamState::idle;
};

struct LevelSpec {
    std::size_t unit_count;
    std::size_t width;  // register digit count at this level
};

/// Input sources of one unit: indices into the previous level's outputs
/// (the external inputs, for the first level).
struct Wire {
    std::size_t left;
    std::size_t right;
};

/// Complete binary reduction tree of K-1 CAM units over log2(K) levels.
/// Level l (1-based) has K/2^l units of width n+l, enough for partial sums
/// of 2^l inputs below 2^n.
class AdderTree {
public:
    AdderTree(std::size_t leaf_count, std::size_t input_width);

    std::size_t leaf_count() const noexcept { return leaf_count_; }
    std::size_t input_width() const noexcept { return input_width_; }
    std::size_t level_count() const noexcept { return levels_.size(); }
    std::size_t cam_count() const noexcept;
    const std::vector<LevelSpec>& levels() const noexcept { return levels_; }
    Wire wiring(std::size_t level, std::size_t unit) const;

private:
    std::size_t leaf_count_;
    std::size_t input_width_;
    std::vector<LevelSpec> levels_;
};

AdderTree build_tree(std::size_t k, std::size_t n);

struct SimulationOptions {
    bool trace = false;  // dump per-cycle register contents
};

struct SimulationReport {
    std::vector<Natural> inputs;
    Natural result;
    std::vector<std::size_t> per_level_cycles;  // max cycles within the level
    std::size_t model_delay;                    // fixed model: n cycles per level
    std::size_t measured_delay;                 // sum of per-level maxima
    std::vector<std::string> trace_lines;       // one per (unit, cycle)
};

/// Barrier-synchronized run: a level's units all finish before the next
/// level loads. Serial evaluation; units within a level are independent,
/// so any schedule yields this exact report. The result is checked against
/// direct summation.
SimulationReport simulate(const AdderTree& tree, std::span<const Natural> inputs,
                          const SimulationOptions& options = {});

}  // namespace cvtkit::camsim

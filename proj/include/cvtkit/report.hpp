#pragma once

#include "cvtkit/natural.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvtkit {

/// Deterministic machine-readable report: one "key: value" line per entry,
/// emitted in insertion order, integers only. Two runs with equal command,
/// inputs, and seed render byte-identical output once the timestamp line is
/// dropped.
class Report {
public:
    static constexpr std::string_view kFormatVersion = "cvtkit-report/1";

    Report(std::string command_echo, std::string seed_text);

    void add(std::string_view key, std::string_view value);
    void add(std::string_view key, const Natural& value);
    void add_count(std::string_view key, std::uint64_t value);
    void add_bool(std::string_view key, bool value);

    /// Version, command, seed, timestamp, "---", then the payload.
    std::string render() const;
    /// The deterministic part only (everything below "---").
    std::string payload() const;

private:
    std::string command_;
    std::string seed_;
    std::string timestamp_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace cvtkit

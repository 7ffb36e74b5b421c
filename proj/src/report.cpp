#include "cvtkit/report.hpp"

#include <chrono>
#include <ctime>

namespace cvtkit {

namespace {

std::string utc_now() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

}  // namespace

Report::Report(std::string command_echo, std::string seed_text)
    : command_(std::move(command_echo)),
      seed_(std::move(seed_text)),
      timestamp_(utc_now()) {}

void Report::add(std::string_view key, std::string_view value) {
    entries_.emplace_back(std::string(key), std::string(value));
}

void Report::add(std::string_view key, const Natural& value) {
    entries_.emplace_back(std::string(key), value.get_str());
}

void Report::add_count(std::string_view key, std::uint64_t value) {
    entries_.emplace_back(std::string(key), std::to_string(value));
}

void Report::add_bool(std::string_view key, bool value) {
    entries_.emplace_back(std::string(key), value ? "true" : "false");
}

std::string Report::payload() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
        out += key;
        out += ": ";
        out += value;
        out.push_back('\n');
    }
    return out;
}

std::string Report::render() const {
    std::string out(kFormatVersion);
    out.push_back('\n');
    out += "command: " + command_ + "\n";
    out += "seed: " + seed_ + "\n";
    out += "timestamp: " + timestamp_ + "\n";
    out += "---\n";
    out += payload();
    return out;
}

}  // namespace cvtkit

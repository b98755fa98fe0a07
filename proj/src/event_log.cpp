#include "fluidhaptics/event_log.hpp"

#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"

#include <fstream>
#include <stdexcept>

namespace fluidhaptics {

void EventLog::append(double time_s, std::string event, std::string detail) {
    if (!entries_.empty() && time_s < entries_.back().time_s) {
        throw std::invalid_argument("event log: time must be nondecreasing");
    }
    if (detail.find('\n') != std::string::npos) {
        throw std::invalid_argument("event log: detail must not contain newlines");
    }
    entries_.push_back(Entry{time_s, std::move(event), std::move(detail)});
}

void EventLog::write_csv(std::ostream& out) const {
    out << "time_s,event,detail\n";
    for (const auto& entry : entries_) {
        out << to_text(entry.time_s) << ',' << entry.event << ',' << entry.detail << '\n';
    }
}

void EventLog::write_csv_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write event log: " + path);
    }
    write_csv(out);
}

} // namespace fluidhaptics

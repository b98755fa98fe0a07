#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fluidhaptics {

// Append-only telemetry log, serialized as `time_s,event,detail` CSV. The
// detail column is the line remainder and is written verbatim (it may contain
// commas but never newlines).
class EventLog {
public:
    struct Entry {
        double time_s;
        std::string event;
        std::string detail;
    };

    void append(double time_s, std::string event, std::string detail);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;

private:
    std::vector<Entry> entries_;
};

} // namespace fluidhaptics

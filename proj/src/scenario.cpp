#include "fluidhaptics/scenario.hpp"

#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"

#include <fstream>
#include <sstream>

namespace fluidhaptics {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (in >> field) {
        fields.push_back(field);
    }
    return fields;
}

} // namespace

Catalog Catalog::defaults() {
    // Example objects; real deployments configure their own catalog. The
    // sword is far-weighted, the water gun drains while spraying.
    Catalog catalog;
    catalog.add(CatalogEntry{"ball_stone", 20.0, 30.0, 0.0});
    catalog.add(CatalogEntry{"square_stone", 50.0, 30.0, 0.0});
    catalog.add(CatalogEntry{"sword", 40.0, 110.0, 0.0});
    catalog.add(CatalogEntry{"water_gun", 50.0, 60.0, 10.0});
    return catalog;
}

void Catalog::add(CatalogEntry entry) {
    if (entry.object_id.empty()) {
        throw ParseError("catalog: empty object id");
    }
    if (entry.mass_g < 0.0 || entry.drain_rate_g_s < 0.0) {
        throw ParseError("catalog '" + entry.object_id + "': mass and drain rate must be >= 0");
    }
    entries_[entry.object_id] = std::move(entry);
}

const CatalogEntry* Catalog::find(const std::string& object_id) const {
    const auto it = entries_.find(object_id);
    return it == entries_.end() ? nullptr : &it->second;
}

const CatalogEntry& Catalog::at(const std::string& object_id) const {
    if (const auto* entry = find(object_id)) {
        return *entry;
    }
    throw ParseError("unknown catalog object '" + object_id + "'");
}

Catalog Catalog::load_stream(std::istream& in, const std::string& origin) {
    // One object per line: `<id> <mass_g> <com_mm> <drain_rate_g_s>`.
    Catalog catalog;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const auto fields = split_ws(line);
        if (fields.empty()) {
            continue;
        }
        if (fields.size() != 4) {
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": expected '<id> <mass_g> <com_mm> <drain_rate_g_s>'");
        }
        try {
            catalog.add(CatalogEntry{fields[0], parse_double(fields[1]), parse_double(fields[2]),
                                     parse_double(fields[3])});
        } catch (const ParseError& e) {
            throw ParseError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return catalog;
}

Catalog Catalog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open catalog: " + path);
    }
    return load_stream(in, path);
}

Scenario parse_scenario(std::istream& in, const std::string& origin) {
    Scenario scenario;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto at = [&] { return origin + ":" + std::to_string(line_no); };
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const auto fields = split_ws(line);
        if (fields.empty()) {
            continue;
        }
        if (!fields[0].starts_with("t=")) {
            throw ParseError(at() + ": expected 't=<seconds>'");
        }

        ScenarioEvent event;
        try {
            event.time_s = parse_double(std::string_view(fields[0]).substr(2));
        } catch (const ParseError& e) {
            throw ParseError(at() + ": " + e.what());
        }
        if (event.time_s < 0.0) {
            throw ParseError(at() + ": time must be >= 0");
        }
        if (!scenario.events.empty() && event.time_s < scenario.events.back().time_s) {
            throw ParseError(at() + ": time goes backwards");
        }
        if (fields.size() < 2) {
            throw ParseError(at() + ": missing event kind");
        }

        const auto& kind = fields[1];
        const auto want_args = [&](std::size_t n) {
            if (fields.size() != 2 + n) {
                throw ParseError(at() + ": '" + kind + "' takes " + std::to_string(n) +
                                 " argument(s)");
            }
        };
        if (kind == "pickup") {
            want_args(1);
            event.kind = PickupEvent{fields[2]};
        } else if (kind == "release") {
            want_args(0);
            event.kind = ReleaseEvent{};
        } else if (kind == "accel_trace") {
            want_args(1);
            event.kind = AccelTraceEvent{fields[2]};
        } else if (kind == "spray") {
            want_args(1);
            double duration = 0.0;
            try {
                duration = parse_double(fields[2]);
            } catch (const ParseError& e) {
                throw ParseError(at() + ": " + e.what());
            }
            if (!(duration > 0.0)) {
                throw ParseError(at() + ": spray duration must be > 0");
            }
            event.kind = SprayEvent{duration};
        } else {
            throw ParseError(at() + ": unknown event kind '" + kind + "'");
        }
        scenario.events.push_back(std::move(event));
    }
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario: " + path);
    }
    auto scenario = parse_scenario(in, path);

    // Trace paths are relative to the scenario file.
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos) {
        const auto dir = path.substr(0, slash + 1);
        for (auto& event : scenario.events) {
            if (auto* trace = std::get_if<AccelTraceEvent>(&event.kind)) {
                if (!trace->path.empty() && trace->path.front() != '/') {
                    trace->path = dir + trace->path;
                }
            }
        }
    }
    return scenario;
}

void validate_scenario(const Scenario& scenario, const Catalog& catalog) {
    for (const auto& event : scenario.events) {
        if (const auto* pickup = std::get_if<PickupEvent>(&event.kind)) {
            catalog.at(pickup->object_id);
        }
    }
}

} // namespace fluidhaptics

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace fluidhaptics {

// One virtual object the host can hand to the user. drain_rate_g_s is nonzero
// only for objects that lose mass while active (the water gun).
struct CatalogEntry {
    std::string object_id;
    double mass_g = 0.0;
    double com_offset_mm = 0.0;
    double drain_rate_g_s = 0.0;
};

class Catalog {
public:
    static Catalog defaults();
    static Catalog load_file(const std::string& path);
    static Catalog load_stream(std::istream& in, const std::string& origin);

    void add(CatalogEntry entry);
    const CatalogEntry* find(const std::string& object_id) const;
    const CatalogEntry& at(const std::string& object_id) const;
    const std::map<std::string, CatalogEntry>& entries() const { return entries_; }

private:
    std::map<std::string, CatalogEntry> entries_;
};

// Scenario event kinds. accel_trace paths are resolved relative to the
// scenario file.
struct PickupEvent { std::string object_id; };
struct ReleaseEvent {};
struct AccelTraceEvent { std::string path; };
struct SprayEvent { double duration_s = 0.0; };

struct ScenarioEvent {
    double time_s = 0.0;
    std::variant<PickupEvent, ReleaseEvent, AccelTraceEvent, SprayEvent> kind;
};

struct Scenario {
    std::vector<ScenarioEvent> events;
};

// Line format: `t=<seconds> <kind> [args]`, `#` comments. Times must be
// nondecreasing; malformed lines report their line number.
Scenario parse_scenario(std::istream& in, const std::string& origin);
Scenario load_scenario(const std::string& path);

// Every pickup must name a catalog object. Throws ParseError otherwise.
void validate_scenario(const Scenario& scenario, const Catalog& catalog);

} // namespace fluidhaptics

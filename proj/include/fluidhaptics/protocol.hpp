#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fluidhaptics {

///////////////////////////////////////////////////////////////////////////////
// Wire format: one ASCII line per message, newline-terminated, fields split
// by single spaces. Host-to-device lines open with a sequence number:
//
//   <seq> PICKUP <object_id>
//   <seq> RELEASE
//   <seq> SET_TARGET <mass_g> <com_mm>
//   <seq> VIBRATE <amplitude> <decay> <angular_frequency> <phase> <duration_ms>
//
// Device-to-host lines carry no sequence number:
//
//   ACK <seq>
//   STATE <mode> <near_ml> <far_ml>
//   ERR <code> [detail...]
//
// Floats are rendered shortest-round-trip with a forced decimal point, so
// decode(encode(m)) == m holds bit-exactly for every valid message.
///////////////////////////////////////////////////////////////////////////////

struct Pickup {
    std::string object_id;  // nonempty ASCII, no whitespace
    bool operator==(const Pickup&) const = default;
};

struct Release {
    bool operator==(const Release&) const = default;
};

struct SetTarget {
    double mass_g = 0.0;
    double com_mm = 0.0;
    bool operator==(const SetTarget&) const = default;
};

struct Vibrate {
    double amplitude = 0.0;
    double decay = 0.0;
    double angular_frequency = 0.0;
    double phase = 0.0;
    std::uint32_t duration_ms = 0;
    bool operator==(const Vibrate&) const = default;
};

struct Ack {
    std::uint64_t seq = 0;
    bool operator==(const Ack&) const = default;
};

struct StateReport {
    std::string mode;
    double near_ml = 0.0;
    double far_ml = 0.0;
    bool operator==(const StateReport&) const = default;
};

struct ErrReport {
    std::string code;    // single token
    std::string detail;  // rest of line, may contain spaces, may be empty
    bool operator==(const ErrReport&) const = default;
};

using Payload = std::variant<Pickup, Release, SetTarget, Vibrate, Ack, StateReport, ErrReport>;

struct Message {
    // Present exactly on host-to-device payloads.
    std::optional<std::uint64_t> seq;
    Payload payload;

    bool operator==(const Message&) const = default;
};

// True for payloads that travel host-to-device and therefore carry a seq.
bool is_host_payload(const Payload& payload);

// Message -> wire line (newline-terminated). Invariant violations -> EncodeError.
std::string encode(const Message& message);

// Wire line -> message. Accepts an optional trailing newline. Malformed input
// -> ParseError naming the offending token; never crashes.
Message decode(std::string_view line);

///////////////////////////////////////////////////////////////////////////////
// Session: sequence/acknowledgment bookkeeping for at-least-once delivery.
// Retransmitted lines are byte-identical to the original send, and device-side
// application is idempotent (messages carry absolute state), so replays are
// harmless. One session per connection; the owner serializes access.
///////////////////////////////////////////////////////////////////////////////

struct SessionStats {
    std::uint64_t sent = 0;
    std::uint64_t acked = 0;
    std::uint64_t retransmissions = 0;
    std::uint64_t unknown_acks = 0;
};

class Session {
public:
    explicit Session(double retransmit_interval_s = 0.2);

    // Assigns the next sequence number, encodes, and arms retransmission.
    // Returns the sequence number and the wire bytes to put on the channel.
    std::pair<std::uint64_t, std::string> send(const Payload& payload, double now_s);

    // Acknowledges a sequence. Unknown (already-acked or never-sent) numbers
    // are ignored and counted in diagnostics.
    void on_ack(std::uint64_t seq);

    // Returns wire lines due for retransmission at `now_s`.
    std::vector<std::string> tick(double now_s);

    std::size_t pending() const { return unacked_.size(); }
    std::uint64_t next_seq() const { return next_seq_; }
    const SessionStats& stats() const { return stats_; }

private:
    struct Outstanding {
        std::string wire;
        double last_send_s;
    };

    double retransmit_interval_s_;
    std::uint64_t next_seq_ = 1;
    std::map<std::uint64_t, Outstanding> unacked_;
    SessionStats stats_;
};

} // namespace fluidhaptics

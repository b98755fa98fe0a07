#include "fluidhaptics/protocol.hpp"

#include "fluidhaptics/errors.hpp"
#include "fluidhaptics/numeric_text.hpp"

#include <cctype>
#include <cmath>

namespace fluidhaptics {

namespace {

bool is_token(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (const char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (u <= ' ' || u > '~') {
            return false;
        }
    }
    return true;
}

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw EncodeError(std::string(field) + " must be finite");
    }
}

// Splits a line into space-separated tokens; empty tokens (leading, trailing
// or doubled spaces) are malformed.
std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    while (start <= line.size()) {
        const auto space = line.find(' ', start);
        const auto end = space == std::string_view::npos ? line.size() : space;
        if (end == start) {
            throw ParseError("empty field (stray space)");
        }
        tokens.push_back(line.substr(start, end - start));
        if (space == std::string_view::npos) {
            break;
        }
        start = space + 1;
    }
    return tokens;
}

void require_arity(const std::vector<std::string_view>& tokens, std::size_t args,
                   std::string_view verb) {
    if (tokens.size() != args) {
        throw ParseError(std::string(verb) + ": expected " + std::to_string(args - 1) +
                         " argument(s), got " + std::to_string(tokens.size() - 1));
    }
}

} // namespace

bool is_host_payload(const Payload& payload) {
    return std::holds_alternative<Pickup>(payload) || std::holds_alternative<Release>(payload) ||
           std::holds_alternative<SetTarget>(payload) || std::holds_alternative<Vibrate>(payload);
}

std::string encode(const Message& message) {
    const bool host = is_host_payload(message.payload);
    if (host && !message.seq) {
        throw EncodeError("host message requires a sequence number");
    }
    if (!host && message.seq) {
        throw EncodeError("device message must not carry a sequence number");
    }

    std::string line;
    if (host) {
        line += to_text(*message.seq);
        line += ' ';
    }

    std::visit(
        [&line](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Pickup>) {
                if (!is_token(p.object_id)) {
                    throw EncodeError("PICKUP object_id must be nonempty ASCII without whitespace");
                }
                line += "PICKUP ";
                line += p.object_id;
            } else if constexpr (std::is_same_v<T, Release>) {
                line += "RELEASE";
            } else if constexpr (std::is_same_v<T, SetTarget>) {
                require_finite(p.mass_g, "SET_TARGET mass");
                require_finite(p.com_mm, "SET_TARGET com");
                line += "SET_TARGET ";
                line += to_text(p.mass_g);
                line += ' ';
                line += to_text(p.com_mm);
            } else if constexpr (std::is_same_v<T, Vibrate>) {
                require_finite(p.amplitude, "VIBRATE amplitude");
                require_finite(p.decay, "VIBRATE decay");
                require_finite(p.angular_frequency, "VIBRATE angular_frequency");
                require_finite(p.phase, "VIBRATE phase");
                line += "VIBRATE ";
                line += to_text(p.amplitude);
                line += ' ';
                line += to_text(p.decay);
                line += ' ';
                line += to_text(p.angular_frequency);
                line += ' ';
                line += to_text(p.phase);
                line += ' ';
                line += std::to_string(p.duration_ms);
            } else if constexpr (std::is_same_v<T, Ack>) {
                line += "ACK ";
                line += to_text(p.seq);
            } else if constexpr (std::is_same_v<T, StateReport>) {
                if (!is_token(p.mode)) {
                    throw EncodeError("STATE mode must be a nonempty token");
                }
                require_finite(p.near_ml, "STATE near_ml");
                require_finite(p.far_ml, "STATE far_ml");
                line += "STATE ";
                line += p.mode;
                line += ' ';
                line += to_text(p.near_ml);
                line += ' ';
                line += to_text(p.far_ml);
            } else if constexpr (std::is_same_v<T, ErrReport>) {
                if (!is_token(p.code)) {
                    throw EncodeError("ERR code must be a nonempty token");
                }
                if (p.detail.find('\n') != std::string::npos) {
                    throw EncodeError("ERR detail must not contain newlines");
                }
                if (!p.detail.empty() && (p.detail.front() == ' ' || p.detail.back() == ' ')) {
                    throw EncodeError("ERR detail must not start or end with a space");
                }
                line += "ERR ";
                line += p.code;
                if (!p.detail.empty()) {
                    line += ' ';
                    line += p.detail;
                }
            }
        },
        message.payload);

    line += '\n';
    return line;
}

Message decode(std::string_view line) {
    if (!line.empty() && line.back() == '\n') {
        line.remove_suffix(1);
    }
    if (line.empty()) {
        throw ParseError("empty line");
    }
    if (line.find('\n') != std::string_view::npos) {
        throw ParseError("embedded newline");
    }

    // ERR keeps its trailing free-text detail verbatim; peel it off before
    // strict tokenization. The detail must be nonempty when present.
    std::string detail;
    bool has_detail = false;
    {
        const auto tail = line.starts_with("ERR ") ? line.substr(4) : [&line] {
            const auto sp = line.find(' ');
            if (sp != std::string_view::npos && line.substr(sp + 1).starts_with("ERR ")) {
                return line.substr(sp + 5);
            }
            return std::string_view{};
        }();
        if (!tail.empty()) {
            const auto sp = tail.find(' ');
            if (sp != std::string_view::npos) {
                detail = std::string(tail.substr(sp + 1));
                has_detail = true;
                if (detail.empty()) {
                    throw ParseError("ERR: trailing space without detail");
                }
                line = line.substr(0, line.size() - detail.size() - 1);
            }
        }
    }

    const auto tokens = tokenize(line);

    std::size_t verb_index = 0;
    std::optional<std::uint64_t> seq;
    if (std::isdigit(static_cast<unsigned char>(tokens[0].front()))) {
        seq = parse_u64(tokens[0]);
        if (tokens.size() < 2) {
            throw ParseError("missing verb after sequence number");
        }
        verb_index = 1;
    }
    const auto verb = tokens[verb_index];
    const std::vector<std::string_view> args(tokens.begin() + static_cast<long>(verb_index),
                                             tokens.end());

    Message message;
    message.seq = seq;

    if (verb == "PICKUP") {
        require_arity(args, 2, verb);
        message.payload = Pickup{std::string(args[1])};
    } else if (verb == "RELEASE") {
        require_arity(args, 1, verb);
        message.payload = Release{};
    } else if (verb == "SET_TARGET") {
        require_arity(args, 3, verb);
        message.payload = SetTarget{parse_double(args[1]), parse_double(args[2])};
    } else if (verb == "VIBRATE") {
        require_arity(args, 6, verb);
        const auto ms = parse_u64(args[5]);
        if (ms > 0xFFFFFFFFull) {
            throw ParseError("VIBRATE duration_ms out of range: '" + std::string(args[5]) + "'");
        }
        message.payload = Vibrate{parse_double(args[1]), parse_double(args[2]),
                                  parse_double(args[3]), parse_double(args[4]),
                                  static_cast<std::uint32_t>(ms)};
    } else if (verb == "ACK") {
        require_arity(args, 2, verb);
        message.payload = Ack{parse_u64(args[1])};
    } else if (verb == "STATE") {
        require_arity(args, 4, verb);
        message.payload =
            StateReport{std::string(args[1]), parse_double(args[2]), parse_double(args[3])};
    } else if (verb == "ERR") {
        require_arity(args, 2, verb);
        message.payload = ErrReport{std::string(args[1]), has_detail ? detail : std::string{}};
    } else {
        throw ParseError("unknown verb: '" + std::string(verb) + "'");
    }

    if (is_host_payload(message.payload) && !message.seq) {
        throw ParseError(std::string(verb) + ": missing sequence number");
    }
    if (!is_host_payload(message.payload) && message.seq) {
        throw ParseError(std::string(verb) + ": unexpected sequence number");
    }
    return message;
}

Session::Session(double retransmit_interval_s) : retransmit_interval_s_(retransmit_interval_s) {
    if (!(retransmit_interval_s > 0.0)) {
        throw std::invalid_argument("session: retransmit interval must be > 0");
    }
}

std::pair<std::uint64_t, std::string> Session::send(const Payload& payload, double now_s) {
    const auto seq = next_seq_++;
    const auto wire = encode(Message{seq, payload});
    unacked_.emplace(seq, Outstanding{wire, now_s});
    ++stats_.sent;
    return {seq, wire};
}

void Session::on_ack(std::uint64_t seq) {
    const auto it = unacked_.find(seq);
    if (it == unacked_.end()) {
        ++stats_.unknown_acks;
        return;
    }
    unacked_.erase(it);
    ++stats_.acked;
}

std::vector<std::string> Session::tick(double now_s) {
    std::vector<std::string> due;
    for (auto& [seq, outstanding] : unacked_) {
        if (now_s - outstanding.last_send_s >= retransmit_interval_s_) {
            due.push_back(outstanding.wire);
            outstanding.last_send_s = now_s;
            ++stats_.retransmissions;
        }
    }
    return due;
}

} // namespace fluidhaptics

#include "uavloc/remote_id.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "uavloc/errors.hpp"

namespace uavloc {

namespace {

constexpr std::size_t kMaxIdLength = 16;

bool is_printable_ascii(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return c >= 0x20 && c <= 0x7e; });
}

int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

char hex_digit(unsigned value) {
    return "0123456789ABCDEF"[value & 0xf];
}

// Canonical M1 id form: exactly "HH HH" (two hex pairs, one space).
bool parse_hex_pair_form(const std::string& id, std::uint8_t out[2]) {
    if (id.size() != 5 || id[2] != ' ') return false;
    const int h0 = hex_digit_value(id[0]), l0 = hex_digit_value(id[1]);
    const int h1 = hex_digit_value(id[3]), l1 = hex_digit_value(id[4]);
    if (h0 < 0 || l0 < 0 || h1 < 0 || l1 < 0) return false;
    out[0] = static_cast<std::uint8_t>(h0 * 16 + l0);
    out[1] = static_cast<std::uint8_t>(l1 + h1 * 16);
    return true;
}

// Compact form like "FF1": a hex pair followed by one ASCII character.
bool parse_hex_prefix_form(const std::string& id, std::uint8_t out[2]) {
    if (id.size() != 3) return false;
    const int hi = hex_digit_value(id[0]), lo = hex_digit_value(id[1]);
    if (hi < 0 || lo < 0) return false;
    out[0] = static_cast<std::uint8_t>(hi * 16 + lo);
    out[1] = static_cast<std::uint8_t>(id[2]);
    return true;
}

}  // namespace

bool is_valid_uav_id(const std::string& id) {
    return !id.empty() && id.size() <= kMaxIdLength && is_printable_ascii(id);
}

const char* to_string(MessageFormat format) {
    switch (format) {
        case MessageFormat::M1: return "M1";
        case MessageFormat::M2: return "M2";
        case MessageFormat::M3: return "M3";
    }
    return "?";
}

MessageFormat message_format_from_string(const std::string& token) {
    std::string upper = token;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "M1") return MessageFormat::M1;
    if (upper == "M2") return MessageFormat::M2;
    if (upper == "M3") return MessageFormat::M3;
    throw Error(ErrorCode::InvalidScenario, "unknown message format '" + token + "'");
}

RemoteIdMessage encode(const UavId& uav_id, MessageFormat format) {
    if (!is_valid_uav_id(uav_id.id)) {
        throw Error(ErrorCode::IdNotEncodable,
                    "UAV id must be 1-16 printable ASCII characters");
    }
    RemoteIdMessage message;
    message.format = format;
    message.uav_id = uav_id;

    switch (format) {
        case MessageFormat::M1: {
            std::uint8_t bytes[2];
            if (!parse_hex_pair_form(uav_id.id, bytes) &&
                !parse_hex_prefix_form(uav_id.id, bytes)) {
                throw Error(ErrorCode::IdNotEncodable,
                            "M1 needs an id expressible as two bytes ('HH HH' or a hex "
                            "pair plus one character), got '" + uav_id.id + "'");
            }
            message.payload.assign(bytes, bytes + 2);
            break;
        }
        case MessageFormat::M2: {
            if (uav_id.id.size() != 3) {
                throw Error(ErrorCode::IdNotEncodable,
                            "M2 carries exactly 3 characters, got '" + uav_id.id + "'");
            }
            message.payload.assign(uav_id.id.begin(), uav_id.id.end());
            break;
        }
        case MessageFormat::M3: {
            if (uav_id.id.find(' ') != std::string::npos) {
                throw Error(ErrorCode::IdNotEncodable,
                            "M3 ids cannot contain spaces; the id is the first token "
                            "of the sentence");
            }
            std::string sentence = uav_id.id + kM3SentenceSuffix;
            message.payload.assign(sentence.begin(), sentence.end());
            break;
        }
    }
    return message;
}

UavId decode(const std::vector<std::uint8_t>& payload, MessageFormat format) {
    switch (format) {
        case MessageFormat::M1: {
            if (payload.size() != 2) {
                throw Error(ErrorCode::MalformedPayload, "M1 payload must be exactly 2 bytes");
            }
            std::string id;
            id += hex_digit(payload[0] >> 4);
            id += hex_digit(payload[0]);
            id += ' ';
            id += hex_digit(payload[1] >> 4);
            id += hex_digit(payload[1]);
            return UavId{id};
        }
        case MessageFormat::M2: {
            if (payload.size() != 3) {
                throw Error(ErrorCode::MalformedPayload, "M2 payload must be exactly 3 bytes");
            }
            std::string id(payload.begin(), payload.end());
            if (!is_valid_uav_id(id)) {
                throw Error(ErrorCode::MalformedPayload, "M2 payload is not printable ASCII");
            }
            return UavId{id};
        }
        case MessageFormat::M3: {
            std::string sentence(payload.begin(), payload.end());
            const auto space = sentence.find(' ');
            if (space == std::string::npos || space == 0) {
                throw Error(ErrorCode::MalformedPayload, "M3 payload has no leading id token");
            }
            if (sentence.substr(space) != kM3SentenceSuffix) {
                throw Error(ErrorCode::MalformedPayload,
                            "M3 payload does not match the fixed sentence template");
            }
            std::string id = sentence.substr(0, space);
            if (!is_valid_uav_id(id)) {
                throw Error(ErrorCode::MalformedPayload, "M3 id token is not a valid UAV id");
            }
            return UavId{id};
        }
    }
    throw Error(ErrorCode::MalformedPayload, "unknown message format");
}

std::size_t frame_bytes(const RemoteIdMessage& message, std::size_t frame_overhead_bytes) {
    return message.payload.size() + frame_overhead_bytes;
}

void BroadcastSchedule::validate() const {
    if (!(interval_s >= 2.0)) {
        std::ostringstream msg;
        msg << "broadcast interval must be >= 2 s (module minimum), got " << interval_s;
        throw Error(ErrorCode::InvalidScenario, msg.str());
    }
    if (window_size < 1) {
        throw Error(ErrorCode::InvalidScenario, "averaging window must hold at least 1 sample");
    }
}

std::vector<ScheduleViolation> validate_schedule(std::vector<double> timestamps_s,
                                                 double interval_s) {
    std::sort(timestamps_s.begin(), timestamps_s.end());
    std::vector<ScheduleViolation> violations;
    for (std::size_t i = 0; i + 1 < timestamps_s.size(); ++i) {
        const double gap = timestamps_s[i + 1] - timestamps_s[i];
        if (gap < interval_s) {
            violations.push_back({i, gap});
        }
    }
    return violations;
}

}  // namespace uavloc

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace uavloc {

/// Broadcast identifier carried in every message, license-plate style.
struct UavId {
    std::string id;
};

/// Non-empty printable ASCII, at most 16 characters.
bool is_valid_uav_id(const std::string& id);

/// The three payload layouts a UAV can broadcast.
///   M1: two raw bytes, rendered as hex pairs ("FF 31")
///   M2: three ASCII characters ("FF1")
///   M3: full ASCII sentence naming the id
enum class MessageFormat { M1, M2, M3 };

const char* to_string(MessageFormat format);

/// Parses "M1"/"M2"/"M3" (case-insensitive). Throws InvalidScenario on
/// anything else.
MessageFormat message_format_from_string(const std::string& token);

struct RemoteIdMessage {
    MessageFormat format = MessageFormat::M3;
    std::vector<std::uint8_t> payload;
    UavId uav_id;
};

/// Fixed tail of the M3 sentence; the id is the token before it.
inline constexpr const char* kM3SentenceSuffix =
    " is the UAV ID number that is being used to identify this UAV";

/// Builds the payload for the given format. Throws IdNotEncodable when the id
/// cannot be represented in that format:
///   M1 accepts the canonical hex form "HH HH" or a 3-character id whose first
///      two characters are hex digits (packed as [hex byte, ASCII byte]);
///   M2 needs exactly 3 printable characters;
///   M3 needs a printable id without spaces.
RemoteIdMessage encode(const UavId& uav_id, MessageFormat format);

/// Inverse of encode. M1 ids come back in the canonical hex form
/// ("FF 31"). Throws MalformedPayload when the payload does not match the
/// format's layout.
UavId decode(const std::vector<std::uint8_t>& payload, MessageFormat format);

/// Payload length plus link-layer framing, for airtime accounting only.
/// Nothing is ever appended to the payload itself.
std::size_t frame_bytes(const RemoteIdMessage& message, std::size_t frame_overhead_bytes = 2);

/// Broadcast timing: the radio needs at least 2 s between messages, and one
/// distance estimate needs a full window of them.
struct BroadcastSchedule {
    double interval_s = 2.0;
    int window_size = 5;

    /// Time the UAV must hold still for one complete window.
    double min_dwell_s() const { return interval_s * static_cast<double>(window_size); }

    /// Throws InvalidScenario when the interval is below 2 s or the window is
    /// empty.
    void validate() const;
};

struct ScheduleViolation {
    std::size_t index = 0;  // gap between timestamps[index] and [index + 1]
    double gap_s = 0.0;
};

/// Flags every adjacent gap shorter than the interval. Timestamps are sorted
/// internally, so input order does not matter.
std::vector<ScheduleViolation> validate_schedule(std::vector<double> timestamps_s,
                                                 double interval_s = 2.0);

}  // namespace uavloc

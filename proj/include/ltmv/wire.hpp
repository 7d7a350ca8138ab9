#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ltmv {

// Frame layout, bit-exact: [u32 LE payload length][u8 type][payload].
// Types: 0x01 Setup, 0x02 Vector, 0x03 Result, 0x04 Progress, 0x05 Done,
// 0x06 Error. All integers little-endian, floats IEEE-754 binary64.

struct SetupMsg {
    std::uint32_t worker_id = 0;
    std::uint64_t rows = 0;  // rows held by this worker
    std::uint64_t cols = 0;
    bool operator==(const SetupMsg&) const = default;
};

struct VectorMsg {
    std::vector<double> x;
    bool operator==(const VectorMsg&) const = default;
};

struct ResultMsg {
    std::uint64_t encoded_index = 0;
    double value = 0.0;
    bool operator==(const ResultMsg&) const = default;
};

struct ProgressMsg {
    std::uint64_t count = 0;
    bool operator==(const ProgressMsg&) const = default;
};

struct DoneMsg {
    bool operator==(const DoneMsg&) const = default;
};

struct ErrorMsg {
    std::string text;
    bool operator==(const ErrorMsg&) const = default;
};

using WireMessage =
    std::variant<SetupMsg, VectorMsg, ResultMsg, ProgressMsg, DoneMsg, ErrorMsg>;

inline constexpr std::uint8_t kSetupType = 0x01;
inline constexpr std::uint8_t kVectorType = 0x02;
inline constexpr std::uint8_t kResultType = 0x03;
inline constexpr std::uint8_t kProgressType = 0x04;
inline constexpr std::uint8_t kDoneType = 0x05;
inline constexpr std::uint8_t kErrorType = 0x06;

std::uint8_t frame_type(const WireMessage& msg);

// Whole frame including the 5-byte header.
std::vector<std::uint8_t> encode_frame(const WireMessage& msg);

// Decodes a payload of known type. Throws std::runtime_error on malformed
// input (bad lengths, unknown type, invalid utf-8 length field).
WireMessage decode_payload(std::uint8_t type, std::span<const std::uint8_t> payload);

// Decodes one complete frame from the front of `bytes`; returns the message
// and the bytes consumed. Throws if the buffer is short or malformed.
std::pair<WireMessage, std::size_t> decode_frame(std::span<const std::uint8_t> bytes);

}  // namespace ltmv
